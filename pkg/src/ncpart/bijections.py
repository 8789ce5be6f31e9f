"""The maps ∇^m from NC^m to m-divisible non-crossing partitions.

Ground sets:

* A: the circle 1..mn.
* B: the circle 1..mn, -1..-mn (clockwise), partitions invariant under bars.
* D: an annulus whose outer circle carries 1..m(n-1), -1..-m(n-1)
  clockwise and whose inner circle carries m(n-1)+1..mn, then their bars,
  counter-clockwise.

∇ sends (w_0; w_1, ..., w_m) to C ∘ τ_1(w_1)^{-1} ∘ ... ∘ τ_m(w_m)^{-1} where
C is the long cycle (A, B) or the pair of cycles around the annulus (D), and
τ_i blows w up onto the i-th residue class: τ_i(w)(m(k-1)+i) = m(w(k)-1)+i
(signs carried along).  The blocks of the result are its cycles.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import BadBlockSize
from .group import SignedPermutation, compose_images, cycle_decomposition, from_cycles
from .oracle import NcmPoset, build_ncm_poset


@dataclass(frozen=True)
class SetPartition:
    family: str
    n: int
    m: int
    blocks: tuple           # tuple of tuples, each in circular order
    perm: tuple = None      # image tuple of the permutation whose cycles are the blocks

    @property
    def size(self) -> int:
        return self.m * self.n

    def as_sets(self) -> frozenset:
        return frozenset(frozenset(b) for b in self.blocks)

    def to_text(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    def to_json(self) -> str:
        return json.dumps({"family": self.family, "n": self.n, "m": self.m,
                           "blocks": [list(b) for b in self.blocks]})

    def __str__(self):
        return self.to_text()


def position(family: str, n: int, m: int, x: int) -> int:
    """Index of a point in the clockwise reading of its circle."""
    N = m * n
    if family == "A":
        return x - 1
    if family == "B":
        return x - 1 if x > 0 else N + (-x) - 1
    outer = m * (n - 1)
    a = abs(x)
    if a <= outer:
        return a - 1 if x > 0 else outer + a - 1
    # inner circle, listed after the outer one
    k = a - outer
    return 2 * outer + (k - 1 if x > 0 else m + k - 1)


def tau(m: int, i: int, w: SignedPermutation) -> SignedPermutation:
    n = w.n
    img = list(range(1, m * n + 1))
    for k in range(1, n + 1):
        v = w(k)
        img[m * (k - 1) + i - 1] = (1 if v > 0 else -1) * (m * (abs(v) - 1) + i)
    return SignedPermutation(img)


def long_cycle(family: str, n: int, m: int) -> SignedPermutation:
    N = m * n
    if family == "A":
        return from_cycles(N, a_cycles=[tuple(range(1, N + 1))])
    if family == "B":
        return from_cycles(N, b_cycles=[tuple(range(1, N + 1))])
    outer = m * (n - 1)
    return from_cycles(N, b_cycles=[tuple(range(1, outer + 1)), tuple(range(outer + 1, N + 1))])


def nabla_permutation(family: str, n: int, m: int, element) -> SignedPermutation:
    """``element`` is (w_0, w_1, ..., w_m) as signed permutations; w_0 is not
    needed by the formula but is part of the element."""
    ws = list(element)[1:]
    if len(ws) != m:
        raise ValueError(f"expected {m} factors after w_0, got {len(ws)}")
    out = long_cycle(family, n, m)
    for i, w in enumerate(ws, 1):
        out = out * tau(m, i, w).inverse()
    return out


def partition_of(family: str, n: int, m: int, perm: SignedPermutation) -> SetPartition:
    blocks = []
    seen = set()
    points = list(range(1, m * n + 1))
    if family != "A":
        points += [-x for x in points]
    for x in points:
        if x in seen:
            continue
        cyc = [x]
        y = perm(x)
        while y != x:
            cyc.append(y)
            y = perm(y)
        seen.update(cyc)
        k = min(range(len(cyc)), key=lambda j: position(family, n, m, cyc[j]))
        blocks.append(tuple(cyc[k:] + cyc[:k]))
    if family == "D":
        # the two self-barred cycles (outer and inner) form one zero block
        zero = [b for b in blocks if set(b) == {-x for x in b}]
        if len(zero) > 1:
            blocks = [b for b in blocks if b not in zero]
            blocks.append(tuple(x for b in zero for x in b))
    blocks.sort(key=lambda b: position(family, n, m, b[0]))
    return SetPartition(family, n, m, tuple(blocks), perm.img)


def nabla(family: str, n: int, m: int, element) -> SetPartition:
    return partition_of(family, n, m, nabla_permutation(family, n, m, element))


# ---------------------------------------------------------------------------
# block statistics

def block_histogram(p: SetPartition, family: str | None = None, m: int | None = None):
    """(b_1..b_n, zero-block size).  For A, b_i counts blocks of size m·i;
    for B and D it counts pairs of non-zero blocks of size m·i."""
    family = family or p.family
    m = m or p.m
    b = [0] * p.n
    zero = 0
    for blk in p.blocks:
        if len(blk) % m:
            raise BadBlockSize(f"block {blk} has size {len(blk)}, not a multiple of {m}")
        i = len(blk) // m
        if family != "A" and set(blk) == {-x for x in blk}:
            zero += len(blk)
            continue
        if i > p.n:
            raise BadBlockSize(f"block {blk} is too large")
        b[i - 1] += 1
    if family != "A":
        if any(x % 2 for x in b):
            raise BadBlockSize("non-zero blocks do not come in pairs")
        b = [x // 2 for x in b]
    return tuple(b), zero


def w0_histogram(family: str, n: int, w0: SignedPermutation):
    """c_i(w_0): type A cycles of length i (fixed points are cycles of length
    1), and the total length of the type B cycles."""
    dec = cycle_decomposition(w0)
    c = [0] * n
    moved = set()
    for cyc in dec.a_cycles:
        c[len(cyc) - 1] += 1
        moved.update(abs(x) for x in cyc)
    for cyc in dec.b_cycles:
        moved.update(abs(x) for x in cyc)
    c[0] += n - len(moved)
    return tuple(c), sum(len(cyc) for cyc in dec.b_cycles)


# ---------------------------------------------------------------------------
# validity checks

def circle_noncrossing(blocks, key) -> bool:
    """No a < b < c < d with a, c in one block and b, d in another."""
    owner = {}
    for i, blk in enumerate(blocks):
        for x in blk:
            owner[x] = i
    order = sorted(owner, key=key)
    last = {}
    for x in order:
        last[owner[x]] = x
    stack = []
    opened = set()
    for x in order:
        b = owner[x]
        if b in opened:
            if stack[-1] != b:
                return False
        else:
            opened.add(b)
            stack.append(b)
        if last[b] == x:
            stack.pop()
    return True


def _cycle_count(img) -> int:
    n = len(img)
    seen = set()
    count = 0
    for start in itertools.chain(range(1, n + 1), range(-1, -n - 1, -1)):
        if start in seen:
            continue
        count += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = img[x - 1] if x > 0 else -img[-x - 1]
    return count


def annulus_noncrossing(n: int, m: int, perm_img) -> bool:
    """Genus test on the annulus.

    With γ the pair of boundary cycles, a permutation π (blocks traversed in
    their drawn order) embeds without crossings in the interior of the annulus
    iff #cyc(π) + #cyc(π⁻¹γ) equals 2mn + 2 when no block meets both circles
    and 2mn when some block does (Euler's formula for the sphere with two
    holes)."""
    N = m * n
    outer = m * (n - 1)
    gamma = long_cycle("D", n, m).img
    inv = [0] * N
    for i, x in enumerate(perm_img, 1):
        if x > 0:
            inv[x - 1] = i
        else:
            inv[-x - 1] = -i
    rest = compose_images(tuple(inv), gamma)
    total = _cycle_count(perm_img) + _cycle_count(rest)
    p = SignedPermutation(perm_img)
    connected = False
    seen = set()
    for start in itertools.chain(range(1, N + 1), range(-1, -N - 1, -1)):
        if start in seen:
            continue
        cyc = []
        y = start
        while y not in seen:
            seen.add(y)
            cyc.append(y)
            y = p(y)
        kinds = {abs(y) > outer for y in cyc}
        if len(kinds) == 2:
            connected = True
            break
    return total == (2 * N if connected else 2 * N + 2)


def class_parity_ok(n: int, m: int, perm_img) -> bool:
    """π⁻¹γ preserves residue classes; on each class it must be an element of
    the even-signed group, i.e. change an even number of signs."""
    N = m * n
    rest = (SignedPermutation(perm_img).inverse() * long_cycle("D", n, m)).img
    flips = [0] * m
    for x in range(1, N + 1):
        if rest[x - 1] < 0:
            flips[(x - 1) % m] += 1
    return all(f % 2 == 0 for f in flips)


def is_valid(p: SetPartition, strict: bool = True) -> bool:
    """Membership in the family's set of m-divisible non-crossing partitions.

    For D the geometric rules alone (annulus, bar symmetry, congruence, zero
    block) admit too many partitions once m >= 2: when no block joins the two
    circles the inner configuration can be twisted against the outer one.
    ``strict`` adds the parity condition that removes the twisted copies."""
    fam, n, m = p.family, p.n, p.m
    if any(len(b) % m for b in p.blocks):
        return False
    key = lambda x: position(fam, n, m, x)
    if fam == "A":
        return circle_noncrossing(p.blocks, key)
    sets = p.as_sets()
    if any(frozenset(-x for x in b) not in sets for b in sets):
        return False
    zeros = [b for b in sets if b == frozenset(-x for x in b)]
    if len(zeros) > 1:
        return False
    if fam == "B":
        return circle_noncrossing(p.blocks, key)
    outer = m * (n - 1)
    if zeros:
        z = zeros[0]
        inner = {x for x in range(outer + 1, m * n + 1)} | {-x for x in range(outer + 1, m * n + 1)}
        if not inner <= z or len(z - inner) < 2:
            return False
    perm = SignedPermutation(p.perm)
    for x in range(1, m * n + 1):
        if (abs(perm(x)) - 1) % m != x % m:
            return False
    if not annulus_noncrossing(n, m, p.perm):
        return False
    return class_parity_ok(n, m, p.perm) if strict else True


# ---------------------------------------------------------------------------
# independent enumeration of the target sets

def _nc_linear(points, m):
    """Non-crossing partitions of a list of points (in circular order) with
    every block size divisible by m."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    # choose the other members of first's block; the gaps in between must be
    # partitioned independently
    def grow(block, idx):
        # block ends here: the remainder after idx is a free gap
        gap = rest[idx:]
        if len(block) % m == 0 and len(gap) % m == 0:
            for part in _nc_linear(gap, m):
                yield [tuple(block)] + part
        for j in range(idx, len(rest)):
            inner = rest[idx:j]
            if len(inner) % m:
                continue
            for part in _nc_linear(inner, m):
                for tail in grow(block + [rest[j]], j + 1):
                    yield part + tail
    yield from grow([first], 0)


def enumerate_partitions(family: str, n: int, m: int, strict: bool = True) -> set:
    """All members of the target set, as frozensets of frozensets.  A and B
    use the circle directly; D enumerates bar-symmetric permutations obeying
    the congruence rule and keeps those passing the annulus test."""
    N = m * n
    if family == "A":
        return {frozenset(frozenset(b) for b in part)
                for part in _nc_linear(list(range(1, N + 1)), m)}
    if family == "B":
        pts = list(range(1, N + 1)) + [-x for x in range(1, N + 1)]
        out = set()
        for part in _nc_linear(pts, m):
            sets = frozenset(frozenset(b) for b in part)
            if all(frozenset(-x for x in b) in sets for b in sets):
                out.add(sets)
        return out
    out = set()
    classes = [[x for x in range(1, N + 1) if (x - 1) % m == r] for r in range(m)]
    per_class = []
    for r in range(m):
        src, dst = classes[r], classes[(r + 1) % m]
        options = []
        for perm in itertools.permutations(dst):
            for signs in itertools.product((1, -1), repeat=len(dst)):
                options.append(list(zip(src, (s * v for s, v in zip(signs, perm)))))
        per_class.append(options)
    for combo in itertools.product(*per_class):
        img = [0] * N
        for pairs in combo:
            for x, y in pairs:
                img[x - 1] = y
        p = partition_of("D", n, m, SignedPermutation(img))
        if is_valid(p, strict):
            out.add(p.as_sets())
    return out


# ---------------------------------------------------------------------------
# verification

def refines(p: frozenset, q: frozenset) -> bool:
    owner = {}
    for i, b in enumerate(q):
        for x in b:
            owner[x] = i
    return all(len({owner[x] for x in b}) == 1 for b in p)


@dataclass
class IsoReport:
    family: str
    n: int
    m: int
    size: int
    injective: bool
    all_valid: bool
    onto: bool
    order_forward: bool
    order_backward: bool
    blocks_match: bool
    ranks_match: bool

    @property
    def ok(self) -> bool:
        return all([self.injective, self.all_valid, self.onto, self.order_forward,
                    self.order_backward, self.blocks_match, self.ranks_match])


def images(p: NcmPoset) -> list:
    return [nabla(p.family, p.n, p.m, p.permutations(i)) for i in range(len(p))]


def inverse_lookup(p: NcmPoset) -> dict:
    """Inverse of ∇ by search: partition -> poset index."""
    return {img.as_sets(): i for i, img in enumerate(images(p))}


def verify_isomorphism(family: str, n: int, m: int) -> IsoReport:
    """Check ∇ on NC^m of the family at rank n (n letters; for A that is S_n).

    Onto is tested against an independent enumeration of the target set.
    Order: u <= w in NC^m iff ∇u refines ∇w.  Blocks: b_i(∇u) = c_i(w_0),
    and a zero block has 2mℓ points when the type B cycles of w_0 have total
    length ℓ (mℓ on each side of the bar involution)."""
    p = build_ncm_poset(family, n, m)
    imgs = images(p)
    sets = [img.as_sets() for img in imgs]
    injective = len(set(sets)) == len(sets)
    all_valid = all(is_valid(img) for img in imgs)
    onto = set(sets) == enumerate_partitions(family, n, m)
    ref = [[refines(a, b) for b in sets] for a in sets]
    fwd = all(ref[u][w] for u, w in zip(*p.leq.nonzero()))
    bwd = all(p.leq[u, w] for u in range(len(p)) for w in range(len(p)) if ref[u][w])
    blocks_ok = ranks_ok = True
    for i, img in enumerate(imgs):
        b, zero = block_histogram(img)
        c, blen = w0_histogram(family, n, p.permutations(i)[0])
        if b != c or zero != 2 * m * blen:
            blocks_ok = False
        if int(p.rank[i]) != n - sum(b):
            ranks_ok = False
    return IsoReport(family, n, m, len(p), injective, all_valid, onto, fwd, bwd,
                     blocks_ok, ranks_ok)
