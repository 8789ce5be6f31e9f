"""Signed permutations realising W(A_{n-1}) = S_n, W(B_n) and W(D_n).

An element acts on {1..n, -1..-n}; ``-k`` stands for k-bar and every element
satisfies w(-k) = -w(k), so it is stored as the tuple (w(1), ..., w(n)).
Products compose right to left: ``(u * v)(k) = u(v(k))``.

Cycle notation follows the usual conventions:

* ``((a1,...,ak))`` is the pair of cycles (a1..ak)(-a1..-ak)  (type A cycle)
* ``[a1,...,ak]`` is the single cycle (a1..ak -a1..-ak)        (type B cycle)
"""

from __future__ import annotations

import itertools
import math
import re
import threading
from collections import deque
from dataclasses import dataclass

from .config import oracle_limit
from .coxtype import COMB, GROUP, CoxType, Irr, normalize_to_group
from .errors import (MismatchedRank, NotBelowCoxeter, NotInGroup, ParseError,
                     TooLarge, UnpairedBCycles, UnsupportedRank)

FAMILIES = ("A", "B", "D")


def _apply(img, k):
    return img[k - 1] if k > 0 else -img[-k - 1]


def compose_images(a, b):
    """Image tuple of a∘b (b first)."""
    return tuple(a[x - 1] if x > 0 else -a[-x - 1] for x in b)


def invert_image(a):
    out = [0] * len(a)
    for i, x in enumerate(a, 1):
        if x > 0:
            out[x - 1] = i
        else:
            out[-x - 1] = -i
    return tuple(out)


class SignedPermutation:
    __slots__ = ("n", "img", "family")

    def __init__(self, img, family=None):
        img = tuple(int(x) for x in img)
        n = len(img)
        if sorted(abs(x) for x in img) != list(range(1, n + 1)):
            raise NotInGroup(f"{img} is not a signed permutation")
        self.n = n
        self.img = img
        self.family = family
        if family is not None:
            check_membership(self, family)

    @classmethod
    def identity(cls, n, family=None):
        return cls(range(1, n + 1), family)

    def __call__(self, k):
        return _apply(self.img, k)

    def __mul__(self, other):
        if self.n != other.n:
            raise MismatchedRank(f"cannot compose rank {self.n} with rank {other.n}")
        fam = self.family if self.family == other.family else None
        w = SignedPermutation.__new__(SignedPermutation)
        w.n, w.img, w.family = self.n, compose_images(self.img, other.img), fam
        return w

    def inverse(self):
        w = SignedPermutation.__new__(SignedPermutation)
        w.n, w.img, w.family = self.n, invert_image(self.img), self.family
        return w

    def is_identity(self):
        return all(x == i for i, x in enumerate(self.img, 1))

    def negatives(self):
        return sum(1 for x in self.img if x < 0)

    def __eq__(self, other):
        return isinstance(other, SignedPermutation) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        return f"SignedPermutation({format_element(self)!r}, n={self.n})"

    def __str__(self):
        return format_element(self)


def check_membership(w: SignedPermutation, family: str) -> None:
    if family == "A" and w.negatives():
        raise NotInGroup(f"{w.img} has bars, so it is not in S_{w.n}")
    if family == "D" and w.negatives() % 2:
        raise NotInGroup(f"{w.img} has an odd number of bars, not in D_{w.n}")
    if family not in FAMILIES:
        raise NotInGroup(f"unknown family {family!r}")


def group_arith(op: str, *args: SignedPermutation, n: int | None = None):
    """``compose`` (right factor first), ``inverse`` or ``identity``."""
    if op == "identity":
        return SignedPermutation.identity(n if n is not None else args[0].n)
    if op == "inverse":
        (w,) = args
        return w.inverse()
    if op == "compose":
        out = args[-1]
        for w in reversed(args[:-1]):
            out = w * out
        return out
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# construction helpers and text syntax

def from_cycles(n, a_cycles=(), b_cycles=(), family=None) -> SignedPermutation:
    img = list(range(1, n + 1))

    def put(x, y):
        if x > 0:
            img[x - 1] = y
        else:
            img[-x - 1] = -y

    for cyc in a_cycles:
        for i, x in enumerate(cyc):
            put(x, cyc[(i + 1) % len(cyc)])
    for cyc in b_cycles:
        full = list(cyc) + [-x for x in cyc]
        for i, x in enumerate(full):
            put(x, full[(i + 1) % len(full)])
    return SignedPermutation(img, family)


def a_cycle(n, *letters):
    return from_cycles(n, a_cycles=[letters])


def b_cycle(n, *letters):
    return from_cycles(n, b_cycles=[letters])


_ELEM = re.compile(r"\(\(([^()]*)\)\)|\[([^\[\]]*)\]|\(([^()]*)\)|(e)")


def parse_element(text: str, n: int | None = None, family=None) -> SignedPermutation:
    """Parse juxtaposed cycles such as ``[1,2,3]((1,-9,-10))``.

    A plain ``(a,b,...)`` is read as a type A cycle unless it is closed under
    bars, in which case it must have the shape of a type B cycle."""
    s = re.sub(r"\s+", "", text)
    factors = []
    pos = 0
    letters = []
    while pos < len(s):
        mt = _ELEM.match(s, pos)
        if not mt:
            raise ParseError(f"cannot read a cycle in {text!r}", pos)
        dbl, sq, single, ident = mt.groups()
        body = next(g for g in (dbl, sq, single) if g is not None) if ident is None else ""
        try:
            nums = [int(x) for x in body.split(",")] if body else []
        except ValueError:
            raise ParseError(f"bad letter in {body!r}", pos) from None
        if any(x == 0 for x in nums) or len({abs(x) for x in nums}) != len(nums):
            if not (single is not None and _is_b_shape(nums)):
                raise ParseError(f"repeated or zero letter in {body!r}", pos)
        if sq is not None:
            kind = "B"
        elif single is not None and _is_b_shape(nums):
            kind, nums = "B", nums[:len(nums) // 2]
        else:
            kind = "A"
        factors.append((kind, nums))
        letters += nums
        pos = mt.end()
    if n is None:
        n = max((abs(x) for x in letters), default=0)
        if n == 0:
            raise ParseError("cannot infer n for the identity", 0)
    if any(abs(x) > n for x in letters):
        raise ParseError(f"letter exceeds n={n} in {text!r}", 0)
    w = SignedPermutation.identity(n)
    for kind, nums in factors:
        if not nums:
            continue
        f = from_cycles(n, b_cycles=[nums]) if kind == "B" else from_cycles(n, a_cycles=[nums])
        w = w * f
    if family is not None:
        check_membership(w, family)
        w.family = family
    return w


def _is_b_shape(nums):
    k = len(nums)
    return k % 2 == 0 and k > 0 and all(nums[i + k // 2] == -nums[i] for i in range(k // 2))


def format_element(w: SignedPermutation) -> str:
    dec = cycle_decomposition(w)
    parts = ["[" + ",".join(map(str, c)) + "]" for c in dec.b_cycles]
    parts += ["((" + ",".join(map(str, c)) + "))" for c in dec.a_cycles]
    return "".join(parts) if parts else "e"


# ---------------------------------------------------------------------------
# cycles

@dataclass(frozen=True)
class CycleDecomposition:
    a_cycles: tuple
    b_cycles: tuple

    def rebuild(self, n, family=None):
        return from_cycles(n, self.a_cycles, self.b_cycles, family)


def cycle_decomposition(w: SignedPermutation) -> CycleDecomposition:
    seen = set()
    a_cycles, b_cycles = [], []
    for start in range(1, w.n + 1):
        if start in seen:
            continue
        cyc = [start]
        x = w(start)
        while x != start:
            cyc.append(x)
            x = w(x)
        seen.update(cyc)
        seen.update(-x for x in cyc)
        if len(cyc) == 1:
            continue
        if -start in cyc:
            half = cyc[:len(cyc) // 2]
            b_cycles.append(_rotate_min(half, bar_closed=True))
        else:
            a_cycles.append(_rotate_min(cyc, bar_closed=False))
    # a B-cycle [k] of length one is the 2-cycle (k,-k), caught above since
    # w(k) = -k gives cyc = [k, -k]
    a_cycles.sort(key=lambda c: min(abs(x) for x in c))
    b_cycles.sort(key=lambda c: min(abs(x) for x in c))
    return CycleDecomposition(tuple(a_cycles), tuple(b_cycles))


def _rotate_min(cyc, bar_closed):
    k = len(cyc)
    i = min(range(k), key=lambda j: abs(cyc[j]))
    if bar_closed:
        # rotating [a1..ak] by one step gives [a2..ak, -a1]
        out = list(cyc[i:]) + [-x for x in cyc[:i]]
    else:
        out = list(cyc[i:]) + list(cyc[:i])
    if out[0] < 0:
        out = [-x for x in out]
    return tuple(out)


# ---------------------------------------------------------------------------
# Coxeter elements, reflections, enumeration

def _check_rank(family, n):
    if family not in FAMILIES:
        raise UnsupportedRank(f"unknown family {family!r}")
    if n < 1 or (family == "D" and n < 2):
        raise UnsupportedRank(f"{family} with n={n} is not supported")


def coxeter_element(family: str, n: int) -> SignedPermutation:
    """(1,2,..,n) in S_n, [1,..,n] in B_n, [1,..,n-1][n] in D_n."""
    _check_rank(family, n)
    if family == "A":
        return from_cycles(n, a_cycles=[tuple(range(1, n + 1))], family="A")
    if family == "B":
        return from_cycles(n, b_cycles=[tuple(range(1, n + 1))], family="B")
    return from_cycles(n, b_cycles=[tuple(range(1, n)), (n,)], family="D")


def reflections(family: str, n: int) -> list:
    _check_rank(family, n)
    out = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        out.append(from_cycles(n, a_cycles=[(i, j)], family=family))
        if family != "A":
            out.append(from_cycles(n, a_cycles=[(i, -j)], family=family))
    if family == "B":
        out += [from_cycles(n, b_cycles=[(i,)], family="B") for i in range(1, n + 1)]
    return out


def group_order(family: str, n: int) -> int:
    if family == "A":
        return math.factorial(n)
    if family == "B":
        return 2 ** n * math.factorial(n)
    return 2 ** (n - 1) * math.factorial(n)


def group_elements(family: str, n: int):
    """All image tuples of the group, in a fixed order."""
    for perm in itertools.permutations(range(1, n + 1)):
        if family == "A":
            yield perm
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if family == "D" and signs.count(-1) % 2:
                continue
            yield tuple(s * x for s, x in zip(signs, perm))


# ---------------------------------------------------------------------------
# absolute length

_LENGTH_MEMO: dict = {}
_MEMO_LOCK = threading.Lock()


def length_table(family: str, n: int, limit: int | None = None) -> dict:
    """BFS distances from the identity in the reflection Cayley graph."""
    key = (family, n)
    table = _LENGTH_MEMO.get(key)
    if table is not None:
        return table
    _check_rank(family, n)
    limit = oracle_limit() if limit is None else limit
    if group_order(family, n) > limit:
        raise TooLarge(f"{family}_{n} has {group_order(family, n)} elements "
                       f"(limit {limit}; set NCPART_ORACLE_LIMIT to raise it)")
    with _MEMO_LOCK:
        table = _LENGTH_MEMO.get(key)
        if table is None:
            gens = [r.img for r in reflections(family, n)]
            start = tuple(range(1, n + 1))
            table = {start: 0}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                d = table[x] + 1
                for r in gens:
                    y = compose_images(x, r)
                    if y not in table:
                        table[y] = d
                        queue.append(y)
            _LENGTH_MEMO[key] = table
    return table


def closed_form_length(w: SignedPermutation, family: str) -> int:
    """A: points minus cycles.  B: Σ(k-1) over type A cycles + Σk over type B
    cycles, i.e. n minus the number of type A cycle pairs (fixed points
    included)."""
    dec = cycle_decomposition(w)
    if family == "A":
        moved = sum(len(c) for c in dec.a_cycles)
        return moved - len(dec.a_cycles)
    return sum(len(c) - 1 for c in dec.a_cycles) + sum(len(c) for c in dec.b_cycles)


def absolute_length(w: SignedPermutation, family: str) -> int:
    check_membership(w, family)
    if family == "D":
        return length_table("D", w.n)[w.img]
    return closed_form_length(w, family)


def bfs_length(w: SignedPermutation, family: str) -> int:
    check_membership(w, family)
    return length_table(family, w.n)[w.img]


def le_T(u: SignedPermutation, w: SignedPermutation, family: str) -> bool:
    if u.n != w.n:
        raise MismatchedRank("le_T needs elements of equal rank")
    return absolute_length(w, family) == (
        absolute_length(u, family) + absolute_length(u.inverse() * w, family))


# ---------------------------------------------------------------------------
# types

def combinatorial_type(w: SignedPermutation, family: str) -> CoxType:
    dec = cycle_decomposition(w)
    comps = [Irr("A", len(c) - 1) for c in dec.a_cycles]
    if family == "B":
        comps += [Irr("B", len(c)) for c in dec.b_cycles]
    elif family == "D":
        bs = sorted(len(c) for c in dec.b_cycles)
        if bs:
            if len(bs) != 2 or bs[0] != 1:
                raise UnpairedBCycles(f"{format_element(w)} has B-cycles of lengths {bs}")
            comps.append(Irr("D", bs[1] + 1))
    else:
        raise UnsupportedRank(f"no combinatorial type for family {family!r}")
    return CoxType(tuple(comps), COMB)


def parabolic_type(w: SignedPermutation, family: str) -> CoxType:
    c = coxeter_element(family, w.n)
    if not le_T(w, c, family):
        raise NotBelowCoxeter(f"{format_element(w)} is not below the Coxeter element")
    return element_type(w, family, GROUP)


def element_type(w: SignedPermutation, family: str, flavor: str) -> CoxType:
    """Type of an element already known to lie below c (no check)."""
    if family == "A":
        dec = cycle_decomposition(w)
        return CoxType(tuple(Irr("A", len(c) - 1) for c in dec.a_cycles), GROUP)
    t = combinatorial_type(w, family)
    return t if flavor == COMB else normalize_to_group(t)
