"""Brute-force ground truth for the classical families.

Everything here is computed by enumerating group elements, so it is only
usable at small rank (see :mod:`ncpart.config` for the size guard).  The
closed formulas in :mod:`ncpart.formulas` are checked against these counts.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .combinat import binom
from .coxtype import COMB, GROUP, CoxType, check_flavor, total_rank
from .errors import FlavorUnavailable
from .group import (SignedPermutation, compose_images, coxeter_element,
                    element_type, invert_image, length_table)
from .polys import ExactPoly


class NCInterval:
    """The interval [ε, c] in absolute order, with its order relation and
    the left quotients u⁻¹r tabulated for u <= r."""

    def __init__(self, family: str, n: int):
        self.family, self.n = family, n
        table = length_table(family, n)
        c = coxeter_element(family, n)
        self.c = c
        lc = table[c.img]
        members = []
        for img, ell in table.items():
            rest = compose_images(invert_image(img), c.img)
            if ell + table[rest] == lc:
                members.append((ell, img))
        members.sort()
        self.elements = [SignedPermutation(img, family) for _, img in members]
        self.imgs = [img for _, img in members]
        self.length = [ell for ell, _ in members]
        self.index = {img: i for i, img in enumerate(self.imgs)}
        self.rank = lc
        self.top = self.index[c.img]
        self.bottom = self.index[tuple(range(1, n + 1))]
        size = len(self.imgs)
        leq = np.zeros((size, size), dtype=bool)
        quot = np.full((size, size), -1, dtype=np.int64)
        for i, u in enumerate(self.imgs):
            uinv = invert_image(u)
            for j, r in enumerate(self.imgs):
                if self.length[j] < self.length[i]:
                    continue
                rest = compose_images(uinv, r)
                k = self.index.get(rest)
                if k is not None and self.length[i] + self.length[k] == self.length[j]:
                    leq[i, j] = True
                    quot[i, j] = k
        self.leq = leq
        self.quot = quot
        self.down = [np.flatnonzero(leq[:, j]).tolist() for j in range(size)]

    def __len__(self):
        return len(self.imgs)

    @cached_property
    def types(self) -> dict:
        out = {GROUP: [element_type(w, self.family, GROUP) for w in self.elements]}
        if self.family != "A":
            out[COMB] = [element_type(w, self.family, COMB) for w in self.elements]
        return out

    def types_for(self, flavor: str) -> list:
        flavor = check_flavor(flavor)
        if flavor == COMB and self.family == "A":
            raise FlavorUnavailable("family A has no combinatorial flavor")
        return self.types[flavor]


_INTERVALS: dict = {}
_LOCK = threading.Lock()


def nc_interval(family: str, n: int) -> NCInterval:
    key = (family, n)
    iv = _INTERVALS.get(key)
    if iv is None:
        with _LOCK:
            iv = _INTERVALS.get(key)
            if iv is None:
                iv = NCInterval(family, n)
                _INTERVALS[key] = iv
    return iv


# ---------------------------------------------------------------------------
# decomposition numbers

def _prepare_types(family, types, flavor):
    flavor = check_flavor(flavor)
    if flavor == COMB and family == "A":
        raise FlavorUnavailable("family A has no combinatorial flavor")
    return flavor, [t.with_flavor(flavor) for t in types]


def decomposition_number_oracle(family: str, n: int, types, flavor: str = GROUP) -> int:
    """Count factorisations c = c_1 ⋯ c_d c' with additive lengths and
    type(c_i) = T_i.  The trailing factor c' absorbs the rank deficit, which
    is the same as counting minimal products c_1 ⋯ c_d lying below c."""
    flavor, types = _prepare_types(family, types, flavor)
    iv = nc_interval(family, n)
    if total_rank(types) > iv.rank:
        return 0
    tlist = iv.types_for(flavor)
    d = len(types)
    suffix = [0] * (d + 1)
    for i in range(d - 1, -1, -1):
        suffix[i] = suffix[i + 1] + types[i].rank

    def dfs(i, r):
        if i == d:
            return 1
        if iv.length[r] < suffix[i]:
            return 0
        target = types[i]
        total = 0
        for u in iv.down[r]:
            if tlist[u] == target:
                total += dfs(i + 1, int(iv.quot[u, r]))
        return total

    return dfs(0, iv.top)


def decomposition_table(family: str, n: int, d: int, flavor: str = GROUP) -> Counter:
    """Counts for every ordered d-tuple of types at once."""
    flavor, _ = _prepare_types(family, [], flavor)
    iv = nc_interval(family, n)
    tlist = iv.types_for(flavor)
    out = Counter()

    def walk(i, r, acc):
        if i == d:
            out[acc] += 1
            return
        for u in iv.down[r]:
            walk(i + 1, int(iv.quot[u, r]), acc + (tlist[u],))

    walk(0, iv.top, ())
    return out


# ---------------------------------------------------------------------------
# NC^m posets

@dataclass
class NcmPoset:
    family: str
    n: int
    m: int
    interval: NCInterval
    elements: list          # tuples (w_0, w_1, ..., w_m) of interval indices
    rank: np.ndarray
    leq: np.ndarray = field(repr=False)

    @property
    def group_rank(self) -> int:
        return self.interval.rank

    def __len__(self):
        return len(self.elements)

    def permutations(self, i):
        """The i-th element as a tuple of SignedPermutation."""
        return tuple(self.interval.elements[k] for k in self.elements[i])

    @cached_property
    def top(self) -> int:
        e = self.interval.bottom
        want = (self.interval.top,) + (e,) * self.m
        return self.elements.index(want)

    @cached_property
    def rank_layers(self) -> list:
        return [np.flatnonzero(self.rank == k) for k in range(self.group_rank + 1)]


def build_ncm_poset(family: str, n: int, m: int = 1) -> NcmPoset:
    if m < 1:
        raise ValueError("m must be at least 1")
    iv = nc_interval(family, n)
    elements = []

    def factor(r, k, acc):
        if k == 1:
            elements.append(acc + (r,))
            return
        for u in iv.down[r]:
            factor(int(iv.quot[u, r]), k - 1, acc + (u,))

    for w0 in range(len(iv)):
        factor(int(iv.quot[w0, iv.top]), m, (w0,))
    elements.sort(key=lambda e: (iv.length[e[0]], e))
    E = np.array(elements, dtype=np.int64)
    rank = np.array([iv.length[e[0]] for e in elements], dtype=np.int64)
    leq = np.ones((len(elements), len(elements)), dtype=bool)
    for i in range(1, m + 1):
        col = E[:, i]
        # leq[u, w] requires w_i <= u_i in absolute order
        leq &= iv.leq[col[None, :], col[:, None]]
    return NcmPoset(family, n, m, iv, elements, rank, leq)


def count_multichains_oracle(p: NcmPoset, ranks, constraint=None) -> int:
    """Multichains π_1 <= ... <= π_k with rk π_i = ranks[i]; ``constraint``
    filters π_1 and receives the element index."""
    ranks = list(ranks)
    if not ranks:
        return 1
    if any(b < a for a, b in zip(ranks, ranks[1:])):
        return 0
    if ranks[0] < 0 or ranks[-1] > p.group_rank:
        return 0
    first = p.rank_layers[ranks[0]]
    if constraint is not None:
        first = np.array([i for i in first if constraint(int(i))], dtype=np.int64)
    vec = np.ones(len(first), dtype=object)
    cur = first
    for r in ranks[1:]:
        nxt = p.rank_layers[r]
        link = p.leq[np.ix_(cur, nxt)].astype(object)
        vec = vec @ link if len(cur) else np.zeros(len(nxt), dtype=object)
        cur = nxt
    return int(sum(vec))


# ---------------------------------------------------------------------------
# Möbius function and zeta polynomials

class MobiusZeta:
    """μ by the defining recursion and Z(u,w;z) from strict-chain counts.

    Z(u,w;z) counts multichains u = x_0 <= x_1 <= ... <= x_z = w, so
    Z(u,w;1) = 1 and Z(u,w;2) is the size of the interval; writing c_k for
    the number of strict chains of length k gives Z = Σ c_k binom(z, k)."""

    def __init__(self, p: NcmPoset):
        self.poset = p
        N = len(p)
        leq = p.leq.astype(np.int64)
        mu = np.zeros((N, N), dtype=np.int64)
        lower = np.zeros(0, dtype=np.int64)
        for layer in p.rank_layers:
            if len(lower):
                mu[:, layer] = -(mu[:, lower] @ leq[np.ix_(lower, layer)])
            mu[layer, layer] = 1
            lower = np.concatenate([lower, layer])
        self.mu = mu
        strict = leq - np.eye(N, dtype=np.int64)
        chains = [np.eye(N, dtype=np.int64)]
        for _ in range(p.group_rank):
            chains.append(chains[-1] @ strict)
        self.chains = chains
        alt = sum(((-1) ** k) * ck for k, ck in enumerate(chains))
        if not np.array_equal(alt, mu):
            raise AssertionError("Möbius recursion disagrees with Z(u,w;-1)")

    def Z(self, u: int, w: int, z: int) -> int:
        return sum(int(ck[u, w]) * binom(z, k) for k, ck in enumerate(self.chains))

    def zeta_poly(self, u: int, w: int) -> ExactPoly:
        out = ExactPoly.const(0, ("z",))
        for k, ck in enumerate(self.chains):
            if ck[u, w]:
                out = out + ExactPoly.falling("z", k) * int(ck[u, w])
        return out


def mobius_and_zeta(p: NcmPoset) -> MobiusZeta:
    return MobiusZeta(p)


def free_factor_oracle(family: str, n: int, fixed_types, m_vec, s_vec,
                       flavor: str = GROUP) -> int:
    """Brute-force count of length-additive factorisations
    c = c_1 ⋯ c_d · (block 1) ⋯ (block l), block j being m_j factors whose
    lengths add up to s_j."""
    flavor, types = _prepare_types(family, fixed_types, flavor)
    iv = nc_interval(family, n)
    tlist = iv.types_for(flavor)
    if total_rank(types) + sum(s_vec) != iv.rank:
        return 0
    slots = [("T", t) for t in types]
    for mj, sj in zip(m_vec, s_vec):
        slots.append(("block", (mj, sj)))

    def block(k, budget, r, rest):
        if k == 0:
            return tail(rest, r) if budget == 0 else 0
        total = 0
        for u in iv.down[r]:
            if iv.length[u] <= budget:
                total += block(k - 1, budget - iv.length[u], int(iv.quot[u, r]), rest)
        return total

    def tail(rest, r):
        if not rest:
            return 1 if r == iv.bottom else 0
        kind, data = rest[0]
        if kind == "T":
            return sum(tail(rest[1:], int(iv.quot[u, r]))
                       for u in iv.down[r] if tlist[u] == data)
        mj, sj = data
        return block(mj, sj, r, rest[1:])

    return tail(slots, iv.top)
