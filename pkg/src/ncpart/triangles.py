"""M-triangles, the type D F-side polynomial, and maximal-interval counts.

Polynomials are :class:`ExactPoly` in ``x, y``.  Ranks are group ranks, so
for family A with ``n`` letters the top rank is ``n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .combinat import binom, compositions
from .errors import DivisionByZero, InvalidType
from .formulas import group_rank, rank_selected_chains
from .oracle import MobiusZeta, NcmPoset, build_ncm_poset, count_multichains_oracle
from .polys import ExactPoly

XY = ("x", "y")


def _rank_pair_sums(p: NcmPoset, mu: np.ndarray) -> dict:
    out = {}
    layers = p.rank_layers
    for k, lk in enumerate(layers):
        for l, ll in enumerate(layers):
            if len(lk) and len(ll):
                v = int(mu[np.ix_(lk, ll)].sum())
                if v:
                    out[(k, l)] = v
    return out


def m_triangle(p: NcmPoset, mz: MobiusZeta | None = None) -> ExactPoly:
    """Σ_{u,w} μ(u,w) x^{rk u} y^{rk w}."""
    mz = mz or MobiusZeta(p)
    return ExactPoly(XY, _rank_pair_sums(p, mz.mu))


def dual_poset(p: NcmPoset) -> NcmPoset:
    """Same elements, order reversed, rank n - rk."""
    n = p.group_rank
    return NcmPoset(p.family, p.n, p.m, p.interval, p.elements,
                    n - p.rank, p.leq.T.copy())


def dual_m_triangle(p: NcmPoset) -> ExactPoly:
    """Σ over the dual poset of μ*(u,w) x^{rk* w} y^{rk* u}, with μ* computed
    from scratch on the reversed order."""
    d = dual_poset(p)
    sums = _rank_pair_sums(d, MobiusZeta(d).mu)
    return ExactPoly(XY, {(l, k): v for (k, l), v in sums.items()})


def reciprocal_transform(poly: ExactPoly, n: int) -> ExactPoly:
    """(xy)^n P(1/x, 1/y)."""
    return ExactPoly(poly.vars, {(n - a, n - b): c for (a, b), c in poly.terms.items()})


# ---------------------------------------------------------------------------
# type D: F-side and the F = M comparison

def f_side_D(n: int, m: int) -> ExactPoly:
    """(1-xy)^n F(x(1+y)/(1-xy), xy/(1-xy)) for D_n as the closed double sum;
    coefficient of x^s y^r."""
    if n < 2:
        raise InvalidType("D_n needs n >= 2")
    k = m * (n - 1)
    terms = {}
    for s in range(n + 1):
        for r in range(s + 1):
            tail = binom(k + s - r - 1, s - r)
            v = (2 * binom(n - 1, s - 1) * binom(k, r) * tail
                 + binom(n - 2, s) * binom(k, r) * tail
                 + m * binom(n - 1, s - 1) * binom(k - 1, r - 2) * tail
                 - m * binom(n - 1, s - 1) * binom(k, r) * binom(k + s - r - 2, s - r - 2))
            if v:
                terms[(s, r)] = v
    return ExactPoly(XY, terms)


def zeta_sum_D(n: int, m: int, s: int, r: int, z: int) -> int:
    """Σ Z(u,w;z) over u, w in the dual of NC^m(D_n) with rk* u = r and
    rk* w = s, summed in closed form from the rank-selected chain count."""
    k = m * (n - 1)
    return (2 * binom(k, r) * binom(z * k, s - r) * binom(n - 1, s - 1)
            + m * binom(k - 1, r - 2) * binom(z * k, s - r) * binom(n - 1, s - 1)
            + z * m * binom(k, r) * binom(z * k - 1, s - r - 2) * binom(n - 1, s - 1)
            + binom(k, r) * binom(z * k, s - r) * binom(n - 2, s))


def fm_rhs_from_zeta(n: int, m: int) -> ExactPoly:
    terms = {}
    for s in range(n + 1):
        for r in range(s + 1):
            v = (-1) ** (r + s) * zeta_sum_D(n, m, s, r, -1)
            if v:
                terms[(s, r)] = v
    return ExactPoly(XY, terms)


def fm_rhs_from_poset(p: NcmPoset) -> ExactPoly:
    """Σ_{u,w in dual} μ*(u,w) (-x)^{rk* w} (-y)^{rk* u}."""
    dual = dual_m_triangle(p)
    return ExactPoly(XY, {(a, b): c * (-1) ** (a + b) for (a, b), c in dual.terms.items()})


@dataclass
class FmReport:
    n: int
    m: int
    f_side: ExactPoly
    zeta_side: ExactPoly
    poset_side: ExactPoly
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def fm_check_D(n: int, m: int) -> FmReport:
    f = f_side_D(n, m)
    z = fm_rhs_from_zeta(n, m)
    p = poset_side = fm_rhs_from_poset(build_ncm_poset("D", n, m))
    bad = []
    for s in range(n + 1):
        for r in range(n + 1):
            vals = (f.coeff(s, r), z.coeff(s, r), p.coeff(s, r))
            if len(set(vals)) > 1:
                bad.append(((s, r), vals))
    return FmReport(n, m, f, z, poset_side, bad)


def zeta_sum_oracle(p: NcmPoset, mz: MobiusZeta, s: int, r: int, z: int) -> int:
    """Brute-force counterpart of :func:`zeta_sum_D` on any poset: sum of
    Z(a, b; z) over a <= b with n - rk a = s and n - rk b = r."""
    n = p.group_rank
    lo, hi = p.rank_layers[n - s], p.rank_layers[n - r]
    total = 0
    for k, ck in enumerate(mz.chains):
        c = int(ck[np.ix_(lo, hi)].sum())
        if c:
            total += c * binom(z, k)
    return total


# ---------------------------------------------------------------------------
# maximal intervals containing a random multichain

def _check_i(family, n, i, l):
    r = group_rank(family, n)
    if not 0 <= i <= r:
        raise ValueError(f"i must lie in 0..{r}")
    if l < 1:
        raise ValueError("l must be at least 1")
    return r


def chain_counts(family: str, n: int, m: int, i: int, l: int) -> tuple:
    """(#chains π_0 <= π_1 <= ... <= π_l with rk π_0 = 0, rk π_1 = i,
    #multichains π_1 <= ... <= π_l with rk π_1 = i), from rank-selected
    counts summed over the free ranks."""
    r = _check_i(family, n, i, l)
    num = sum(rank_selected_chains(family, n, m, (0, i) + c) for c in compositions(r - i, l))
    den = sum(rank_selected_chains(family, n, m, (i,) + c) for c in compositions(r - i, l))
    return num, den


def chain_counts_D_closed(n: int, m: int, i: int, l: int) -> tuple:
    """Closed forms for D_n after Chu-Vandermonde.  In the numerator the
    second-kind term can sit in any of the l free slots, hence m·l."""
    _check_i("D", n, i, l)
    k = m * (n - 1)
    L = l * k
    num = (2 * binom(k, i) * binom(L, n - i)
           + m * binom(k - 1, i - 2) * binom(L, n - i)
           + m * l * binom(k, i) * binom(L - 1, n - i - 2))
    den = (2 * binom(n - 1, i) * binom(L, n - i)
           + m * l * binom(n - 1, i) * binom(L - 1, n - i - 2)
           + binom(n - 2, i - 2) * binom(L, n - i))
    return num, den


def _d_numerator_with_l_minus_one(n: int, m: int, i: int, l: int) -> int:
    # the numerator with m(l-1) in place of m·l; kept to document that it
    # disagrees with direct counting
    k = m * (n - 1)
    L = l * k
    return (2 * binom(k, i) * binom(L, n - i)
            + m * binom(k - 1, i - 2) * binom(L, n - i)
            + m * (l - 1) * binom(k, i) * binom(L - 1, n - i - 2))


def chain_counts_oracle(p: NcmPoset, i: int, l: int) -> tuple:
    r = p.group_rank
    num = den = 0
    for c in compositions(r - i, l):
        ranks = [i]
        for step in c[:-1]:
            ranks.append(ranks[-1] + step)
        den += count_multichains_oracle(p, ranks)
        num += count_multichains_oracle(p, [0] + ranks)
    return num, den


def expected_maximal_intervals(family: str, n: int, m: int, i: int, l: int) -> Fraction:
    if family in ("A", "B"):
        num, den = chain_counts(family, n, m, i, l)
    elif family == "D":
        num, den = chain_counts_D_closed(n, m, i, l)
    else:
        raise InvalidType(f"unknown classical family {family!r}")
    if den == 0:
        raise DivisionByZero(f"no multichains for {family}{n}, m={m}, i={i}, l={l}")
    return Fraction(num, den)


def narayana(family: str, n: int, m: int, k: int) -> int:
    """Number of rank-k elements of NC^m."""
    r = group_rank(family, n)
    if not 0 <= k <= r:
        return 0
    return rank_selected_chains(family, n, m, (k, r - k))


def narayana_ratio(family: str, n: int, m: int, i: int) -> Fraction:
    r = group_rank(family, n)
    den = narayana(family, n, 1, r - i)
    if den == 0:
        raise DivisionByZero("vanishing Narayana number")
    return Fraction(narayana(family, n, m, r - i), den)
