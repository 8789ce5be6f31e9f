"""Closed formulas for decomposition numbers and multichain counts.

Conventions
-----------
* Family ``A`` with parameter ``n`` is S_n = W(A_{n-1}), the same convention
  as the oracle; the type-A formulas are written for W(A_N) and every function
  below converts with N = n - 1.
* Families ``B`` and ``D`` take their rank n.
* Values are exact; intermediate products use :class:`fractions.Fraction`
  and the final result is checked to be an integer.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod

from .combinat import as_int, binom, multinomial, multinomial_free
from .coxtype import COMB, GROUP, CoxType, Irr, check_flavor
from .errors import (FlavorUnavailable, InconsistentRanks, InvalidType,
                     RankMismatch)


def group_rank(family: str, n: int) -> int:
    return n - 1 if family == "A" else n


def _mvec(t: CoxType) -> list:
    """Exponent vector (m_1, m_2, ...) of the A-part of a type."""
    counts = t.a_counts()
    top = max(counts, default=0)
    return [counts.get(k, 0) for k in range(1, top + 1)]


def _shift(vec, k, delta):
    """Copy of an m-vector with m_k changed by delta (1-based k)."""
    v = list(vec) + [0] * max(0, k - len(vec))
    v[k - 1] += delta
    return v


def _check_components(family, types, flavor):
    allowed = {"A": {"A"}, "B": {"A", "B"}, "D": {"A", "D"}}[family]
    out = []
    for t in types:
        t = t.with_flavor(flavor)
        for c in t.components:
            if c.family not in allowed:
                raise InvalidType(f"{c} does not occur in family {family}")
        out.append(t)
    return out


def _special_index(types):
    """Indices of types carrying a B or D component, with the count of such
    components overall."""
    where = [i for i, t in enumerate(types) if t.non_a()]
    count = sum(len(t.non_a()) for t in types)
    return where, count


# ---------------------------------------------------------------------------
# factors

def _q_b(n, t: CoxType) -> Fraction:
    """1/(n - rk T) * multinomial(n - rk T; m)."""
    top = n - t.rank
    return Fraction(multinomial(top, _mvec(t)), top)


def d_factor(n: int, t: CoxType) -> Fraction:
    """1/(n - rk T - 1) * multinomial(n - rk T - 1; m), read as in the remark
    on type D: when rk T = n - 1 the value is 1 for T = A_{n-1}, else 0."""
    top = n - t.rank - 1
    if top < 0:
        return Fraction(0)
    if top == 0:
        return Fraction(1 if t.components == (Irr("A", n - 1),) else 0)
    return Fraction(multinomial(top, _mvec(t)), top)


# ---------------------------------------------------------------------------
# decomposition numbers

def decomp_formula(family: str, n: int, types, flavor: str = GROUP) -> int:
    flavor = check_flavor(flavor)
    if family == "A":
        if flavor == COMB:
            raise FlavorUnavailable("family A has no combinatorial flavor")
        types = _check_components("A", types, GROUP)
        return as_int(_type_a(n - 1, types))
    if family == "B":
        types = _check_components("B", types, flavor)
        return as_int(_type_b(n, types, flavor))
    if family == "D":
        types = _check_components("D", types, flavor)
        return as_int(_type_d(n, types, flavor))
    raise InvalidType(f"unknown classical family {family!r}")


def _type_a(N, types) -> Fraction:
    total = sum(t.rank for t in types)
    if total > N:
        return Fraction(0)
    d = len(types)
    val = Fraction(N + 1) ** (d - 1) * binom(N + 1, total + 1)
    for t in types:
        top = N - t.rank + 1
        val *= Fraction(multinomial(top, _mvec(t)), top)
    return val


def _type_b(n, types, flavor) -> Fraction:
    d = len(types)
    total = sum(t.rank for t in types)
    where, count = _special_index(types)
    if count >= 2 or total > n:
        return Fraction(0)
    if count == 1:
        j = where[0]
        val = Fraction(n) ** (d - 1) * binom(n, total)
        val *= multinomial(n - types[j].rank, _mvec(types[j]))
        for i, t in enumerate(types):
            if i != j:
                val *= _q_b(n, t)
        return val
    if flavor == COMB:
        if total >= n:
            return Fraction(0)
        val = Fraction(n) ** d * binom(n - 1, total)
        for t in types:
            val *= _q_b(n, t)
        return val
    # group flavor with A-types only: the combinatorial count plus every way
    # of reading one A_1 as the B_1 it may stand for
    comb = [t.with_flavor(COMB) for t in types]
    val = _type_b(n, comb, COMB)
    for j, t in enumerate(comb):
        if t.a_counts().get(1, 0):
            comps = list(t.components)
            comps.remove(Irr("A", 1))
            swapped = comb[:j] + [CoxType(tuple(comps) + (Irr("B", 1),), COMB)] + comb[j + 1:]
            val += _type_b(n, swapped, COMB)
    return val


def _type_d(n, types, flavor) -> Fraction:
    d = len(types)
    total = sum(t.rank for t in types)
    where, count = _special_index(types)
    if count >= 2 or total > n:
        return Fraction(0)
    if count == 1:
        j = where[0]
        val = Fraction(n - 1) ** (d - 1) * binom(n - 1, total - 1)
        val *= multinomial(n - types[j].rank, _mvec(types[j]))
        for i, t in enumerate(types):
            if i != j:
                val *= d_factor(n, t)
        return val
    if total == 0:
        return Fraction(1)
    factors = [d_factor(n, t) for t in types]
    all_p = prod(factors, start=Fraction(1))
    inner = Fraction(0)
    for j, t in enumerate(types):
        others = prod(factors[:j] + factors[j + 1:], start=Fraction(1))
        mv = _mvec(t)
        top = n - t.rank
        term = 2 * multinomial(top, mv)
        if flavor == GROUP:
            term += multinomial(top, _shift(mv, 3, -1))
            term += multinomial(top, _shift(mv, 1, -2))
        inner += term * others
    # The last coefficient is 2(d-1)(n-1), not 2(d-2)(n-1): summing the
    # full-rank formula over the residual type gives d-1 (for d = 1 the
    # reflection count n(n-1) already needs it), as does the free-factor
    # formula with one block, and the oracle agrees.
    frac = Fraction((n - total) * (n - 1 - total), total)
    inner += (frac - 2 * (d - 1) * (n - 1)) * all_p
    return Fraction(n - 1) ** (d - 1) * binom(n - 1, total - 1) * inner


def full_rank_formula(family: str, n: int, types, flavor: str = GROUP):
    """The full-rank statements, kept separately so the general formulas can
    be checked against them.  Returns None where the closed expression is
    undefined (a zero denominator)."""
    flavor = check_flavor(flavor)
    fam_types = _check_components(family, types, GROUP if family == "A" else flavor)
    r = group_rank(family, n)
    if sum(t.rank for t in fam_types) != r:
        raise RankMismatch("full-rank formula needs total rank equal to the group rank")
    d = len(fam_types)
    where, count = _special_index(fam_types)
    if family == "A":
        N = r
        val = Fraction(N + 1) ** (d - 1)
        for t in fam_types:
            top = N - t.rank + 1
            val *= Fraction(multinomial(top, _mvec(t)), top)
        return as_int(val)
    if count >= 2:
        return 0
    if family == "B":
        if count == 1:
            j = where[0]
            val = Fraction(n) ** (d - 1) * multinomial(n - fam_types[j].rank, _mvec(fam_types[j]))
            for i, t in enumerate(fam_types):
                if i != j:
                    val *= _q_b(n, t)
            return as_int(val)
        if flavor == COMB:
            return 0
        if any(t.rank == n for t in fam_types):
            return None
        val = Fraction(n) ** (d - 1) * prod((_q_b(n, t) for t in fam_types), start=Fraction(1))
        acc = Fraction(0)
        for t in fam_types:
            mv = _mvec(t)
            m0 = n - t.rank - sum(mv)
            if m0 + 1 == 0:
                return None
            acc += Fraction((mv[0] if mv else 0) * (n - t.rank), m0 + 1)
        return as_int(val * acc)
    # family D
    if count == 1:
        j = where[0]
        val = Fraction(n - 1) ** (d - 1) * multinomial(n - fam_types[j].rank, _mvec(fam_types[j]))
        for i, t in enumerate(fam_types):
            if i != j:
                val *= d_factor(n, t)
        return as_int(val)
    factors = [d_factor(n, t) for t in fam_types]
    inner = Fraction(0)
    for j, t in enumerate(fam_types):
        others = prod(factors[:j] + factors[j + 1:], start=Fraction(1))
        mv = _mvec(t)
        term = 2 * multinomial(n - t.rank, mv)
        if flavor == GROUP:
            term += multinomial(n - t.rank, _shift(mv, 3, -1))
            term += multinomial(n - t.rank, _shift(mv, 1, -2))
        inner += term * others
    inner -= 2 * (d - 1) * (n - 1) * prod(factors, start=Fraction(1))
    return as_int(Fraction(n - 1) ** (d - 1) * inner)


# ---------------------------------------------------------------------------
# factorisations with free blocks

def free_factor_count(family: str, n: int, fixed_types, m_vec, s_vec,
                      flavor: str | None = None) -> int:
    """Factorisations c = c_1 ⋯ c_d σ^(1)_1 ⋯ σ^(1)_{m_1} ⋯ σ^(l)_{m_l} with
    additive lengths, type(c_i) = T_i, and Σ_k ℓ(σ^(j)_k) = s_j."""
    m_vec, s_vec = list(m_vec), list(s_vec)
    if len(m_vec) != len(s_vec):
        raise RankMismatch("m_vec and s_vec must have the same length")
    if flavor is None:
        flavor = GROUP if family == "A" else COMB
    flavor = check_flavor(flavor)
    if family == "A" and flavor != GROUP:
        raise FlavorUnavailable("family A has no combinatorial flavor")
    if family in ("B", "D") and flavor != COMB:
        raise FlavorUnavailable("free-factor counts for B and D use combinatorial types")
    types = _check_components(family, fixed_types, flavor)
    r = group_rank(family, n)
    if sum(t.rank for t in types) + sum(s_vec) != r:
        raise RankMismatch("ranks of fixed types and free blocks must add up to the group rank")
    if any(s < 0 for s in s_vec) or any(mm < 0 for mm in m_vec):
        raise RankMismatch("negative block data")
    d = len(types)
    where, count = _special_index(types)
    if count >= 2:
        raise InvalidType("at most one B or D component is allowed among the fixed types")
    if family == "A":
        N = r
        val = Fraction(N + 1) ** (d - 1)
        for t in types:
            top = N - t.rank + 1
            val *= Fraction(multinomial(top, _mvec(t)), top)
        val *= prod(binom(mj * (N + 1), sj) for mj, sj in zip(m_vec, s_vec))
        return as_int(val)
    if family == "B":
        blocks = prod(binom(mj * n, sj) for mj, sj in zip(m_vec, s_vec))
        total = sum(t.rank for t in types)
        if count == 1:
            j = where[0]
            val = Fraction(n) ** (d - 1) * multinomial(n - types[j].rank, _mvec(types[j]))
            for i, t in enumerate(types):
                if i != j:
                    val *= _q_b(n, t)
            return as_int(val * blocks)
        if total == n:
            return 0
        val = Fraction(n) ** (d - 1) * (n - total)
        for t in types:
            val *= _q_b(n, t)
        return as_int(val * blocks)
    # family D
    base = [binom(mj * (n - 1), sj) for mj, sj in zip(m_vec, s_vec)]
    blocks = prod(base)
    if count == 1:
        j = where[0]
        val = Fraction(n - 1) ** (d - 1) * multinomial(n - types[j].rank, _mvec(types[j]))
        for i, t in enumerate(types):
            if i != j:
                val *= d_factor(n, t)
        return as_int(val * blocks)
    factors = [d_factor(n, t) for t in types]
    all_p = prod(factors, start=Fraction(1))
    first = Fraction(0)
    for j, t in enumerate(types):
        others = prod(factors[:j] + factors[j + 1:], start=Fraction(1))
        first += multinomial(n - t.rank, _mvec(t)) * others
    val = 2 * Fraction(n - 1) ** (d - 1) * first * blocks
    shifted = Fraction(0)
    for j, (mj, sj) in enumerate(zip(m_vec, s_vec)):
        alt = base[:j] + [binom(mj * (n - 1) - 1, sj - 2)] + base[j + 1:]
        shifted += mj * prod(alt)
    val += Fraction(n - 1) ** d * all_p * shifted
    val -= 2 * (d - 1) * Fraction(n - 1) ** d * all_p * blocks
    return as_int(val)


# ---------------------------------------------------------------------------
# multichains in NC^m

def _norm_b(n, b):
    b = list(b)
    if len(b) > n and any(b[n:]):
        raise InconsistentRanks("block histogram longer than n")
    b = (b + [0] * n)[:n]
    if any(x < 0 for x in b):
        raise InconsistentRanks("negative block count")
    return b


def _check_s(family, n, s_vec):
    s_vec = list(s_vec)
    if not s_vec or any(s < 0 for s in s_vec):
        raise InconsistentRanks("rank vector must be non-empty and non-negative")
    if sum(s_vec) != group_rank(family, n):
        raise InconsistentRanks(f"ranks must add up to {group_rank(family, n)}")
    return s_vec


def _d_type_from_b(b) -> CoxType:
    """Type of w_0 when its image has no zero block: one A_{i-1} per pair of
    blocks of size m*i."""
    return CoxType(tuple(Irr("A", i) for i, x in enumerate(b[1:], 1) for _ in range(x)))


def multichain_blocks(family: str, n: int, m: int, s_vec, b) -> int:
    """Multichains π_1 <= ... <= π_{l-1} with rk π_i = s_1 + ... + s_i and
    π_1 having b_i (pairs of) non-zero blocks of size m·i."""
    s_vec = _check_s(family, n, s_vec)
    b = _norm_b(n, b)
    nb = sum(b)
    weight = sum(i * x for i, x in enumerate(b, 1))
    if s_vec[0] != n - nb:
        raise InconsistentRanks(f"s_1 = {s_vec[0]} does not match n - Σb = {n - nb}")
    rest = s_vec[1:]
    if family == "A":
        if weight != n:
            return 0
        val = Fraction(multinomial_free(b), nb)
        return as_int(val * prod(binom(m * n, s) for s in rest))
    if family == "B":
        if weight > n:
            return 0
        return multinomial_free(b) * prod(binom(m * n, s) for s in rest)
    if family != "D":
        raise InvalidType(f"unknown classical family {family!r}")
    if weight > n or weight == n - 1:
        return 0
    k = m * (n - 1)
    base = [binom(k, s) for s in rest]
    if weight < n - 1:
        return multinomial_free(b) * prod(base)
    val = Fraction(2 * multinomial_free(b) * prod(base))
    shifted = 0
    for j, s in enumerate(rest):
        shifted += prod(base[:j] + [binom(k - 1, s - 2)] + base[j + 1:])
    val += k * d_factor(n, _d_type_from_b(b)) * shifted
    return as_int(val)


def blocks_only_multichains(family: str, n: int, m: int, l: int, b) -> int:
    """Same count summed over s_2, ..., s_l."""
    if l < 2:
        raise InconsistentRanks("need l >= 2 so that π_1 exists")
    b = _norm_b(n, b)
    nb = sum(b)
    weight = sum(i * x for i, x in enumerate(b, 1))
    if family == "A":
        if weight != n:
            return 0
        return as_int(Fraction(multinomial_free(b), nb) * binom((l - 1) * m * n, nb - 1))
    if family == "B":
        if weight > n:
            return 0
        return multinomial_free(b) * binom((l - 1) * m * n, nb)
    if family != "D":
        raise InvalidType(f"unknown classical family {family!r}")
    if weight > n or weight == n - 1:
        return 0
    k = (l - 1) * m * (n - 1)
    if weight < n - 1:
        return multinomial_free(b) * binom(k, nb)
    return 2 * multinomial_free(b) * binom(k, nb) + \
        multinomial_free([b[0] - 1] + b[1:]) * binom(k, nb - 1)


def rank_selected_chains(family: str, n: int, m: int, s_vec) -> int:
    s_vec = _check_s(family, n, s_vec)
    s1, rest = s_vec[0], s_vec[1:]
    if family == "A":
        val = Fraction(binom(n, s1), n) * prod(binom(m * n, s) for s in rest)
        return as_int(val)
    if family == "B":
        return binom(n, s1) * prod(binom(m * n, s) for s in rest)
    if family != "D":
        raise InvalidType(f"unknown classical family {family!r}")
    k = m * (n - 1)
    base = [binom(k, s) for s in rest]
    val = 2 * binom(n - 1, s1) * prod(base)
    for j, s in enumerate(rest):
        val += m * binom(n - 1, s1) * prod(base[:j] + [binom(k - 1, s - 2)] + base[j + 1:])
    val += binom(n - 2, s1 - 2) * prod(base)
    return val


def total_multichains(family: str, n: int, m: int, l: int) -> int:
    """Number of multichains π_1 <= ... <= π_{l-1} in NC^m."""
    if l < 1:
        raise InconsistentRanks("l must be at least 1")
    if family == "A":
        return as_int(Fraction(binom((l - 1) * m * n + n, n - 1), n))
    if family == "B":
        return binom((l - 1) * m * n + n, n)
    if family != "D":
        raise InvalidType(f"unknown classical family {family!r}")
    k = ((l - 1) * m + 1) * (n - 1)
    return 2 * binom(k, n) + binom(k, n - 1)
