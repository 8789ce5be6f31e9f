"""Decomposition numbers of the exceptional groups, read from data tables,
and rank-selected chain counts in NC^m as polynomials in m.

Each table lists the non-zero full-rank numbers of one group (a few explicit
zeros are listed explicitly).  Lower-rank numbers follow from

    N(T_1, ..., T_d) = Σ_{rk T = n - Σ rk T_i} N(T_1, ..., T_d, T),

the sum running over the types occurring in the table; any other type
contributes nothing.  The I2 table is parametric in ``a``.

Data file format: ``#`` starts a comment; otherwise one entry per line,
a comma-separated type tuple (``e`` for the empty tuple), a tab, and the
value (an integer, or ``a``).
"""

from __future__ import annotations

import hashlib
import math
import threading
from fractions import Fraction
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .combinat import compositions
from .coxtype import GROUP, CoxType, Irr, canonical_tuple, integer_partitions, parse_tuple, types_of_rank
from .errors import RankMismatch, UnknownGroup
from .polys import ExactPoly

RANKS = {"I2": 2, "H3": 3, "H4": 4, "F4": 4, "E6": 6, "E7": 7, "E8": 8}

DEGREES = {
    "H3": (2, 6, 10),
    "H4": (2, 12, 20, 30),
    "F4": (2, 6, 8, 12),
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
}

# sha256 of each data file; a mismatch means the table was edited
PINS = {
    "E6": "a1af9d8c866187c410a8e1e0ad6d61e694bc5b5ee407cd16f08ac4acd680a6ae",
    "E7": "433b572cad5af071bbb1326d86c5d32a9e6bbf5932ced9cf20cee813c3b3d02b",
    "E8": "e329ef0d9005f88182085bded953b6c4e9e756557d5f5f29a36911b0c10185b2",
    "F4": "ed791fe0d7b7bf67014be08763125aaf0af2c9b03dca709bb24092454c4b15fe",
    "H3": "959027d1799c95a67cfd565638de82a409c394bc12f17301cfccb5a89d47b88e",
    "H4": "cb99cadfd3ca40b484ce49940d6bbf1aab43b3a5a3fda60208a3c643ef8f07fd",
    "I2": "1a3b6c1fdb3b09cfc5fab92bfae1a9424505c5997b81eefbf67422e58627b83e",
}


def _read(group: str) -> str:
    return resources.files("ncpart").joinpath("data").joinpath(f"{group}.txt").read_text()


def data_hash(group: str) -> str:
    return hashlib.sha256(_read(group).encode()).hexdigest()


def canonical_group(group: str) -> tuple:
    """'E8' -> ('E8', None); 'I2' or 'I2(a)' -> ('I2', None); 'I2(5)' -> ('I2', 5)."""
    g = group.strip()
    if g in ("I2", "I2(a)"):
        return "I2", None
    if g.startswith("I2(") and g.endswith(")"):
        try:
            a = int(g[3:-1])
        except ValueError:
            raise UnknownGroup(f"bad dihedral parameter in {group!r}") from None
        if a < 3:
            raise UnknownGroup("I2(a) needs a >= 3")
        return "I2", a
    if g not in RANKS:
        raise UnknownGroup(f"no table for {group!r}")
    return g, None


@dataclass
class DecompTable:
    group: str
    rank: int
    entries: dict                       # canonical tuple -> int or ExactPoly in a
    universe: dict = field(default_factory=dict)   # rank -> list of types
    vars: tuple = ("m",)

    def value(self, key: tuple):
        return self.entries.get(key, 0)


def _specialise(t: CoxType, a) -> CoxType:
    if a is None:
        return t
    return CoxType(tuple(Irr("I2", a) if c == ("I2", None) else c for c in t.components), GROUP)


_TABLES: dict = {}
_LOCK = threading.Lock()


def load_table(group: str) -> DecompTable:
    g, a = canonical_group(group)
    key = (g, a)
    with _LOCK:
        if key in _TABLES:
            return _TABLES[key]
        text = _read(g)
        pin = PINS.get(g)
        if pin is not None and hashlib.sha256(text.encode()).hexdigest() != pin:
            raise RuntimeError(f"data file for {g} does not match its pinned hash")
        symbolic = g == "I2" and a is None
        vars = ("m", "a") if symbolic else ("m",)
        entries = {}
        universe = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            lhs, rhs = line.split("\t")
            types = [] if lhs == "e" else [_specialise(t, a) for t in parse_tuple(lhs)]
            if rhs == "a":
                val = ExactPoly.var("a", vars) if symbolic else a
            else:
                val = int(rhs)
            for t in types:
                universe.setdefault(t.rank, set()).add(t)
            entries[canonical_tuple(types)] = val
        universe = {r: sorted(ts, key=CoxType.sort_key) for r, ts in universe.items()}
        table = DecompTable(g if a is None else f"I2({a})", RANKS[g], entries, universe, vars)
        _TABLES[key] = table
        return table


def full_rank_entries(group: str) -> dict:
    t = load_table(group)
    return {k: v for k, v in t.entries.items() if sum(x.rank for x in k) == t.rank}


def lookup_N(group: str, types):
    """N(T_1, ..., T_d) for an exceptional group.  Empty types are dropped;
    rank-deficient tuples are completed by summing over one more factor."""
    gkey = canonical_group(group)
    load_table(group)
    return _lookup(gkey, canonical_tuple(t for t in types if not t.is_empty))


@lru_cache(maxsize=None)
def _lookup(gkey: tuple, key: tuple):
    table = _TABLES[gkey]
    r = sum(t.rank for t in key)
    if r > table.rank:
        return 0
    if r == table.rank:
        return table.value(key)
    total = 0
    for t in table.universe.get(table.rank - r, []):
        total = total + _lookup(gkey, canonical_tuple(key + (t,)))
    return total


# ---------------------------------------------------------------------------
# rank-selected chains

def _multinomial_in_m(counts, vars) -> ExactPoly:
    """m! / (k_1! ... k_r! (m - Σk)!) as a polynomial in m."""
    K = sum(counts)
    coeff = math.factorial(K)
    for k in counts:
        coeff //= math.factorial(k)
    return ExactPoly.falling("m", K, vars) * coeff


def ranksel_generic(rank: int, N, universe, s_vec, vars=("m",)) -> ExactPoly:
    """Number of multichains π_1 <= ... <= π_{l-1} in NC^m with
    rk π_i = s_1 + ... + s_i, as a polynomial in m.

    ``N(types)`` supplies decomposition numbers and ``universe(r)`` the
    candidate types of rank r.  Each of the blocks 2..l splits its rank s_j
    into an integer partition λ whose parts sit on some of the m factors;
    the placements are counted by the multinomial in m."""
    s_vec = list(s_vec)
    if sum(s_vec) != rank or any(s < 0 for s in s_vec):
        raise RankMismatch(f"ranks {s_vec} do not add up to {rank}")
    firsts = [CoxType()] if s_vec[0] == 0 else universe(s_vec[0])
    # each block: list of (weight polynomial, list of type lists)
    blocks = []
    for s in s_vec[1:]:
        options = []
        for lam in integer_partitions(s):
            mult = Counter(lam)
            weight = _multinomial_in_m(list(mult.values()), vars)
            choices = [[]]
            for part in lam:
                choices = [c + [t] for c in choices for t in universe(part)]
            options.append((weight, choices))
        blocks.append(options)
    total = ExactPoly.const(0, vars)

    def walk(j, weight, acc):
        nonlocal total
        if j == len(blocks):
            for t0 in firsts:
                val = N([t0] + acc)
                if val:
                    total = total + weight * val
            return
        for w, choices in blocks[j]:
            for c in choices:
                walk(j + 1, weight * w, acc + c)

    walk(0, ExactPoly.const(1, vars), [])
    return total


def ranksel_exceptional(group: str, s_vec) -> ExactPoly:
    table = load_table(group)
    return ranksel_generic(table.rank, lambda ts: lookup_N(group, ts),
                           lambda r: table.universe.get(r, []), s_vec, table.vars)


def ranksel_classical(family: str, n: int, s_vec) -> ExactPoly:
    """Same construction with the closed decomposition-number formulas; n is
    the number of letters for A and the rank for B, D."""
    from .formulas import decomp_formula, group_rank

    rank = group_rank(family, n)
    return ranksel_generic(rank, lambda ts: decomp_formula(family, n, [t for t in ts if not t.is_empty]),
                           lambda r: types_of_rank(family, r), s_vec)


def zeta_count(group: str, l: int) -> ExactPoly:
    """Π_i ((l-1) m h + d_i) / d_i, the number of multichains of length l-1
    in NC^m, from the degrees d_i and Coxeter number h; for I2(a) the degrees
    are 2 and a."""
    g, a = canonical_group(group)
    if g == "I2":
        vars = ("m", "a") if a is None else ("m",)
        m = ExactPoly.var("m", vars)
        if a is None:
            A = ExactPoly.var("a", vars)
            # ((l-1) m a + 2)/2 * ((l-1) m a + a)/a = ((l-1) m a + 2)((l-1) m + 1)/2
            return ((l - 1) * m * A + 2) * ((l - 1) * m + 1) * Fraction(1, 2)
        degrees = (2, a)
    else:
        vars = ("m",)
        m = ExactPoly.var("m", vars)
        degrees = DEGREES[g]
    h = max(degrees)
    out = ExactPoly.const(1, vars)
    for d in degrees:
        out = out * ((l - 1) * h * m + d) * Fraction(1, d)
    return out


def total_from_ranksel(group: str, l: int) -> ExactPoly:
    table = load_table(group)
    out = ExactPoly.const(0, table.vars)
    for s in compositions(table.rank, l):
        out = out + ranksel_exceptional(group, s)
    return out


# ---------------------------------------------------------------------------
# consistency of the tables with reflection counts

_H_ORDER = {"H3": (10, 120), "H4": (30, 14400), "F4": (12, 1152),
            "E6": (12, 51840), "E7": (18, 2903040), "E8": (30, 696729600)}


def reduced_reflection_count(t: CoxType) -> Fraction:
    """Number of minimal reflection factorisations of a Coxeter element of
    type t: r!/Π r_i! times r_i! h_i^{r_i}/|W_i| for each component."""
    out = Fraction(math.factorial(t.rank))
    for c in t.components:
        fam, r = c.family, c.rank
        if fam == "A":
            h, order = r + 1, math.factorial(r + 1)
        elif fam == "B":
            h, order = 2 * r, 2 ** r * math.factorial(r)
        elif fam == "D":
            h, order = 2 * (r - 1), 2 ** (r - 1) * math.factorial(r)
        elif fam == "I2":
            h, order = c.param, 2 * c.param
        else:
            h, order = _H_ORDER[fam]
        out *= Fraction(h ** r, order)
    return out


def refinement_mismatches(group: str) -> list:
    """Split each non-A_1 entry of every full-rank tuple into reflections in
    two ways: N(rest, A_1^r) directly, and Σ_T N(rest, T) · (reflection
    factorisations of type T).  Returns the tuples where the two differ."""
    table = load_table(group)
    a1 = CoxType.of(Irr("A", 1))
    bad = []
    for key in full_rank_entries(group):
        for i, t in enumerate(key):
            if t == a1:
                continue
            rest = list(key[:i] + key[i + 1:])
            lhs = lookup_N(group, rest + [a1] * t.rank)
            rhs = sum(lookup_N(group, rest + [s]) * reduced_reflection_count(s)
                      for s in table.universe.get(t.rank, []))
            if lhs != rhs:
                bad.append((key, i, lhs, rhs))
    return bad
