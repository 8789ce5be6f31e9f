"""Self-test suites behind ``ncpart verify``.

Each suite compares closed formulas with brute-force counts (or with a
second, independent computation) and reports the first few disagreements.
``small`` keeps every suite to desk scale; ``full`` widens the ranges.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .bijections import block_histogram, images, nabla, verify_isomorphism
from .combinat import compositions, histograms
from .coxtype import COMB, GROUP, CoxType, Irr, types_of_rank
from .exceptional import (load_table, lookup_N,
                          ranksel_exceptional, refinement_mismatches,
                          total_from_ranksel, zeta_count)
from .formulas import (decomp_formula, group_rank, multichain_blocks,
                       rank_selected_chains, total_multichains)
from .group import parse_element
from .inversion import binsum_check, det_random_suite, lg_random_suite
from .oracle import (build_ncm_poset, count_multichains_oracle,
                     decomposition_table)
from .triangles import (chain_counts, chain_counts_D_closed,
                        chain_counts_oracle, expected_maximal_intervals,
                        fm_check_D, narayana_ratio)

MAX_REPORTED = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, what) -> None:
        self.checked += 1
        if not cond and len(self.failures) < MAX_REPORTED:
            self.failures.append(str(what))


# ranges: family A is parameterised by the number of letters
def _decomp_groups(scale):
    if scale == "small":
        return [("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("D", 4)]
    return [("A", 3), ("A", 4), ("A", 5), ("A", 6), ("B", 2), ("B", 3), ("B", 4), ("B", 5), ("D", 4), ("D", 5)]


def _flavors(family):
    return [GROUP] if family == "A" else [GROUP, COMB]


def type_tuples(family: str, n: int, flavor: str, max_d: int = 3):
    """Tuples of non-empty types with total rank at most the group rank,
    up to reordering, including tuples with two B/D components."""
    r = group_rank(family, n)
    pool = [t for k in range(1, r + 1) for t in types_of_rank(family, k, flavor, max_bd=2)]
    for d in range(1, max_d + 1):
        for combo in itertools.combinations_with_replacement(range(len(pool)), d):
            types = [pool[i] for i in combo]
            if sum(t.rank for t in types) <= r:
                yield types


def _bd_count(types):
    return sum(1 for t in types for c in t.components if c.family in ("B", "D"))


# ---------------------------------------------------------------------------

def suite_decomp(scale="small", seed=0) -> SuiteResult:
    """Closed decomposition numbers against factorisation counts."""
    res = SuiteResult("decomp")
    for family, n in _decomp_groups(scale):
        for flavor in _flavors(family):
            tables = {d: decomposition_table(family, n, d, flavor) for d in (1, 2, 3)}
            for types in type_tuples(family, n, flavor):
                f = decomp_formula(family, n, types, flavor)
                o = tables[len(types)].get(tuple(types), 0)
                res.check(f == o, (family, n, flavor, [str(t) for t in types], f, o))
    return res


def suite_relations(scale="small", seed=0) -> SuiteResult:
    """Order invariance, the rank-sum identity and the vanishing cases."""
    res = SuiteResult("relations")
    rng = random.Random(seed)
    for family, n in _decomp_groups(scale):
        r = group_rank(family, n)
        for flavor in _flavors(family):
            tables = {d: decomposition_table(family, n, d, flavor) for d in (1, 2, 3, 4)}
            completions = {k: types_of_rank(family, k, flavor, max_bd=2) for k in range(r + 1)}
            for types in type_tuples(family, n, flavor):
                tag = (family, n, flavor, [str(t) for t in types])
                f = decomp_formula(family, n, types, flavor)
                o = tables[len(types)].get(tuple(types), 0)
                perms = set(itertools.permutations(types))
                for p in perms:
                    res.check(decomp_formula(family, n, list(p), flavor) == f, ("Aa formula",) + tag)
                    res.check(tables[len(types)].get(p, 0) == o, ("Aa oracle",) + tag)
                deficit = r - sum(t.rank for t in types)
                if deficit and len(types) < 4:
                    extra = completions[deficit]
                    fs = sum(decomp_formula(family, n, types + [t], flavor) for t in extra)
                    res.check(fs == f, ("Ab formula",) + tag + (fs, f))
                    pos = rng.randrange(len(types) + 1)
                    os_ = sum(tables[len(types) + 1].get(tuple(types[:pos] + [t] + types[pos:]), 0)
                              for t in extra)
                    res.check(os_ == o, ("Ab oracle",) + tag + (os_, o))
                if family != "A" and _bd_count(types) >= 2:
                    res.check(f == 0 and o == 0, ("vanishing",) + tag + (f, o))
    return res


def _corollary_groups(scale):
    base = [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 4)]
    return base + [("A", 5), ("B", 4), ("D", 5)] if scale == "full" else base


def suite_corollary(scale="small", seed=0) -> SuiteResult:
    """Multichain counts with a prescribed block histogram of ∇π_1."""
    res = SuiteResult("corollary")
    for family, n in _corollary_groups(scale):
        r = group_rank(family, n)
        for m in (1, 2):
            p = build_ncm_poset(family, n, m)
            hist = [block_histogram(img)[0] for img in images(p)]
            for l in (2, 3):
                for s in compositions(r, l):
                    ranks = list(itertools.accumulate(s[:-1]))
                    for b in histograms(n):
                        if sum(b) != n - s[0]:
                            continue
                        f = multichain_blocks(family, n, m, s, b)
                        o = count_multichains_oracle(p, ranks, lambda i, b=b: hist[i] == b)
                        res.check(f == o, (family, n, m, s, b, f, o))
    return res


def suite_collapses(scale="small", seed=0) -> SuiteResult:
    """Summing out the histogram, then the ranks, and comparing with the
    oracle.  Both sides are polynomials in m of degree at most the rank, so
    agreement at rank + 1 values of m is an identity in m."""
    res = SuiteResult("collapses")
    # n <= 6 in group rank; for A that is up to seven letters
    for family, lo, hi in (("A", 2, 7), ("B", 2, 6), ("D", 4, 6)):
        for n in range(lo, hi + 1):
            r = group_rank(family, n)
            for m in range(1, r + 2):
                for l in range(1, 5):
                    total = 0
                    for s in compositions(r, l):
                        rs = rank_selected_chains(family, n, m, s)
                        total += rs
                        if l >= 2:
                            sb = sum(multichain_blocks(family, n, m, s, b)
                                     for b in histograms(n) if sum(b) == n - s[0])
                            res.check(sb == rs, (family, n, m, s, "Σ_b", sb, rs))
                    tm = total_multichains(family, n, m, l)
                    res.check(total == tm, (family, n, m, l, "Σ_s", total, tm))
    for family, n in _corollary_groups(scale):
        r = group_rank(family, n)
        for m in (1, 2):
            p = build_ncm_poset(family, n, m)
            for l in (1, 2, 3):
                o_total = 0
                for s in compositions(r, l):
                    o = count_multichains_oracle(p, list(itertools.accumulate(s[:-1])))
                    o_total += o
                    res.check(o == rank_selected_chains(family, n, m, s), (family, n, m, s, "oracle", o))
                res.check(o_total == total_multichains(family, n, m, l), (family, n, m, l, "oracle total"))
    return res


def suite_fm(scale="small", seed=0) -> SuiteResult:
    res = SuiteResult("fm")
    for m in (1, 2):
        rep = fm_check_D(4, m)
        res.check(rep.ok, ("D4", m, rep.mismatches))
    return res


def suite_intervals(scale="small", seed=0) -> SuiteResult:
    """l-independence and the Narayana ratio for A and B; for D the closed
    counts against chain counting in the poset, and l-dependence where it
    occurs."""
    res = SuiteResult("intervals")
    for family, top in (("A", 5), ("B", 4)):
        for n in range(2, top + 1):
            for m in (1, 2, 3):
                for i in range(group_rank(family, n) + 1):
                    want = narayana_ratio(family, n, m, i)
                    for l in (1, 2, 3):
                        got = expected_maximal_intervals(family, n, m, i, l)
                        res.check(got == want, (family, n, m, i, l, got, want))
    for m in (1, 2):
        p = build_ncm_poset("D", 4, m)
        for i in range(5):
            for l in (1, 2, 3):
                closed = chain_counts_D_closed(4, m, i, l)
                res.check(closed == chain_counts("D", 4, m, i, l), ("D4 closed vs ranksel", m, i, l))
                res.check(closed == chain_counts_oracle(p, i, l), ("D4 closed vs oracle", m, i, l))
    e = [expected_maximal_intervals("D", 4, 2, 2, l) for l in (1, 2)]
    res.check(e[0] != e[1], ("D4 m=2 i=2 should depend on l", e))
    return res


def _table_entries_check(res, group):
    for key, val in load_table(group).entries.items():
        res.check(lookup_N(group, list(key)) == val, (group, [str(t) for t in key]))


def suite_exceptional(scale="small", seed=0) -> SuiteResult:
    res = SuiteResult("exceptional")
    for g in ("I2", "H3", "H4", "F4", "E6", "E7", "E8"):
        _table_entries_check(res, g)
        res.check(lookup_N(g, []) == 1, (g, "N(∅)"))
    a1 = CoxType.of(Irr("A", 1))
    res.check(lookup_N("E8", [a1] * 8) == 37968750, "E8 A1^8")
    res.check(lookup_N("H3", [a1]) == 15, "H3 A1")
    for g in ("H3", "H4", "F4", "E6", "E7", "E8"):
        bad = refinement_mismatches(g)
        res.check(not bad, (g, "refinement", bad[:3]))
    # the sum over all rank vectors must reproduce the degree product
    for g in ("I2", "H3", "H4", "F4", "E6", "E7", "E8"):
        for l in (1, 2, 3):
            res.check(total_from_ranksel(g, l) == zeta_count(g, l), (g, l, "total"))
    for base in ((4, 2, 1, 1), (2, 4, 1, 1)):
        vals = {ranksel_exceptional("E8", (base[0],) + p) for p in set(itertools.permutations(base[1:]))}
        res.check(len(vals) == 1, ("E8 reordering", base))
    return res


def suite_bijections(scale="small", seed=0) -> SuiteResult:
    res = SuiteResult("bijections")
    cases = [("A", 3, 1), ("A", 3, 2), ("A", 4, 1), ("A", 4, 2), ("A", 5, 1), ("A", 5, 2),
             ("B", 2, 1), ("B", 2, 2), ("B", 3, 1), ("B", 3, 2), ("D", 4, 1), ("D", 4, 2)]
    for family, n, m in cases:
        rep = verify_isomorphism(family, n, m)
        res.check(rep.ok, rep)
    for family, n, m, elems, blocks in WORKED_EXAMPLES:
        el = [parse_element(s, n=n, family=family) for s in elems]
        got = nabla(family, n, m, el).as_sets()
        res.check(got == expected_blocks(family, blocks), (family, n, m, "example"))
    return res


def suite_inversion(scale="small", seed=0) -> SuiteResult:
    res = SuiteResult("inversion")
    bad = lg_random_suite(count=50, seed=seed, max_d=3, order=6)
    res.check(not bad, ("Lagrange-Good", bad[:3]))
    for which in ("lemma1", "cor1"):
        bad = det_random_suite(which, count=100, seed=seed)
        res.check(not bad, (which, bad[:3]))
    for M in range(9):
        for r in range(9):
            res.check(binsum_check(M, r), ("binsum", M, r))
    return res


# the three worked examples: (family, n, m, (w_0, ..., w_m), blocks); for B/D
# each listed block stands for itself and its negative
WORKED_EXAMPLES = [
    ("A", 7, 3, ("(4,5,6)", "(3,6)", "(1,7)", "(1,2,6)"),
     [(1, 2, 21), (3, 19, 20), (4, 5, 6), (7, 17, 18), tuple(range(8, 17))]),
    ("B", 5, 3, ("((2,4))", "[1]", "((1,4))", "((2,3))((4,5))"),
     [(1, -2, -12), (3, 4, 5, 6, 10, 11), (7, 8, 9), (13, 14, 15)]),
    ("D", 6, 3, ("((2,-4))", "((2,-6))((4,5))", "((1,-5))((2,3))", "((3,6))"),
     [(1, 2, -15), (3, 4, -17, -18, -10, -14), (5, 9, -16), (6, 7, 8), (11, 12, 13)]),
]


def expected_blocks(family, blocks) -> frozenset:
    out = {frozenset(b) for b in blocks}
    if family != "A":
        out |= {frozenset(-x for x in b) for b in blocks}
    return frozenset(out)


SUITES = {
    "decomp": suite_decomp,
    "relations": suite_relations,
    "corollary": suite_corollary,
    "collapses": suite_collapses,
    "fm": suite_fm,
    "intervals": suite_intervals,
    "exceptional": suite_exceptional,
    "bijections": suite_bijections,
    "inversion": suite_inversion,
}


def run_suite(name: str, scale="small", seed=0) -> SuiteResult:
    t = time.perf_counter()
    res = SUITES[name](scale, seed)
    res.seconds = time.perf_counter() - t
    return res
