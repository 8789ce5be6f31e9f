from fractions import Fraction

import pytest

from ncpart.combinat import binom, compositions, histograms, multinomial
from ncpart.coxtype import COMB
from ncpart.errors import InconsistentRanks, RankMismatch
from ncpart.formulas import (blocks_only_multichains, d_factor, decomp_formula, free_factor_count,
                             full_rank_formula, multichain_blocks, rank_selected_chains,
                             total_multichains)
from ncpart.oracle import decomposition_number_oracle, free_factor_oracle


def test_reflection_factorisations(T):
    # n^{n-2} in S_n, n^n in B_n, 2(n-1)^n in D_n
    assert decomp_formula("A", 5, [T("A1")] * 4) == 125
    assert decomp_formula("B", 3, [T("A1")] * 3) == 27
    assert decomp_formula("D", 4, [T("A1")] * 4) == 162


def test_small_values(T):
    assert decomp_formula("B", 2, [T("B1", True), T("A1", True)], COMB) == 2
    assert decomp_formula("A", 4, []) == 1
    assert decomp_formula("B", 3, [T("B2"), T("B1", True)], COMB) == 0


def test_order_invariance(T):
    a = decomp_formula("D", 4, [T("A1"), T("A2"), T("A1")])
    b = decomp_formula("D", 4, [T("A2"), T("A1"), T("A1")])
    assert a == b


def test_too_much_rank_is_zero(T):
    assert decomp_formula("B", 2, [T("B2"), T("A1")]) == 0


def test_full_rank_agrees_with_general(T):
    for fam, n, types in [("A", 5, ["A1", "A1^2", "A1"]), ("B", 3, ["A1", "B2"]),
                          ("D", 4, ["A1", "A3"]), ("D", 4, ["A1^2", "A1^2"])]:
        ts = [T(x) for x in types]
        assert full_rank_formula(fam, n, ts) == decomp_formula(fam, n, ts)


def test_d_factor_remark(T):
    # a rank n-1 type in D_n contributes only if it is A_{n-1}
    assert d_factor(4, T("A3")) == 1
    assert d_factor(4, T("A1^3")) == 0


def test_free_factor_counts_match_oracle(T):
    cases = [("B", 2, [], [1], [2]), ("B", 3, [T("B1", True)], [2], [2]),
             ("D", 4, [T("A1")], [1, 2], [1, 2]), ("A", 4, [], [3], [3])]
    for fam, n, fixed, mv, sv in cases:
        assert free_factor_count(fam, n, fixed, mv, sv) == free_factor_oracle(
            fam, n, fixed, mv, sv, "group" if fam == "A" else "comb")


def test_formula_vs_oracle_spot(T):
    ts = [T("A1", True), T("D2", True)]
    assert decomp_formula("D", 4, ts, COMB) == decomposition_number_oracle("D", 4, ts, COMB)


def test_rank_selected_sums():
    for fam, n in [("A", 5), ("B", 4), ("D", 5)]:
        r = n - 1 if fam == "A" else n
        for m in (1, 2):
            for l in (1, 2, 3):
                tot = sum(rank_selected_chains(fam, n, m, s) for s in compositions(r, l))
                assert tot == total_multichains(fam, n, m, l)


def test_totals_known():
    # Fuss-Catalan numbers
    assert total_multichains("A", 4, 1, 2) == 14
    assert total_multichains("B", 3, 1, 2) == 20
    assert total_multichains("D", 4, 1, 2) == 50
    assert total_multichains("D", 4, 2, 2) == 336


def test_blocks_only_collapses():
    for fam, n in [("A", 4), ("B", 3), ("D", 4)]:
        r = n - 1 if fam == "A" else n
        for l in (2, 3):
            for b in histograms(n):
                direct = blocks_only_multichains(fam, n, 2, l, b)
                if sum(b) == 0 and fam == "A":
                    continue
                summed = sum(multichain_blocks(fam, n, 2, s, b)
                             for s in compositions(r, l) if s[0] == n - sum(b))
                assert direct == summed, (fam, n, l, b)


def test_bad_rank_vectors():
    with pytest.raises(InconsistentRanks):
        rank_selected_chains("B", 3, 1, [1, 1])
    with pytest.raises(InconsistentRanks):
        multichain_blocks("B", 3, 1, [1, 2], [1, 0, 0])


def test_combinat():
    assert binom(-3, 2) == 6
    assert binom(5, -1) == 0
    assert multinomial(4, [1, 1]) == 12
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
