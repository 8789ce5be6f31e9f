import pytest

from ncpart.oracle import MobiusZeta, build_ncm_poset
from ncpart.polys import ExactPoly
from ncpart.triangles import (_d_numerator_with_l_minus_one, chain_counts, chain_counts_D_closed,
                              chain_counts_oracle, dual_m_triangle, dual_poset, expected_maximal_intervals,
                              fm_check_D, m_triangle, narayana, narayana_ratio,
                              reciprocal_transform, zeta_sum_D, zeta_sum_oracle)


def test_m_triangle_s3():
    p = build_ncm_poset("A", 3, 1)
    x, y = ExactPoly.var("x", ("x", "y")), ExactPoly.var("y", ("x", "y"))
    want = x**2 * y**2 - 3 * x * y**2 + 3 * x * y + 2 * y**2 - 3 * y + 1
    assert m_triangle(p) == want


@pytest.mark.parametrize("family,n,m", [("A", 4, 1), ("B", 3, 2), ("D", 4, 1)])
def test_dual_is_reciprocal(family, n, m):
    p = build_ncm_poset(family, n, m)
    assert dual_m_triangle(p) == reciprocal_transform(m_triangle(p), p.group_rank)


def test_mobius_matches_zeta_at_minus_one():
    p = build_ncm_poset("B", 3, 1)
    mz = MobiusZeta(p)
    for u in range(0, len(p), 7):
        for w in range(0, len(p), 5):
            if p.leq[u, w]:
                assert mz.Z(u, w, -1) == mz.mu[u, w]
                assert mz.Z(u, w, 1) == 1


def test_zeta_sum_closed_vs_poset():
    p = build_ncm_poset("D", 4, 1)
    # the closed sum is stated on the dual poset
    d = dual_poset(p)
    mz = MobiusZeta(d)
    for z in (-1, 2, 3):
        for s in range(5):
            for r in range(s + 1):
                assert zeta_sum_D(4, 1, s, r, z) == zeta_sum_oracle(d, mz, s, r, z)


@pytest.mark.parametrize("m", [1, 2])
def test_fm(m):
    rep = fm_check_D(4, m)
    assert rep.ok, rep.mismatches
    assert rep.f_side.coeff(0, 0) == 1


def test_narayana():
    assert [narayana("A", 4, 1, k) for k in range(4)] == [1, 6, 6, 1]
    assert [narayana("B", 3, 1, k) for k in range(4)] == [1, 9, 9, 1]


def test_intervals_ab_are_narayana_ratios():
    for l in (1, 2, 3):
        assert expected_maximal_intervals("B", 3, 2, 1, l) == narayana_ratio("B", 3, 2, 1)
        assert expected_maximal_intervals("A", 4, 3, 2, l) == narayana_ratio("A", 4, 3, 2)


def test_d_closed_counts_match_oracle():
    p = build_ncm_poset("D", 4, 2)
    for i in range(5):
        for l in (1, 2, 3):
            assert chain_counts_D_closed(4, 2, i, l) == chain_counts_oracle(p, i, l)
            assert chain_counts_D_closed(4, 2, i, l) == chain_counts("D", 4, 2, i, l)


def test_d_numerator_needs_l_not_l_minus_one():
    p = build_ncm_poset("D", 4, 2)
    num = chain_counts_oracle(p, 2, 2)[0]
    assert _d_numerator_with_l_minus_one(4, 2, 2, 2) != num


def test_d_depends_on_l():
    a = expected_maximal_intervals("D", 4, 2, 2, 1)
    b = expected_maximal_intervals("D", 4, 2, 2, 2)
    assert a != b


def test_d_m1_is_constant_one():
    assert {expected_maximal_intervals("D", 4, 1, i, l) for i in range(5) for l in (1, 2, 3)} == {1}


def test_i_out_of_range():
    with pytest.raises(ValueError):
        expected_maximal_intervals("B", 3, 1, 4, 1)
