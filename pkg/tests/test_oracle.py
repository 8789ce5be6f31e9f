import numpy as np
import pytest

from ncpart.coxtype import COMB, parse_type
from ncpart.errors import FlavorUnavailable
from ncpart.oracle import (MobiusZeta, build_ncm_poset, count_multichains_oracle,
                           decomposition_number_oracle, nc_interval)


def test_interval_sizes():
    # Catalan numbers of each type
    assert len(nc_interval("A", 4)) == 14
    assert len(nc_interval("B", 3)) == 20
    assert len(nc_interval("D", 4)) == 50


def test_ncm_sizes():
    assert len(build_ncm_poset("A", 4, 2)) == 55
    assert len(build_ncm_poset("D", 4, 2)) == 336


def test_poset_is_partial_order():
    p = build_ncm_poset("B", 3, 2)
    leq = p.leq
    assert leq.diagonal().all()
    assert not (leq & leq.T & ~np.eye(len(p), dtype=bool)).any()
    closure = (leq.astype(int) @ leq.astype(int)) > 0
    assert (closure <= leq).all()


def test_rank_layers_and_top():
    p = build_ncm_poset("A", 4, 1)
    assert int(p.rank[p.top]) == p.group_rank
    assert [len(x) for x in p.rank_layers] == [1, 6, 6, 1]


def test_oracle_decomposition_numbers(T):
    assert decomposition_number_oracle("A", 4, [T("A1")] * 3) == 16
    assert decomposition_number_oracle("B", 2, [T("B1", True), T("A1", True)], COMB) == 2
    with pytest.raises(FlavorUnavailable):
        decomposition_number_oracle("A", 3, [T("A1")], COMB)


def test_multichain_oracle():
    p = build_ncm_poset("B", 2, 1)
    assert count_multichains_oracle(p, []) == 1
    assert count_multichains_oracle(p, [1]) == 4
    assert count_multichains_oracle(p, [2, 1]) == 0


def test_mobius_top():
    p = build_ncm_poset("A", 4, 1)
    mz = MobiusZeta(p)
    bottom = int(p.rank_layers[0][0])
    # (-1)^{n-1} C_{n-1}
    assert mz.mu[bottom, p.top] == -5
