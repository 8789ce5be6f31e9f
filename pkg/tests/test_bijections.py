import pytest

from ncpart.bijections import (SetPartition, annulus_noncrossing, block_histogram,
                               circle_noncrossing, enumerate_partitions, is_valid, nabla,
                               refines, verify_isomorphism, w0_histogram)
from ncpart.errors import BadBlockSize
from ncpart.group import parse_element
from ncpart.verify import WORKED_EXAMPLES, expected_blocks


@pytest.mark.parametrize("example", WORKED_EXAMPLES, ids=["A7", "B5", "D6"])
def test_worked_examples(example):
    family, n, m, elems, blocks = example
    el = [parse_element(s, n=n, family=family) for s in elems]
    p = nabla(family, n, m, el)
    assert p.as_sets() == expected_blocks(family, blocks)
    assert is_valid(p)


def test_a_example_histogram():
    family, n, m, elems, _ = WORKED_EXAMPLES[0]
    el = [parse_element(s, n=n, family=family) for s in elems]
    b, zero = block_histogram(nabla(family, n, m, el))
    # four blocks of size 3 and one of size 9
    assert b == (4, 0, 1, 0, 0, 0, 0) and zero == 0
    assert w0_histogram(family, n, el[0])[0] == b


@pytest.mark.parametrize("family,n,m", [("A", 3, 1), ("A", 4, 2), ("B", 2, 1), ("B", 3, 2),
                                        ("D", 4, 1)])
def test_isomorphism(family, n, m):
    rep = verify_isomorphism(family, n, m)
    assert rep.ok, rep


def test_target_sizes():
    # Fuss-Catalan numbers
    assert len(enumerate_partitions("A", 4, 2)) == 55
    assert len(enumerate_partitions("B", 3, 2)) == 84
    assert len(enumerate_partitions("D", 4, 1)) == 50


def test_crossing_detection():
    key = abs
    assert circle_noncrossing([(1, 2), (3, 4)], key)
    assert not circle_noncrossing([(1, 3), (2, 4)], key)


def test_refines():
    fine = frozenset({frozenset({1}), frozenset({2}), frozenset({3, 4})})
    coarse = frozenset({frozenset({1, 2}), frozenset({3, 4})})
    assert refines(fine, coarse) and not refines(coarse, fine)


def test_bad_block_size():
    p = SetPartition("A", 2, 2, ((1, 2, 3), (4,)))
    with pytest.raises(BadBlockSize):
        block_histogram(p)


def test_crossing_partition_invalid():
    p = SetPartition("A", 4, 1, ((1, 3), (2, 4)))
    assert not is_valid(p)
