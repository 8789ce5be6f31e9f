import pytest

import ncpart.group as group

from ncpart.coxtype import (COMB, GROUP, CoxType, Irr, canonical_tuple, normalize_to_group,
                            parse_tuple, parse_type, print_tuple, print_type, types_of_rank)
from ncpart.errors import NotInGroup, ParseError, TooLarge
from ncpart.group import (SignedPermutation, absolute_length, bfs_length, closed_form_length,
                          combinatorial_type, coxeter_element, format_element, group_elements,
                          group_order, le_T, length_table, parse_element, reflections)


def test_type_round_trip():
    for text in ["A1", "A1^2*A2", "B3", "D4*A1", "E8", "H3", "I2(5)"]:
        t = parse_type(text)
        assert parse_type(print_type(t)) == t


def test_component_order_does_not_matter():
    assert parse_type("A2*A1") == parse_type("A1*A2")
    a, b = parse_type("A2"), parse_type("A1")
    assert canonical_tuple([a, b]) == canonical_tuple([b, a])


def test_comb_types_fold_to_group_types():
    assert normalize_to_group(parse_type("B1", COMB)) == parse_type("A1")
    assert normalize_to_group(parse_type("D3", COMB)) == parse_type("A3")
    assert normalize_to_group(parse_type("D2", COMB)) == parse_type("A1^2")


def test_bad_type_text():
    with pytest.raises(ParseError):
        parse_type("X7")


def test_types_of_rank_b2():
    assert [str(t) for t in types_of_rank("B", 2)] == [str(parse_type(s)) for s in ("A1^2", "A2", "B2")]


def test_tuple_printing():
    ts = parse_tuple("B1,A1", COMB)
    assert print_tuple(ts) == "B1,A1"


def test_group_orders():
    assert group_order("A", 4) == 24
    assert group_order("B", 3) == 48
    assert group_order("D", 4) == 192
    assert len(list(group_elements("D", 4))) == 192


def test_reflection_counts():
    # n(n-1)/2, n^2, n(n-1)
    assert len(reflections("A", 5)) == 10
    assert len(reflections("B", 3)) == 9
    assert len(reflections("D", 4)) == 12


@pytest.mark.parametrize("family,n", [("A", 4), ("B", 3), ("D", 4)])
def test_closed_form_length_matches_bfs(family, n):
    table = length_table(family, n)
    for img, ell in table.items():
        w = SignedPermutation(img, family)
        assert closed_form_length(w, family) == ell


def test_coxeter_elements():
    assert format_element(coxeter_element("A", 4)) == "((1,2,3,4))"
    assert format_element(coxeter_element("B", 3)) == "[1,2,3]"
    c = coxeter_element("D", 4)
    assert absolute_length(c, "D") == 4
    assert bfs_length(c, "D") == 4


def test_parse_and_format():
    w = parse_element("((1,-2))[3]", n=3, family="B")
    assert w.img == (-2, -1, -3)
    assert parse_element(format_element(w), n=3, family="B") == w
    assert str(combinatorial_type(w, "B")) == str(parse_type("A1*B1", COMB))


def test_d_membership():
    with pytest.raises(NotInGroup):
        parse_element("[1]", n=4, family="D")


def test_absolute_order_basics():
    c = coxeter_element("B", 3)
    e = SignedPermutation.identity(3, "B")
    assert le_T(e, c, "B") and not le_T(c, e, "B")


def test_size_guard(monkeypatch):
    # start from an empty memo so earlier tests cannot serve the table
    monkeypatch.setattr(group, "_LENGTH_MEMO", {})
    monkeypatch.setenv("NCPART_ORACLE_LIMIT", "100")
    with pytest.raises(TooLarge):
        length_table("B", 4)
    monkeypatch.setenv("NCPART_ORACLE_LIMIT", "400")
    assert len(length_table("B", 4)) == 384
