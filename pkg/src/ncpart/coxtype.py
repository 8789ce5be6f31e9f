"""Reducible Coxeter types as multisets of irreducible components.

Two flavors are carried around.  The *group* flavor is the ordinary type of a
parabolic subgroup.  The *combinatorial* flavor (``comb``) is the finer
classification read off the cycle structure of a signed permutation, where
B_1 is kept apart from A_1 and D_2, D_3 are kept apart from A_1^2, A_3.

Wire format::

    Irr  ::= A<k> | B<k> | D<k> | I2(<a>) | H3 | H4 | F4 | E6 | E7 | E8
    Type ::= e | Irr('^'<p>)? ('*' Irr('^'<p>)?)*

Tuples of types are comma separated.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import InvalidType, ParseError

GROUP = "group"
COMB = "comb"
FLAVORS = (GROUP, COMB)

_FAMILY_ORDER = {f: i for i, f in enumerate(
    ["A", "B", "D", "I2", "H3", "H4", "F4", "E6", "E7", "E8"])}
_FIXED_RANK = {"H3": 3, "H4": 4, "F4": 4, "E6": 6, "E7": 7, "E8": 8}


def check_flavor(flavor: str) -> str:
    if flavor in ("combinatorial",):
        return COMB
    if flavor not in FLAVORS:
        raise InvalidType(f"unknown flavor {flavor!r}")
    return flavor


class Irr(NamedTuple):
    """One irreducible component.  ``param`` is the subscript for A/B/D and
    the ``a`` of I2(a); ``None`` for I2 means the symbolic parameter."""

    family: str
    param: int | None = None

    @property
    def rank(self) -> int:
        if self.family in ("A", "B", "D"):
            return self.param
        if self.family == "I2":
            return 2
        return _FIXED_RANK[self.family]

    def sort_key(self):
        p = self.param
        return (_FAMILY_ORDER[self.family], p if p is not None else 10**9)

    def __str__(self):
        if self.family in ("A", "B", "D"):
            return f"{self.family}{self.param}"
        if self.family == "I2":
            return "I2(a)" if self.param is None else f"I2({self.param})"
        return self.family


def _validate(c: Irr, flavor: str) -> None:
    f, p = c
    if f not in _FAMILY_ORDER:
        raise InvalidType(f"unknown family {f!r}")
    if f in ("A", "B", "D"):
        if not isinstance(p, int):
            raise InvalidType(f"{f} needs an integer subscript")
        low = {"A": 1, "B": 1, "D": 2}[f]
        if flavor == GROUP:
            low = {"A": 1, "B": 2, "D": 4}[f]
        if p < low:
            raise InvalidType(f"{f}{p} is not a valid {flavor}-flavor component")
    elif f == "I2":
        if p is not None and p < 3:
            raise InvalidType(f"I2({p}) needs a >= 3")


@dataclass(frozen=True)
class CoxType:
    components: tuple = ()
    flavor: str = GROUP

    def __post_init__(self):
        flavor = check_flavor(self.flavor)
        comps = []
        for c in self.components:
            c = Irr(*c)
            if c.family == "A" and c.param == 0:
                continue
            _validate(c, flavor)
            comps.append(c)
        comps.sort(key=Irr.sort_key)
        object.__setattr__(self, "components", tuple(comps))
        object.__setattr__(self, "flavor", flavor)

    @classmethod
    def of(cls, *comps, flavor=GROUP) -> "CoxType":
        return cls(tuple(comps), flavor)

    @classmethod
    def from_a_counts(cls, counts: dict, extra=(), flavor=GROUP) -> "CoxType":
        """Build ``A_1^{m_1} A_2^{m_2} ...`` plus any extra components."""
        comps = [Irr("A", k) for k, mult in counts.items() for _ in range(mult)]
        return cls(tuple(comps) + tuple(extra), flavor)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def a_counts(self) -> Counter:
        """Multiplicities m_k of A_k components."""
        return Counter(c.param for c in self.components if c.family == "A")

    def non_a(self) -> list:
        return [c for c in self.components if c.family != "A"]

    def with_flavor(self, flavor) -> "CoxType":
        return CoxType(self.components, flavor)

    def sort_key(self):
        return (self.rank, tuple(c.sort_key() for c in self.components))

    def __str__(self):
        return print_type(self)

    def __repr__(self):
        return f"CoxType({print_type(self)!r}, {self.flavor})"


EMPTY = CoxType()


def normalize_to_group(t: CoxType) -> CoxType:
    """Apply B_1 -> A_1, D_2 -> A_1^2, D_3 -> A_3."""
    comps = []
    for c in t.components:
        if c == ("B", 1):
            comps.append(Irr("A", 1))
        elif c == ("D", 2):
            comps += [Irr("A", 1), Irr("A", 1)]
        elif c == ("D", 3):
            comps.append(Irr("A", 3))
        else:
            comps.append(c)
    return CoxType(tuple(comps), GROUP)


_TOKEN = re.compile(r"(I2\((\d+|a)\)|[ABD](\d+)|H3|H4|F4|E6|E7|E8)(\^(\d+))?")


def parse_type(s: str, flavor: str = GROUP) -> CoxType:
    text = s.strip()
    if text in ("e", ""):
        if text == "":
            raise ParseError("empty type string", 0)
        return CoxType((), flavor)
    comps = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"expected an irreducible type in {s!r}", pos)
        name, i2, sub, _, power = mt.groups()
        if i2 is not None:
            comp = Irr("I2", None if i2 == "a" else int(i2))
        elif sub is not None:
            comp = Irr(name[0], int(sub))
        else:
            comp = Irr(name)
        comps += [comp] * (int(power) if power else 1)
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        if text[pos] != "*":
            raise ParseError(f"expected '*' in {s!r}", pos)
        pos += 1
    return CoxType(tuple(comps), flavor)


def print_type(t: CoxType) -> str:
    if not t.components:
        return "e"
    out = []
    for comp, mult in Counter(t.components).items():
        out.append(str(comp) + (f"^{mult}" if mult > 1 else ""))
    return "*".join(out)


def parse_tuple(s: str, flavor: str = GROUP) -> list:
    s = s.strip()
    if not s:
        return []
    return [parse_type(part, flavor) for part in s.split(",")]


def print_tuple(types: Iterable[CoxType]) -> str:
    return ",".join(print_type(t) for t in types)


def canonical_tuple(types: Iterable[CoxType]) -> tuple:
    """Sorted tuple of types: decomposition numbers do not depend on order."""
    return tuple(sorted(types, key=CoxType.sort_key))


def total_rank(types: Iterable[CoxType]) -> int:
    return sum(t.rank for t in types)


def integer_partitions(n: int, max_part: int | None = None):
    """Partitions of n as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def types_of_rank(family: str, r: int, flavor: str = GROUP,
                  max_bd: int = 1) -> list:
    """Every type of rank r built from the components available in a
    classical family.  ``max_bd`` caps the number of B/D components, so
    vanishing cases can be generated on purpose with ``max_bd=2``."""
    flavor = check_flavor(flavor)
    if family == "A":
        specials = []
    elif family == "B":
        specials = ["B"]
    elif family == "D":
        specials = ["D"]
    else:
        raise InvalidType(f"no classical family {family!r}")
    low = {"B": 1 if flavor == COMB else 2, "D": 2 if flavor == COMB else 4}
    out = []
    for lam in integer_partitions(r):
        # each part is an A_k, or optionally a B/D component of that rank
        parts = list(lam)
        seen = set()
        for choice in _special_choices(parts, specials, low, max_bd):
            comps = tuple(Irr(f, k) for f, k in choice)
            key = tuple(sorted(comps, key=Irr.sort_key))
            if key in seen:
                continue
            seen.add(key)
            out.append(CoxType(comps, flavor))
    out.sort(key=CoxType.sort_key)
    return out


def _special_choices(parts, specials, low, max_bd):
    if not parts:
        yield []
        return
    head, rest = parts[0], parts[1:]
    for tail in _special_choices(rest, specials, low, max_bd):
        yield [("A", head)] + tail
        used = sum(1 for f, _ in tail if f != "A")
        if used < max_bd:
            for f in specials:
                if head >= low[f]:
                    yield [(f, head)] + tail
