"""Exact binomials and multinomials with the conventions the formulas need.

``binom(a, k)`` is the falling-factorial binomial, valid for any integer top
(so ``binom(-1, 3) == -1``) and zero for ``k < 0``.

``multinomial(M, ms)`` is ``M! / (m_1! ... m_r! (M - Σm)!)`` and vanishes as
soon as any lower entry, including ``M - Σm``, is negative.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product


def binom(a: int, k: int) -> int:
    if k < 0:
        return 0
    if a >= 0:
        return math.comb(a, k)
    # binom(-b, k) = (-1)^k binom(b+k-1, k)
    return (-1) ** k * math.comb(-a + k - 1, k)


def multinomial(M: int, ms) -> int:
    ms = list(ms)
    rest = M - sum(ms)
    if rest < 0 or any(x < 0 for x in ms):
        return 0
    out = math.factorial(M)
    for x in ms + [rest]:
        out //= math.factorial(x)
    return out


def multinomial_free(ms) -> int:
    """Plain multinomial (Σm)! / Π m_i!."""
    ms = list(ms)
    if any(x < 0 for x in ms):
        return 0
    return multinomial(sum(ms), ms)


def as_int(x) -> int:
    """Convert an exact value that must be integral."""
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return x.numerator


def compositions(total: int, parts: int):
    """Weak compositions of ``total`` into ``parts`` non-negative parts."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def histograms(n: int, weight_max: int | None = None):
    """Vectors b_1..b_n of non-negative integers with Σ i·b_i <= weight_max."""
    if weight_max is None:
        weight_max = n
    ranges = [range(weight_max // i + 1) for i in range(1, n + 1)]
    for b in product(*ranges):
        if sum((i + 1) * x for i, x in enumerate(b)) <= weight_max:
            yield b
