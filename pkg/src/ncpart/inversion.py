"""Truncated power series in several variables, Lagrange-Good inversion, and
exact checks of two determinant evaluations and a multinomial sum.

Series are truncated by total degree: a series of order N knows every
coefficient of total degree <= N and nothing beyond.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .combinat import binom, histograms, multinomial
from .errors import BadComposition, NotAUnit, PreconditionViolated, SingularPoint


class TruncatedSeries:
    __slots__ = ("d", "order", "coeffs")

    def __init__(self, d: int, order: int, coeffs=None):
        self.d, self.order = d, order
        clean = {}
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            if len(e) != d:
                raise ValueError("exponent vector has the wrong length")
            if sum(e) <= order:
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
        self.coeffs = {e: c for e, c in clean.items() if c}

    # constructors ----------------------------------------------------
    @classmethod
    def const(cls, d, order, c=1):
        return cls(d, order, {(0,) * d: c})

    @classmethod
    def var(cls, d, order, i):
        e = [0] * d
        e[i] = 1
        return cls(d, order, {tuple(e): 1})

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return TruncatedSeries(self.d, order, self.coeffs)

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            if other.d != self.d:
                raise ValueError("variable count mismatch")
            return other
        return TruncatedSeries.const(self.d, self.order, other)

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(self.d, min(self.order, other.order), out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.d, self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        order = min(self.order, other.order)
        right = sorted(((sum(e), e, c) for e, c in other.coeffs.items()), key=lambda t: t[0])
        out = {}
        for e1, c1 in self.coeffs.items():
            room = order - sum(e1)
            for s2, e2, c2 in right:
                if s2 > room:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries(self.d, order, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncatedSeries.const(self.d, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def constant(self) -> Fraction:
        return self.coeffs.get((0,) * self.d, Fraction(0))

    def inverse(self) -> "TruncatedSeries":
        c = self.constant()
        if c == 0:
            raise NotAUnit("constant term is zero")
        # 1/(c(1 - h)) = (1/c) Σ h^k, h has no constant term
        h = 1 - self * Fraction(1, c)
        out = TruncatedSeries.const(self.d, self.order)
        term = out
        for _ in range(self.order):
            term = term * h
            out = out + term
        return out * Fraction(1, c)

    def __truediv__(self, other):
        other = self._lift(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self._lift(other)
        order = min(self.order, other.order)
        a = self.truncate(order).coeffs
        b = other.truncate(order).coeffs
        return self.d == other.d and a == b

    __hash__ = None

    def coeff(self, *e) -> Fraction:
        if sum(e) > self.order:
            raise ValueError("coefficient beyond the truncation order")
        return self.coeffs.get(tuple(e), Fraction(0))

    def partial(self, i: int) -> "TruncatedSeries":
        """∂/∂z_i; the result is known to one order less."""
        out = {}
        for e, c in self.coeffs.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return TruncatedSeries(self.d, self.order - 1, out)

    def compose(self, inner) -> "TruncatedSeries":
        """self(inner_1, ..., inner_d); every inner series must have zero
        constant term."""
        inner = list(inner)
        if len(inner) != self.d:
            raise BadComposition("need one inner series per variable")
        if any(s.constant() != 0 for s in inner):
            raise BadComposition("inner series must have zero constant term")
        d2 = inner[0].d
        order = min([self.order] + [s.order for s in inner])
        out = TruncatedSeries(d2, order)
        powers = [[TruncatedSeries.const(d2, order)] for _ in inner]
        for e, c in self.coeffs.items():
            term = TruncatedSeries.const(d2, order, c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * inner[i])
                term = term * powers[i][k]
            out = out + term
        return out

    def __repr__(self):
        items = ", ".join(f"{e}: {c}" for e, c in sorted(self.coeffs.items()))
        return f"TruncatedSeries(d={self.d}, order={self.order}, {{{items}}})"


def series_arith(op: str, a, b=None):
    """Dispatch by name: add, mul, divide, compose (b a list of series)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "divide":
        return a / b
    if op == "compose":
        return a.compose(b)
    raise ValueError(f"unknown series operation {op!r}")


def determinant(matrix):
    """Leibniz expansion over any commutative ring (numbers or series)."""
    d = len(matrix)
    total = None
    for perm in itertools.permutations(range(d)):
        inv = sum(1 for i in range(d) for j in range(i + 1, d) if perm[i] > perm[j])
        term = None
        for i, j in enumerate(perm):
            term = matrix[i][j] if term is None else term * matrix[i][j]
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else 1


# ---------------------------------------------------------------------------
# Lagrange-Good

@dataclass
class LGResult:
    gammas: dict        # exponent vector -> coefficient
    order: int
    verified: bool


def _multi_indices(d, N):
    for e in itertools.product(range(N + 1), repeat=d):
        if sum(e) <= N:
            yield e


def lagrange_good(g: TruncatedSeries, phis, order: int, verify: bool = True) -> LGResult:
    """Coefficients γ_n of g = Σ γ_n f^n with f_i = z_i / φ_i, for |n| <= order.

    γ_n is the coefficient of z^{-e} in g f^{-n-e} det(∂f_i/∂z_j).  Since
    f^{-n-e} = z^{-n-e} φ^{n+e}, that is the coefficient of z^n in
    g φ^{n+e} det(∂f_i/∂z_j), where only power series occur."""
    phis = list(phis)
    d = g.d
    if len(phis) != d:
        raise PreconditionViolated("need one φ per variable")
    if any(p.constant() == 0 for p in phis):
        raise PreconditionViolated("every φ_i must have a non-zero constant term")
    need = order + 1
    if g.order < order or any(p.order < need for p in phis):
        raise PreconditionViolated(f"inputs must be known to order {need}")
    phis = [p.truncate(need) for p in phis]
    fs = [TruncatedSeries.var(d, need, i) * p.inverse() for i, p in enumerate(phis)]
    jac = determinant([[f.partial(j) for j in range(d)] for f in fs]).truncate(order)
    base = g.truncate(order) * jac
    phis = [p.truncate(order) for p in phis]
    powers = []
    for p in phis:
        pw = [p]
        for _ in range(order):
            pw.append(pw[-1] * p)
        powers.append(pw)          # pw[k] = φ^(k+1)
    gammas = {}
    for n in _multi_indices(d, order):
        h = base
        for pw, k in zip(powers, n):
            h = h * pw[k]
        c = h.coeff(*n)
        if c:
            gammas[n] = c
    ok = True
    if verify:
        fpow = []
        for f in fs:
            f = f.truncate(order)
            pw = [TruncatedSeries.const(d, order)]
            for _ in range(order):
                pw.append(pw[-1] * f)
            fpow.append(pw)
        back = TruncatedSeries(d, order)
        for n, c in gammas.items():
            term = TruncatedSeries.const(d, order, c)
            for pw, k in zip(fpow, n):
                term = term * pw[k]
            back = back + term
        ok = back == g.truncate(order)
    return LGResult(gammas, order, ok)


def random_series(rng: random.Random, d: int, order: int, unit: bool, span: int = 3,
                  density: float = 0.5) -> TruncatedSeries:
    coeffs = {}
    for e in _multi_indices(d, order):
        if rng.random() < density:
            coeffs[e] = rng.randint(-span, span)
    zero = (0,) * d
    if unit:
        coeffs[zero] = rng.choice([v for v in range(-span, span + 1) if v])
    return TruncatedSeries(d, order, coeffs)


def lg_random_suite(count: int = 50, seed: int = 0, max_d: int = 3, order: int = 6) -> list:
    """Seeded random Lagrange-Good instances; returns the failing instances."""
    rng = random.Random(seed)
    failures = []
    for k in range(count):
        d = rng.randint(1, max_d)
        N = order
        g = random_series(rng, d, N + 1, unit=False)
        phis = [random_series(rng, d, N + 1, unit=True, density=0.4) for _ in range(d)]
        res = lagrange_good(g, phis, N)
        if not res.verified:
            failures.append((k, d))
    return failures


# ---------------------------------------------------------------------------
# determinant identities

def _fr(xs):
    return [Fraction(x) for x in xs]


def lemma1_sides(X, Y) -> tuple:
    """Both sides of the first determinant evaluation.  X = (X_1..X_d),
    Y = (Y_2..Y_d)."""
    X = _fr(X)
    d = len(X)
    Y = [None] + _fr(Y)
    if len(Y) != d:
        raise ValueError("need d-1 values Y_2..Y_d")
    if any(x == 0 for x in X):
        raise SingularPoint("some X_i vanishes")
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            if i == 0:
                row.append(1 - (Y[j] / X[0] if j != 0 else 0))
            else:
                row.append(1 - (Y[i] / X[i] if i != j else 0))
        rows.append(row)
    lhs = Fraction(determinant(rows))
    num = sum(X) - sum(Y[1:])
    for y in Y[1:]:
        num *= y
    den = Fraction(1)
    for x in X:
        den *= x
    return lhs, num / den


def cor1_sides(X, Y, Z, r: int) -> tuple:
    """Both sides of the second evaluation; r is 1-based."""
    X = _fr(X)
    Y, Z = Fraction(Y), Fraction(Z)
    d = len(X)
    if not 1 <= r <= d:
        raise ValueError("r must lie in 1..d")
    if any(x == 0 for x in X):
        raise SingularPoint("some X_i vanishes")
    r0 = r - 1
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            if i == r0:
                row.append(1 - (Z / X[r0] if j != r0 else 0))
            else:
                row.append(1 - (Y / X[i] if j != i else 0))
        rows.append(row)
    lhs = Fraction(determinant(rows))
    num = Y ** (d - 2) * (Z * sum(X) + (Y - Z) * X[r0] - (d - 1) * Y * Z)
    den = Fraction(1)
    for x in X:
        den *= x
    return lhs, num / den


def det_identity_check(which: str, point: dict) -> bool:
    if which == "lemma1":
        lhs, rhs = lemma1_sides(point["X"], point["Y"])
    elif which == "cor1":
        lhs, rhs = cor1_sides(point["X"], point["Y"], point["Z"], point["r"])
    else:
        raise ValueError(f"unknown identity {which!r}")
    return lhs == rhs


def random_point(rng: random.Random, which: str, max_d: int = 5, span: int = 9) -> dict:
    d = rng.randint(1 if which == "lemma1" else 2, max_d)
    nz = [v for v in range(-span, span + 1) if v]
    X = [rng.choice(nz) for _ in range(d)]
    if which == "lemma1":
        return {"X": X, "Y": [rng.randint(-span, span) for _ in range(d - 1)]}
    return {"X": X, "Y": rng.randint(-span, span), "Z": rng.randint(-span, span),
            "r": rng.randint(1, d)}


def det_random_suite(which: str, count: int = 100, seed: int = 0) -> list:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        p = random_point(rng, which)
        if not det_identity_check(which, p):
            bad.append(p)
    return bad


def binsum_check(M: int, r: int) -> bool:
    """Σ over m_1 + 2 m_2 + ... + r m_r = r of multinomial(M; m) equals
    binom(M + r - 1, r)."""
    total = 0
    for ms in histograms(r, r):
        if sum((i + 1) * x for i, x in enumerate(ms)) == r:
            total += multinomial(M, ms)
    return total == binom(M + r - 1, r)
