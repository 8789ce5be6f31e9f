"""Sparse multivariate polynomials over Q.

Coefficients are :class:`fractions.Fraction`; a polynomial is a dict from
exponent tuples to coefficients over a fixed tuple of variable names.  Only
what the triangle and rank-selection code needs is here.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping


class ExactPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars=("x",), terms: Mapping | None = None):
        self.vars = tuple(vars)
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = tuple(e)
                if len(e) != len(self.vars):
                    raise ValueError("exponent length does not match variables")
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c, vars=("x",)):
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name, vars=None):
        vars = tuple(vars) if vars else (name,)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {e: 1})

    @classmethod
    def monomial(cls, exps, coeff=1, vars=("x",)):
        return cls(vars, {tuple(exps): coeff})

    @classmethod
    def falling(cls, name, k, vars=None):
        """x (x-1) ... (x-k+1) / k!, the binomial polynomial in ``name``."""
        x = cls.var(name, vars)
        out = cls.const(1, x.vars)
        for j in range(k):
            out = out * (x - j) * Fraction(1, j + 1)
        return out

    def _lift(self, other):
        if isinstance(other, ExactPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return ExactPoly.const(other, self.vars)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ExactPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ExactPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExactPoly.const(1, self.vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ExactPoly):
            return self.vars == other.vars and self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # queries ----------------------------------------------------------
    def coeff(self, *exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def is_zero(self):
        return not self.terms

    def degree(self, name=None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def __call__(self, **values):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(self.vars, e):
                if k:
                    t *= Fraction(values[v]) ** k
            total += t
        return total

    def partial(self, **values) -> "ExactPoly":
        """Substitute numbers for some variables, keeping the rest."""
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        out = {}
        for e, c in self.terms.items():
            t = c
            for i, v in enumerate(self.vars):
                if v in values and e[i]:
                    t *= Fraction(values[v]) ** e[i]
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, 0) + t
        return ExactPoly(tuple(self.vars[i] for i in keep), out)

    def reorder(self, vars) -> "ExactPoly":
        """Same polynomial over a (super)set of variable names."""
        vars = tuple(vars)
        idx = [self.vars.index(v) if v in self.vars else None for v in vars]
        missing = set(self.vars) - set(vars)
        if any(e[self.vars.index(v)] for v in missing for e in self.terms):
            raise ValueError("cannot drop a variable that occurs")
        out = {tuple(e[i] if i is not None else 0 for i in idx): c
               for e, c in self.terms.items()}
        return ExactPoly(vars, out)

    # printing / serialisation ----------------------------------------
    def __repr__(self):
        return f"ExactPoly({self.to_text()})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.vars, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def to_factored_text(self) -> str:
        """Factored form via sympy, with ``^`` for powers."""
        import sympy

        syms = sympy.symbols(self.vars)
        if not isinstance(syms, (tuple, list)):
            syms = (syms,)
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            t = sympy.Rational(c.numerator, c.denominator)
            for s, k in zip(syms, e):
                t *= s ** k
            expr += t
        return str(sympy.factor(expr)).replace("**", "^")

    def to_json(self) -> dict:
        return {"vars": list(self.vars),
                "terms": {",".join(map(str, e)): str(c)
                          for e, c in sorted(self.terms.items())}}

    @classmethod
    def from_json(cls, data) -> "ExactPoly":
        if isinstance(data, str):
            data = json.loads(data)
        vars = tuple(data["vars"])
        terms = {}
        for k, v in data["terms"].items():
            e = tuple(int(x) for x in k.split(",")) if k else ()
            terms[e] = Fraction(v)
        return cls(vars, terms)
