"""Canonical rational functions with integer coefficients.

Numerator and denominator live in a sympy sparse polynomial ring over ZZ
whose generators are the declared variables, in declaration order.  The
canonical form has no common polynomial factor, no common integer
content, and a denominator whose constant term is positive (or, when the
constant term vanishes, whose graded-lex leading coefficient is positive).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Sequence

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    split_symbols_custom,
    standard_transformations,
)
from sympy.polys.domains import QQ, ZZ
from sympy.polys.rings import PolyElement, PolyRing, ring

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def int_ring(variables: tuple[str, ...]) -> PolyRing:
    return ring(",".join(variables), ZZ)[0]


@lru_cache(maxsize=None)
def rat_ring(variables: tuple[str, ...]) -> PolyRing:
    return ring(",".join(variables), QQ)[0]


def total_degree(p: PolyElement) -> int:
    return max((sum(m) for m in p.itermonoms()), default=-1)


def graded_lex(m: Monomial) -> tuple:
    """Ascending total degree; within a degree, earlier variables first."""
    return (sum(m), tuple(-e for e in m))


def clear_denominators(p: PolyElement, R: PolyRing) -> tuple[PolyElement, int]:
    """Return (integer polynomial, multiplier) with p * multiplier integral."""
    den = reduce(lcm, (int(QQ.to_sympy(c).q) for c in p.itercoeffs()), 1)
    return R.from_dict({m: int(QQ.to_sympy(c * den)) for m, c in p.items()}), den


class RationalFunction:
    """Quotient of integer polynomials in declared variables, kept canonical."""

    __slots__ = ("variables", "ring", "num", "den")

    def __init__(self, variables: Sequence[str], num: PolyElement, den: PolyElement):
        self.variables = tuple(variables)
        self.ring = int_ring(self.variables)
        self.num, self.den = _canonical(self.ring, self.ring(num), self.ring(den))

    # -- construction --------------------------------------------------------------

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> RationalFunction:
        """Read expressions such as ``(1+4t-3t^2)/(1-2t+t^2)`` or ``(xy+3x+1)/(xy-2x+1)``."""
        variables = tuple(variables)
        names = {v: sympy.Symbol(v) for v in variables}
        transforms = standard_transformations + (
            convert_xor,
            split_symbols_custom(lambda name: name not in names),
            implicit_multiplication,
        )
        expr = sympy.together(parse_expr(text, local_dict=names, transformations=transforms))
        if expr.has(sympy.zoo, sympy.nan):
            raise ZeroDivisionError(f"{text!r} divides by zero")
        n, d = sympy.fraction(expr)
        Rq = rat_ring(variables)
        R = int_ring(variables)
        pn, a = clear_denominators(Rq.from_expr(n), R)
        pd, b = clear_denominators(Rq.from_expr(d), R)
        return cls(variables, pn * b, pd * a)

    @classmethod
    def from_fraction(cls, variables: Sequence[str], value) -> RationalFunction:
        R = int_ring(tuple(variables))
        v = Fraction(value)
        return cls(variables, R(v.numerator), R(v.denominator))

    # -- arithmetic ------------------------------------------------------------------

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.variables != self.variables:
                raise ValueError("variable lists differ")
            return other
        return RationalFunction.from_fraction(self.variables, other)

    def __add__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.variables, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.variables, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.variables, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.variables == other.variables and self.num == other.num and self.den == other.den
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))

    # -- inspection ------------------------------------------------------------------

    @property
    def degree(self) -> tuple[int, int]:
        return total_degree(self.num), total_degree(self.den)

    @property
    def term_counts(self) -> tuple[int, int]:
        return len(self.num), len(self.den)

    def taylor(self, order: int) -> dict[Monomial, Fraction]:
        """Power-series coefficients of total degree <= order (zeros omitted)."""
        zero = (0,) * len(self.variables)
        d0 = self.den.get(zero, 0)
        if d0 == 0:
            raise ZeroDivisionError("denominator vanishes at the origin")
        d0 = Fraction(int(d0))
        den = [(m, Fraction(int(c))) for m, c in self.den.items() if m != zero]
        num = {m: Fraction(int(c)) for m, c in self.num.items()}
        out: dict[Monomial, Fraction] = {}
        pending: dict[Monomial, Fraction] = {m: c for m, c in num.items() if sum(m) <= order}
        # process monomials degree by degree; each coefficient feeds higher ones
        for deg in range(order + 1):
            layer = sorted(m for m in pending if sum(m) == deg)
            for m in layer:
                c = pending.pop(m) / d0
                if c == 0:
                    continue
                out[m] = c
                for dm, dc in den:
                    k = tuple(a + b for a, b in zip(m, dm))
                    if sum(k) <= order:
                        pending[k] = pending.get(k, Fraction(0)) - dc * c
        return out

    # -- output ----------------------------------------------------------------------

    def _terms(self, p: PolyElement) -> list[list]:
        return [[int(c), list(m)] for m, c in sorted(p.items(), key=lambda t: graded_lex(t[0]))]

    def to_json(self) -> dict:
        return {"vars": list(self.variables), "num": self._terms(self.num), "den": self._terms(self.den)}

    @classmethod
    def from_json(cls, data: dict) -> RationalFunction:
        variables = tuple(data["vars"])
        R = int_ring(variables)
        num = R.from_dict({tuple(m): c for c, m in data["num"]}) if data["num"] else R(0)
        den = R.from_dict({tuple(m): c for c, m in data["den"]})
        return cls(variables, num, den)

    def poly_text(self, p: PolyElement) -> str:
        if not p:
            return "0"
        sep = _separator(self.variables)
        parts = []
        for m, c in sorted(p.items(), key=lambda t: graded_lex(t[0])):
            c = int(c)
            mono = format_monomial(self.variables, m)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{sep}{mono}"
            parts.append(("-" if c < 0 else "+") + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def __str__(self) -> str:
        if self.den == 1:
            return self.poly_text(self.num)
        num, den = self.poly_text(self.num), self.poly_text(self.den)
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


MvRationalFunction = RationalFunction


def _separator(variables: Sequence[str]) -> str:
    return "" if all(len(v) == 1 for v in variables) else "*"


def format_monomial(variables: Sequence[str], m: Monomial) -> str:
    """``x^2y`` for one-letter variables, ``t_a^2*t_b`` otherwise; empty for 1."""
    return _separator(variables).join(v if e == 1 else f"{v}^{e}" for v, e in zip(variables, m) if e)


def format_series(coeffs: dict, variables: Sequence[str]) -> str:
    """Truncated power series with rational coefficients, ascending graded-lex."""
    sep = _separator(variables)
    shown = []
    for m, c in sorted(coeffs.items(), key=lambda t: graded_lex(t[0])):
        mono = format_monomial(variables, m)
        shown.append(str(c) if not mono else mono if c == 1 else f"{c}{sep or '*'}{mono}")
    return " + ".join(shown).replace("+ -", "- ") or "0"


def _canonical(R: PolyRing, num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return R(0), R(1)
    _, num, den = num.cofactors(den)
    content = gcd(*(int(c) for c in num.itercoeffs()), *(int(c) for c in den.itercoeffs()))
    if content != 1:
        num, den = num.exquo_ground(content), den.exquo_ground(content)
    zero = (0,) * R.ngens
    lead = den.get(zero, 0) or min(den.items(), key=lambda t: graded_lex(t[0]))[1]
    if lead < 0:
        num, den = -num, -den
    return num, den


def reciprocal_ratfn(f: RationalFunction) -> RationalFunction:
    """f(1/v_1, ..., 1/v_k) as a canonical rational function."""
    n = len(f.variables)
    top = [max((m[i] for m in list(f.num.itermonoms()) + list(f.den.itermonoms())), default=0)
           for i in range(n)]
    R = f.ring

    def flip(p: PolyElement) -> PolyElement:
        return R.from_dict({tuple(t - e for t, e in zip(top, m)): c for m, c in p.items()}) if p else R(0)

    return RationalFunction(f.variables, flip(f.num), flip(f.den))
