"""Rational functions of z with integer coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import sympy

Z = sympy.Symbol("z")


def _coeffs(poly: sympy.Poly) -> tuple:
    """Integer coefficients, low degree first."""
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class RationalMap:
    """``num(z)/den(z)`` in lowest terms, integer coefficients, den with positive content sign."""

    num: tuple
    den: tuple
    text: str = field(default="", compare=False)

    @classmethod
    def parse(cls, text: str) -> "RationalMap":
        expr = sympy.cancel(sympy.sympify(text, locals={"z": Z}))
        if expr.has(sympy.zoo, sympy.nan, sympy.oo):
            raise ValueError(f"{text!r} is not a rational function")
        n, d = sympy.fraction(sympy.together(expr))
        pn = sympy.Poly(n, Z, domain="QQ")
        pd = sympy.Poly(d, Z, domain="QQ")
        scale = math.lcm(*(int(sympy.Rational(c).q) for c in pn.all_coeffs() + pd.all_coeffs()))
        pn = (pn * scale).set_domain("ZZ")
        pd = (pd * scale).set_domain("ZZ")
        g = math.gcd(*(int(c) for c in pn.all_coeffs() + pd.all_coeffs()))
        num = tuple(c // g for c in _coeffs(pn))
        den = tuple(c // g for c in _coeffs(pd))
        if den[-1] < 0:
            num = tuple(-c for c in num)
            den = tuple(-c for c in den)
        if len(num) == 1 and len(den) == 1:
            raise ValueError(f"{text!r} is constant")
        return cls(num, den, text.strip())

    @cached_property
    def numerator(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.num)), Z, domain="ZZ")

    @cached_property
    def denominator(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.den)), Z, domain="ZZ")

    @property
    def deg_num(self) -> int:
        return len(self.num) - 1

    @property
    def deg_den(self) -> int:
        return len(self.den) - 1

    @property
    def degree(self) -> int:
        return max(self.deg_num, self.deg_den)

    def is_constant(self) -> bool:
        return self.degree == 0

    def __call__(self, z):
        """Exact value at a rational z (None at a pole); ``"inf"`` is allowed."""
        if z == "inf":
            if self.deg_num > self.deg_den:
                return None
            if self.deg_num < self.deg_den:
                return Fraction(0)
            return Fraction(self.num[-1], self.den[-1])
        z = Fraction(z)
        d = _horner(self.den, z)
        if d == 0:
            return None
        return Fraction(_horner(self.num, z)) / d

    def eval_mod(self, z: int, p: int):
        """Value mod p at z mod p, or None at a pole."""
        d = _horner(self.den, z) % p
        if d == 0:
            return None
        return _horner(self.num, z) % p * pow(d, -1, p) % p

    def expr(self) -> sympy.Expr:
        return self.numerator.as_expr() / self.denominator.as_expr()

    def __str__(self):
        return self.text or str(self.expr())
