"""Rationals modulo 1 and cyclotomic numbers.

A :class:`CycValue` lives in Q(zeta_M).  In exact mode it carries the
coefficients of its power-basis expansion ``1, zeta_M, ..., zeta_M^(phi(M)-1)``
after reduction modulo the cyclotomic polynomial Phi_M, plus a complex
approximation under the embedding ``zeta_M -> exp(2 pi i / M)``.  In float mode
only the approximation is present.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

BACKENDS = ("exact", "float")

_INT64_SAFE = 1 << 62


def _check_backend(backend: str) -> None:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


# ---------------------------------------------------------------------------
# Rationals modulo 1
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class RationalMod1:
    """A reduced fraction ``num/den`` in [0, 1)."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 1 or not 0 <= self.num < self.den or math.gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not a reduced residue in [0,1)")

    @classmethod
    def of(cls, x) -> "RationalMod1":
        """Coerce an int, Fraction, string ``"n/d"`` or RationalMod1."""
        if isinstance(x, RationalMod1):
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return ratmod1(x.numerator, x.denominator)
        raise TypeError(f"cannot interpret {x!r} as a rational mod 1")

    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other):
        return RationalMod1.of(self.fraction() + RationalMod1.of(other).fraction())

    __radd__ = __add__

    def __sub__(self, other):
        return RationalMod1.of(self.fraction() - RationalMod1.of(other).fraction())

    def __rsub__(self, other):
        return RationalMod1.of(RationalMod1.of(other).fraction() - self.fraction())

    def __neg__(self):
        return RationalMod1.of(-self.fraction())

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return RationalMod1.of(self.fraction() * k)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"RationalMod1({self.num}/{self.den})"


def ratmod1(num: int, den: int) -> RationalMod1:
    """Reduced representative of ``num/den`` modulo 1."""
    if den == 0:
        raise ValueError("zero denominator")
    q = Fraction(num, den)
    q -= math.floor(q)
    return RationalMod1(q.numerator, q.denominator)


def lcm_of_dens(values) -> int:
    n = 1
    for v in values:
        n = math.lcm(n, RationalMod1.of(v).den)
    return n


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and reduction
# ---------------------------------------------------------------------------


class CyclotomicPoly(NamedTuple):
    m: int
    coeffs: tuple  # low degree first, monic

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def _divide_monic(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + dn]
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> CyclotomicPoly:
    """Phi_m by dividing x^m - 1 by Phi_d for every proper divisor d of m."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _divide_monic(poly, cyclotomic_poly(d).coeffs)
    return CyclotomicPoly(m, tuple(poly))


def euler_phi(m: int) -> int:
    return cyclotomic_poly(m).degree


@lru_cache(maxsize=None)
def _power_table(m: int) -> np.ndarray:
    """Rows are x^j mod Phi_m for j = phi(m), ..., m-1."""
    phi_poly = cyclotomic_poly(m).coeffs
    d = len(phi_poly) - 1
    low = np.array(phi_poly[:d], dtype=np.int64)
    table = np.zeros((m - d, d), dtype=np.int64)
    cur = -low
    for j in range(m - d):
        table[j] = cur
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1])) - top * low
    table.setflags(write=False)
    return table


def _fold(vec, m: int) -> list[int]:
    """Reduce a coefficient list modulo x^m - 1."""
    out = [0] * m
    for i, c in enumerate(vec):
        if c:
            out[i % m] += int(c)
    return out


def _exact_matmul(tail: list[int], table: np.ndarray) -> list[int]:
    """``tail @ table`` over the integers, via 24-bit limbs in int64."""
    big = max((abs(t) for t in tail), default=0)
    if big == 0:
        return [0] * table.shape[1]
    tbound = int(np.abs(table).max()) or 1
    if big * tbound * len(tail) < _INT64_SAFE:
        return [int(x) for x in np.asarray(tail, dtype=np.int64) @ table]
    if tbound * len(tail) >= 1 << 36:
        return [int(x) for x in np.asarray(tail, dtype=object) @ table.astype(object)]
    signs = [1 if t >= 0 else -1 for t in tail]
    mags = [abs(t) for t in tail]
    out = [0] * table.shape[1]
    shift = 0
    mask = (1 << 24) - 1
    while any(mags):
        limb = np.array([s * (v & mask) for s, v in zip(signs, mags)], dtype=np.int64)
        part = limb @ table
        for i, x in enumerate(part):
            out[i] += int(x) << shift
        mags = [v >> 24 for v in mags]
        shift += 24
    return out


def reduce_group_ring(vec, m: int) -> list[int]:
    """Canonical integer coefficients of sum vec[i] x^i modulo Phi_m."""
    v = _fold(vec, m) if len(vec) != m else [int(c) for c in vec]
    d = euler_phi(m)
    head = v[:d]
    tail = v[d:]
    if not any(tail):
        return head
    extra = _exact_matmul(tail, _power_table(m))
    return [h + e for h, e in zip(head, extra)]


def _common_denominator(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        den = math.lcm(den, Fraction(c).denominator)
    return [int(Fraction(c) * den) for c in coeffs], den


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    """Integer polynomial product (numpy when safe, else Kronecker substitution)."""
    if not a or not b:
        return []
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * (len(a) + len(b) - 1)
    bound = ma * mb * min(len(a), len(b))
    if bound < _INT64_SAFE:
        return [int(x) for x in np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))]
    k = bound.bit_length() + 2
    A = 0
    for c in reversed(a):
        A = (A << k) + c
    B = 0
    for c in reversed(b):
        B = (B << k) + c
    P = A * B
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    out = []
    for _ in range(len(a) + len(b) - 1):
        r = P & mask
        if r >= half:
            r -= 1 << k
        out.append(r)
        P = (P - r) >> k
    return out


@lru_cache(maxsize=None)
def _unit_powers(m: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(m) / m)


def _embed(coeffs: Sequence[Fraction], m: int) -> complex:
    if not coeffs:
        return 0j
    vals = np.array([float(c) for c in coeffs])
    return complex(np.dot(vals, _unit_powers(m)[: len(vals)]))


# ---------------------------------------------------------------------------
# CycValue
# ---------------------------------------------------------------------------


class CycValue:
    """An element of Q(zeta_M), exact or approximate."""

    __slots__ = ("level", "exact", "approx")

    def __init__(self, level: int, exact: Sequence[Fraction] | None = None, approx: complex | None = None):
        if level < 1:
            raise ValueError("level must be positive")
        self.level = level
        if exact is not None:
            exact = tuple(Fraction(c) for c in exact)
            if len(exact) != euler_phi(level):
                raise ValueError("coefficient sequence must have length phi(level)")
            if approx is None:
                approx = _embed(exact, level)
        elif approx is None:
            raise ValueError("a CycValue needs exact coefficients or an approximation")
        self.exact = exact
        self.approx = complex(approx)

    # -- constructors -----------------------------------------------------
    @classmethod
    def rational(cls, q, backend: str = "exact") -> "CycValue":
        q = Fraction(q)
        if backend == "float":
            return cls(1, None, complex(q))
        return cls(1, (q,))

    @classmethod
    def from_complex(cls, z: complex, level: int = 1) -> "CycValue":
        return cls(level, None, complex(z))

    @classmethod
    def from_group_ring(cls, level: int, vec, scale=Fraction(1)) -> "CycValue":
        """Reduce ``scale * sum vec[i] zeta^i`` (vec of ints) to canonical form."""
        red = reduce_group_ring(vec, level)
        scale = Fraction(scale)
        return cls(level, [scale * c for c in red])

    # -- basic properties -------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __complex__(self):
        return self.approx

    def __abs__(self):
        return abs(self.approx)

    def as_rational(self) -> Fraction | None:
        """The value as a rational number, if exact and rational."""
        if self.exact is None:
            return None
        if any(self.exact[1:]):
            return None
        return self.exact[0]

    def coerce(self, level: int) -> "CycValue":
        """The same number written at a multiple of the current level."""
        if level % self.level:
            raise ValueError(f"level {self.level} does not divide {level}")
        if level == self.level or self.exact is None:
            return CycValue(level, self.exact, self.approx) if level != self.level else self
        step = level // self.level
        ints, den = _common_denominator(self.exact)
        vec = [0] * level
        for i, c in enumerate(ints):
            vec[i * step] = c
        return CycValue.from_group_ring(level, vec, Fraction(1, den))

    def galois(self, t: int) -> "CycValue":
        """Image under zeta_M -> zeta_M^t (t a unit mod M)."""
        m = self.level
        if math.gcd(t, m) != 1:
            raise ValueError("t must be a unit modulo the level")
        if self.exact is None:
            raise ValueError("Galois action needs the exact backend")
        ints, den = _common_denominator(self.exact)
        vec = [0] * m
        for i, c in enumerate(ints):
            vec[(i * t) % m] += c
        return CycValue.from_group_ring(m, vec, Fraction(1, den))

    def conjugate(self) -> "CycValue":
        if self.exact is None:
            return CycValue(self.level, None, self.approx.conjugate())
        return self.galois(-1)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(x) -> "CycValue":
        if isinstance(x, CycValue):
            return x
        if isinstance(x, (int, Fraction)):
            return CycValue.rational(x)
        if isinstance(x, (float, complex)):
            return CycValue.from_complex(x)
        raise TypeError(f"cannot combine CycValue with {type(x).__name__}")

    def _common(self, other: "CycValue"):
        m = math.lcm(self.level, other.level)
        return self.coerce(m), other.coerce(m), m

    def __add__(self, other):
        other = self._lift(other)
        if self.exact is None or other.exact is None:
            return CycValue(math.lcm(self.level, other.level), None, self.approx + other.approx)
        x, y, m = self._common(other)
        return CycValue(m, [u + v for u, v in zip(x.exact, y.exact)])

    __radd__ = __add__

    def __neg__(self):
        if self.exact is None:
            return CycValue(self.level, None, -self.approx)
        return CycValue(self.level, [-c for c in self.exact], -self.approx)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, q) -> "CycValue":
        q = Fraction(q)
        if self.exact is None:
            return CycValue(self.level, None, self.approx * float(q))
        return CycValue(self.level, [q * c for c in self.exact])

    def __mul__(self, other):
        other = self._lift(other)
        if self.exact is None or other.exact is None:
            return CycValue(math.lcm(self.level, other.level), None, self.approx * other.approx)
        q = other.as_rational()
        if q is not None:
            return self.scale(q)
        q = self.as_rational()
        if q is not None:
            return other.scale(q)
        x, y, m = self._common(other)
        a, da = _common_denominator(x.exact)
        b, db = _common_denominator(y.exact)
        return CycValue.from_group_ring(m, _poly_mul(a, b), Fraction(1, da * db))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (CycValue.rational(1) / self) ** (-n) if self.exact is not None else CycValue(
                self.level, None, self.approx**n
            )
        result = CycValue.rational(1) if self.exact is not None else CycValue.from_complex(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "CycValue":
        if self.exact is None:
            return CycValue(self.level, None, 1 / self.approx)
        q = self.as_rational()
        if q is not None:
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return CycValue.rational(1 / q)
        return CycValue(self.level, _invert_mod_phi(self.exact, self.level))

    def __truediv__(self, other):
        other = self._lift(other)
        if self.exact is None or other.exact is None:
            return CycValue(math.lcm(self.level, other.level), None, self.approx / other.approx)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        if not isinstance(other, (CycValue, int, Fraction, float, complex)):
            return NotImplemented
        return cyc_equal(self, self._lift(other))

    __hash__ = None

    # -- printing ---------------------------------------------------------
    def __str__(self):
        if self.exact is None:
            return f"({self.approx.real:.17g}, {self.approx.imag:.17g})"
        return "[" + ", ".join(str(c) for c in self.exact) + f"] @ level {self.level}"

    def __repr__(self):
        kind = "exact" if self.exact is not None else "float"
        return f"CycValue<{kind}, level {self.level}, approx {self.approx:.12g}>"


def _invert_mod_phi(coeffs: Sequence[Fraction], m: int) -> list[Fraction]:
    """Inverse of a nonzero element of Q(zeta_m), by polynomial inversion mod Phi_m."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, domain="QQ")
    modulus = sympy.Poly(list(reversed(cyclotomic_poly(m).coeffs)), x, domain="QQ")
    inv = sympy.invert(poly, modulus)
    out = [Fraction(0)] * euler_phi(m)
    for (k,), c in inv.terms():
        out[k] = Fraction(int(c.p), int(c.q))
    return out


def cyc_root_of_unity(e, backend: str = "exact") -> CycValue:
    """exp(2 pi i e) at level den(e)."""
    _check_backend(backend)
    e = RationalMod1.of(e)
    approx = cmath.exp(2j * math.pi * e.num / e.den)
    if backend == "float":
        return CycValue(e.den, None, approx)
    vec = [0] * e.den
    vec[e.num] = 1
    return CycValue.from_group_ring(e.den, vec)


def cyc_equal(x: CycValue, y: CycValue, tol: float = 1e-8) -> bool:
    """Exact comparison when both sides are exact, else relative tolerance."""
    x = CycValue._lift(x)
    y = CycValue._lift(y)
    if x.exact is not None and y.exact is not None:
        a, b, _ = x._common(y)
        return a.exact == b.exact
    scale = max(1.0, abs(x.approx), abs(y.approx))
    return abs(x.approx - y.approx) <= tol * scale
