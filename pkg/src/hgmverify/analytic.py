"""Truncated Gauss series and two classical identities, checked numerically.

Everything here is double-precision evidence for the arithmetic statements,
so there is no exact backend.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .report import Report

TERM_CAP = 10_000
_EPS = 2.0**-52


def pochhammer(a, n: int):
    """Rising factorial (a)_n; exact for Fraction or int input."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = Fraction(1) if isinstance(a, (int, Fraction)) else 1.0
    for k in range(n):
        out *= a + k
    return out


def _nonpositive_int(x) -> bool:
    x = Fraction(x)
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    terms: int
    tail_bound: float


def _ratio_bound(a: float, b: float, c: float, n: int, absz: float) -> float:
    """sup over m >= n of |t_(m+1)/t_m|, valid once n exceeds |a|, |b|, |c| + 1."""
    f = abs((a + n) / (c + n))
    g = abs((b + n) / (n + 1))
    return absz * max(f, 1.0) * max(g, 1.0)


def f21(a, b, c, z, terms: int | None = None, tol: float = 1e-16) -> SeriesValue:
    """2F1(a, b; c | z) by direct summation.

    With ``terms`` given, exactly that many terms are summed.  Otherwise terms
    are added until the tail bound drops below ``tol`` times the running sum,
    up to TERM_CAP (a RuntimeWarning is issued if the cap is hit).  The tail
    bound is |t_n| / (1 - rho) with rho a bound on all later term ratios, or
    inf when no such rho < 1 is available yet.
    """
    if _nonpositive_int(c):
        raise ValueError(f"c = {c} is a nonpositive integer")
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError(f"|z| = {abs(z):.6g} is not below 1")
    af, bf, cf = float(a), float(b), float(c)
    absz = abs(z)
    start = int(max(abs(af), abs(bf), abs(cf))) + 2
    total, t, n = 0j, 1 + 0j, 0
    cap = TERM_CAP if terms is None else terms
    bound = math.inf
    while n < cap:
        total += t
        t *= (af + n) * (bf + n) / ((cf + n) * (n + 1)) * z
        n += 1
        if t == 0:
            return SeriesValue(total, n, 0.0)
        if n >= start:
            rho = _ratio_bound(af, bf, cf, n, absz)
            bound = abs(t) / (1 - rho) if rho < 1 else math.inf
            if terms is None and bound <= tol * max(1.0, abs(total)):
                break
    else:
        if terms is None:
            warnings.warn(f"2F1 series hit the {TERM_CAP}-term cap; tail bound {bound:.3g}", RuntimeWarning)
    return SeriesValue(total, n, bound)


def quadratic_sides(a, b, z, terms=None):
    """Both sides of the quadratic transformation with argument 4z(1-z)."""
    a, b = Fraction(a), Fraction(b)
    c = (a + b + 1) / 2
    z = complex(z)
    w = 4 * z * (1 - z)
    if abs(z) >= 1 or abs(w) >= 1:
        raise ValueError("quadratic needs |z| < 1 and |4z(1-z)| < 1")
    lhs = f21(a, b, c, z, terms)
    rhs = f21(a / 2, b / 2, c, w, terms)
    return lhs.value, rhs.value, lhs.tail_bound + rhs.tail_bound


def connection_coefficients(a, b, shifted: bool = False) -> tuple[float, float]:
    """Coefficients of the two solutions at 1.

    The second coefficient is Gamma(c) Gamma(a+b-c) / (Gamma(a) Gamma(b)) with
    c = (a+b+1)/2.  ``shifted=True`` returns the shifted variant
    Gamma((a+b-1)/2) Gamma((a+b-3)/2) / (Gamma(a-1) Gamma(b-1)) instead, which
    does not satisfy the identity.
    """
    a, b = Fraction(a), Fraction(b)
    ca = math.cos(float(a + b) * math.pi / 2)
    if abs(ca) < 1e-12:
        raise ValueError("cos((a+b) pi/2) vanishes")
    first = math.cos(float(a - b) * math.pi / 2) / ca
    if shifted:
        args_num, args_den = ((a + b - 1) / 2, (a + b - 3) / 2), (a - 1, b - 1)
    else:
        args_num, args_den = ((a + b + 1) / 2, (a + b - 1) / 2), (a, b)
    for x in args_num + args_den:
        if _nonpositive_int(x):
            raise ValueError(f"Gamma argument {x} is a nonpositive integer")
    second = math.gamma(float(args_num[0])) * math.gamma(float(args_num[1]))
    second /= math.gamma(float(args_den[0])) * math.gamma(float(args_den[1]))
    return first, second


def connection_sides(a, b, z, terms=None, shifted: bool = False):
    """Connection between the solutions at 0 and at 1 for c = (a+b+1)/2."""
    a, b = Fraction(a), Fraction(b)
    c = (a + b + 1) / 2
    z = complex(z)
    if abs(z) >= 1 or abs(1 - z) >= 1:
        raise ValueError("connection needs |z| < 1 and |1 - z| < 1")
    k1, k2 = connection_coefficients(a, b, shifted)
    lhs = f21(a, b, c, z, terms)
    u = f21(a, b, c, 1 - z, terms)
    v = f21((a - b + 1) / 2, (b - a + 1) / 2, (3 - a - b) / 2, 1 - z, terms)
    power = cmath.exp(float((1 - a - b) / 2) * cmath.log(1 - z))
    rhs = k1 * u.value + k2 * power * v.value
    bound = lhs.tail_bound + abs(k1) * u.tail_bound + abs(k2 * power) * v.tail_bound
    return lhs.value, rhs, bound


_DEFAULT_TOL = {"quadratic": 1e-10, "connection": 1e-8}


def verify_series_identity(which: str, a, b, z, terms=None, tol: float | None = None,
                           shifted: bool = False, report: Report | None = None) -> Report:
    """Compare both sides; a row passes when |LHS - RHS| <= tol.

    The row also records the combined tail bound, so a pass with an infinite
    or large bound shows up as under-resolved.
    """
    if which not in _DEFAULT_TOL:
        raise ValueError(f"unknown identity {which!r}; expected quadratic or connection")
    tol = _DEFAULT_TOL[which] if tol is None else tol
    if which == "quadratic":
        lhs, rhs, bound = quadratic_sides(a, b, z, terms)
    else:
        lhs, rhs, bound = connection_sides(a, b, z, terms, shifted)
    diff = abs(lhs - rhs)
    scale = max(1.0, abs(lhs), abs(rhs))
    if report is None:
        report = Report(identity=f"{which} a={a} b={b}" + (" (shifted coefficient)" if shifted else ""))
    report.rows.append(
        {
            "prime": None,
            "sample": len(report.rows),
            "z_sample": complex(z),
            "lhs": lhs,
            "rhs": rhs,
            "abs_err": diff,
            "rel_err": diff / scale,
            "tail_bound": bound,
            "within_bound": diff <= bound + 64 * _EPS * scale,
            "status": "pass" if diff <= tol else "fail",
        }
    )
    return report
