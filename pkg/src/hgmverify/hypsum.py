"""Finite hypergeometric sums, the point-count form, twists and values at z = 1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NoClosedForm, PrimeNotQualified, SkipSample
from .gauss import GaussTable, JacobiSpec, jacobi_motive, jacobi_terms
from .values import CycValue, RationalMod1, lcm_of_dens


@dataclass(frozen=True)
class HGMParams:
    """Parameters ((a, b), (c, d)) reduced mod 1."""

    top: tuple
    bottom: tuple

    def __post_init__(self):
        top = tuple(RationalMod1.of(x) for x in self.top)
        bottom = tuple(RationalMod1.of(x) for x in self.bottom)
        if len(top) != 2 or len(bottom) != 2:
            raise ValueError("rank-2 parameters need two top and two bottom entries")
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)

    @classmethod
    def parse(cls, text: str) -> "HGMParams":
        """Parse ``"a,b;c,d"``."""
        try:
            top, bottom = text.split(";")
            return cls(tuple(Fraction(x) for x in top.split(",")), tuple(Fraction(x) for x in bottom.split(",")))
        except ValueError as exc:
            raise ValueError(f"cannot parse parameters {text!r}; expected 'a,b;c,d'") from exc

    @property
    def a(self):
        return self.top[0]

    @property
    def b(self):
        return self.top[1]

    @property
    def c(self):
        return self.bottom[0]

    @property
    def d(self):
        return self.bottom[1]

    @property
    def level(self) -> int:
        return lcm_of_dens(self.top + self.bottom)

    @property
    def is_generic(self) -> bool:
        return not set(self.top) & set(self.bottom)

    def conj(self, j: int) -> "HGMParams":
        return HGMParams(tuple(j * x for x in self.top), tuple(j * x for x in self.bottom))

    def switched(self) -> "HGMParams":
        return HGMParams((-self.c, -self.d), (-self.a, -self.b))

    def key(self) -> tuple:
        return (tuple(sorted(self.top)), tuple(sorted(self.bottom)))

    def same_as(self, other: "HGMParams") -> bool:
        """Equality up to reordering within top and within bottom."""
        return self.key() == other.key()

    def __str__(self):
        return f"{self.a},{self.b};{self.c},{self.d}"


@dataclass(frozen=True)
class TwistSpec:
    """Rank-one factors multiplying one side of a relation.

    jacobi_factors: (JacobiSpec, +1 or -1) pairs.
    kummer_chars: (u, alpha) pairs, specializing to chi^(alpha (p-1))(u(z0)).
    sign_exponents: each alpha contributes chi^(alpha (p-1))(-1).
    tate_power: contributes p^tate_power.
    conj_index: j, acting on the target parameters by multiplication.
    """

    jacobi_factors: tuple = ()
    kummer_chars: tuple = ()
    sign_exponents: tuple = ()
    tate_power: int = 0
    conj_index: int = 1

    def __post_init__(self):
        object.__setattr__(self, "jacobi_factors", tuple((s, int(e)) for s, e in self.jacobi_factors))
        object.__setattr__(
            self, "kummer_chars", tuple((u, RationalMod1.of(al)) for u, al in self.kummer_chars)
        )
        object.__setattr__(self, "sign_exponents", tuple(RationalMod1.of(x) for x in self.sign_exponents))

    def exponents(self) -> list:
        out = []
        for spec, _ in self.jacobi_factors:
            out.extend(spec.entries())
        out.extend(al for _, al in self.kummer_chars)
        out.extend(self.sign_exponents)
        return out

    @property
    def level(self) -> int:
        return lcm_of_dens(self.exponents())

    def with_kummer_sign(self, s: int) -> "TwistSpec":
        if s == 1:
            return self
        return TwistSpec(
            self.jacobi_factors,
            tuple((u, s * al) for u, al in self.kummer_chars),
            self.sign_exponents,
            self.tate_power,
            self.conj_index,
        )

    def describe(self) -> str:
        parts = []
        for spec, e in self.jacobi_factors:
            parts.append(str(spec) + ("" if e == 1 else "^-1"))
        for u, al in self.kummer_chars:
            parts.append(f"chi_{al}({u})")
        for al in self.sign_exponents:
            parts.append(f"(-1)^{al}")
        if self.tate_power:
            parts.append(f"p^{self.tate_power}")
        return " * ".join(parts) if parts else "1"


def _require_qualified(T: GaussTable, level: int) -> None:
    if T.n % level:
        raise PrimeNotQualified(f"p = {T.p} is not 1 mod {level}")


def hyp_sum(T: GaussTable, P: HGMParams, z: int) -> CycValue:
    """The finite hypergeometric sum H_p(P | z)."""
    _require_qualified(T, P.level)
    p, n = T.p, T.n
    z %= p
    if z == 0:
        raise ValueError("z must be nonzero mod p")
    A, B, C, D = (T.exponent(x) for x in P.top + P.bottom)
    lz = T.field.ind(z)
    if T.backend == "float":
        g = T._g
        k = np.arange(n)
        terms = g[(k - A) % n] * g[(k - B) % n] * g[(C - k) % n] * g[(D - k) % n]
        terms = terms * np.exp(2j * np.pi * ((T.chi_power * k * lz) % n) / n)
        den = g[-A % n] * g[-B % n] * g[C] * g[D]
        return CycValue.from_complex(complex(terms.sum() / den / (1 - p)), T.level)
    acc = np.zeros(T.level, dtype=np.int64)
    for k in range(n):
        dense, s = T.group_ring([k - A, k - B, C - k, D - k], roots=[k * lz])
        acc = acc + int(s) * dense
    factors, scale = T._simplify([], [-A, -B, C, D])
    for f in factors:
        acc = T._times_gauss(acc, f)
    return CycValue.from_group_ring(T.level, acc, scale / (1 - p))


def point_count_H(T: GaussTable, eps, om, ch, z: int) -> CycValue:
    """sum over x of eps(x) om(1-x) ch^-1(1-zx); a zero argument kills the term."""
    p, n = T.p, T.n
    E, O, Ch = T.exponent(eps), T.exponent(om), T.exponent(ch)
    x = np.arange(1, p, dtype=np.int64)
    u = (1 - x) % p
    w = (1 - (z % p) * x) % p
    keep = (u != 0) & (w != 0)
    x, u, w = x[keep], u[keep], w[keep]
    dl = T.field.dlog
    r = (T.chi_power * (E * dl[x] + O * dl[u] - Ch * dl[w])) % n
    if T.backend == "float":
        return CycValue.from_complex(complex(np.exp(2j * np.pi * r / n).sum()), n)
    return CycValue.from_group_ring(n, np.bincount(r, minlength=n))


def factor_prefactor(T: GaussTable, eps, om, inverse: bool = False) -> CycValue:
    """eps(-1) g(eps) g(eps^-1 om^-1) / g(om^-1), or its reciprocal."""
    E, O = T.exponent(eps), T.exponent(om)
    r = E * T.field.ind(-1)
    if inverse:
        return T.monomial([-O], [E, -E - O], roots=[-r])
    return T.monomial([E, -E - O], [-O], roots=[r])


def point_count_form(T: GaussTable, P: HGMParams, z: int) -> CycValue:
    """H_p(P | z) recomputed from the point-count sum for P = ((a,b),(c,0)).

    With eps = chi^(-a), om = chi^(a-c), ch = chi^(-b) the point count divided by
    the prefactor equals the finite sum in our character normalization.
    """
    a, b = P.top
    c, d = P.bottom
    if not d.is_zero():
        if c.is_zero():
            c, d = d, c
        else:
            raise ValueError("point-count form needs a zero bottom parameter")
    eps, om, ch = -a, a - c, -b
    return point_count_H(T, eps, om, ch, z) * factor_prefactor(T, eps, om, inverse=True)


def twist_value(T: GaussTable, tw: TwistSpec, z0: int, kummer_sign: int = 1) -> CycValue:
    """Specialization of the twist at z0 (Tate factor included)."""
    num, den, roots = [], [], []
    sign = 1
    for spec, e in tw.jacobi_factors:
        a, b, s = jacobi_terms(T, spec, e)
        num += a
        den += b
        sign *= s
    for u, al in tw.kummer_chars:
        v = u.eval_mod(z0 % T.p, T.p)
        if v is None or v == 0:
            raise SkipSample(f"twist character degenerate at z0 = {z0}")
        roots.append(T.exponent(kummer_sign * al) * T.field.ind(v))
    for al in tw.sign_exponents:
        roots.append(T.exponent(al) * T.field.ind(-1))
    scale = sign * Fraction(T.p) ** tw.tate_power
    return T.monomial(num, den, roots, scale)


def trace_at_one(T: GaussTable, P: HGMParams) -> CycValue:
    """Closed-form value at z = 1 (Jacobi-motive branch or p^delta branch)."""
    a, b = (x.fraction() for x in P.top)
    c, d = (x.fraction() for x in P.bottom)
    if (a + b - c - d).denominator != 1:
        spec = JacobiSpec((a - c, a - d, b - c, b - d), (a, b, -c, -d, a + b - c - d))
        _require_qualified(T, P.level)
        return jacobi_motive(T, spec)
    if (a + b).denominator == 1 and (c + d).denominator == 1:
        delta = 0 if a.denominator == 1 or c.denominator == 1 else 1
        return CycValue.rational(T.p**delta, T.backend)
    raise NoClosedForm(f"no closed form implemented at z = 1 for {P}")


def trace_branch(P: HGMParams) -> str:
    """Which closed form applies at z = 1: 'jacobi', 'power' or 'none'."""
    a, b = (x.fraction() for x in P.top)
    c, d = (x.fraction() for x in P.bottom)
    if (a + b - c - d).denominator != 1:
        return "jacobi"
    if (a + b).denominator == 1 and (c + d).denominator == 1:
        return "power"
    return "none"
