"""Gauss sums and Jacobi motives at a single prime.

Exact values are built in the group ring Z[x]/(x^M - 1) with M = p(p-1),
where x^p plays zeta_{p-1} and x^(p-1) plays zeta_p.  A Gauss sum is a sum of
p-1 monomials, so products of Gauss sums are dense integer vectors obtained by
shifted additions.  Only the final result is reduced modulo Phi_M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .fields import PrimeField
from .values import CycValue, RationalMod1, _INT64_SAFE, _check_backend

EXACT_PRIME_CAP = 43


@dataclass(frozen=True)
class JacobiSpec:
    """Two lists of exponents; see :func:`jacobi_motive`."""

    a_list: tuple
    b_list: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "a_list", tuple(RationalMod1.of(x) for x in self.a_list))
        object.__setattr__(self, "b_list", tuple(RationalMod1.of(x) for x in self.b_list))
        if not self.a_list:
            raise ValueError("a Jacobi motive needs at least one a-entry")

    @property
    def balance(self) -> RationalMod1:
        return RationalMod1.of(sum((b.fraction() for b in self.b_list), Fraction(0))
                               - sum((a.fraction() for a in self.a_list), Fraction(0)))

    def entries(self) -> tuple:
        return self.a_list + self.b_list + (self.balance,)

    def negated(self) -> "JacobiSpec":
        return JacobiSpec(tuple(-a for a in self.a_list), tuple(-b for b in self.b_list))

    def __str__(self):
        a = ",".join(map(str, self.a_list))
        b = ",".join(map(str, self.b_list))
        return f"Jac(({a}),({b}))"


class GaussTable:
    """All Gauss sums g(psi_c, chi^(t k)) for k = 0..p-2.

    ``chi_power`` t (a unit mod p-1) replaces chi by chi^t throughout; the
    default t = 1 is the fixed character.
    """

    def __init__(self, field: PrimeField, psi_scale: int = 1, backend: str = "float", chi_power: int = 1):
        _check_backend(backend)
        p = field.p
        n = p - 1
        if psi_scale % p == 0:
            raise ValueError("psi_scale must be nonzero mod p")
        if math.gcd(chi_power, n) != 1:
            raise ValueError("chi_power must be a unit modulo p-1")
        self.field = field
        self.p = p
        self.n = n
        self.psi_scale = psi_scale % p
        self.chi_power = chi_power % n
        self.backend = backend
        self.level = p * n
        xs = field.powers
        j = np.arange(n, dtype=np.int64)
        if backend == "float":
            s = np.exp(2j * np.pi * ((self.psi_scale * xs) % p) / p)
            base = n * np.fft.ifft(s)
            g = base[(self.chi_power * j) % n]
            g[0] = -1.0
            self._g = g
            self._values = [CycValue.from_complex(complex(v), self.level) for v in g]
        else:
            if p > EXACT_PRIME_CAP:
                raise ValueError(f"exact backend is capped at p <= {EXACT_PRIME_CAP}")
            kj = (np.outer(j, j) * self.chi_power) % n
            self._mono = (p * kj + n * ((self.psi_scale * xs) % p)[None, :]) % self.level
            self._arange = np.arange(self.level, dtype=np.int64)
            self._values = [None] * n

    # -- lookup -----------------------------------------------------------
    def exponent(self, alpha) -> int:
        return self.field.exponent(alpha)

    def value(self, k: int) -> CycValue:
        k %= self.n
        v = self._values[k]
        if v is None:
            v = self.monomial([k])
            self._values[k] = v
        return v

    @property
    def values(self) -> list:
        return [self.value(k) for k in range(self.n)]

    def char(self, alpha, x: int) -> CycValue:
        """chi^(t alpha (p-1))(x) in this table's backend (0 at x = 0)."""
        k = self.exponent(alpha)
        if x % self.p == 0:
            return CycValue.rational(0, self.backend)
        return self.root(k * self.field.ind(x))

    def root(self, r: int) -> CycValue:
        """zeta_{p-1}^(t r)."""
        return self.monomial([], roots=[r])

    # -- products of Gauss sums -------------------------------------------
    def _times_gauss(self, dense: np.ndarray, k: int) -> np.ndarray:
        exps = self._mono[k]
        if dense.dtype != object and int(np.abs(dense).max()) * self.n >= _INT64_SAFE:
            dense = dense.astype(object)
        idx = (self._arange[None, :] - exps[:, None]) % self.level
        return dense[idx].sum(axis=0)

    def _simplify(self, num: Iterable[int], den: Iterable[int]):
        """Cancel trivial factors, num/den repeats and g(k) g(-k) pairs."""
        n = self.n
        scale = Fraction(1)
        num = [k % n for k in num]
        den = [k % n for k in den]
        for k in list(den):
            if k in num:
                num.remove(k)
                den.remove(k)
        rest = []
        for k in num:
            if k == 0:
                scale = -scale
            elif (-k) % n in rest:
                rest.remove((-k) % n)
                scale *= (-1) ** (self.chi_power * k % 2) * self.p
            else:
                rest.append(k)
        for k in den:
            if k == 0:
                scale = -scale
            else:
                # 1/g(chi^k) = chi^k(-1) g(chi^-k) / p
                scale *= Fraction((-1) ** (self.chi_power * k % 2), self.p)
                rest.append((-k) % n)
        return rest, scale

    def group_ring(self, num: Sequence[int], den: Sequence[int] = (), roots: Sequence[int] = ()):
        """Unreduced exact product: (int vector of length M, rational scale)."""
        factors, scale = self._simplify(num, den)
        shift = (self.p * self.chi_power * sum(roots)) % self.level
        if not factors:
            dense = np.zeros(self.level, dtype=np.int64)
            dense[shift] = 1
            return dense, scale
        dense = np.bincount((self._mono[factors[0]] + shift) % self.level, minlength=self.level).astype(np.int64)
        for k in factors[1:]:
            dense = self._times_gauss(dense, k)
        return dense, scale

    def monomial(self, num: Sequence[int], den: Sequence[int] = (), roots: Sequence[int] = (), scale=1) -> CycValue:
        """scale * prod g(num) / prod g(den) * zeta_{p-1}^(t sum(roots))."""
        if self.backend == "float":
            g = self._g
            val = complex(Fraction(scale))
            for k in num:
                val *= g[k % self.n]
            for k in den:
                val /= g[k % self.n]
            if roots:
                val *= np.exp(2j * np.pi * ((self.chi_power * sum(roots)) % self.n) / self.n)
            return CycValue.from_complex(val, self.level)
        dense, s = self.group_ring(num, den, roots)
        return CycValue.from_group_ring(self.level, dense, s * Fraction(scale))


def gauss_sum(T: GaussTable, alpha) -> CycValue:
    """g(psi, chi^(alpha (p-1)))."""
    return T.value(T.exponent(alpha))


def jacobi_terms(T: GaussTable, spec: JacobiSpec, power: int = 1):
    """(num, den, sign) of the Gauss-sum monomial for Jac(spec)^power."""
    num = [T.exponent(a) for a in spec.a_list] + [T.exponent(spec.balance)]
    den = [T.exponent(b) for b in spec.b_list]
    sign = (-1) ** (len(spec.a_list) + len(spec.b_list) + 1)
    if power == 1:
        return num, den, sign
    if power == -1:
        return den, num, sign
    raise ValueError("Jacobi factors carry exponent +1 or -1")


def jacobi_motive(T: GaussTable, spec: JacobiSpec) -> CycValue:
    """(-1)^(r+s+1) prod g(a_i) g(sum b - sum a) / prod g(b_j)."""
    num, den, sign = jacobi_terms(T, spec)
    return T.monomial(num, den, scale=sign)
