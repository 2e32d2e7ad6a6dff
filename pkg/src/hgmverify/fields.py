"""Prime fields, the fixed multiplicative character chi and additive characters.

chi is pinned by ``chi(g) = zeta_{p-1}`` where g is the smallest primitive root,
and ``psi_c(x) = zeta_p^(c x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import isprime, primitive_root

from .errors import CharacterUndefined
from .values import CycValue, RationalMod1, _check_backend, cyc_root_of_unity, ratmod1

MAX_PRIME = 10**5


@dataclass(frozen=True, eq=False)
class PrimeField:
    p: int
    g: int
    dlog: np.ndarray = field(repr=False)  # dlog[x] for 1 <= x < p; dlog[0] = -1
    powers: np.ndarray = field(repr=False)  # powers[k] = g^k mod p

    def ind(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ValueError("0 has no discrete logarithm")
        return int(self.dlog[x])

    def exponent(self, alpha) -> int:
        """The integer k in [0, p-1) with chi^k = chi^(alpha (p-1))."""
        alpha = RationalMod1.of(alpha)
        n = self.p - 1
        if n % alpha.den:
            raise CharacterUndefined(f"character of exponent {alpha} undefined at p = {self.p}")
        return alpha.num * (n // alpha.den)

    def qualifies(self, level: int) -> bool:
        return (self.p - 1) % level == 0


@lru_cache(maxsize=64)
def make_field(p: int) -> PrimeField:
    """Field F_p with its smallest primitive root and a discrete-log table."""
    if not isinstance(p, (int, np.integer)) or p < 3 or p % 2 == 0 or not isprime(int(p)):
        raise ValueError(f"{p} is not an odd prime")
    p = int(p)
    if p >= MAX_PRIME:
        raise ValueError(f"p = {p} exceeds the cap {MAX_PRIME}")
    g = int(primitive_root(p))
    powers = np.empty(p - 1, dtype=np.int64)
    dlog = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        powers[k] = x
        dlog[x] = k
        x = x * g % p
    powers.setflags(write=False)
    dlog.setflags(write=False)
    return PrimeField(p, g, dlog, powers)


def char_value(F: PrimeField, alpha, x: int, backend: str = "exact") -> CycValue:
    """chi^(alpha (p-1))(x), with the value 0 at x = 0 mod p."""
    _check_backend(backend)
    k = F.exponent(alpha)
    if x % F.p == 0:
        return CycValue.rational(0, backend)
    return cyc_root_of_unity(ratmod1(k * F.ind(x), F.p - 1), backend)


def additive_char(F: PrimeField, x: int, c: int = 1, backend: str = "exact") -> CycValue:
    """psi_c(x) = zeta_p^(c x)."""
    _check_backend(backend)
    return cyc_root_of_unity(ratmod1(c * x, F.p), backend)
