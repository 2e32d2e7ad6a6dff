"""Local monodromy data of rank-2 hypergeometric parameters.

A local conjugacy class is stored as its two eigenvalue exponents (mod 1)
and a flag for a non-trivial Jordan block.  By rigidity the three classes at
0, 1 and infinity determine the representation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hypsum import HGMParams
from .values import RationalMod1


@dataclass(frozen=True)
class LocalMonodromy:
    exponents: tuple
    jordan: bool = False

    def __post_init__(self):
        ex = tuple(sorted(RationalMod1.of(x) for x in self.exponents))
        if len(ex) != 2:
            raise ValueError("rank-2 local classes have two exponents")
        if self.jordan and ex[0] != ex[1]:
            raise ValueError("a Jordan block needs equal exponents")
        object.__setattr__(self, "exponents", ex)

    @property
    def is_trivial(self) -> bool:
        return not self.jordan and all(x.is_zero() for x in self.exponents)

    def shift(self, t) -> "LocalMonodromy":
        """Tensor with a rank-one class of exponent t."""
        t = RationalMod1.of(t)
        return LocalMonodromy(tuple(x + t for x in self.exponents), self.jordan)

    def power(self, e: int) -> "LocalMonodromy":
        """Class of the e-th power (a Jordan block stays one)."""
        return LocalMonodromy(tuple(e * x for x in self.exponents), self.jordan)

    def __str__(self):
        s = "{" + ", ".join(map(str, self.exponents)) + "}"
        return s + (" jordan" if self.jordan else "")


@dataclass(frozen=True)
class MonodromyData:
    at0: LocalMonodromy
    at1: LocalMonodromy
    atinf: LocalMonodromy

    def det_ok(self) -> bool:
        total = RationalMod1(0, 1)
        for loc in (self.at0, self.at1, self.atinf):
            for x in loc.exponents:
                total = total + x
        return total.is_zero()

    def __str__(self):
        return f"0: {self.at0}; 1: {self.at1}; inf: {self.atinf}"


def is_generic(P: HGMParams) -> bool:
    return P.is_generic


def local_data(P: HGMParams) -> MonodromyData:
    if not P.is_generic:
        raise ValueError(f"parameters {P} are not generic")
    a, b = P.top
    c, d = P.bottom
    return MonodromyData(
        LocalMonodromy((-c, -d), c == d),
        LocalMonodromy((RationalMod1(0, 1), c + d - a - b), a + b == c + d),
        LocalMonodromy((a, b), a == b),
    )


def conj_equal(x: LocalMonodromy, y: LocalMonodromy) -> bool:
    return x.exponents == y.exponents and x.jordan == y.jordan


def data_equal(x: MonodromyData, y: MonodromyData) -> bool:
    return conj_equal(x.at0, y.at0) and conj_equal(x.at1, y.at1) and conj_equal(x.atinf, y.atinf)


def is_pseudo_reflection(x: LocalMonodromy) -> bool:
    e0, e1 = x.exponents
    if e0 == e1:
        return e0.is_zero() and x.jordan
    return e0.is_zero() or e1.is_zero()


def params_from_local_data(D: MonodromyData):
    """The hypergeometric parameters with local data D, or None if there are none."""
    if not is_pseudo_reflection(D.at1) or not D.det_ok():
        return None
    P = HGMParams(D.atinf.exponents, tuple(-x for x in D.at0.exponents))
    if not P.is_generic:
        return None
    return P if data_equal(local_data(P), D) else None
