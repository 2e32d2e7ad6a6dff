import cmath
import math
import random
from fractions import Fraction

import pytest

from hgmverify.values import (
    CycValue,
    RationalMod1,
    cyc_equal,
    cyc_root_of_unity,
    cyclotomic_poly,
    ratmod1,
    reduce_group_ring,
)


@pytest.mark.parametrize("num,den,want", [(7, 2, (1, 2)), (-1, 3, (2, 3)), (4, 2, (0, 1))])
def test_ratmod1_examples(num, den, want):
    r = ratmod1(num, den)
    assert (r.num, r.den) == want


def test_ratmod1_zero_denominator():
    with pytest.raises(ValueError):
        ratmod1(1, 0)


def test_ratmod1_arithmetic():
    x = RationalMod1.of("3/4")
    assert x + Fraction(1, 2) == RationalMod1(1, 4)
    assert -x == RationalMod1(1, 4)
    assert 3 * x == RationalMod1(1, 4)
    assert RationalMod1.of(5).is_zero()


def test_root_of_unity_examples():
    assert cyc_root_of_unity(0).as_rational() == 1
    assert cyc_root_of_unity(Fraction(1, 2)).as_rational() == -1
    z8 = cyc_root_of_unity(Fraction(1, 8))
    assert z8.exact == (0, 1, 0, 0)
    assert abs(z8.approx - complex(math.sqrt(2) / 2, math.sqrt(2) / 2)) < 1e-15
    f8 = cyc_root_of_unity(Fraction(1, 8), "float")
    assert not f8.is_exact and abs(f8.approx - z8.approx) < 1e-15


def test_cyc_equal_examples():
    z6 = cyc_root_of_unity(Fraction(1, 6))
    z3 = cyc_root_of_unity(Fraction(1, 3))
    assert cyc_equal(z6, -(z3 * z3))
    z5 = cyc_root_of_unity(Fraction(1, 5))
    assert not cyc_equal(z5, z5 * z5)
    assert cyc_equal(CycValue.rational(Fraction(1, 1 - 13)) * -12, CycValue.rational(1))


def test_mixed_backends_compare_by_approx():
    x = cyc_root_of_unity(Fraction(1, 7))
    y = cyc_root_of_unity(Fraction(1, 7), "float")
    assert cyc_equal(x, y)
    assert not cyc_equal(x, y * 1.001)


def test_exact_and_float_agree_on_random_expressions():
    rng = random.Random(3)
    for _ in range(30):
        es = [Fraction(rng.randrange(12), 12) for _ in range(4)]
        ex = [cyc_root_of_unity(e) for e in es]
        fl = [cyc_root_of_unity(e, "float") for e in es]
        a = ex[0] * ex[1] + ex[2] - ex[3]
        b = fl[0] * fl[1] + fl[2] - fl[3]
        assert abs(a.approx - b.approx) < 1e-12


def test_inverse_and_galois():
    x = cyc_root_of_unity(Fraction(1, 9)) + 2
    assert cyc_equal(x * x.inverse(), CycValue.rational(1))
    z = cyc_root_of_unity(Fraction(1, 9))
    assert cyc_equal(z.galois(2), z * z)
    assert abs(x.conjugate().approx - x.approx.conjugate()) < 1e-12


def test_reduction_is_idempotent():
    rng = random.Random(5)
    for m in (8, 12, 30, 42):
        vec = [rng.randrange(-5, 6) for _ in range(m)]
        once = reduce_group_ring(vec, m)
        padded = list(once) + [0] * (m - len(once))
        assert reduce_group_ring(padded, m) == once
        approx = sum(c * cmath.exp(2j * math.pi * i / m) for i, c in enumerate(vec))
        assert abs(CycValue.from_group_ring(m, vec).approx - approx) < 1e-9


def test_cyclotomic_degrees():
    for m in (1, 2, 6, 12, 30):
        assert cyclotomic_poly(m).degree == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)
