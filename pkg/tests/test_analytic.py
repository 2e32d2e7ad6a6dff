import cmath
import random
from fractions import Fraction

import pytest

from hgmverify.analytic import quadratic_sides, connection_coefficients, f21, pochhammer, verify_series_identity

F = Fraction


def test_pochhammer_examples():
    assert pochhammer(F(3, 7), 0) == 1
    assert pochhammer(1, 5) == 120
    assert pochhammer(F(1, 2), 3) == F(15, 8)


def test_f21_trivial_cases():
    assert f21(F(1, 3), F(1, 5), F(1, 2), 0).value == 1
    assert f21(0, F(1, 5), F(1, 2), 0.5).value == 1
    z = 0.3 + 0.2j
    s = f21(1, 1, 1, z)
    assert abs(s.value - 1 / (1 - z)) <= s.tail_bound + 1e-15


def test_f21_errors():
    with pytest.raises(ValueError):
        f21(1, 1, -2, 0.1)
    with pytest.raises(ValueError):
        f21(1, 1, 1, 1.0)


def test_tail_bound_is_a_bound():
    rng = random.Random(1)
    for _ in range(20):
        a, b, c = (F(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(3))
        if c.denominator == 1 and c <= 0:
            continue
        z = cmath.rect(rng.uniform(0, 0.7), rng.uniform(0, 6.283))
        n = rng.randint(20, 60)
        short, long_ = f21(a, b, c, z, terms=n), f21(a, b, c, z, terms=2 * n)
        assert abs(long_.value - short.value) <= short.tail_bound * (1 + 1e-9) + 1e-13


def test_quadratic_examples():
    r = verify_series_identity("quadratic", F(1, 3), F(1, 5), 0.1, terms=80)
    assert r.ok and r.rows[0]["abs_err"] <= 1e-10
    lhs, rhs, _ = quadratic_sides(F(1, 3), F(1, 5), 0)
    assert lhs == rhs == 1


def test_connection_example():
    r = verify_series_identity("connection", F(1, 3), F(1, 5), 0.6, terms=120)
    assert r.ok and r.rows[0]["abs_err"] <= 1e-8


def test_connection_shifted_coefficient_does_not_hold():
    r = verify_series_identity("connection", F(1, 3), F(1, 5), 0.6, shifted=True)
    assert not r.ok


def test_connection_first_coefficient_is_cos_ratio():
    k1, _ = connection_coefficients(F(1, 3), F(1, 5))
    assert abs(k1 - cmath.cos((F(1, 3) - F(1, 5)) * cmath.pi / 2).real / cmath.cos(F(8, 15) * cmath.pi / 2).real) < 1e-14


def test_precondition_errors():
    with pytest.raises(ValueError):
        verify_series_identity("quadratic", F(1, 3), F(1, 5), 0.5)
    with pytest.raises(ValueError):
        verify_series_identity("connection", F(1, 3), F(1, 5), -0.1)
    with pytest.raises(ValueError):
        verify_series_identity("cubic", F(1, 3), F(1, 5), 0.1)
