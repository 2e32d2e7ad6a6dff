import random
from fractions import Fraction

from hgmverify.covers import catalog_relations, monodromy_check, pullback_data
from hgmverify.hypsum import HGMParams
from hgmverify.maps import RationalMap
from hgmverify.monodromy import (
    LocalMonodromy,
    MonodromyData,
    conj_equal,
    is_pseudo_reflection,
    local_data,
    params_from_local_data,
)

import pytest

F = Fraction


def test_local_data_shape():
    D = local_data(HGMParams.parse("1/3,1/5;1/2,0"))
    assert str(D) == "0: {0/1, 1/2}; 1: {0/1, 29/30}; inf: {1/3, 1/5}"
    assert D.det_ok()


def test_non_generic_rejected():
    with pytest.raises(ValueError):
        local_data(HGMParams.parse("1/2,1/3;1/2,0"))


def test_conj_equal_examples():
    assert conj_equal(LocalMonodromy((F(1, 3), F(2, 3))), LocalMonodromy((F(2, 3), F(1, 3))))
    assert not conj_equal(LocalMonodromy((0, 0), True), LocalMonodromy((0, 0)))
    assert not conj_equal(LocalMonodromy((F(1, 4), F(1, 4)), True), LocalMonodromy((F(1, 4), F(3, 4))))


def test_jordan_needs_equal_exponents():
    with pytest.raises(ValueError):
        LocalMonodromy((0, F(1, 2)), True)


def test_pseudo_reflection_examples():
    assert is_pseudo_reflection(LocalMonodromy((0, F(1, 2))))
    assert is_pseudo_reflection(LocalMonodromy((0, 0), True))
    assert not is_pseudo_reflection(LocalMonodromy((F(1, 3), F(2, 3))))


def test_round_trip_random():
    rng = random.Random(8)
    done = 0
    while done < 100:
        d = rng.randint(2, 12)
        Q = HGMParams(tuple(F(rng.randrange(d), d) for _ in range(2)), tuple(F(rng.randrange(d), d) for _ in range(2)))
        if not Q.is_generic:
            continue
        R = params_from_local_data(local_data(Q))
        assert R is not None and R.same_as(Q)
        done += 1


def test_not_hypergeometric():
    D = MonodromyData(LocalMonodromy((0, F(1, 2))), LocalMonodromy((F(1, 3), F(2, 3))), LocalMonodromy((F(1, 6), 0)))
    assert params_from_local_data(D) is None


def test_quadratic_pullback_recovers_source():
    (R,) = catalog_relations("1/3", "1/5", names=["quadratic"])
    step = monodromy_check(R)
    assert step["ok"]
    a, b = F(1, 3), F(1, 5)
    assert HGMParams.parse(step["recovered"].replace("/1", "")).same_as(HGMParams((a, b), ((a + b + 1) / 2, 0)))


def test_pullback_over_one_is_unramified():
    a, b = F(1, 3), F(1, 5)
    D = local_data(HGMParams((a / 2, b / 2), ((a + b + 1) / 2, 0)))
    pulled = pullback_data(RationalMap.parse("4*z*(1-z)"), D)
    assert "2*z - 1" not in pulled
    assert str(pulled["inf"]) == "{1/3, 1/5}"


def test_degree_four_pullback_at_triple_point():
    a = F(1, 7)
    D = local_data(HGMParams((a, F(1, 6) - a), (F(2, 3), 0)))
    pulled = pullback_data(RationalMap.parse("-(z+8)**3*z/(64*(1-z)**3)"), D)
    assert pulled["z - 1"] == LocalMonodromy((3 * a, F(1, 2) - 3 * a))
