import random
from dataclasses import replace
from fractions import Fraction

import pytest
import sympy

from hgmverify.covers import (
    Variant,
    catalog_relations,
    dioph_chain,
    dioph_points,
    endpoint_check,
    monodromy_check,
    ramification_profile,
    verify_relation,
)
from hgmverify.errors import HypothesisError
from hgmverify.hypsum import HGMParams
from hgmverify.maps import RationalMap
from hgmverify.monodromy import is_pseudo_reflection, local_data

from perturb import detected, perturbations


def test_profile_examples():
    assert str(ramification_profile(RationalMap.parse("4*z*(1-z)"))) == \
        "deg=2; 0: [z]^1 [z - 1]^1; 1: [2*z - 1]^2; inf: [inf]^2"
    assert str(ramification_profile(RationalMap.parse("-(z-1)**2/(4*z)"))) == \
        "deg=2; 0: [z - 1]^2; 1: [z + 1]^2; inf: [z]^1 [inf]^1"


def test_degree_four_fiber_over_one():
    prof = ramification_profile(RationalMap.parse("-(z+8)**3*z/(64*(1-z)**3)"))
    assert prof.fibers["1"] == (("z**2 - 20*z - 8", 2),)
    z = sympy.Symbol("z")
    assert set(sympy.solve(z**2 - 20 * z - 8, z)) == {10 + 6 * sympy.sqrt(3), 10 - 6 * sympy.sqrt(3)}
    assert dict(prof.fibers["0"])["z + 8"] == 3 and dict(prof.fibers["inf"])["z - 1"] == 3


def test_catalog_profiles_match():
    for R in catalog_relations():
        assert ramification_profile(R.map).format() == R.expected_profile, R.name


def test_degree_sums_random_maps():
    rng = random.Random(13)
    z = sympy.Symbol("z")
    checked = 0
    while checked < 100:
        dn, dd = rng.randint(0, 6), rng.randint(0, 6)
        num = sum(rng.randint(-4, 4) * z**k for k in range(dn + 1))
        den = sum(rng.randint(-4, 4) * z**k for k in range(dd + 1))
        try:
            phi = RationalMap.parse(str(num / den))
        except (ValueError, ZeroDivisionError):
            continue
        prof = ramification_profile(phi)
        assert all(s == phi.degree for s in prof.degree_sums().values())
        checked += 1


def test_catalog_pullbacks_are_hypergeometric():
    for R in catalog_relations():
        step = monodromy_check(R)
        assert step["ok"] and not step["extra_places"], R.name
        assert set(step["places"]) <= {"z", "z - 1", "inf"}


def test_three_places_and_reflection_at_one():
    for R in catalog_relations():
        step = monodromy_check(R)
        assert set(step["places"]) == {"z", "z - 1", "inf"}, R.name
        assert is_pseudo_reflection(local_data(HGMParams.parse(step["recovered"])).at1)


def test_hypotheses():
    assert catalog_relations("1/3", "1/5", names=["quadratic-moebius"])
    with pytest.raises(HypothesisError, match="4\\*a"):
        catalog_relations("1/4", names=["quartic"])
    with pytest.raises(HypothesisError, match="odd prime"):
        catalog_relations(q=4, names=["chain-first"])


def test_isom_diof_parameters():
    (R,) = catalog_relations(q=5, names=["chain-second"])
    assert R.source.same_as(HGMParams((Fraction(1, 10), Fraction(9, 10)), (Fraction(3, 5), Fraction(2, 5))))
    assert R.twist.conj_index == 7
    assert str(R.map) == str(RationalMap.parse("-(z-1)**2/(4*z)"))


@pytest.mark.parametrize("p", [41, 61, 101])
def test_isom_diof_value_at_one(p):
    (R,) = catalog_relations(q=5, names=["chain-second"])
    assert endpoint_check(R, p)["status"] == "pass"


def test_variant_text_round_trip():
    for text in ("+1 target", "-1 source", "-1 source tate=source"):
        assert str(Variant.parse(text)) == text


@pytest.mark.parametrize("name", ["quadratic", "reflection-twisted", "quartic", "chain-second"])
def test_catalog_relation_passes(name):
    a = "1/7" if name == "quartic" else "1/3"
    (R,) = catalog_relations(a, "1/5", 5, names=[name])
    rep = verify_relation(R, (1, 150), 6, 7)
    assert rep.ok and rep.samples_total > 0


def test_dropping_jacobi_factor_fails():
    (R,) = catalog_relations(names=["reflection-twisted"])
    bad = replace(R, twist=replace(R.twist, jacobi_factors=()))
    rep = verify_relation(bad, (1, 150), 10, 7)
    assert rep.details["monodromy"]["ok"] and rep.failures > 0


def test_negative_controls_one_relation():
    (R,) = catalog_relations(names=["quadratic-moebius"])
    for label, bad in perturbations(R):
        assert detected(bad), label


def test_dioph_points_example():
    pt = dioph_points(2, 2, 4, 3, 2)
    assert (pt.z0, pt.w0) == (Fraction(1, 2), Fraction(-1, 8))
    r, c, D = pt.u0
    assert (r, c, D) == (Fraction(1, 2), Fraction(3, 8), 2)
    assert pt.gcd == 2 and not pt.primitive


def test_dioph_errors():
    with pytest.raises(ValueError):
        dioph_points(2, 0, 2, 3, 3)
    with pytest.raises(ValueError):
        dioph_points(1, 1, 3, 3, 2)


def test_dioph_chain():
    rep = dioph_chain(dioph_points(2, 2, 4, 3, 2), 3)
    assert rep.ok and rep.samples_total >= 6
