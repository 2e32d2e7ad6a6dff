"""Single-component perturbations of a relation, for negative controls."""

from dataclasses import replace
from fractions import Fraction

from hgmverify.covers import verify_relation
from hgmverify.errors import HypothesisError
from hgmverify.hypsum import HGMParams


def _shift_params(P, i, eps):
    vals = [x.fraction() for x in P.top + P.bottom]
    vals[i] += eps
    return HGMParams(tuple(vals[:2]), tuple(vals[2:]))


def perturbations(R):
    """(label, relation) pairs, each changing one parameter or one twist component by 1/(2N)."""
    eps = Fraction(1, 2 * R.level)
    out = []
    for i in range(4):
        out.append((f"source[{i}]", replace(R, source=_shift_params(R.source, i, eps))))
        out.append((f"target[{i}]", replace(R, target=_shift_params(R.target, i, eps))))
    tw = R.twist
    for i in range(len(tw.jacobi_factors)):
        jf = tw.jacobi_factors[:i] + tw.jacobi_factors[i + 1:]
        out.append((f"drop jacobi[{i}]", replace(R, twist=replace(tw, jacobi_factors=jf))))
    for i, (u, al) in enumerate(tw.kummer_chars):
        kc = list(tw.kummer_chars)
        kc[i] = (u, al.fraction() + eps)
        out.append((f"kummer[{i}]", replace(R, twist=replace(tw, kummer_chars=tuple(kc)))))
    for i, al in enumerate(tw.sign_exponents):
        se = list(tw.sign_exponents)
        se[i] = al.fraction() + eps
        out.append((f"sign[{i}]", replace(R, twist=replace(tw, sign_exponents=tuple(se)))))
    if tw.tate_power:
        out.append(("tate", replace(R, twist=replace(tw, tate_power=tw.tate_power + 1))))
    return out


def detected(R, primes=(1, 400), samples=10, seed=7):
    """True when the perturbed relation fails Step 1 or Step 2 (or is rejected outright)."""
    try:
        rep = verify_relation(R, primes, samples, seed)
    except (ValueError, HypothesisError):
        return True
    return rep.failures > 0
