"""Sweeps for the closed forms at z = 1 and the Jacobi identity behind them."""

from __future__ import annotations

from fractions import Fraction

from .covers import backend_for, primes_in
from .errors import NoClosedForm
from .fields import make_field
from .gauss import EXACT_PRIME_CAP, GaussTable, JacobiSpec, jacobi_motive
from .hypsum import HGMParams, hyp_sum, trace_at_one, trace_branch
from .report import Report, comparison_row
from .values import CycValue, cyc_equal, lcm_of_dens


def _tables(level: int, primes, backend: str):
    for p in primes_in(primes):
        if (p - 1) % level:
            continue
        b = backend_for(p, backend)
        if b == "exact" and p > EXACT_PRIME_CAP:
            continue
        yield p, GaussTable(make_field(p), backend=b)


def trace_at_one_report(P: HGMParams, primes=(1, 150), backend: str = "float", tol: float = 1e-8) -> Report:
    """Closed form at z = 1 next to the finite sum at z = 1.

    The two are not expected to agree in general, so rows carry the status
    ``agree`` or ``differ`` (never ``fail``); details give the agreement rates
    for the closed form and for its complex conjugate.
    """
    report = Report(identity=f"trace at z = 1 for {P}")
    branch = trace_branch(P)
    report.details["branch"] = branch
    if branch == "none":
        report.details["note"] = str(NoClosedForm(f"no closed form at z = 1 for {P}"))
        return report
    same = conj = 0
    for p, T in _tables(P.level, primes, backend):
        closed = trace_at_one(T, P)
        value = hyp_sum(T, P, 1)
        row = comparison_row(p, 0, 1, value, closed, tol)
        row["status"] = "agree" if row["status"] == "pass" else "differ"
        row["agrees_with_conjugate"] = cyc_equal(value, closed.conjugate(), tol)
        same += row["status"] == "agree"
        conj += row["agrees_with_conjugate"]
        report.rows.append(row)
    n = len(report.rows)
    report.details["agreement_rate"] = same / n if n else None
    report.details["conjugate_agreement_rate"] = conj / n if n else None
    return report


def equality_spec(a, b) -> JacobiSpec:
    """The Jacobi motive that the degree-2 cover argument at z = 1 needs to be 1."""
    a, b = Fraction(a), Fraction(b)
    return JacobiSpec(((1 + a + b) / 2, (1 - a - b) / 2), ((1 - a + b) / 2, (1 + a - b) / 2))


def equality_report(a, b, primes=(1, 43), backend: str = "exact", tol: float = 1e-8) -> Report:
    spec = equality_spec(a, b)
    report = Report(identity=f"{spec} = 1 for a={a} b={b}")
    for p, T in _tables(lcm_of_dens(spec.entries()), primes, backend):
        value = jacobi_motive(T, spec)
        report.rows.append(comparison_row(p, 0, None, value, CycValue.rational(1, T.backend), tol))
    return report
