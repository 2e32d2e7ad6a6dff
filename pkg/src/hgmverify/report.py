"""Verification reports, canonical JSON output and the seeded sampler.

Sampling uses SplitMix64 (Steele, Lea and Flood) so the z-sample sequence can
be reproduced in any language:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)            (all arithmetic mod 2^64)

The stream for prime p under seed s starts from state ``(s * 0x9E3779B97F4A7C15 + p) mod 2^64``
and a draw below n is ``next() mod n``.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

from .values import CycValue

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SCHEMA = 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n

    def uniform(self) -> float:
        """A float in [0, 1) from the top 53 bits."""
        return (self.next() >> 11) / float(1 << 53)


def sample_stream(seed: int, p: int) -> SplitMix64:
    return SplitMix64((seed * GOLDEN + p) & MASK64)


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def fmt_value(v) -> str:
    if isinstance(v, CycValue):
        return str(v)
    if isinstance(v, complex):
        return f"({fmt_float(v.real)}, {fmt_float(v.imag)})"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    return fmt_value(obj)


def comparison_row(prime, sample, z, lhs: CycValue, rhs: CycValue, tol: float, **extra) -> dict:
    """A pass/fail row for lhs == rhs (exact when both sides are exact)."""
    from .values import cyc_equal

    diff = abs(lhs.approx - rhs.approx)
    rel = diff / max(1.0, abs(lhs.approx), abs(rhs.approx))
    row = {
        "prime": prime,
        "sample": sample,
        "z_sample": z,
        "lhs": lhs,
        "rhs": rhs,
        "abs_err": float(diff),
        "rel_err": float(rel),
        "status": "pass" if cyc_equal(lhs, rhs, tol) else "fail",
    }
    row.update(extra)
    return row


def _row_key(row):
    prime = row.get("prime")
    sample = row.get("sample")
    return (-1 if prime is None else prime, -1 if sample is None else sample)


@dataclass
class Report:
    identity: str
    calibration: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    skipped_primes: list = field(default_factory=list)
    no_data_primes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    wall_time: float | None = None

    def sort_rows(self) -> None:
        self.rows.sort(key=_row_key)

    @property
    def failures(self) -> int:
        return sum(1 for r in self.rows if r.get("status") == "fail")

    @property
    def samples_total(self) -> int:
        return sum(1 for r in self.rows if r.get("sample") is not None and r.get("status") != "skipped")

    @property
    def primes_used(self) -> list:
        return sorted({r["prime"] for r in self.rows if r.get("prime") is not None and r.get("status") != "skipped"})

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def summary(self) -> dict:
        rels = [r["rel_err"] for r in self.rows if "rel_err" in r]
        out = {
            "primes_used": len(self.primes_used),
            "samples_total": self.samples_total,
            "failures": self.failures,
            "max_rel_err": max(rels) if rels else 0.0,
        }
        if self.wall_time is not None:
            out["wall_time"] = self.wall_time
        return out

    def to_dict(self) -> dict:
        self.sort_rows()
        return _jsonable(
            {
                "schema": SCHEMA,
                "identity": self.identity,
                "calibration": self.calibration,
                "rows": self.rows,
                "skipped_primes": self.skipped_primes,
                "no_data_primes": self.no_data_primes,
                "details": self.details,
                "summary": self.summary(),
            }
        )

    def summary_line(self) -> str:
        s = self.summary()
        state = "PASS" if self.ok else "FAIL"
        return (
            f"{state} {self.identity}: primes={s['primes_used']} samples={s['samples_total']} "
            f"failures={s['failures']} max_rel_err={s['max_rel_err']:.3g}"
        )


def dumps(payload) -> str:
    return json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"


def write_report(r, path) -> None:
    """Write one report (or a list/dict of reports) as canonical JSON."""
    if isinstance(r, Report):
        payload = r.to_dict()
    elif isinstance(r, (list, tuple)):
        payload = {"schema": SCHEMA, "reports": [x.to_dict() for x in r]}
    else:
        payload = r
    text = dumps(payload)
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
