"""Kummer's 24 transformations and the group they generate.

Each entry relates H((a,b),(c,0)|z) to a twisted sum at new parameters and a
Moebius image of z.  The parameter change is an integer linear map of
(a, b, c), so an entry is also an element (L, m) of GL3(Z) x S3.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import catalog as cat
from .covers import (
    RelationSpec,
    Variant,
    calibrate,
    parse_jacobi,
    verify_relation,
)
from .errors import HypothesisError
from .hypsum import HGMParams, TwistSpec
from .maps import RationalMap

KUMMER_FILE = "kummer24.txt"
INF = "inf"
POINTS = (0, 1, INF)

# Each Moebius map as its action on (0, 1, inf).
MOBIUS = {
    "z": (0, 1, INF),
    "1-z": (1, 0, INF),
    "1/z": (INF, 1, 0),
    "1/(1-z)": (1, INF, 0),
    "z/(z-1)": (0, INF, 1),
    "(z-1)/z": (INF, 0, 1),
}
_BY_PERM = {v: k for k, v in MOBIUS.items()}


def mobius_apply(name: str, point):
    return MOBIUS[name][POINTS.index(point)]


def mobius_compose(outer: str, inner: str) -> str:
    """Name of outer(inner(z))."""
    return _BY_PERM[tuple(mobius_apply(outer, mobius_apply(inner, x)) for x in POINTS)]


def _linear_form(expr: str) -> tuple:
    """Integer coefficients of an expression that is linear in a, b, c."""
    basis = [{"a": 1, "b": 0, "c": 0}, {"a": 0, "b": 1, "c": 0}, {"a": 0, "b": 0, "c": 1}]
    if cat.eval_expr(expr, {"a": 0, "b": 0, "c": 0}) != 0:
        raise ValueError(f"{expr!r} has a constant term")
    row = tuple(cat.eval_expr(expr, env) for env in basis)
    if any(x.denominator != 1 for x in row):
        raise ValueError(f"{expr!r} is not an integer linear form")
    return tuple(int(x) for x in row)


@dataclass(frozen=True)
class KummerEntry:
    index: int
    top: tuple          # two expressions in a, b, c
    bottom: str
    mobius: str
    jacobi: str = ""
    theta: str = ""
    eta: str = ""
    sign: tuple = ()
    variant: Variant | None = None

    @property
    def param_map(self) -> np.ndarray:
        return np.array([_linear_form(e) for e in (*self.top, self.bottom)], dtype=np.int64)

    def target(self, abc) -> HGMParams:
        env = _env(abc)
        return HGMParams(tuple(cat.eval_expr(e, env) for e in self.top), (cat.eval_expr(self.bottom, env), 0))

    def twist(self, abc) -> TwistSpec:
        env = _env(abc)
        chars = []
        if self.theta:
            chars.append((RationalMap.parse("z"), cat.eval_expr(self.theta, env)))
        if self.eta:
            chars.append((RationalMap.parse("1-z"), cat.eval_expr(self.eta, env)))
        return TwistSpec(
            parse_jacobi(self.jacobi, env) if self.jacobi else (),
            tuple(chars),
            tuple(cat.eval_expr(x, env) for x in self.sign),
        )

    def relation(self, abc) -> RelationSpec:
        """The entry at (a, b, c) as a relation with the twist on the target side."""
        a, b, c = _env(abc).values()
        source = HGMParams((a, b), (c, 0))
        target = self.target(abc)
        for label, P in (("source", source), ("target", target)):
            if not P.is_generic:
                raise HypothesisError(f"entry {self.index}: {label} parameters {P} are not generic")
        return RelationSpec(
            name=f"kummer-{self.index}",
            source=source,
            target=target,
            map=RationalMap.parse(self.mobius),
            twist=self.twist(abc),
            direction="target",
            variant=self.variant,
        )


def _env(abc) -> dict:
    if isinstance(abc, str):
        abc = abc.split(",")
    a, b, c = (Fraction(str(x).strip()) for x in abc)
    return {"a": a, "b": b, "c": c}


def kummer_entries(path=None) -> list[KummerEntry]:
    parser = cat.read_catalog(path, KUMMER_FILE, "kummer")
    out = []
    for name in cat.record_names(parser):
        rec = parser[name]
        mob = rec["mobius"].replace(" ", "")
        if mob not in MOBIUS:
            raise ValueError(f"entry {name}: unknown Moebius map {mob!r}")
        out.append(
            KummerEntry(
                index=int(name),
                top=tuple(cat.split_list(rec["top"])),
                bottom=rec["bottom"].strip(),
                mobius=mob,
                jacobi=rec.get("jacobi", "").strip(),
                theta=rec.get("theta", "").strip(),
                eta=rec.get("eta", "").strip(),
                sign=tuple(cat.split_list(rec.get("sign", ""))),
                variant=Variant.parse(rec["variant"]) if rec.get("variant") else None,
            )
        )
    if [e.index for e in out] != list(range(1, len(out) + 1)):
        raise ValueError("Kummer entries must be numbered 1..n in order")
    return out


def kummer_entry(i: int, path=None) -> KummerEntry:
    entries = kummer_entries(path)
    if not 1 <= i <= len(entries):
        raise IndexError(f"entry index must be in 1..{len(entries)}")
    return entries[i - 1]


def verify_kummer(i: int, abc, primes=(1, 150), samples: int = 10, seed: int = 7, backend: str = "float",
                  tol: float = 1e-8, variant: Variant | None = None, run_calibration: bool = False,
                  workers: int = 1, timing: bool = False, path=None):
    R = kummer_entry(i, path).relation(abc)
    return verify_relation(R, primes, samples, seed, backend, tol, variant, run_calibration, workers, timing)


def calibrate_kummer(i: int, abc, primes=(1, 150), samples: int = 10, seed: int = 7, path=None) -> dict:
    return calibrate(kummer_entry(i, path).relation(abc), primes, samples, seed)


# ---------------------------------------------------------------------------
# the group generated by the 24 transformations
# ---------------------------------------------------------------------------


def _key(L: np.ndarray, m: str) -> tuple:
    return (tuple(L.flatten().tolist()), m)


def compose(x: tuple, y: tuple, law: str = "mixed") -> tuple:
    """Product of (L1, m1) and (L2, m2).

    ``mixed`` gives (L1 L2, m2 o m1); ``covariant`` gives (L1 L2, m1 o m2).
    """
    (L1, m1), (L2, m2) = x, y
    m = mobius_compose(m2, m1) if law == "mixed" else mobius_compose(m1, m2)
    return (L1 @ L2, m)


def transform_group(entries=None, law: str = "mixed", limit: int = 10_000) -> dict:
    """Breadth-first closure of the entries under composition."""
    entries = kummer_entries() if entries is None else entries
    gens = [(e.param_map, e.mobius) for e in entries]
    gen_keys = [_key(*g) for g in gens]
    seen = {}
    queue = deque()
    for g in gens:
        k = _key(*g)
        if k not in seen:
            seen[k] = g
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g, law)
            k = _key(*y)
            if k not in seen:
                if len(seen) >= limit:
                    raise RuntimeError("closure exceeded the element limit")
                seen[k] = y
                queue.append(y)
    elements = list(seen.values())
    abelian = all(
        _key(*compose(x, y, law)) == _key(*compose(y, x, law)) for x in gens for y in gens
    )
    mobius_parts = sorted({m for _, m in elements}, key=list(MOBIUS).index)
    return {
        "order": len(elements),
        "elements": elements,
        "is_abelian": abelian,
        "generators_distinct": len(set(gen_keys)) == len(gen_keys),
        "mobius_parts": mobius_parts,
        "law": law,
    }


def generated_mobius(indices, entries=None) -> list[str]:
    """Moebius parts of the subgroup generated by the chosen entries (1-based)."""
    entries = kummer_entries() if entries is None else entries
    sub = [entries[i - 1] for i in indices]
    return transform_group(sub)["mobius_parts"]
