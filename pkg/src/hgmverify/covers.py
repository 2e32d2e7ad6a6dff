"""Covers of P^1, pullback of monodromy, and the two-step relation verifier.

A relation says that the source family at z equals, up to a rank-one twist, a
Galois conjugate of the target family at phi(z).  Step 1 compares local
monodromy (pullback of the target, shifted by the twist characters) with the
source.  Step 2 compares finite hypergeometric sums at sampled points over a
range of primes.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import partial

import sympy

from . import catalog as cat
from .errors import HypothesisError, SkipSample
from .fields import make_field
from .gauss import EXACT_PRIME_CAP, GaussTable, JacobiSpec
from .hypsum import HGMParams, TwistSpec, hyp_sum, trace_at_one, twist_value
from .maps import RationalMap
from .monodromy import LocalMonodromy, MonodromyData, data_equal, local_data, params_from_local_data
from .report import Report, comparison_row, sample_stream
from .values import CycValue, RationalMod1

INF = "inf"
TRIVIAL = LocalMonodromy((0, 0))
COVERS_FILE = "covers.txt"


# ---------------------------------------------------------------------------
# prime ranges
# ---------------------------------------------------------------------------


def parse_prime_range(text: str) -> tuple[int, int]:
    """``"LO..HI"`` (inclusive) or a single prime."""
    if ".." in text:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    return int(text), int(text)


def primes_in(primes) -> list[int]:
    """Odd primes of an inclusive (lo, hi) pair, a range, or an explicit list."""
    if isinstance(primes, str):
        primes = parse_prime_range(primes)
    if isinstance(primes, tuple) and len(primes) == 2:
        lo, hi = primes
        return [p for p in sympy.primerange(max(lo, 3), hi + 1)]
    if isinstance(primes, range):
        return [p for p in sympy.primerange(max(primes.start, 3), primes.stop)]
    return [int(p) for p in primes if p > 2 and sympy.isprime(int(p))]


def backend_for(p: int, backend: str) -> str:
    if backend == "auto":
        return "exact" if p <= EXACT_PRIME_CAP else "float"
    return backend


# ---------------------------------------------------------------------------
# places and ramification
# ---------------------------------------------------------------------------


def place_name(poly: sympy.Poly) -> str:
    """Canonical name of an irreducible factor: primitive, positive leading coefficient."""
    poly = poly.primitive()[1]
    if poly.LC() < 0:
        poly = -poly
    return str(poly.as_expr())


def _places(poly: sympy.Poly) -> list[tuple[str, int, int]]:
    """(name, degree, multiplicity) of the irreducible factors over Q."""
    if poly.degree() <= 0:
        return []
    _, factors = poly.factor_list()
    return [(place_name(f), f.degree(), m) for f, m in factors]


def _place_key(item):
    name, deg = item[0], item[1]
    return (name == INF, deg, name)


@dataclass(frozen=True)
class RamificationProfile:
    degree: int
    fibers: dict  # "0" | "1" | "inf" -> tuple of (place, e)
    place_degrees: dict

    def format(self) -> str:
        parts = [f"deg={self.degree}"]
        for t in ("0", "1", INF):
            items = " ".join(f"[{name}]^{e}" for name, e in self.fibers[t])
            parts.append(f"{t}: {items}")
        return "; ".join(parts)

    def degree_sums(self) -> dict:
        return {t: sum(self.place_degrees[name] * e for name, e in self.fibers[t]) for t in self.fibers}

    def __str__(self):
        return self.format()


def _fiber_polys(phi: RationalMap) -> dict:
    return {"0": phi.numerator, "1": phi.numerator - phi.denominator, INF: phi.denominator}


def ramification_profile(phi: RationalMap) -> RamificationProfile:
    fibers = {}
    degrees = {INF: 1}
    for t, poly in _fiber_polys(phi).items():
        items = []
        for name, deg, mult in _places(poly):
            degrees[name] = deg
            items.append((name, deg, mult))
        e_inf = phi.degree - (poly.degree() if not poly.is_zero else -1)
        if e_inf > 0:
            items.append((INF, 1, e_inf))
        items.sort(key=_place_key)
        fibers[t] = tuple((name, e) for name, _, e in items)
    return RamificationProfile(phi.degree, fibers, degrees)


# ---------------------------------------------------------------------------
# pullback
# ---------------------------------------------------------------------------


def kummer_shifts(kummer_chars, sign: int = 1) -> dict:
    """Local exponent added at each place by the characters chi_alpha(u)."""
    shifts: dict = {}

    def add(place, amount):
        shifts[place] = shifts.get(place, RationalMod1(0, 1)) + amount

    for u, alpha in kummer_chars:
        alpha = sign * RationalMod1.of(alpha)
        for name, _, m in _places(u.numerator):
            add(name, m * alpha)
        for name, _, m in _places(u.denominator):
            add(name, -m * alpha)
        add(INF, -(u.deg_num - u.deg_den) * alpha)
    return {k: v for k, v in shifts.items() if not v.is_zero()}


def pullback_data(phi: RationalMap, D: MonodromyData, twist_shifts: dict | None = None) -> dict:
    """Nontrivial local classes of the (twisted) pullback, keyed by place."""
    prof = ramification_profile(phi)
    classes = {"0": D.at0, "1": D.at1, INF: D.atinf}
    out = {}
    for t, items in prof.fibers.items():
        for name, e in items:
            out[name] = classes[t].power(e)
    for name, s in (twist_shifts or {}).items():
        out[name] = out.get(name, TRIVIAL).shift(s)
    return {k: v for k, v in out.items() if not v.is_trivial}


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Variant:
    """Trace-level reading of a twist.

    kummer_sign flips every Kummer exponent, side names the trace the twist
    multiplies, and tate names the trace the factor p^tate multiplies.
    Text form: ``"+1 target"`` or ``"+1 source tate=source"``.
    """

    kummer_sign: int = 1
    side: str = "target"
    tate: str = "target"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        sign, side, *rest = text.split()
        tate = "target"
        for item in rest:
            key, _, val = item.partition("=")
            if key != "tate" or val not in ("target", "source"):
                raise ValueError(f"bad variant field {item!r}")
            tate = val
        if side not in ("target", "source"):
            raise ValueError(f"bad variant side {side!r}")
        return cls(int(sign), side, tate)

    def __str__(self):
        out = f"{'+1' if self.kummer_sign > 0 else '-1'} {self.side}"
        return out if self.tate == "target" else out + f" tate={self.tate}"


def _other_side(side: str) -> str:
    return "source" if side == "target" else "target"


@dataclass(frozen=True)
class RelationSpec:
    """source(z) ~ twist * target^sigma(phi(z)); ``direction`` names the side carrying the twist.

    The literal reading puts the Tate factor p^tate on the target side.
    """

    name: str
    source: HGMParams
    target: HGMParams
    map: RationalMap
    twist: TwistSpec = field(default_factory=TwistSpec)
    direction: str = "target"
    variant: Variant | None = None
    expected_profile: str | None = None

    def __post_init__(self):
        if self.direction not in ("target", "source"):
            raise ValueError("direction must be 'target' or 'source'")

    @property
    def target_conj(self) -> HGMParams:
        return self.target.conj(self.twist.conj_index)

    @property
    def level(self) -> int:
        return math.lcm(self.source.level, self.target_conj.level, self.twist.level)

    @property
    def literal_variant(self) -> Variant:
        return Variant(1, self.direction)

    @property
    def frozen_variant(self) -> Variant:
        return self.variant or self.literal_variant

    def describe(self, variant: Variant | None = None) -> str:
        """Human-readable relation under a variant (the frozen one by default)."""
        v = variant or self.frozen_variant
        tw = replace(self.twist.with_kummer_sign(v.kummer_sign), tate_power=0).describe()
        src, tgt = f"H({self.source}|z)", f"H({self.target_conj}|{self.map})"
        if self.twist.tate_power:
            tate = f"p^{self.twist.tate_power} * "
            if v.tate == "target":
                tgt = tate + tgt
            else:
                src = tate + src
        if v.side == "target":
            return f"{src} = {tw} * {tgt}"
        return f"{tw} * {src} = {tgt}"


def monodromy_check(R: RelationSpec) -> dict:
    """Step 1: twisted pullback of the target against the source's local data."""
    D = local_data(R.target_conj)
    sign = 1 if R.direction == "target" else -1
    shifts = kummer_shifts(R.twist.kummer_chars, sign)
    pulled = pullback_data(R.map, D, shifts)
    extra = sorted(set(pulled) - {"z", "z - 1", INF})
    got = MonodromyData(pulled.get("z", TRIVIAL), pulled.get("z - 1", TRIVIAL), pulled.get(INF, TRIVIAL))
    want = local_data(R.source)
    recovered = None if extra else params_from_local_data(got)
    ok = recovered is not None and data_equal(got, want)
    return {
        "ok": ok,
        "places": {k: str(v) for k, v in sorted(pulled.items())},
        "extra_places": extra,
        "recovered": str(recovered) if recovered is not None else "not hypergeometric",
        "source_data": str(want),
    }


def _samples_at(R: RelationSpec, p: int, samples: int, seed: int):
    """Distinct valid z0 in F_p, drawn from the seeded stream."""
    rng = sample_stream(seed, p)
    seen, out = set(), []
    attempts = 0
    while len(out) < samples and len(seen) < p - 2 and attempts < 50 * samples + 4 * p:
        attempts += 1
        z = 2 + rng.below(p - 2)
        if z in seen:
            continue
        seen.add(z)
        w = R.map.eval_mod(z, p)
        if w is None or w in (0, 1):
            continue
        if any(u.eval_mod(z, p) in (None, 0) for u, _ in R.twist.kummer_chars):
            continue
        out.append((z, w))
    return out


def relation_sides(T: GaussTable, R: RelationSpec, variant: Variant, z: int, w: int):
    """(lhs, rhs) at one sample; raises SkipSample when the twist degenerates."""
    tv = twist_value(T, replace(R.twist, tate_power=0), z, variant.kummer_sign)
    hs = hyp_sum(T, R.source, z)
    ht = hyp_sum(T, R.target_conj, w)
    tate = Fraction(T.p) ** R.twist.tate_power
    if variant.tate == "target":
        ht = ht.scale(tate)
    else:
        hs = hs.scale(tate)
    if variant.side == "target":
        return hs, tv * ht
    return tv * hs, ht


def relation_prime_rows(R: RelationSpec, variant: Variant, p: int, samples: int, seed: int, backend: str, tol: float):
    """Step 2 rows at one prime (empty list when no sample is usable)."""
    T = GaussTable(make_field(p), backend=backend_for(p, backend))
    rows = []
    for i, (z, w) in enumerate(_samples_at(R, p, samples, seed)):
        try:
            lhs, rhs = relation_sides(T, R, variant, z, w)
        except SkipSample:
            continue
        rows.append(comparison_row(p, i, z, lhs, rhs, tol, mapped=w))
    return rows


def _split_primes(R: RelationSpec, primes, backend: str):
    usable, skipped = [], []
    level = R.level
    for p in primes_in(primes):
        if (p - 1) % level:
            skipped.append({"prime": p, "reason": f"not 1 mod {level}"})
        elif backend == "exact" and p > EXACT_PRIME_CAP:
            skipped.append({"prime": p, "reason": f"exact backend capped at {EXACT_PRIME_CAP}"})
        else:
            usable.append(p)
    return usable, skipped


def variant_order(R: RelationSpec) -> list[Variant]:
    """Literal reading first; the Tate side is only varied when a Tate factor exists."""
    lit = R.literal_variant
    other = _other_side(lit.side)
    base = [(1, lit.side), (-1, lit.side), (1, other), (-1, other)]
    tates = ["target", "source"] if R.twist.tate_power else ["target"]
    return [Variant(s, side, t) for t in tates for s, side in base]


def calibrate(R: RelationSpec, primes, samples: int = 10, seed: int = 7, backend: str = "float", tol: float = 1e-8) -> dict:
    """Try the four variants on the first prime with data; pick the first that passes."""
    usable, _ = _split_primes(R, primes, backend)
    for p in usable:
        results = {}
        for v in variant_order(R):
            rows = relation_prime_rows(R, v, p, samples, seed, backend, tol)
            if not rows:
                break
            results[str(v)] = all(r["status"] == "pass" for r in rows)
        if not results:
            continue
        chosen = next((v for v, ok in results.items() if ok), None)
        return {
            "prime": p,
            "variants": results,
            "chosen": chosen,
            "literal": str(R.literal_variant),
            "literal_pass": results[str(R.literal_variant)],
        }
    return {"prime": None, "variants": {}, "chosen": None, "literal": str(R.literal_variant), "literal_pass": False}


def verify_relation(
    R: RelationSpec,
    primes=(1, 150),
    samples: int = 10,
    seed: int = 7,
    backend: str = "float",
    tol: float = 1e-8,
    variant: Variant | None = None,
    run_calibration: bool = False,
    workers: int = 1,
    timing: bool = False,
) -> Report:
    """Two-step verification of one relation over a prime range."""
    start = time.perf_counter()
    use = variant or R.frozen_variant
    report = Report(identity=f"{R.name}: {R.describe(use)}")
    step1 = monodromy_check(R)
    report.details["monodromy"] = step1
    report.details["level"] = R.level
    report.rows.append({"prime": None, "sample": None, "stage": "monodromy", "status": "pass" if step1["ok"] else "fail"})
    report.calibration = {"frozen": str(use), "literal": str(R.literal_variant), "literal_is_frozen": use == R.literal_variant}
    if run_calibration:
        cal = calibrate(R, primes, samples, seed, backend, tol)
        report.calibration["run"] = cal
        report.calibration["frozen_passes"] = cal["variants"].get(str(use), False)
    usable, skipped = _split_primes(R, primes, backend)
    report.skipped_primes = skipped
    if not step1["ok"]:
        report.details["step2"] = "not run: monodromy mismatch"
    else:
        work = partial(relation_prime_rows, R, use, samples=samples, seed=seed, backend=backend, tol=tol)
        if workers > 1 and len(usable) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                per_prime = list(pool.map(work, usable))
        else:
            per_prime = [work(p) for p in usable]
        for p, rows in zip(usable, per_prime):
            if rows:
                report.rows.extend(rows)
            else:
                report.no_data_primes.append(p)
    report.sort_rows()
    if timing:
        report.wall_time = time.perf_counter() - start
    return report


def endpoint_check(R: RelationSpec, p: int, backend: str = "float", tol: float = 1e-8) -> dict:
    """Closed-form comparison at z = 1 for a relation whose map sends 1 to 0.

    The source side is trace_at_one(source) times the twist at 1; the target
    family degenerates at 0 with value 1, so that side is p^tate.
    """
    if R.map(Fraction(1)) != 0:
        raise ValueError(f"{R.name}: map does not send 1 to 0")
    T = GaussTable(make_field(p), backend=backend_for(p, backend))
    tv = twist_value(T, replace(R.twist, tate_power=0), 1)
    lhs = trace_at_one(T, R.source) * tv
    rhs = CycValue.rational(p**R.twist.tate_power, T.backend)
    return comparison_row(p, None, 1, lhs, rhs, tol, stage="z = 1")


# ---------------------------------------------------------------------------
# catalog of relations
# ---------------------------------------------------------------------------


def parse_params(text: str, env: dict) -> HGMParams:
    top, bottom = text.split(";")
    return HGMParams(
        tuple(cat.eval_expr(x, env) for x in cat.split_list(top)),
        tuple(cat.eval_expr(x, env) for x in cat.split_list(bottom)),
    )


def parse_jacobi(text: str, env: dict) -> tuple:
    """``"a1, a2 | b1, b2 ^-1; ..."`` into (JacobiSpec, exponent) pairs."""
    out = []
    for item in cat.split_list(text, ";"):
        power = 1
        if "^" in item:
            item, power = item.split("^")
            power = int(power)
        a, b = item.split("|")
        out.append(
            (JacobiSpec(tuple(cat.eval_expr(x, env) for x in cat.split_list(a)),
                        tuple(cat.eval_expr(x, env) for x in cat.split_list(b))), power)
        )
    return tuple(out)


def parse_kummer(text: str, env: dict) -> tuple:
    """``"u : alpha; ..."`` into (RationalMap, exponent) pairs."""
    out = []
    for item in cat.split_list(text, ";"):
        u, alpha = item.split(":")
        out.append((RationalMap.parse(u), cat.eval_expr(alpha, env)))
    return tuple(out)


def check_requirements(name: str, text: str, env: dict) -> None:
    """Each clause is ``notint EXPR`` or ``oddprime SYMBOL``; raise on the first violation."""
    for clause in cat.split_list(text, ";"):
        kind, expr = clause.split(None, 1)
        if kind == "notint":
            if cat.eval_expr(expr, env).denominator == 1:
                raise HypothesisError(f"{name}: hypothesis '{expr} is not an integer' fails")
        elif kind == "oddprime":
            v = cat.eval_expr(expr, env)
            if v.denominator != 1 or v < 3 or not sympy.isprime(int(v)):
                raise HypothesisError(f"{name}: hypothesis '{expr} is an odd prime' fails")
        else:
            raise ValueError(f"{name}: unknown hypothesis kind {kind!r}")


def build_relation(name: str, rec, env: dict) -> RelationSpec:
    check_requirements(name, rec.get("requires", ""), env)
    source = parse_params(rec["source"], env)
    target = parse_params(rec["target"], env)
    twist = TwistSpec(
        parse_jacobi(rec.get("jacobi", ""), env),
        parse_kummer(rec.get("kummer", ""), env),
        tuple(cat.eval_expr(x, env) for x in cat.split_list(rec.get("sign", ""))),
        int(cat.eval_expr(rec.get("tate", "0"), env)),
        int(cat.eval_expr(rec.get("conj", "1"), env)),
    )
    R = RelationSpec(
        name=name,
        source=source,
        target=target,
        map=RationalMap.parse(rec["map"]),
        twist=twist,
        direction=rec.get("direction", "target"),
        variant=Variant.parse(rec["variant"]) if rec.get("variant") else None,
        expected_profile=rec.get("profile") or None,
    )
    for label, P in (("source", R.source), ("target", R.target_conj)):
        if not P.is_generic:
            raise HypothesisError(f"{name}: {label} parameters {P} are not generic")
    return R


def catalog_relations(a="1/3", b="1/5", q=5, path=None, names=None) -> list[RelationSpec]:
    """Instantiate the catalog relations at the given free parameters."""
    parser = cat.read_catalog(path, COVERS_FILE, "covers")
    env = {"a": Fraction(a), "b": Fraction(b), "q": Fraction(q)}
    wanted = cat.record_names(parser) if names is None else list(names)
    out = []
    for name in wanted:
        if not parser.has_section(name):
            raise KeyError(f"no catalog relation named {name!r}")
        out.append(build_relation(name, parser[name], env))
    return out


def catalog_names(path=None) -> list[str]:
    return cat.record_names(cat.read_catalog(path, COVERS_FILE, "covers"))


# ---------------------------------------------------------------------------
# Diophantine points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiophPoint:
    z0: Fraction
    w0: Fraction
    u0: tuple  # (r, c, D): u0 = r +- c sqrt(D)
    gcd: int

    @property
    def primitive(self) -> bool:
        return self.gcd == 1

    def u0_text(self) -> str:
        r, c, D = self.u0
        return f"{r} +- {c}*sqrt({D})"


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = k^2 * D with D squarefree (sign kept in D)."""
    if n == 0:
        return 0, 0
    k, D = 1, -1 if n < 0 else 1
    for prime, e in sympy.factorint(abs(n)).items():
        k *= prime ** (e // 2)
        if e % 2:
            D *= prime
    return k, D


def dioph_points(alpha: int, beta: int, gamma: int, q: int, pexp: int) -> DiophPoint:
    """Specialization points attached to a solution of x^q + y^q = z^pexp."""
    if 0 in (alpha, beta, gamma):
        raise ValueError("alpha, beta, gamma must be nonzero")
    if q < 3 or not sympy.isprime(q):
        raise ValueError("q must be an odd prime")
    if not sympy.isprime(pexp):
        raise ValueError("pexp must be prime")
    if alpha**q + beta**q != gamma**pexp:
        raise ValueError(f"{alpha}^{q} + {beta}^{q} != {gamma}^{pexp}")
    z0 = Fraction(alpha**q, gamma**pexp)
    w0 = Fraction(-(beta ** (2 * q)), 4 * alpha**q * gamma**pexp)
    if w0 != -((z0 - 1) ** 2) / (4 * z0):
        raise ArithmeticError("inconsistent specialization points")
    disc = 1 - w0  # u0 = 1/2 +- sqrt(disc)/2
    k, D = _squarefree_split(disc.numerator * disc.denominator)
    c = Fraction(k, 2 * disc.denominator)
    return DiophPoint(z0, w0, (Fraction(1, 2), c, D), math.gcd(math.gcd(alpha, beta), gamma))


def dioph_chain(point: DiophPoint, q: int, primes=(1, 400), backend: str = "float", tol: float = 1e-8,
                path=None) -> Report:
    """Check both covers of the (q,q,p) chain at the reductions of z0, w0 and u0.

    At each prime the second-cover relation is tested at (z0, w0) and the
    first-cover relation (Galois-conjugated) at (u0, w0) for both roots u0,
    using only primes where the surd's discriminant is a square.
    """
    second, pi1 = catalog_relations(q=q, path=path, names=["chain-second", "chain-first"])
    j = second.twist.conj_index
    pi1 = replace(pi1, source=pi1.source.conj(j), target=pi1.target.conj(j))
    level = math.lcm(second.level, pi1.level)
    report = Report(identity=f"dioph chain q={q} z0={point.z0} w0={point.w0} u0={point.u0_text()}")
    r, c, D = point.u0
    variant = second.frozen_variant
    for p in primes_in(primes):
        bad = [point.z0, point.w0, point.z0 - 1, point.w0 - 1, r, c]
        if (p - 1) % level or any(x.numerator % p == 0 or x.denominator % p == 0 for x in bad) or D % p == 0:
            report.skipped_primes.append({"prime": p, "reason": "not qualified or bad reduction"})
            continue
        if pow(D % p, (p - 1) // 2, p) != 1:
            report.skipped_primes.append({"prime": p, "reason": "surd discriminant not a square"})
            continue
        T = GaussTable(make_field(p), backend=backend_for(p, backend))
        z = point.z0.numerator * pow(point.z0.denominator, -1, p) % p
        w = point.w0.numerator * pow(point.w0.denominator, -1, p) % p
        lhs, rhs = relation_sides(T, second, variant, z, w)
        report.rows.append(comparison_row(p, 0, z, lhs, rhs, tol, stage="second cover", mapped=w))
        root = int(sympy.sqrt_mod(D % p, p))
        cr = c.numerator * pow(c.denominator, -1, p) % p
        rr = r.numerator * pow(r.denominator, -1, p) % p
        hw = hyp_sum(T, pi1.target, w)
        for i, s in enumerate((1, -1), start=1):
            u = (rr + s * cr * root) % p
            report.rows.append(comparison_row(p, i, u, hyp_sum(T, pi1.source, u), hw, tol,
                                              stage="first cover", mapped=w))
    report.sort_rows()
    return report
