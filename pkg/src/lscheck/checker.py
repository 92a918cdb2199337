"""Grid-based semicontinuity verdicts and the full proposition suite.

V-lsc is checked through the ball criterion: for a target t in F(0) and a
radius r, every F(x) with x below the witness radius delta must come within
closed sup distance r of t. In a metric range this is equivalent to the
open-set definition of lower hemicontinuity, since a ball around t can be
fitted inside any open set G that contains t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import correspondences as corr
from . import witnesses as wit
from .config import Config
from .errors import DomainError
from .kernels import BACKEND
from .metric import DIST_GUARD, distances
from .seq import SeqLike, TruncSeq, as_seq, unit_ray

# slope of the linear modulus each family must respect: excess(x) <= c*x
MODULUS_SLOPE = {"F1": 1.0, "F2": 2.0}
BOUND_GUARD = 1e-9


@dataclass(frozen=True)
class SampleSpec:
    """How family(0) is sampled. ``mixed`` splits ``n`` between interior and boundary draws."""

    n: int = 500
    strategy: str = "mixed"
    seed: int = 42
    box: float = corr.DEFAULT_BOX
    window: float = corr.DEFAULT_WINDOW

    def to_dict(self) -> dict:
        return {"n": self.n, "strategy": self.strategy, "seed": self.seed, "box": self.box, "window": self.window}


def draw(S: corr.CorrSet, spec: SampleSpec) -> np.ndarray:
    if spec.strategy != "mixed":
        return corr.sample_array(S, spec.n, spec.strategy, spec.seed, spec.box, spec.window)
    n_in = spec.n - spec.n // 2
    parts = [corr.sample_array(S, n_in, "interior", spec.seed, spec.box, spec.window)]
    if spec.n // 2:
        parts.append(corr.sample_array(S, spec.n // 2, "boundary", spec.seed + 1, spec.box, spec.window))
    return np.vstack(parts)


def ray_points(K: int) -> np.ndarray:
    return np.stack([unit_ray(k, K).coords for k in range(2, K + 1)])


@dataclass
class ModulusTable:
    family: str
    K: int
    x_grid: list[float]
    excess_lb: list[Optional[float]]
    attained_at: list[Optional[str]]
    sample_spec: SampleSpec
    rays_included: bool
    warnings: list[str] = field(default_factory=list)

    def bound(self, x: float) -> tuple[str, float]:
        """The derived threshold each row must respect, as ``(op, value)``."""
        if self.family == "F":
            return ">=", 2 * self.K * x - BOUND_GUARD
        return "<=", MODULUS_SLOPE[self.family] * x + BOUND_GUARD

    def row_passes(self) -> list[Optional[bool]]:
        out = []
        for x, e in zip(self.x_grid, self.excess_lb):
            if e is None:
                out.append(None)
                continue
            op, b = self.bound(x)
            if self.family == "F" and not self.rays_included:
                out.append(e >= 0)
            else:
                out.append(e >= b if op == ">=" else e <= b)
        return out

    @property
    def passed(self) -> bool:
        return all(p is not False for p in self.row_passes())

    def rows(self) -> list[dict]:
        return [
            {"family": self.family, "x": x, "excess_lb": e, "attained_at": a}
            for x, e, a in zip(self.x_grid, self.excess_lb, self.attained_at)
        ]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "K": self.K,
            "sample_spec": self.sample_spec.to_dict(),
            "rays_included": self.rays_included,
            "rows": self.rows(),
            "row_passes": self.row_passes(),
            "passed": self.passed,
            "warnings": list(self.warnings),
        }


def hlsc_modulus(
    family: str,
    x_grid: Sequence[float],
    sample_spec: SampleSpec = SampleSpec(),
    K: int = 50,
    include_rays: bool = True,
    bisect_tol: float = 1e-12,
) -> ModulusTable:
    """Sampled excess of family(0) over family(x) for each x in the grid."""
    if not x_grid:
        raise DomainError("x_grid must not be empty")
    base = corr.make_family(family, 0.0, K)
    points = draw(base, sample_spec)
    labels = [f"sample[{i}]" for i in range(len(points))]
    if include_rays:
        points = np.vstack([points, ray_points(K)])
        labels += [f"e^({k})" for k in range(2, K + 1)]
    excess_lb, attained, warnings = [], [], []
    for x in x_grid:
        S = corr.make_family(family, x, K)
        if S.empty:
            warnings.append(f"{family}({x:g}) is empty; row skipped")
            excess_lb.append(None)
            attained.append(None)
            continue
        d = distances(S, points, abs_tol=bisect_tol)
        i = int(np.argmax(d))
        excess_lb.append(float(d[i]))
        attained.append(labels[i])
    return ModulusTable(family, K, list(x_grid), excess_lb, attained, sample_spec, include_rays, warnings)


# -- V-lsc ------------------------------------------------------------------


@dataclass
class VlscEntry:
    target: list[float]
    r: float
    delta: float
    M: Optional[float]
    x_checked: int
    max_dist: float
    max_witness_dist: float
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class VlscReport:
    targets: list[list[float]]
    r_grid: list[float]
    entries: list[VlscEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "targets": self.targets,
            "r_grid": self.r_grid,
            "entries": [e.to_dict() for e in self.entries],
            "passed": self.passed,
        }


def vlsc_check(targets: Sequence[SeqLike], r_grid: Sequence[float], x_points_per_interval: int = 100) -> VlscReport:
    """For each target t in F(0) and radius r, check dist(t, F(x)) <= r on a grid of [0, delta)."""
    targets = [as_seq(t) for t in targets]
    entries = []
    for t in targets:
        if not corr.contains(corr.make_F(0.0, t.K), t):
            raise DomainError(f"target {t} is not in F(0)")
        for r in r_grid:
            delta, M = wit.vlsc_delta(t, r)
            xs = np.linspace(0.0, delta, x_points_per_interval, endpoint=False)
            worst = worst_w = 0.0
            ok = True
            for x in xs:
                d = float(distances(corr.make_F(float(x), t.K), t.coords[None, :])[0])
                cert = wit.vlsc_certificate(t, r, float(x))
                worst = max(worst, d)
                worst_w = max(worst_w, cert.bound)
                ok &= d <= r + DIST_GUARD and cert.ok
            entries.append(VlscEntry(t.tolist(), r, delta, M, len(xs), worst, worst_w, bool(ok)))
    return VlscReport([t.tolist() for t in targets], list(r_grid), entries)


def default_vlsc_targets(K: int) -> list[TruncSeq]:
    half = np.zeros(K)
    half[0] = 0.5
    out = [TruncSeq(half), TruncSeq.zeros(K), unit_ray(2, K)]
    if K >= 5:
        out.append(unit_ray(5, K))
    return out


# -- the proposition suite --------------------------------------------------------


def dyadic_radius(x: float, margin: float = 0.49) -> float:
    """Smallest power of two eps with x <= margin*eps.

    With a power-of-two eps the shifts by eps/2 are exact in binary floating
    point, so the witness distance eps/2 can be checked without round-off.
    """
    return 2.0 ** math.ceil(math.log2(x / margin))


def _rng(seed: int, section: int) -> np.random.Generator:
    return np.random.default_rng([seed, section])


def _section(name: str, checks: list[dict], **details) -> dict:
    return {"name": name, "passed": all(c["passed"] for c in checks), "checks": checks, **details}


def _chk(name: str, passed: bool, **values) -> dict:
    return {"name": name, "passed": bool(passed), **values}


def branch_section(cfg: Config, n: int = 10_000) -> dict:
    rng = _rng(cfg.seed, 1)
    t1 = rng.uniform(-2.0, 2.0, n)
    x = rng.uniform(0.0, 1.0, n)
    k = rng.integers(2, cfg.K + 1, n)
    disagree = 0
    case1_bad = case2_bad = 0
    n_case1 = n_case2 = 0
    for a, b, c in zip(t1.tolist(), x.tolist(), k.tolist()):
        f1 = corr.f1_branch(c, a, b)
        f2 = corr.f2_branch(c, a, b)
        branch = corr.dominant_branch(a, b, c)
        diff = f2 - f1
        if abs(diff) > 1e-12:
            expect = corr.Branch.F2_MIN_OR_EQUAL if diff < 0 else corr.Branch.F1_MIN_OR_EQUAL
            disagree += branch is not expect and branch is not corr.Branch.EQUAL
        if a >= 0:
            n_case1 += 1
            case1_bad += not f1 <= f2 + 1e-12
        if a <= -b:
            n_case2 += 1
            case2_bad += not f2 <= f1 + 1e-12
    checks = [
        _chk("branch predicate agrees with sign(f2 - f1)", disagree == 0, samples=n, disagreements=disagree),
        _chk("t1 >= 0 implies f1 <= f2", case1_bad == 0, samples=n_case1, failures=case1_bad),
        _chk("t1 <= -x implies f2 <= f1", case2_bad == 0, samples=n_case2, failures=case2_bad),
        _chk("t1 = 0 = x gives Equal", corr.dominant_branch(0.0, 0.0, 2) is corr.Branch.EQUAL),
    ]
    return _section("branch_analysis", checks)


def _spec_for(cfg: Config) -> SampleSpec:
    return SampleSpec(cfg.n_samples, "mixed", cfg.seed, cfg.box, cfg.window)


def _witness_checks(family: str, cfg: Config, points: np.ndarray) -> dict:
    n_bad_member = n_bad_dist = 0
    worst_ratio = 0.0
    cases: dict[str, int] = {}
    grid = list(cfg.x_grid)
    for x in grid:
        eps = dyadic_radius(x)
        S = corr.make_family(family, x, cfg.K)
        for row in points:
            if family == "F1":
                t = wit.f1_hlsc_witness(row, x, eps)
            else:
                t = wit.f2_hlsc_witness(row, x, eps)
                case = wit.f2_case(row[0], eps)
                cases[case] = cases.get(case, 0) + 1
            d = float(np.max(np.abs(t.coords - row)))
            n_bad_member += not corr.contains(S, t, 0.0)
            if family == "F1":
                n_bad_dist += abs(d - eps / 2) > 1e-15
            else:
                n_bad_dist += not d < eps
            worst_ratio = max(worst_ratio, d / eps)
    out = {"n_points": len(points), "x_grid": grid, "witness_nonmembers": n_bad_member,
           "distance_failures": n_bad_dist, "max_dist_over_eps": worst_ratio}
    if cases:
        out["cases"] = dict(sorted(cases.items()))
    return out


def _f2_case_points(K: int, n: int, seed: int, eps_max: float, box: float, window: float) -> np.ndarray:
    """Members of F2(0) split between the three s1 regimes of the F2 witness."""
    rng = _rng(seed, 30)
    F2 = corr.make_F2(0.0, K)
    per = max(1, n // 3)
    t1 = np.concatenate([
        rng.uniform(eps_max, 1.0, per),
        rng.uniform(-box, -2 * eps_max, per),
        rng.uniform(-eps_max / 2, eps_max / 4, n - 2 * per),
    ])
    caps = np.min(F2.intercepts[None] + F2.slopes[None] * t1[:, None, None], axis=2)
    drop = window * rng.uniform(0.0, 1.0, caps.shape) * (rng.uniform(size=(len(t1), 1)) < 0.5)
    return np.column_stack([t1, caps - drop])


def hlsc_section(family: str, cfg: Config) -> dict:
    spec = _spec_for(cfg)
    table = hlsc_modulus(family, list(cfg.x_grid), spec, cfg.K, True, cfg.bisect_tol)
    base = corr.make_family(family, 0.0, cfg.K)
    pts = draw(base, spec)
    if family == "F2":
        eps_max = max(dyadic_radius(x) for x in cfg.x_grid)
        pts = np.vstack([pts, _f2_case_points(cfg.K, cfg.n_samples, cfg.seed, eps_max, cfg.box, cfg.window)])
    w = _witness_checks(family, cfg, pts)
    slope = MODULUS_SLOPE[family]
    checks = [
        _chk(f"sampled excess <= {slope:g}*x", table.passed, rows=table.rows()),
        _chk("witness is a member", w["witness_nonmembers"] == 0, **{k: v for k, v in w.items() if k != "distance_failures"}),
        _chk("witness distance " + ("== eps/2" if family == "F1" else "< eps"), w["distance_failures"] == 0,
             failures=w["distance_failures"]),
    ]
    if family == "F2":
        checks.append(_chk("all three s1 cases exercised", len(w.get("cases", {})) == 3, cases=w.get("cases", {})))
    name = "f1_hlsc" if family == "F1" else "f2_hlsc"
    return _section(name, checks, modulus=table.to_dict())


def _random_members(S: corr.CorrSet, n: int, rng: np.random.Generator, box: float, window: float) -> np.ndarray:
    lo, hi = max(S.t1_lo, -box), min(S.t1_hi, box)
    t1 = rng.uniform(lo, hi, n)
    caps = np.min(S.intercepts[None] + S.slopes[None] * t1[:, None, None], axis=2)
    return np.column_stack([t1, caps - window * rng.uniform(0.0, 1.0, caps.shape) * (rng.uniform(size=(n, 1)) < 0.7)])


def convexity_section(cfg: Config, n: int = 1000) -> dict:
    rng = _rng(cfg.seed, 4)
    checks, warnings = [], []
    for family in ("F2", "F1", "F"):
        bad = tested = 0
        for x in cfg.x_grid:
            S = corr.make_family(family, x, cfg.K)
            if S.empty:
                warnings.append(f"{family}({x:g}) is empty; convexity skipped")
                continue
            A = _random_members(S, n, rng, cfg.box, cfg.window)
            B = _random_members(S, n, rng, cfg.box, cfg.window)
            lam = rng.uniform(0.0, 1.0, n)
            C = lam[:, None] * A + (1 - lam[:, None]) * B
            bad += int(np.count_nonzero(~corr.contains_many(S, C, 1e-12)))
            tested += n
        checks.append(_chk(f"{family}(x) closed under convex combinations", bad == 0, tested=tested, failures=bad))
    # cap concavity: midpoint cap dominates the chord
    conc_bad = 0
    for x in cfg.x_grid:
        S = corr.make_F2(x, cfg.K)
        a, b = np.sort(rng.uniform(-cfg.box, cfg.box, (2, 200)), axis=0)
        for u, v in zip(a, b):
            conc_bad += int(np.count_nonzero(S.cap_values(0.5 * (u + v)) < 0.5 * (S.cap_values(u) + S.cap_values(v)) - 1e-12))
    checks.append(_chk("F2 caps are concave in t1", conc_bad == 0, failures=conc_bad))
    return _section("convexity", checks, warnings=warnings)


def intersection_vectors(F1: corr.CorrSet, F2: corr.CorrSet, n: int, rng: np.random.Generator) -> np.ndarray:
    """Vectors straddling the boundary of F1 & F2.

    Coordinates sit below the pointwise smaller cap; in roughly half the rows
    one coordinate is then pushed across it. t1 ranges past both t1 bounds so
    every membership condition is exercised on both sides.
    """
    t1 = rng.uniform(-1.0, 2.0, n)
    caps = np.minimum(
        np.min(F1.intercepts[None] + F1.slopes[None] * t1[:, None, None], axis=2),
        np.min(F2.intercepts[None] + F2.slopes[None] * t1[:, None, None], axis=2),
    )
    V = caps - rng.exponential(0.5, caps.shape) * (rng.uniform(size=caps.shape) < 0.5)
    rows = np.flatnonzero(rng.uniform(size=n) < 0.5)
    cols = rng.integers(0, caps.shape[1], rows.size)
    V[rows, cols] = caps[rows, cols] + rng.normal(0.0, 0.1, rows.size)
    return np.column_stack([t1, V])


def intersection_section(cfg: Config, n: int = 10_000) -> dict:
    rng = _rng(cfg.seed, 5)
    checks, warnings = [], []
    for x in cfg.x_grid:
        F1, F2, F = (corr.make_family(f, x, cfg.K) for f in ("F1", "F2", "F"))
        V = intersection_vectors(F1, F2, n, rng)
        lhs = corr.contains_many(F1, V) & corr.contains_many(F2, V)
        rhs = corr.contains_many(F, V)
        if F.empty:
            warnings.append(f"F({x:g}) is empty")
        mism = int(np.count_nonzero(lhs != rhs))
        checks.append(_chk(f"F1({x:g}) & F2({x:g}) == F({x:g})", mism == 0, samples=n,
                           members=int(np.count_nonzero(rhs)), mismatches=mism))
    return _section("intersection_identity", checks, warnings=warnings)


def failure_section(cfg: Config) -> dict:
    table = hlsc_modulus("F", list(cfg.x_grid), _spec_for(cfg), cfg.K, True, cfg.bisect_tol)
    grid = [x for x in cfg.x_grid if x <= 0.5]
    excess_vals = [e for e in table.excess_lb if e is not None]
    mono = all(b >= a - BOUND_GUARD for a, b in zip(excess_vals, excess_vals[1:]))
    certs = []
    cert_ok = True
    for x in grid:
        for r in cfg.r_grid:
            c = wit.hlsc_failure_certificate(x, r, cfg.K)
            if c.status == "certified":
                cert_ok &= c.ok and wit.verify(c)
            else:
                cert_ok &= c.extra["required_K"] > cfg.K
            certs.append(c.to_dict())
    contrast = all(
        e is None or e > r
        for x, e in zip(table.x_grid, table.excess_lb)
        for r in cfg.r_grid
        if 2 * cfg.K * x > r
    )
    checks = [
        _chk("excess_lb >= 2Kx with rays", table.passed, rows=table.rows()),
        _chk("excess_lb nondecreasing in x", mono),
        _chk("excess exceeds r once 2Kx > r", contrast),
        _chk("failure certificates verified", cert_ok, n_certificates=len(certs)),
    ]
    return _section("hlsc_failure", checks, modulus=table.to_dict(), certificates=certs,
                    warnings=list(table.warnings))


def interior_section(cfg: Config) -> dict:
    t1s = [round(0.1 * i, 1) for i in range(1, 10)]
    inside_ok = True
    outside = []
    F0 = corr.make_F(0.0, cfg.K)
    for t1 in t1s:
        cert = wit.interior_ball_certificate(t1, cfg.K, 0.999)
        inside_ok &= cert.ok
        d2 = 1.01 * wit.interior_radius(t1)
        probe = np.zeros(cfg.K)
        probe[0], probe[1] = t1 + d2, d2
        outside.append(not corr.contains(F0, probe))
    violated_where_binding = all(v for t1, v in zip(t1s, outside) if t1 >= 0.4)
    checks = [
        _chk("0.999*delta probes inside F(0)", inside_ok, t1=t1s),
        _chk("1.01*delta probe leaves F(0) for t1 >= 0.4", violated_where_binding,
             violated=dict(zip([str(t) for t in t1s], outside))),
    ]
    return _section("interior_ball", checks)


def vlsc_section(cfg: Config) -> dict:
    report = vlsc_check(default_vlsc_targets(cfg.K), cfg.r_grid, 100)
    exact = []
    for e in report.entries:
        if e.M is not None and cfg.K > e.M:
            exact.append(abs(e.max_witness_dist - e.r) <= 1e-12)
    checks = [
        _chk("dist(t, F(x)) <= r for x in [0, delta)", report.passed),
        _chk("witness distance equals r when t1 = 0 and K > M", all(exact), cases=len(exact)),
    ]
    return _section("vlsc", checks, report=report.to_dict())


SECTIONS = ("branch_analysis", "f1_hlsc", "f2_hlsc", "convexity", "intersection_identity",
            "hlsc_failure", "interior_ball", "vlsc")


def run_proposition_suite(cfg: Optional[Config] = None) -> dict:
    """Run every proposition check; failures are recorded, never raised."""
    cfg = cfg or Config()
    cfg.validate()
    runners = {
        "branch_analysis": lambda: branch_section(cfg),
        "f1_hlsc": lambda: hlsc_section("F1", cfg),
        "f2_hlsc": lambda: hlsc_section("F2", cfg),
        "convexity": lambda: convexity_section(cfg),
        "intersection_identity": lambda: intersection_section(cfg),
        "hlsc_failure": lambda: failure_section(cfg),
        "interior_ball": lambda: interior_section(cfg),
        "vlsc": lambda: vlsc_section(cfg),
    }
    results = {}
    for name in SECTIONS:
        try:
            results[name] = runners[name]()
        except Exception as exc:  # recorded as a failed proposition
            results[name] = {"name": name, "passed": False, "error": f"{type(exc).__name__}: {exc}", "checks": []}
    warnings = [w for r in results.values() for w in r.get("warnings", [])]
    warnings += [w for r in results.values() for w in r.get("modulus", {}).get("warnings", [])]
    return {
        "passed": all(r["passed"] for r in results.values()),
        "backend": BACKEND,
        "warnings": sorted(set(warnings)),
        "propositions": results,
    }
