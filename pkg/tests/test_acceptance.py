"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line."""
import time

import numpy as np

from lscheck import checker
from lscheck import correspondences as corr
from lscheck import witnesses as wit
from lscheck.config import Config
from lscheck.metric import dist_to_set, distances
from lscheck.seq import TruncSeq, sup_dist, unit_ray

from oracles import grid_distance, ray_distance_closed_form

K = 50
CFG = Config()
GRID = list(CFG.x_grid)


def test_01_exact_failure_distance(acceptance_line):
    xs = (0.01, 0.05, 0.1, 0.2, 0.25)
    ks = range(2, K + 1)
    start = time.perf_counter()
    got = {(k, x): dist_to_set(corr.make_F(x, K), unit_ray(k, K)).dist for x in xs for k in ks}
    elapsed = time.perf_counter() - start
    closed = max(abs(d - 2 * k * x) for (k, x), d in got.items())
    assert all(ray_distance_closed_form(k, x) == 2 * k * x for k, x in got)
    grid = max(abs(d - grid_distance(corr.make_F(x, K), unit_ray(k, K).coords)) for (k, x), d in got.items())
    ok = closed <= 1e-9 and grid <= 1e-6 and elapsed < 2.0
    acceptance_line("1 exact failure distance", ok,
                    f"{len(got)} cases, |dist-2kx| max {closed:.1e}, grid oracle gap {grid:.1e}, {elapsed:.2f}s")
    assert ok


def test_02_failure_certificate(acceptance_line):
    c1 = wit.hlsc_failure_certificate(0.1, 1.0, K)
    c2 = wit.hlsc_failure_certificate(0.01, 1.0, K)
    ok = (
        c1.status == "certified" and c1.ok and wit.verify(c1.to_dict())
        and c1.extra["k"] == 6 and abs(c1.bound - 1.2) <= 1e-9 and c1.bound > 1.0
        and c2.status == "truncation-insufficient" and c2.extra["required_K"] >= 51
    )
    acceptance_line("2 failure certificate", ok,
                    f"k={c1.extra['k']} dist={c1.bound:.12g}; x=0.01 -> {c2.status}, K'>={c2.extra['required_K']}")
    assert ok


def test_03_f1_hlsc(acceptance_line):
    base = corr.make_F1(0.0, K)
    pts = checker.draw(base, checker.SampleSpec(n=500, strategy="mixed", seed=CFG.seed))
    worst_excess = 0.0
    nonmember = 0
    dist_err = 0.0
    excess_ok = True
    for x in GRID:
        S = corr.make_F1(x, K)
        d = distances(S, pts)
        worst_excess = max(worst_excess, float(d.max()) / x)
        excess_ok &= bool(d.max() <= x + 1e-9)
        eps = checker.dyadic_radius(x)
        for s in pts:
            t = wit.f1_hlsc_witness(s, x, eps)
            nonmember += not corr.contains(S, t, 0.0)
            dist_err = max(dist_err, abs(sup_dist(s, t) - eps / 2))
    ok = excess_ok and nonmember == 0 and dist_err <= 1e-15
    acceptance_line("3 F1 H-lsc", ok,
                    f"{len(pts)} samples x {len(GRID)} x; max dist/x {worst_excess:.4f}, "
                    f"non-members {nonmember}, |dist-eps/2| max {dist_err:.1e}")
    assert ok


def test_04_f2_hlsc(acceptance_line):
    eps_max = max(checker.dyadic_radius(x) for x in GRID)
    pts = checker._f2_case_points(K, 500, CFG.seed, eps_max, CFG.box, CFG.window)
    base = corr.make_F2(0.0, K)
    assert corr.contains_many(base, pts, 0.0).all()
    cases = set()
    nonmember = far = 0
    excess_ok = True
    for x in GRID:
        eps = checker.dyadic_radius(x)
        S = corr.make_F2(x, K)
        for s in pts:
            t = wit.f2_hlsc_witness(s, x, eps)
            cases.add(wit.f2_case(s[0], eps))
            nonmember += not corr.contains(S, t, 0.0)
            far += not sup_dist(s, t) < eps
        sampled = checker.draw(base, checker.SampleSpec(n=500, strategy="mixed", seed=CFG.seed))
        excess_ok &= bool(distances(S, np.vstack([pts, sampled])).max() <= 2 * x + 1e-9)
    ok = len(cases) == 3 and nonmember == 0 and far == 0 and excess_ok
    acceptance_line("4 F2 H-lsc", ok,
                    f"cases {sorted(cases)}, non-members {nonmember}, dist>=eps {far}, excess<=2x {excess_ok}")
    assert ok


def test_05_vlsc(acceptance_line):
    targets = checker.default_vlsc_targets(K)
    worst_slack = -np.inf
    exact_err = 0.0
    n_exact = 0
    ok = True
    for t in targets:
        for r in (0.1, 0.5, 1.0):
            delta, M = wit.vlsc_delta(t, r)
            for x in np.linspace(0.0, delta, 100, endpoint=False):
                S = corr.make_F(float(x), K)
                d = dist_to_set(S, t).dist
                worst_slack = max(worst_slack, d - r)
                ok &= d <= r + 1e-9
                if M is not None and K > M:
                    w = wit.vlsc_witness(t, r, float(x))
                    ok &= corr.contains(S, w.point, 0.0)
                    exact_err = max(exact_err, abs(sup_dist(w.point, t) - r))
                    n_exact += 1
    ok &= exact_err <= 1e-12 and n_exact > 0
    acceptance_line("5 V-lsc", ok,
                    f"max dist - r {worst_slack:.3g}; t1=0 witnesses {n_exact}, |dist-r| max {exact_err:.1e}")
    assert ok


def test_06_convexity(acceptance_line):
    rng = np.random.default_rng([CFG.seed, 6])
    bad = 0
    for x in GRID:
        S = corr.make_F2(x, K)
        A = checker._random_members(S, 1000, rng, CFG.box, CFG.window)
        B = checker._random_members(S, 1000, rng, CFG.box, CFG.window)
        assert corr.contains_many(S, A, 0.0).all() and corr.contains_many(S, B, 0.0).all()
        lam = rng.uniform(size=(1000, 1))
        bad += int(np.count_nonzero(~corr.contains_many(S, lam * A + (1 - lam) * B, 1e-12)))
    ok = bad == 0
    acceptance_line("6 convexity of F2(x)", ok, f"{1000 * len(GRID)} combinations, {bad} outside at tol 1e-12")
    assert ok


def test_07_intersection_identity(acceptance_line):
    rng = np.random.default_rng([CFG.seed, 7])
    mism = members = 0
    for x in GRID:
        F1, F2 = corr.make_F1(x, K), corr.make_F2(x, K)
        V = checker.intersection_vectors(F1, F2, 10_000, rng)
        lhs = corr.contains_many(F1, V) & corr.contains_many(F2, V)
        rhs = corr.contains_many(corr.make_F(x, K), V)
        mism += int(np.count_nonzero(lhs != rhs))
        members += int(np.count_nonzero(rhs))
    ok = mism == 0 and 0 < members < 10_000 * len(GRID)
    acceptance_line("7 intersection identity", ok, f"{10_000 * len(GRID)} vectors, {members} members, {mism} mismatches")
    assert ok


def test_08_branch_analysis(acceptance_line):
    rng = np.random.default_rng([CFG.seed, 8])
    n = 10_000
    t1s, xs, ks = rng.uniform(-2, 2, n), rng.uniform(0, 1, n), rng.integers(2, K + 1, n)
    disagree = case1 = case2 = 0
    for t1, x, k in zip(t1s.tolist(), xs.tolist(), ks.tolist()):
        f1, f2 = corr.f1_branch(k, t1, x), corr.f2_branch(k, t1, x)
        b = corr.dominant_branch(t1, x, k)
        if f2 - f1 > 1e-12:
            disagree += b is not corr.Branch.F1_MIN_OR_EQUAL
        elif f2 - f1 < -1e-12:
            disagree += b is not corr.Branch.F2_MIN_OR_EQUAL
        if t1 >= 0:
            case1 += not f1 <= f2 + 1e-12
        if t1 <= -x:
            case2 += not f2 <= f1 + 1e-12
    ok = disagree == case1 == case2 == 0
    acceptance_line("8 branch analysis", ok, f"{n} triples, disagreements {disagree}, case failures {case1}+{case2}")
    assert ok


def test_09_interior_ball(acceptance_line):
    F0 = corr.make_F(0.0, K)
    inside = outside = True
    for i in range(1, 10):
        t1 = i / 10
        delta = wit.interior_radius(t1)
        probes = wit.ball_probes(TruncSeq([t1] + [0.0] * (K - 1)), 0.999 * delta)
        inside &= bool(corr.contains_many(F0, probes, 0.0).all())
        if t1 >= 0.4:
            d = 1.01 * delta
            outside &= not corr.contains(F0, TruncSeq([t1 + d, d] + [0.0] * (K - 2)))
    ok = inside and outside
    acceptance_line("9 interior ball", ok, f"0.999*delta probes inside {inside}, 1.01*delta probe outside for t1>=0.4 {outside}")
    assert ok


def test_suite_runtime(acceptance_line, default_suite):
    report, elapsed = default_suite
    ok = report["passed"] and elapsed < 30.0
    acceptance_line("suite default config", ok, f"{len(report['propositions'])} sections pass={report['passed']}, {elapsed:.1f}s")
    assert ok
