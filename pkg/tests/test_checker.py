import json

import numpy as np
import pytest

from lscheck.checker import (
    SECTIONS,
    SampleSpec,
    default_vlsc_targets,
    draw,
    dyadic_radius,
    hlsc_modulus,
    run_proposition_suite,
    vlsc_check,
)
from lscheck.config import Config, load_config, parse_float_list
from lscheck.correspondences import contains_many, make_family
from lscheck.errors import DomainError
from lscheck.seq import TruncSeq, unit_ray

SMALL = Config(K=10, n_samples=100, x_grid=(0.01, 0.1, 0.4))


@pytest.fixture
def default_report(default_suite):
    return default_suite[0]


class TestModulus:
    def test_F_rays_reach_2Kx(self):
        table = hlsc_modulus("F", [0.1], SampleSpec(n=100), K=50)
        assert table.excess_lb[0] == pytest.approx(10.0, abs=1e-6)
        assert table.attained_at[0] == "e^(50)"
        assert table.passed

    def test_F1_linear(self):
        table = hlsc_modulus("F1", [0.001, 0.1, 0.4], SampleSpec(n=200), K=20)
        assert all(e <= x + 1e-9 for x, e in zip(table.x_grid, table.excess_lb))
        assert table.passed

    def test_F2_shrinks(self):
        table = hlsc_modulus("F2", [0.1, 0.01, 0.001], SampleSpec(n=200), K=20)
        for x, e in zip(table.x_grid, table.excess_lb):
            assert 0 <= e <= 2 * x + 1e-9

    def test_F_without_rays_is_not_judged_on_2Kx(self):
        table = hlsc_modulus("F", [0.1], SampleSpec(n=50), K=10, include_rays=False)
        assert table.passed and table.excess_lb[0] < 2 * 10 * 0.1

    def test_empty_rows_warn(self):
        table = hlsc_modulus("F", [0.1, 0.7], SampleSpec(n=20), K=5)
        assert table.excess_lb[1] is None and table.row_passes()[1] is None
        assert table.warnings and table.passed

    def test_empty_grid(self):
        with pytest.raises(DomainError):
            hlsc_modulus("F1", [], SampleSpec(n=5), K=5)

    def test_mixed_draw(self):
        S = make_family("F2", 0.0, 8)
        pts = draw(S, SampleSpec(n=51))
        assert pts.shape == (51, 8) and contains_many(S, pts, 0.0).all()


class TestVlsc:
    def test_examples(self):
        K = 10
        rep = vlsc_check([TruncSeq([0.5] + [0.0] * (K - 1))], [1.0])
        assert rep.passed and rep.entries[0].delta == 0.125
        rep = vlsc_check([unit_ray(2, K)], [0.5])
        assert rep.passed and rep.entries[0].delta == pytest.approx(1 / 12)
        rep = vlsc_check([TruncSeq.zeros(K)], [0.01])
        assert rep.passed

    def test_default_targets(self):
        rep = vlsc_check(default_vlsc_targets(10), [0.1, 0.5, 1.0], 20)
        assert rep.passed and len(rep.entries) == 12
        assert all(e.max_dist <= e.r + 1e-9 for e in rep.entries)

    def test_target_outside_F0(self):
        with pytest.raises(DomainError):
            vlsc_check([TruncSeq([0, 0, 4, 0, 0])], [1.0])


def test_dyadic_radius():
    for x in (0.001, 0.05, 0.1, 0.4):
        eps = dyadic_radius(x)
        assert x <= 0.49 * eps < 2 * x
        assert np.log2(eps) == int(np.log2(eps))


class TestSuite:
    def test_default_passes(self, default_report):
        assert default_report["passed"], {k: v for k, v in default_report["propositions"].items() if not v["passed"]}
        assert tuple(default_report["propositions"]) == SECTIONS

    def test_failure_certificate_present(self, default_report):
        certs = default_report["propositions"]["hlsc_failure"]["certificates"]
        c = next(c for c in certs if c["inputs"]["x"] == 0.1 and c["inputs"]["r"] == 1.0)
        assert c["status"] == "certified" and c["extra"]["k"] == 6

    def test_json_clean(self, default_report):
        json.dumps(default_report, allow_nan=False)

    def test_deterministic(self):
        a = json.dumps(run_proposition_suite(SMALL.replace(seed=7)), sort_keys=True)
        b = json.dumps(run_proposition_suite(SMALL.replace(seed=7)), sort_keys=True)
        assert a == b

    def test_empty_grid_points_warn(self):
        rep = run_proposition_suite(SMALL.replace(x_grid=(0.1, 0.6)))
        assert any("empty" in w for w in rep["warnings"])
        assert set(rep["propositions"]) == set(SECTIONS)


class TestConfig:
    def test_defaults(self):
        cfg = Config()
        assert cfg.K == 50 and cfg.seed == 42 and cfg.n_samples == 500
        assert cfg.x_grid == (0.001, 0.005, 0.01, 0.05, 0.1, 0.2, 0.4)

    def test_validate(self):
        for bad in (dict(x_grid=()), dict(K=1), dict(tol=0.0), dict(x_grid=(0.0,))):
            with pytest.raises(ValueError):
                Config().replace(**bad).validate()

    def test_load(self, tmp_path):
        p = tmp_path / "c.cfg"
        p.write_text("# demo\nK = 12\nx_grid = 0.1, 0.2\nseed=3\n")
        cfg = load_config(str(p))
        assert (cfg.K, cfg.x_grid, cfg.seed) == (12, (0.1, 0.2), 3)
        assert parse_float_list("1,2.5") == (1.0, 2.5)
