import json
import os
import subprocess
import sys

import numpy as np
import pytest

from lscheck import kernels
from lscheck.correspondences import make_F, make_F1, make_F2, sample_array

BACKENDS = kernels.available_backends()
SETS = [make_F1(0.1, 12), make_F2(0.2, 12), make_F(0.05, 12), make_F(0.0, 12)]

needs_cython = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")


def _points(S, n=200, seed=0):
    rng = np.random.default_rng(seed)
    base = sample_array(S, n, "boundary", seed)
    return base + rng.normal(0, 0.5, base.shape) * (rng.uniform(size=(n, 1)) < 0.7)


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert kernels.BACKEND in BACKENDS


@needs_cython
class TestParity:
    py, cy = BACKENDS.get("python"), BACKENDS.get("cython")

    @pytest.mark.parametrize("S", SETS, ids=lambda S: f"{S.label}({S.x})")
    def test_cap_values(self, S):
        for t1 in np.linspace(-5, 5, 101):
            assert np.array_equal(self.py.cap_values(S.slopes, S.intercepts, t1), self.cy.cap_values(S.slopes, S.intercepts, t1))

    @pytest.mark.parametrize("S", SETS, ids=lambda S: f"{S.label}({S.x})")
    def test_contains_rows(self, S):
        V = _points(S)
        for tol in (0.0, 1e-12, 1e-3):
            a = self.py.contains_rows(S.slopes, S.intercepts, S.t1_lo, S.t1_hi, V, tol)
            b = self.cy.contains_rows(S.slopes, S.intercepts, S.t1_lo, S.t1_hi, V, tol)
            assert np.array_equal(np.asarray(a, bool), np.asarray(b, bool))

    @pytest.mark.parametrize("S", SETS, ids=lambda S: f"{S.label}({S.x})")
    def test_feasible_and_bisect(self, S):
        args = (S.slopes, S.intercepts, S.t1_lo, S.t1_hi)
        for c in _points(S, 60, 1):
            for eps in (0.0, 0.05, 0.7, 3.0):
                assert self.py.feasible_interval(*args, c, eps) == self.cy.feasible_interval(*args, c, eps)
            assert self.py.bisect_distance(*args, c, 64.0, 1e-12, 1e-12, 200) == self.cy.bisect_distance(*args, c, 64.0, 1e-12, 1e-12, 200)


def test_env_var_forces_fallback():
    env = dict(os.environ, LSCHECK_PURE_PYTHON="1")
    code = (
        "import json; from lscheck import kernels; from lscheck.correspondences import make_F; "
        "from lscheck.metric import dist_to_set; from lscheck.seq import unit_ray; "
        "print(json.dumps([kernels.BACKEND, dist_to_set(make_F(0.1, 50), unit_ray(10, 50)).dist]))"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    backend, dist = json.loads(out)
    assert backend == "python"
    assert dist == pytest.approx(2.0, abs=1e-9)
