"""Sup-norm point-to-set distance, one-sided excess and sampled inclusion tests.

For a set ``S`` of the interval-plus-caps form, the closed ball of radius
``eps`` around ``c`` meets ``S`` iff some ``t1`` in the t1 interval satisfies
``|t1 - c1| <= eps`` and ``cap_k(t1) >= c_k - eps`` for every k. Each of
these conditions cuts out an interval of ``t1``, so feasibility is an interval
intersection, and it is monotone in ``eps``. The distance is the smallest
feasible ``eps``, found by bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .correspondences import CorrSet
from .errors import DimensionMismatch, DomainError
from .seq import SeqLike, TruncSeq, as_seq

BISECT_ABS_TOL = 1e-12
BISECT_REL_TOL = 1e-12
MAX_ITER = 200
# open-ball statements "dist < eps" and inclusion checks use this guard
DIST_GUARD = 1e-9


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def pick(self) -> float:
        """A finite point of the interval (midpoint when bounded)."""
        if self.empty:
            raise ValueError("empty interval")
        if math.isfinite(self.lo) and math.isfinite(self.hi):
            return 0.5 * (self.lo + self.hi)
        if math.isfinite(self.lo):
            return self.lo
        if math.isfinite(self.hi):
            return self.hi
        return 0.0

    def __contains__(self, t: float) -> bool:
        return self.lo <= t <= self.hi


@dataclass(frozen=True)
class DistanceResult:
    dist: float
    witness: TruncSeq
    t1_interval: Interval
    iterations: int

    def to_dict(self) -> dict:
        return {
            "dist": self.dist,
            "witness": self.witness.tolist(),
            "t1_interval": [self.t1_interval.lo, self.t1_interval.hi],
            "iterations": self.iterations,
        }


def _prepare(S: CorrSet, c: SeqLike) -> TruncSeq:
    S.require_nonempty()
    c = as_seq(c)
    if c.K != S.K:
        raise DimensionMismatch(f"incompatible truncations: set K={S.K}, point K={c.K}")
    return c


def ball_hits_set(S: CorrSet, c: SeqLike, eps: float, slack: float = 1e-12) -> Interval:
    """First coordinates of members of ``S`` within sup distance ``eps`` of ``c``.

    Interval endpoints come out of divisions, so a degenerate interval can
    appear inverted by a few ulps; inversions up to ``slack`` are collapsed
    to a single point instead of being reported empty.
    """
    if eps < 0:
        raise DomainError(f"radius must be >= 0, got {eps}")
    c = _prepare(S, c)
    lo, hi = kernels.feasible_interval(S.slopes, S.intercepts, S.t1_lo, S.t1_hi, c.coords, float(eps))
    if lo > hi and lo - hi <= slack:
        mid = 0.5 * (lo + hi)
        lo = hi = min(max(mid, S.t1_lo), S.t1_hi)
    return Interval(lo, hi)


def _witness(S: CorrSet, c: TruncSeq, t1: float) -> TruncSeq:
    arr = c.coords.copy()
    arr[0] = t1
    arr[1:] = np.minimum(c.coords[1:], S.cap_values(t1))
    return TruncSeq(arr)


def dist_to_set(
    S: CorrSet,
    c: SeqLike,
    abs_tol: float = BISECT_ABS_TOL,
    rel_tol: float = BISECT_REL_TOL,
) -> DistanceResult:
    """Sup-norm distance from ``c`` to ``S`` with a nearest member.

    The returned ``dist`` is feasible (the ball of that radius meets ``S``)
    and is within ``abs_tol + rel_tol * dist`` of the infimum.
    """
    if abs_tol <= 0 or rel_tol < 0:
        raise DomainError("bisection tolerances must be positive")
    c = _prepare(S, c)
    dist, iterations = _solve(S, c.coords, abs_tol, rel_tol)
    if dist == 0.0:
        return DistanceResult(0.0, c, Interval(c.t1, c.t1), 0)
    lo, hi = kernels.feasible_interval(S.slopes, S.intercepts, S.t1_lo, S.t1_hi, c.coords, dist)
    interval = Interval(lo, hi)
    return DistanceResult(dist, _witness(S, c, interval.pick()), interval, iterations)


def _solve(S: CorrSet, row: np.ndarray, abs_tol: float, rel_tol: float) -> tuple[float, int]:
    # members get exactly 0; the division-based interval at eps=0 can miss boundary points by ulps
    if kernels.contains_rows(S.slopes, S.intercepts, S.t1_lo, S.t1_hi, row[None, :], 0.0)[0]:
        return 0.0, 0
    # distance to the clamped member brackets the answer; doubling only guards round-off
    t1 = min(max(row[0], S.t1_lo), S.t1_hi)
    gap = max(abs(row[0] - t1), float(np.max(row[1:] - S.cap_values(t1), initial=0.0)))
    upper = max(1.0, gap)
    args = (S.slopes, S.intercepts, S.t1_lo, S.t1_hi, row)
    while True:
        lo, hi = kernels.feasible_interval(*args, upper)
        if lo <= hi:
            break
        upper *= 2.0
    dist, iterations = kernels.bisect_distance(*args, upper, abs_tol, rel_tol, MAX_ITER)
    if iterations >= MAX_ITER:
        raise RuntimeError(f"bisection did not converge in {MAX_ITER} steps")
    return dist, iterations


def distances(
    S: CorrSet,
    points: np.ndarray,
    abs_tol: float = BISECT_ABS_TOL,
    rel_tol: float = BISECT_REL_TOL,
) -> np.ndarray:
    """``dist_to_set`` for each row of an ``(n, K)`` array, without witnesses."""
    S.require_nonempty()
    V = np.ascontiguousarray(points, dtype=np.float64)
    if V.ndim != 2 or V.shape[1] != S.K:
        raise DimensionMismatch(f"expected rows of length K={S.K}, got shape {V.shape}")
    return np.array([_solve(S, row, abs_tol, rel_tol)[0] for row in V])


@dataclass(frozen=True)
class ExcessResult:
    value: float
    index: int
    point: TruncSeq
    distances: np.ndarray = field(repr=False)


def excess(
    A_points: Sequence[SeqLike],
    B: CorrSet,
    abs_tol: float = BISECT_ABS_TOL,
    rel_tol: float = BISECT_REL_TOL,
) -> ExcessResult:
    """Largest distance from the sampled points to ``B``; first index wins ties.

    This is a lower bound for the excess of whatever set the points were drawn from.
    """
    B.require_nonempty()
    pts = [as_seq(a) for a in A_points]
    if not pts:
        raise ValueError("excess needs at least one point")
    d = distances(B, np.stack([p.coords for p in pts]), abs_tol, rel_tol)
    i = int(np.argmax(d))
    return ExcessResult(float(d[i]), i, pts[i], d)


@dataclass
class InclusionReport:
    """Sampled check of ``A subset of B + closed ball(eps)``."""

    eps: float
    n_points: int
    violations: list[tuple[int, float]]
    max_dist: float

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "n_points": self.n_points,
            "holds": self.holds,
            "max_dist": self.max_dist,
            "violations": [{"index": i, "dist": d} for i, d in self.violations],
        }


def inclusion_gap(
    A_points: Sequence[SeqLike],
    B: CorrSet,
    eps: float,
    guard: Optional[float] = DIST_GUARD,
) -> InclusionReport:
    """Points of ``A_points`` farther than ``eps`` from ``B`` (beyond round-off ``guard``)."""
    res = excess(A_points, B)
    bad = [(i, float(d)) for i, d in enumerate(res.distances) if d > eps + (guard or 0.0)]
    return InclusionReport(eps, len(res.distances), bad, res.value)
