"""Parametric convex sets built from an interval on t1 and concave caps on t_k.

Every set handled here has the form::

    { t : t1_lo <= t1 <= t1_hi,  t_k <= cap_k(t1) for 2 <= k <= K }

with ``cap_k`` a minimum of affine functions of ``t1``. The three correspondences
studied are ``make_F1``, ``make_F2`` and their intersection ``make_F``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DimensionMismatch, DomainError, EmptySetError
from .seq import SeqLike, TruncSeq, as_seq

DEFAULT_BOX = 10.0
DEFAULT_WINDOW = 5.0
SAMPLE_STRATEGIES = ("interior", "boundary", "ray")


def f1_branch(k: int, t1: float, x: float) -> float:
    """k(1 - t1 - x)."""
    if k < 2:
        raise DomainError(f"branch index k must be >= 2, got {k}")
    return k * (1.0 - t1 - x)


def f2_branch(k: int, t1: float, x: float) -> float:
    """k + (t1 - x)/k."""
    if k < 2:
        raise DomainError(f"branch index k must be >= 2, got {k}")
    return k + (t1 - x) / k


class Branch(enum.Enum):
    F1_MIN_OR_EQUAL = "F1MinOrEqual"
    F2_MIN_OR_EQUAL = "F2MinOrEqual"
    EQUAL = "Equal"


def dominant_branch(t1: float, x: float, k: int) -> Branch:
    """Which of f1, f2 is the smaller at index ``k``.

    Decided by ``k^2 (x + t1) <= x - t1``, which holds exactly when
    f2(k) <= f1(k). For ``t1 >= 0`` the answer is F1 for every k, for
    ``t1 <= -x`` it is F2 for every k; in between the per-k comparison is
    returned as is.
    """
    if x < 0:
        raise DomainError(f"parameter x must be >= 0, got {x}")
    if k < 2:
        raise DomainError(f"branch index k must be >= 2, got {k}")
    lhs = k * k * (x + t1)
    rhs = x - t1
    if lhs == rhs:
        return Branch.EQUAL
    return Branch.F2_MIN_OR_EQUAL if lhs < rhs else Branch.F1_MIN_OR_EQUAL


@dataclass(frozen=True)
class AffinePiece:
    slope: float
    intercept: float

    def __post_init__(self):
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise ValueError("affine piece coefficients must be finite")

    def __call__(self, t1: float) -> float:
        return self.intercept + self.slope * t1


@dataclass(frozen=True)
class CoordCap:
    """Upper bound ``t_k <= min_p (intercept_p + slope_p * t1)``."""

    k: int
    pieces: tuple[AffinePiece, ...]

    def __post_init__(self):
        if self.k < 2:
            raise DomainError(f"cap index must be >= 2, got {self.k}")
        if not self.pieces:
            raise ValueError("a cap needs at least one affine piece")

    def __call__(self, t1: float) -> float:
        return min(p(t1) for p in self.pieces)


@dataclass(frozen=True)
class CorrSet:
    """One value of a correspondence: an interval on t1 and a cap per coordinate k >= 2."""

    x: float
    K: int
    t1_lo: float
    t1_hi: float
    caps: tuple[CoordCap, ...]
    label: str = "custom"
    slopes: np.ndarray = field(init=False, repr=False, compare=False)
    intercepts: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.K < 2:
            raise DomainError(f"truncation dimension must be >= 2, got {self.K}")
        if [c.k for c in self.caps] != list(range(2, self.K + 1)):
            raise ValueError("caps must cover coordinates 2..K in order")
        width = max(len(c.pieces) for c in self.caps)
        slopes = np.zeros((self.K - 1, width))
        intercepts = np.full((self.K - 1, width), np.inf)
        for j, cap in enumerate(self.caps):
            for p, piece in enumerate(cap.pieces):
                slopes[j, p] = piece.slope
                intercepts[j, p] = piece.intercept
        slopes.setflags(write=False)
        intercepts.setflags(write=False)
        object.__setattr__(self, "slopes", slopes)
        object.__setattr__(self, "intercepts", intercepts)

    @property
    def empty(self) -> bool:
        return self.t1_lo > self.t1_hi

    def cap(self, k: int, t1: float) -> float:
        return self.caps[k - 2](t1)

    def cap_values(self, t1: float) -> np.ndarray:
        """Caps of coordinates 2..K at ``t1``, evaluated exactly as ``contains`` does."""
        return kernels.cap_values(self.slopes, self.intercepts, float(t1))

    def require_nonempty(self) -> None:
        if self.empty:
            raise EmptySetError()

    def describe(self) -> dict:
        """JSON-safe summary; unbounded t1 ends are reported as None."""
        return {
            "label": self.label,
            "x": self.x,
            "K": self.K,
            "t1_lo": self.t1_lo if math.isfinite(self.t1_lo) else None,
            "t1_hi": self.t1_hi if math.isfinite(self.t1_hi) else None,
            "empty": self.empty,
        }


def _check_x(x: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"parameter x must lie in [0, 1], got {x}")


def make_F1(x: float, K: int) -> CorrSet:
    """t1 >= x, t_k <= k - x."""
    _check_x(x)
    caps = tuple(CoordCap(k, (AffinePiece(0.0, k - x),)) for k in range(2, K + 1))
    return CorrSet(x, K, x, math.inf, caps, "F1")


def make_F2(x: float, K: int) -> CorrSet:
    """t1 <= 1 - x, t_k <= min(k(1 - t1 - x), k + t1/k - x/k)."""
    _check_x(x)
    caps = tuple(
        CoordCap(k, (AffinePiece(-float(k), k * (1.0 - x)), AffinePiece(1.0 / k, k - x / k)))
        for k in range(2, K + 1)
    )
    return CorrSet(x, K, -math.inf, 1.0 - x, caps, "F2")


def make_F(x: float, K: int) -> CorrSet:
    """x <= t1 <= 1 - x, t_k <= k(1 - t1 - x). Flagged empty for x > 1/2."""
    _check_x(x)
    caps = tuple(CoordCap(k, (AffinePiece(-float(k), k * (1.0 - x)),)) for k in range(2, K + 1))
    return CorrSet(x, K, x, 1.0 - x, caps, "F")


FAMILIES = {"F1": make_F1, "F2": make_F2, "F": make_F}


def make_family(label: str, x: float, K: int) -> CorrSet:
    try:
        factory = FAMILIES[label]
    except KeyError:
        raise ValueError(f"unknown family {label!r}; expected one of {sorted(FAMILIES)}") from None
    return factory(x, K)


def contains(S: CorrSet, v: SeqLike, tol: float = 0.0) -> bool:
    v = as_seq(v)
    if v.K != S.K:
        raise DimensionMismatch(f"incompatible truncations: set K={S.K}, point K={v.K}")
    return bool(contains_many(S, v.coords[None, :], tol)[0])


def contains_many(S: CorrSet, V: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Membership of each row of the ``(n, K)`` array ``V``."""
    if tol < 0:
        raise DomainError(f"tolerance must be >= 0, got {tol}")
    V = np.ascontiguousarray(V, dtype=np.float64)
    if V.ndim != 2 or V.shape[1] != S.K:
        raise DimensionMismatch(f"expected rows of length K={S.K}, got shape {V.shape}")
    if S.empty:
        return np.zeros(V.shape[0], dtype=bool)
    return kernels.contains_rows(S.slopes, S.intercepts, S.t1_lo, S.t1_hi, V, float(tol))


def violations(S: CorrSet, v: SeqLike, tol: float = 0.0) -> list[str]:
    """Human-readable list of the defining inequalities that ``v`` breaks."""
    v = as_seq(v)
    if v.K != S.K:
        raise DimensionMismatch(f"incompatible truncations: set K={S.K}, point K={v.K}")
    out = []
    t1 = v.t1
    if t1 < S.t1_lo - tol:
        out.append(f"t1 = {t1!r} < {S.t1_lo!r}")
    if t1 > S.t1_hi + tol:
        out.append(f"t1 = {t1!r} > {S.t1_hi!r}")
    caps = S.cap_values(t1)
    for j in np.flatnonzero(v.coords[1:] > caps + tol):
        k = int(j) + 2
        out.append(f"t{k} = {float(v.coords[k - 1])!r} > cap{k}(t1) = {float(caps[j])!r}")
    return out


def snap_into(S: CorrSet, v: SeqLike, slack: float = 1e-10) -> TruncSeq:
    """Move ``v`` onto ``S`` when it misses only by round-off.

    Constructions that satisfy the inequalities in exact arithmetic can
    overshoot a cap by a few ulps once evaluated in floating point; those
    coordinates are lowered onto the cap. Anything further out than ``slack``
    is a real violation and raises.
    """
    v = as_seq(v)
    S.require_nonempty()
    bad = violations(S, v, slack)
    if bad:
        raise DomainError(f"point is not within {slack} of {S.label}({S.x}): " + "; ".join(bad))
    arr = v.coords.copy()
    arr[0] = min(max(arr[0], S.t1_lo), S.t1_hi)
    arr[1:] = np.minimum(arr[1:], S.cap_values(arr[0]))
    return v if np.array_equal(arr, v.coords) else TruncSeq(arr)


def project_point(S: CorrSet, c: SeqLike, box: float = math.inf) -> TruncSeq:
    """A member of ``S`` near ``c``: clamp t1 into the interval, then lower coordinates onto caps."""
    c = as_seq(c)
    S.require_nonempty()
    lo, hi = max(S.t1_lo, -box), min(S.t1_hi, box)
    if lo > hi:
        lo, hi = S.t1_lo, S.t1_hi
    arr = c.coords.copy()
    arr[0] = min(max(arr[0], lo), hi)
    arr[1:] = np.minimum(arr[1:], S.cap_values(arr[0]))
    return TruncSeq(arr)


def _t1_window(S: CorrSet, box: float) -> tuple[float, float]:
    lo, hi = max(S.t1_lo, -box), min(S.t1_hi, box)
    if lo > hi:
        raise DomainError(f"t1 interval [{S.t1_lo}, {S.t1_hi}] does not meet the sampling box [-{box}, {box}]")
    return lo, hi


def sample_array(
    S: CorrSet,
    n: int,
    strategy: str = "interior",
    seed: int = 0,
    box: float = DEFAULT_BOX,
    window: float = DEFAULT_WINDOW,
) -> np.ndarray:
    """``(n, K)`` array of members of ``S``; see ``sample``."""
    if S.empty:
        raise EmptySetError()
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    if strategy not in SAMPLE_STRATEGIES:
        raise ValueError(f"unknown sampling strategy {strategy!r}; expected one of {SAMPLE_STRATEGIES}")
    K = S.K
    if strategy == "ray":
        rays = np.zeros((n, K))
        ks = 2 + np.arange(n) % (K - 1)
        rays[np.arange(n), ks - 1] = ks
        return np.stack([project_point(S, r, box).coords for r in rays])

    rng = np.random.default_rng(seed)
    lo, hi = _t1_window(S, box)
    t1 = rng.uniform(lo, hi, size=n) if lo < hi else np.full(n, lo)
    out = np.empty((n, K))
    out[:, 0] = t1
    # same cap evaluation as the membership kernel, so boundary points are members at tol 0
    caps = np.min(S.intercepts[None, :, :] + S.slopes[None, :, :] * t1[:, None, None], axis=2)
    if strategy == "boundary":
        out[:, 1:] = caps
    else:
        out[:, 1:] = caps - window * rng.uniform(0.0, 1.0, size=(n, K - 1))
    return out


def sample(
    S: CorrSet,
    n: int,
    strategy: str = "interior",
    seed: int = 0,
    box: float = DEFAULT_BOX,
    window: float = DEFAULT_WINDOW,
) -> list[TruncSeq]:
    """Deterministic members of ``S``.

    ``interior`` draws t1 uniformly from the t1 interval clipped to
    ``[-box, box]`` and each t_k uniformly from ``[cap_k(t1) - window, cap_k(t1)]``;
    ``boundary`` puts every t_k on its cap; ``ray`` cycles through the points
    e^(2), ..., e^(K) moved into ``S`` (unchanged when they already belong).
    """
    return [TruncSeq(row) for row in sample_array(S, n, strategy, seed, box, window)]
