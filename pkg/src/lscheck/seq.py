"""Truncated sup-norm sequence space.

An element of l-infinity is represented by its first ``K`` coordinates.
Coordinates are 1-based in reports (coordinate 1 is ``t1``); storage is a
0-based read-only float64 array.
"""
from __future__ import annotations

from typing import Iterable, Union

import numpy as np

from .errors import DimensionMismatch, DomainError

DEFAULT_K = 50


class TruncSeq:
    """First ``K`` coordinates of a bounded real sequence, measured in sup norm."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Iterable[float]):
        arr = np.array(coords, dtype=np.float64).ravel()
        if arr.size < 2:
            raise ValueError(f"truncation dimension must be >= 2, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite reals")
        arr.setflags(write=False)
        self._coords = arr

    @classmethod
    def zeros(cls, K: int) -> "TruncSeq":
        return cls(np.zeros(K))

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def K(self) -> int:
        return self._coords.size

    @property
    def t1(self) -> float:
        return float(self._coords[0])

    def coord(self, k: int) -> float:
        """Coordinate ``k`` using 1-based indexing."""
        if not 1 <= k <= self.K:
            raise IndexError(f"coordinate {k} outside 1..{self.K}")
        return float(self._coords[k - 1])

    def tolist(self) -> list[float]:
        return self._coords.tolist()

    def __len__(self) -> int:
        return self.K

    def __array__(self, dtype=None, copy=None):
        return self._coords if dtype is None else self._coords.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeq):
            return NotImplemented
        return self.K == other.K and bool(np.array_equal(self._coords, other._coords))

    def __hash__(self) -> int:
        return hash(self._coords.tobytes())

    def __repr__(self) -> str:
        if self.K <= 6:
            body = ", ".join(f"{c:.6g}" for c in self._coords)
        else:
            head = ", ".join(f"{c:.6g}" for c in self._coords[:4])
            body = f"{head}, ... ({self.K} coords)"
        return f"TruncSeq({body})"


SeqLike = Union[TruncSeq, Iterable[float]]


def as_seq(v: SeqLike) -> TruncSeq:
    return v if isinstance(v, TruncSeq) else TruncSeq(v)


def _check_same_K(u: TruncSeq, v: TruncSeq) -> None:
    if u.K != v.K:
        raise DimensionMismatch(f"incompatible truncations: K={u.K} vs K={v.K}")


def sup_norm(v: SeqLike) -> float:
    return float(np.max(np.abs(as_seq(v).coords)))


def sup_dist(u: SeqLike, v: SeqLike) -> float:
    u, v = as_seq(u), as_seq(v)
    _check_same_K(u, v)
    return float(np.max(np.abs(u.coords - v.coords)))


def unit_ray(k: int, K: int) -> TruncSeq:
    """The ray point e^(k): coordinate ``k`` equals ``k``, all others zero."""
    if not 2 <= k <= K:
        raise IndexError(f"ray index k={k} outside 2..{K}")
    arr = np.zeros(K)
    arr[k - 1] = k
    return TruncSeq(arr)


def convex_combo(u: SeqLike, v: SeqLike, lam: float) -> TruncSeq:
    """Coordinatewise ``lam*u + (1-lam)*v``."""
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"convex weight must lie in [0, 1], got {lam}")
    u, v = as_seq(u), as_seq(v)
    _check_same_K(u, v)
    if lam == 1.0:
        return u
    if lam == 0.0:
        return v
    return TruncSeq(lam * u.coords + (1.0 - lam) * v.coords)
