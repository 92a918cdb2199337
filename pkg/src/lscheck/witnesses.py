"""Constructive continuity witnesses and replayable certificates.

Each construction reproduces an explicit choice of nearby point: the shift
witnesses showing F1 and F2 are H-lsc at zero, the ray points e^(k) that
defeat H-lsc of the intersection F, the interior ball of F(0), and the
two-case witness for V-lsc of F at zero.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Optional

import numpy as np

from .correspondences import CorrSet, contains_many, make_F, make_F1, make_F2, snap_into, violations
from .errors import DomainError
from .metric import dist_to_set
from .seq import SeqLike, TruncSeq, as_seq, sup_dist, sup_norm, unit_ray

# agreement required between bisection distance and the closed form 2kx
FAILURE_DIST_TOL = 1e-9


class CertKind(str, enum.Enum):
    HLSC_WITNESS = "HlscWitness"
    HLSC_FAILURE = "HlscFailure"
    INTERIOR_BALL = "InteriorBall"
    VLSC_WITNESS = "VlscWitness"


@dataclass
class Check:
    """A named inequality ``lhs op rhs`` together with its verdict."""

    name: str
    lhs: float
    op: str
    rhs: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.evaluate()

    def evaluate(self) -> bool:
        if self.op == "<":
            return self.lhs < self.rhs
        if self.op == "<=":
            return self.lhs <= self.rhs
        if self.op == ">":
            return self.lhs > self.rhs
        if self.op == ">=":
            return self.lhs >= self.rhs
        if self.op == "==":
            return self.lhs == self.rhs
        raise ValueError(f"unknown comparison {self.op!r}")

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "op": self.op, "rhs": self.rhs, "passed": self.passed}


def _membership_check(S: CorrSet, v: TruncSeq, tol: float = 0.0) -> Check:
    # lhs counts violated defining inequalities of S at tolerance tol
    return Check(f"point in {S.label}({S.x:g}) [tol={tol:g}]", float(len(violations(S, v, tol))), "==", 0.0)


@dataclass
class Certificate:
    kind: CertKind
    inputs: dict[str, Any]
    witness: Optional[list[float]]
    bound: Optional[float]
    checks: list[Check]
    status: str = "certified"
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "status": self.status,
            "inputs": dict(self.inputs),
            "witness": self.witness,
            "bound": self.bound,
            "checks": [c.to_dict() for c in self.checks],
            "extra": dict(self.extra),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        checks = [Check(c["name"], c["lhs"], c["op"], c["rhs"]) for c in d["checks"]]
        return cls(CertKind(d["kind"]), dict(d["inputs"]), d["witness"], d["bound"], checks, d["status"], dict(d["extra"]))


# -- H-lsc witnesses for F1 and F2 ------------------------------------------------


def _check_shift_args(x: float, eps: float) -> None:
    if eps <= 0:
        raise DomainError(f"radius eps must be > 0, got {eps}")
    if not 0.0 <= x < eps / 2:
        raise DomainError(f"need 0 <= x < eps/2, got x={x}, eps={eps}")


def _require_member(S: CorrSet, s: TruncSeq, name: str) -> None:
    bad = violations(S, s, 0.0)
    if bad:
        raise DomainError(f"{name} not in {S.label}({S.x:g}): " + "; ".join(bad))


def f1_hlsc_witness(s: SeqLike, x: float, eps: float) -> TruncSeq:
    """Shift ``s`` in F1(0) by eps/2 (t1 up, all other coordinates down) into F1(x)."""
    s = as_seq(s)
    _check_shift_args(x, eps)
    _require_member(make_F1(0.0, s.K), s, "s")
    half = eps / 2
    t = s.coords - half
    t[0] = s.coords[0] + half
    # s_k - eps/2 <= k - eps/2 < k - x holds in rounded arithmetic too, no snapping needed
    return TruncSeq(t)


def f2_hlsc_witness(s: SeqLike, x: float, eps: float) -> TruncSeq:
    """Point of F2(x) within sup distance < eps of ``s`` in F2(0).

    Three cases on s1: above eps/2 move t1 down by x; below -eps move t1 up
    by x; otherwise set t1 = -x and t_k = min(s_k, k - 2x/k).
    """
    s = as_seq(s)
    _check_shift_args(x, eps)
    _require_member(make_F2(0.0, s.K), s, "s")
    t = s.coords.copy()
    s1 = t[0]
    if s1 > eps / 2:
        t[0] = s1 - x
    elif s1 < -eps:
        t[0] = s1 + x
    else:
        t[0] = -x
        k = np.arange(2, s.K + 1, dtype=np.float64)
        t[1:] = np.minimum(s.coords[1:], k - 2 * x / k)
    return snap_into(make_F2(x, s.K), t)


def f2_case(s1: float, eps: float) -> str:
    if s1 > eps / 2:
        return "s1>eps/2"
    if s1 < -eps:
        return "s1<-eps"
    return "-eps<=s1<=eps/2"


def hlsc_witness_certificate(family: str, s: SeqLike, x: float, eps: float) -> Certificate:
    s = as_seq(s)
    if family == "F1":
        t = f1_hlsc_witness(s, x, eps)
        S = make_F1(x, s.K)
    elif family == "F2":
        t = f2_hlsc_witness(s, x, eps)
        S = make_F2(x, s.K)
    else:
        raise DomainError(f"H-lsc witnesses exist for F1 and F2 only, got {family!r}")
    d = sup_dist(s, t)
    checks = [_membership_check(S, t), Check("sup_dist(s, t) < eps", d, "<", eps)]
    extra = {}
    if family == "F1":
        checks.append(Check("sup_dist(s, t) <= eps/2", d, "<=", eps / 2))
    else:
        extra["case"] = f2_case(s.t1, eps)
    inputs = {"family": family, "x": x, "eps": eps, "K": s.K, "source": s.tolist()}
    return Certificate(CertKind.HLSC_WITNESS, inputs, t.tolist(), d, checks, extra=extra)


# -- failure of H-lsc for the intersection -----------------------------------------


def required_ray_index(x: float, r: float) -> int:
    """Smallest k >= 2 with 2kx > r, i.e. with e^(k) farther than r from F(x)."""
    k = max(2, math.floor(r / (2 * x)) + 1)
    while 2 * k * x <= r:
        k += 1
    while k > 2 and 2 * (k - 1) * x > r:
        k -= 1
    return k


def hlsc_failure_certificate(x: float, r: float, K: int) -> Certificate:
    """Ray point e^(k) in F(0) at distance 2kx > r from F(x).

    Picks the smallest such k. When it exceeds the truncation ``K`` the
    certificate has status ``truncation-insufficient`` and reports the
    dimension that would be needed.
    """
    if x == 0:
        raise DomainError("failure occurs only for x > 0")
    if not 0 < x <= 0.5:
        raise DomainError(f"need 0 < x <= 1/2, got {x}")
    if r <= 0:
        raise DomainError(f"radius r must be > 0, got {r}")
    if K < 2:
        raise DomainError(f"truncation dimension must be >= 2, got {K}")
    k = required_ray_index(x, r)
    inputs = {"x": x, "r": r, "K": K}
    if k > K:
        extra = {"required_K": k, "threshold": r / (2 * x)}
        checks = [Check("required ray index exceeds K", float(k), ">", float(K))]
        return Certificate(CertKind.HLSC_FAILURE, inputs, None, None, checks, "truncation-insufficient", extra)

    ray = unit_ray(k, K)
    res = dist_to_set(make_F(x, K), ray)
    closed = 2 * k * x
    checks = [
        _membership_check(make_F(0.0, K), ray),
        Check("2kx > r", closed, ">", r),
        Check("dist(e^(k), F(x)) > r", res.dist, ">", r),
        Check("|dist - 2kx|", abs(res.dist - closed), "<=", FAILURE_DIST_TOL),
    ]
    extra = {"k": k, "dist": res.dist, "closed_form": closed, "nearest": res.witness.tolist()}
    return Certificate(CertKind.HLSC_FAILURE, inputs, ray.tolist(), res.dist, checks, extra=extra)


# -- interior of F(0) ---------------------------------------------------------------


def interior_radius(t1: float) -> float:
    """min(2(1 - t1)/3, t1): balls of smaller radius around (t1, 0, 0, ...) lie in F(0)."""
    if not 0.0 <= t1 <= 1.0:
        raise DomainError(f"t1 must lie in [0, 1], got {t1}")
    return min(2.0 * (1.0 - t1) / 3.0, t1)


def ball_probes(center: SeqLike, radius: float) -> np.ndarray:
    """Axis probes center +/- radius*e_j for every coordinate, plus the two all-sign corners.

    The (+, +, ..., +) corner is the worst point of the ball for sets whose
    caps decrease in t1, which is where the F(0) ball is tightest.
    """
    c = as_seq(center).coords
    K = c.size
    eye = np.eye(K) * radius
    return np.vstack([c + eye, c - eye, c + radius, c - radius])


def interior_ball_certificate(t1: float, K: int, shrink: float = 0.999) -> Certificate:
    delta = interior_radius(t1)
    center = np.zeros(K)
    center[0] = t1
    probes = ball_probes(center, shrink * delta)
    members = contains_many(make_F(0.0, K), probes, 0.0)
    checks = [
        Check("probes outside F(0)", float(np.count_nonzero(~members)), "==", 0.0),
        Check("delta > 0", delta, ">", 0.0),
    ]
    inputs = {"t1": t1, "K": K, "shrink": shrink}
    return Certificate(CertKind.INTERIOR_BALL, inputs, center.tolist(), delta, checks, extra={"n_probes": len(probes)})


# -- V-lsc of F at zero ---------------------------------------------------------


class VlscWitness(NamedTuple):
    point: TruncSeq
    delta: float
    M: Optional[float]


def vlsc_delta(t: SeqLike, r: float) -> tuple[float, Optional[float]]:
    """Neighbourhood radius delta (and the bound M when t1 = 0) for target ``t`` in F(0)."""
    t = as_seq(t)
    if r <= 0:
        raise DomainError(f"radius r must be > 0, got {r}")
    if t.t1 < 0:
        raise DomainError(f"target needs t1 >= 0, got t1={t.t1}")
    _require_member(make_F(0.0, t.K), t, "t")
    if t.t1 > 0:
        return 0.5 * min(t.t1 / 2, r), None
    # M >= |t| + 1 keeps t_k - r below k(1 - 2 delta) past the cut; M > r gives delta < 1/2
    M = max(sup_norm(t) + 1.0, r + 1.0)
    return r / (2 * M), M


def vlsc_witness(t: SeqLike, r: float, x: float) -> VlscWitness:
    """Point of F(x) within closed sup distance ``r`` of ``t`` in F(0), for 0 <= x < delta."""
    t = as_seq(t)
    delta, M = vlsc_delta(t, r)
    if not 0.0 <= x < delta:
        raise DomainError(f"x outside guaranteed neighborhood: need 0 <= x < {delta}, got {x}")
    s = t.coords.copy()
    if M is None:
        s[0] = t.t1 - x
    else:
        s[0] = delta
        k = np.arange(2, t.K + 1, dtype=np.float64)
        tk = t.coords[1:]
        near_cap = (k <= math.floor(M)) & (k - r <= tk)
        s[1:] = np.where(near_cap, k * (1 - 2 * delta), tk - r)
    return VlscWitness(snap_into(make_F(x, t.K), s), delta, M)


def vlsc_certificate(t: SeqLike, r: float, x: float) -> Certificate:
    t = as_seq(t)
    w = vlsc_witness(t, r, x)
    d = sup_dist(w.point, t)
    checks = [
        _membership_check(make_F(x, t.K), w.point),
        Check("sup_dist(s, t) <= r", d, "<=", r),
        Check("x < delta", x, "<", w.delta),
    ]
    inputs = {"t": t.tolist(), "r": r, "x": x, "K": t.K}
    extra = {"delta": w.delta, "M": w.M, "case": "t1>0" if w.M is None else "t1=0"}
    return Certificate(CertKind.VLSC_WITNESS, inputs, w.point.tolist(), d, checks, extra=extra)


def replay(cert: Certificate | dict) -> Certificate:
    """Rebuild a certificate from its recorded inputs."""
    if isinstance(cert, dict):
        cert = Certificate.from_dict(cert)
    i = cert.inputs
    if cert.kind is CertKind.HLSC_WITNESS:
        return hlsc_witness_certificate(i["family"], i["source"], i["x"], i["eps"])
    if cert.kind is CertKind.HLSC_FAILURE:
        return hlsc_failure_certificate(i["x"], i["r"], i["K"])
    if cert.kind is CertKind.INTERIOR_BALL:
        return interior_ball_certificate(i["t1"], i["K"], i["shrink"])
    return vlsc_certificate(i["t"], i["r"], i["x"])


def verify(cert: Certificate | dict) -> bool:
    """True when the recorded checks pass and replaying the inputs reproduces them."""
    if isinstance(cert, dict):
        cert = Certificate.from_dict(cert)
    again = replay(cert)
    same = [c.to_dict() for c in again.checks] == [c.to_dict() for c in cert.checks]
    return cert.ok and again.ok and same and again.witness == cert.witness
