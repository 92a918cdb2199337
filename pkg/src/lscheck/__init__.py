"""Lower-semicontinuity toolkit for parametric convex sets in truncated l-infinity."""
from .correspondences import (
    Branch,
    CorrSet,
    contains,
    dominant_branch,
    f1_branch,
    f2_branch,
    make_F,
    make_F1,
    make_F2,
    sample,
)
from .errors import DimensionMismatch, DomainError, EmptySetError
from .kernels import BACKEND
from .metric import ball_hits_set, dist_to_set, excess, inclusion_gap
from .seq import TruncSeq, convex_combo, sup_dist, sup_norm, unit_ray
from .witnesses import (
    Certificate,
    f1_hlsc_witness,
    f2_hlsc_witness,
    hlsc_failure_certificate,
    interior_ball_certificate,
    verify,
    vlsc_witness,
)

__version__ = "0.1.0"
