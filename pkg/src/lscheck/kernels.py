"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it is importable; otherwise
the numpy implementation in ``_pykernels`` is used. Setting the environment
variable ``LSCHECK_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

if os.environ.get("LSCHECK_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
cap_values = _impl.cap_values
feasible_interval = _impl.feasible_interval
bisect_distance = _impl.bisect_distance
contains_rows = _impl.contains_rows


def available_backends():
    """Map backend name to kernel module for every backend importable here."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
