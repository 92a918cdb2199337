"""Pure numpy kernels; reference behaviour for ``_ckernels``.

Caps are passed as dense ``(K-1, P)`` arrays of slopes and intercepts where
row ``j`` belongs to coordinate ``k = j + 2``. Unused pieces are padded with
slope 0 and intercept +inf.
"""
import numpy as np

BACKEND = "python"


def cap_values(slopes, intercepts, t1):
    return np.min(intercepts + slopes * t1, axis=1)


def feasible_interval(slopes, intercepts, lo, hi, c, eps):
    """Interval of first coordinates for which the closed eps-ball around ``c`` meets the set.

    Returns ``(a, b)``; the interval is empty when ``a > b``.
    """
    a = max(lo, c[0] - eps)
    b = min(hi, c[0] + eps)
    level = (c[1:] - eps)[:, None]
    flat = slopes == 0.0
    if np.any(flat & (intercepts < level)):
        return np.inf, -np.inf
    with np.errstate(divide="ignore", invalid="ignore"):
        bound = (level - intercepts) / slopes
    pos = slopes > 0.0
    neg = slopes < 0.0
    if pos.any():
        a = max(a, float(np.max(bound[pos])))
    if neg.any():
        b = min(b, float(np.min(bound[neg])))
    return float(a), float(b)


def bisect_distance(slopes, intercepts, lo, hi, c, eps_hi, abs_tol, rel_tol, max_iter):
    """Smallest eps with a nonempty feasible interval, given that ``eps_hi`` is feasible.

    Returns ``(dist, iterations)``; ``iterations == max_iter`` signals no convergence.
    """
    a, b = feasible_interval(slopes, intercepts, lo, hi, c, 0.0)
    if a <= b:
        return 0.0, 0
    e_lo, e_hi = 0.0, eps_hi
    it = 0
    while e_hi - e_lo > abs_tol + rel_tol * e_hi:
        if it == max_iter:
            break
        mid = 0.5 * (e_lo + e_hi)
        a, b = feasible_interval(slopes, intercepts, lo, hi, c, mid)
        if a <= b:
            e_hi = mid
        else:
            e_lo = mid
        it += 1
    return e_hi, it


def contains_rows(slopes, intercepts, lo, hi, V, tol):
    """Row-wise membership of the ``(n, K)`` array ``V``."""
    t1 = V[:, 0]
    ok = (t1 >= lo - tol) & (t1 <= hi + tol)
    caps = np.min(intercepts[None, :, :] + slopes[None, :, :] * t1[:, None, None], axis=2)
    ok &= np.all(V[:, 1:] <= caps + tol, axis=1)
    return ok
