"""Pure-Python twin of the compiled Sturm-bisection kernels.

Same semantics as ``_sturm.pyx`` (pivot floor, Gershgorin brackets, stopping
rule), roughly two orders of magnitude slower.  Kept dependency-light on
purpose: plain Python lists in the hot loop beat per-element numpy indexing.
"""

import math

import numpy as np

TINY = 2.2250738585072014e-308
EPS = 2.220446049250313e-16


def _prepare(diag, offdiag):
    d = np.asarray(diag, dtype=float).tolist()
    esq = [float(e) * float(e) for e in np.asarray(offdiag, dtype=float)]
    pivmin = TINY * max(1.0, max(esq, default=1.0))
    return d, esq, pivmin


def _negcount(d, esq, shift, pivmin):
    cnt = 0
    q = d[0] - shift
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        cnt += 1
    for i in range(1, len(d)):
        q = d[i] - shift - esq[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            cnt += 1
    return cnt


def sturm_count(diag, offdiag, shift):
    """Number of eigenvalues strictly below ``shift``."""
    d, esq, pivmin = _prepare(diag, offdiag)
    return _negcount(d, esq, float(shift), pivmin)


def bisect_lowest(diag, offdiag, count, tol, max_iter=160):
    """The ``count`` smallest eigenvalues, each bisected to width ``tol``."""
    d, esq, pivmin = _prepare(diag, offdiag)
    m = len(d)
    if not 1 <= count <= m:
        raise ValueError("count must be in [1, matrix dimension]")

    off = np.asarray(offdiag, dtype=float).tolist()
    glo = ghi = d[0]
    for i in range(m):
        rad = (abs(off[i - 1]) if i > 0 else 0.0) + (abs(off[i]) if i < m - 1 else 0.0)
        glo = min(glo, d[i] - rad)
        ghi = max(ghi, d[i] + rad)

    out = np.empty(count)
    lo = glo
    for j in range(count):
        hi = ghi
        for _ in range(max_iter):
            width = hi - lo
            if width <= tol + 2.0 * EPS * (abs(lo) + abs(hi)):
                break
            mid = lo + 0.5 * width
            if _negcount(d, esq, mid, pivmin) >= j + 1:
                hi = mid
            else:
                lo = mid
        out[j] = 0.5 * (lo + hi)
    return out
