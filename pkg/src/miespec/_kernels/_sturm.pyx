"""Compiled Sturm-sequence kernels for symmetric tridiagonal eigenproblems.

The negative-pivot count of the shifted LDL^T factorization equals the number
of eigenvalues below the shift, which turns bisection into a bracketing method
with guaranteed eigenvalue indices.  Pivots are floored at ``pivmin`` (scaled
to the squared off-diagonal norm) so the recurrence can never divide by zero
or overflow.
"""

from libc.math cimport fabs

import numpy as np

cdef double TINY = 2.2250738585072014e-308
cdef double EPS = 2.220446049250313e-16


cdef Py_ssize_t _negcount(const double[::1] d, const double[::1] esq,
                          double shift, double pivmin) noexcept nogil:
    cdef Py_ssize_t m = d.shape[0]
    cdef Py_ssize_t i, cnt = 0
    cdef double q = d[0] - shift
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        cnt += 1
    for i in range(1, m):
        q = d[i] - shift - esq[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            cnt += 1
    return cnt


cdef double _pivmin(const double[::1] esq) noexcept nogil:
    cdef Py_ssize_t i
    cdef double b = 1.0
    for i in range(esq.shape[0]):
        if esq[i] > b:
            b = esq[i]
    return TINY * b


def sturm_count(double[::1] diag, double[::1] offdiag, double shift):
    """Number of eigenvalues strictly below ``shift``."""
    cdef double[::1] esq = np.ascontiguousarray(offdiag) ** 2
    return int(_negcount(diag, esq, shift, _pivmin(esq)))


def bisect_lowest(double[::1] diag, double[::1] offdiag, Py_ssize_t count,
                  double tol, int max_iter=160):
    """The ``count`` smallest eigenvalues, each bisected to width ``tol``.

    Brackets start from the Gershgorin interval; the j-th eigenvalue is the
    point where the Sturm count crosses from <= j to >= j+1.
    """
    cdef Py_ssize_t m = diag.shape[0]
    if count < 1 or count > m:
        raise ValueError("count must be in [1, matrix dimension]")
    cdef double[::1] esq = np.ascontiguousarray(offdiag) ** 2
    cdef double pivmin = _pivmin(esq)

    cdef double glo = diag[0], ghi = diag[0], rad, lo, hi, mid, width
    cdef Py_ssize_t i, j
    cdef int it
    for i in range(m):
        rad = 0.0
        if i > 0:
            rad += fabs(offdiag[i - 1])
        if i < m - 1:
            rad += fabs(offdiag[i])
        if diag[i] - rad < glo:
            glo = diag[i] - rad
        if diag[i] + rad > ghi:
            ghi = diag[i] + rad

    out = np.empty(count, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        lo = glo
        for j in range(count):
            hi = ghi
            for it in range(max_iter):
                width = hi - lo
                if width <= tol + 2.0 * EPS * (fabs(lo) + fabs(hi)):
                    break
                mid = lo + 0.5 * width
                if _negcount(diag, esq, mid, pivmin) >= j + 1:
                    hi = mid
                else:
                    lo = mid
            ov[j] = 0.5 * (lo + hi)
            # next eigenvalue cannot lie below this bracket
    return out
