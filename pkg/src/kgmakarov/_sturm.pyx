# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Sturm-count bisection for the lowest eigenvalues of a symmetric tridiagonal matrix."""

from array import array

from libc.math cimport fabs
from libc.float cimport DBL_EPSILON, DBL_MIN


cdef Py_ssize_t _count_below(const double* d, const double* e2, Py_ssize_t n,
                             double x, double pivmin) noexcept nogil:
    # number of eigenvalues < x, from the signs of the LDL^T pivots of T - x I
    cdef Py_ssize_t i, cnt = 0
    cdef double q = d[0] - x
    if fabs(q) < pivmin:
        q = -pivmin
    if q < 0:
        cnt += 1
    for i in range(1, n):
        q = d[i] - x - e2[i - 1] / q
        if fabs(q) < pivmin:
            q = -pivmin
        if q < 0:
            cnt += 1
    return cnt


cdef void _count_below4(const double* d, const double* e2, Py_ssize_t n,
                        const double* x, double pivmin, Py_ssize_t* cnt) noexcept nogil:
    # four independent pivot chains per sweep; interleaving hides division latency
    cdef Py_ssize_t i
    cdef double q0 = d[0] - x[0], q1 = d[0] - x[1], q2 = d[0] - x[2], q3 = d[0] - x[3]
    cdef Py_ssize_t c0 = 0, c1 = 0, c2 = 0, c3 = 0
    cdef double di, ei
    for i in range(n):
        if i > 0:
            di = d[i]
            ei = e2[i - 1]
            q0 = di - x[0] - ei / q0
            q1 = di - x[1] - ei / q1
            q2 = di - x[2] - ei / q2
            q3 = di - x[3] - ei / q3
        if fabs(q0) < pivmin:
            q0 = -pivmin
        if fabs(q1) < pivmin:
            q1 = -pivmin
        if fabs(q2) < pivmin:
            q2 = -pivmin
        if fabs(q3) < pivmin:
            q3 = -pivmin
        c0 += q0 < 0
        c1 += q1 < 0
        c2 += q2 < 0
        c3 += q3 < 0
    cnt[0] = c0
    cnt[1] = c1
    cnt[2] = c2
    cnt[3] = c3


def lowest_eigenvalues(const double[::1] diag, const double[::1] off, Py_ssize_t count):
    """Return the ``count`` smallest eigenvalues, ascending, as a list of floats."""
    cdef Py_ssize_t n = diag.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    if off.shape[0] != n - 1:
        raise ValueError("off-diagonal must have length len(diag) - 1")
    if count < 0 or count > n:
        raise ValueError("count out of range")

    cdef double[::1] e2 = array('d', bytes(8 * n))
    cdef Py_ssize_t i, k
    cdef double r, emax = 0.0
    cdef double gl = diag[0], gu = diag[0]
    for i in range(n - 1):
        e2[i] = off[i] * off[i]
        if e2[i] > emax:
            emax = e2[i]
    for i in range(n):
        r = 0.0
        if i > 0:
            r += fabs(off[i - 1])
        if i < n - 1:
            r += fabs(off[i])
        if diag[i] - r < gl:
            gl = diag[i] - r
        if diag[i] + r > gu:
            gu = diag[i] + r

    cdef double pivmin = DBL_MIN * (emax if emax > 1.0 else 1.0)
    cdef double pad = 2.0 * DBL_EPSILON * (gu - gl) * n + pivmin
    gl -= pad
    gu += pad

    # brackets shared across targets: one count tightens every eigenvalue it
    # separates, so the coarse early steps are paid once
    cdef double[::1] los = array('d', bytes(8 * (count if count > 0 else 1)))
    cdef double[::1] his = array('d', bytes(8 * (count if count > 0 else 1)))
    for k in range(count):
        los[k] = gl
        his[k] = gu
    cdef double lo, hi, tol, big
    cdef double xs[4]
    cdef Py_ssize_t cs[4]
    cdef Py_ssize_t j, p
    with nogil:
        for k in range(count):
            if k > 0 and los[k] < los[k - 1]:
                los[k] = los[k - 1]
            while True:
                lo = los[k]
                hi = his[k]
                big = fabs(lo) if fabs(lo) > fabs(hi) else fabs(hi)
                tol = 2.0 * DBL_EPSILON * big + pivmin
                if hi - lo <= tol:
                    break
                for p in range(4):
                    xs[p] = lo + (hi - lo) * (p + 1) / 5.0
                if not (lo < xs[0] and xs[3] < hi):
                    break
                _count_below4(&diag[0], &e2[0], n, xs, pivmin, cs)
                for p in range(4):
                    # eigenvalues with index < cs[p] lie below xs[p], the rest at or above
                    for j in range(k, count):
                        if j < cs[p]:
                            if xs[p] < his[j]:
                                his[j] = xs[p]
                        elif xs[p] > los[j]:
                            los[j] = xs[p]
    return [0.5 * (los[k] + his[k]) for k in range(count)]
