# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Round-robin cyclic Jacobi sweeps on a dense symmetric matrix (compiled core).

Each step of a sweep applies n/2 rotations on disjoint index pairs.  The
rotations are applied in two phases (rows, then columns), both walking
the matrix row by row, so memory access stays contiguous.
"""

from libc.math cimport fabs, sqrt
from libc.stdlib cimport free, malloc


cdef double _off_norm2(double[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double s = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            s += a[i, j] * a[i, j]
    return 2.0 * s


def jacobi_sweeps(double[:, ::1] a, v, const Py_ssize_t[:, :, ::1] steps, double target, int max_sweeps):
    """Diagonalise ``a`` in place.

    ``steps[s, i]`` holds the pivot pair ``(p, q)`` (p < q) of rotation i in
    step s; unused slots are ``-1``.  When ``v`` is given (C-contiguous,
    initially the identity) it accumulates the rotations.

    Returns ``(sweeps, off_norm)``.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t nsteps = steps.shape[0]
    cdef Py_ssize_t width = steps.shape[1]
    cdef Py_ssize_t st, i, k, p, q, nact
    cdef double apq, theta, t, c, s, x, y
    cdef double target2 = target * target
    cdef double[:, ::1] vv
    cdef bint want_v = v is not None
    cdef int sweep = 0
    cdef double off2
    cdef Py_ssize_t *ps = <Py_ssize_t *> malloc(width * sizeof(Py_ssize_t))
    cdef Py_ssize_t *qs = <Py_ssize_t *> malloc(width * sizeof(Py_ssize_t))
    cdef double *cs = <double *> malloc(width * sizeof(double))
    cdef double *sn = <double *> malloc(width * sizeof(double))
    cdef double *dp = <double *> malloc(width * sizeof(double))
    cdef double *dq = <double *> malloc(width * sizeof(double))
    if ps == NULL or qs == NULL or cs == NULL or sn == NULL or dp == NULL or dq == NULL:
        free(ps); free(qs); free(cs); free(sn); free(dp); free(dq)
        raise MemoryError()
    if want_v:
        vv = v
    try:
        with nogil:
            off2 = _off_norm2(a, n)
            while off2 > target2 and sweep < max_sweeps:
                sweep += 1
                for st in range(nsteps):
                    nact = 0
                    for i in range(width):
                        p = steps[st, i, 0]
                        q = steps[st, i, 1]
                        if p < 0:
                            continue
                        apq = a[p, q]
                        if apq == 0.0:
                            continue
                        theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                        c = 1.0 / sqrt(t * t + 1.0)
                        ps[nact] = p
                        qs[nact] = q
                        cs[nact] = c
                        sn[nact] = t * c
                        dp[nact] = a[p, p] - t * apq
                        dq[nact] = a[q, q] + t * apq
                        nact += 1
                    if nact == 0:
                        continue
                    # row phase
                    for i in range(nact):
                        p = ps[i]
                        q = qs[i]
                        c = cs[i]
                        s = sn[i]
                        for k in range(n):
                            x = a[p, k]
                            y = a[q, k]
                            a[p, k] = c * x - s * y
                            a[q, k] = s * x + c * y
                    # column phase
                    for k in range(n):
                        for i in range(nact):
                            p = ps[i]
                            q = qs[i]
                            x = a[k, p]
                            y = a[k, q]
                            a[k, p] = cs[i] * x - sn[i] * y
                            a[k, q] = sn[i] * x + cs[i] * y
                    for i in range(nact):
                        p = ps[i]
                        q = qs[i]
                        a[p, p] = dp[i]
                        a[q, q] = dq[i]
                        a[p, q] = 0.0
                        a[q, p] = 0.0
                    if want_v:
                        for k in range(n):
                            for i in range(nact):
                                p = ps[i]
                                q = qs[i]
                                x = vv[k, p]
                                y = vv[k, q]
                                vv[k, p] = cs[i] * x - sn[i] * y
                                vv[k, q] = sn[i] * x + cs[i] * y
                off2 = _off_norm2(a, n)
    finally:
        free(ps); free(qs); free(cs); free(sn); free(dp); free(dq)
    return sweep, sqrt(off2)
