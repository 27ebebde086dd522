# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic complex Jacobi and falling-factorial sums."""

from libc.math cimport sqrt, fabs


cdef extern from "complex.h" nogil:
    double creal(double complex)
    double cimag(double complex)
    double complex conj(double complex)
    double cabs(double complex)


# below this an off-diagonal entry is dropped instead of rotated (g/|g| overflows)
cdef double TINY = 1e-290


cdef double _off_norm(double complex[:, ::1] a) nogil:
    cdef Py_ssize_t n = a.shape[0], i, j
    cdef double acc = 0.0, re, im
    for i in range(n):
        for j in range(n):
            if i != j:
                re = creal(a[i, j])
                im = cimag(a[i, j])
                acc += re * re + im * im
    return sqrt(acc)


cdef double _fro_norm(double complex[:, ::1] a) nogil:
    cdef Py_ssize_t n = a.shape[0], i, j
    cdef double acc = 0.0, re, im
    for i in range(n):
        for j in range(n):
            re = creal(a[i, j])
            im = cimag(a[i, j])
            acc += re * re + im * im
    return sqrt(acc)


def off_diagonal_norm(double complex[:, ::1] a):
    return _off_norm(a)


def jacobi_sweeps(double complex[:, ::1] a, double complex[:, ::1] v,
                  double tol, int max_sweeps):
    cdef Py_ssize_t n = a.shape[0], p, q, r
    cdef double threshold = tol * _fro_norm(a)
    cdef double off = _off_norm(a)
    cdef double ag, theta, t, c, s
    cdef double complex g, ph, phc, xp, xq
    cdef int sweeps = 0
    with nogil:
        while off > threshold:
            if sweeps == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    g = a[p, q]
                    ag = cabs(g)
                    if ag < TINY:
                        a[p, q] = 0.0
                        a[q, p] = 0.0
                        continue
                    ph = g / ag
                    phc = conj(ph)
                    theta = (creal(a[q, q]) - creal(a[p, p])) / (2.0 * ag)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for r in range(n):
                        xp = a[r, p]
                        xq = a[r, q]
                        a[r, p] = c * xp - s * phc * xq
                        a[r, q] = s * xp + c * phc * xq
                    for r in range(n):
                        xp = a[p, r]
                        xq = a[q, r]
                        a[p, r] = c * xp - s * ph * xq
                        a[q, r] = s * xp + c * ph * xq
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = creal(a[p, p])
                    a[q, q] = creal(a[q, q])
                    for r in range(n):
                        xp = v[r, p]
                        xq = v[r, q]
                        v[r, p] = c * xp - s * phc * xq
                        v[r, q] = s * xp + c * phc * xq
            sweeps += 1
            off = _off_norm(a)
    return sweeps, off, off <= threshold


cdef double _falling(double x, int r) nogil:
    cdef double acc = 1.0
    cdef int j
    for j in range(r):
        if x - j <= 0.0:
            return 0.0
        acc *= x - j
    return acc


def falling_moments(const double[::1] pops, int n_particles, int m):
    cdef Py_ssize_t k
    cdef double g_aa = 0.0, g_ab = 0.0, g_bb = 0.0, w, x, y
    with nogil:
        for k in range(n_particles + 1):
            w = pops[k]
            if w == 0.0:
                continue
            x = <double>k
            y = <double>(n_particles - k)
            g_aa += w * _falling(x, 2 * m)
            g_ab += w * _falling(x, m) * _falling(y, m)
            g_bb += w * _falling(y, 2 * m)
    return g_aa, g_ab, g_bb
