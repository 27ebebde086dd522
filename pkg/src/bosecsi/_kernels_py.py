"""Pure-Python (numpy) versions of the hot kernels.

Same call signatures as the compiled ``_kernels`` extension; used when the
extension is not built or when selected explicitly.
"""

import math

import numpy as np

# below this an off-diagonal entry is dropped instead of rotated (g/|g| overflows)
TINY = 1e-290


def off_diagonal_norm(a):
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def jacobi_sweeps(a, v, tol, max_sweeps):
    """Cyclic Jacobi on a complex Hermitian matrix, in place.

    ``a`` is driven to diagonal form and ``v`` accumulates the rotations so
    that on return ``v_in @ diag(a) @ v.conj().T`` reproduces the input.
    Returns ``(sweeps, off, converged)`` where ``off`` is the last measured
    off-diagonal Frobenius norm.
    """
    n = a.shape[0]
    threshold = tol * float(np.linalg.norm(a))
    off = off_diagonal_norm(a)
    sweeps = 0
    while off > threshold:
        if sweeps == max_sweeps:
            return sweeps, off, False
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag < TINY:
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                ph = g / ag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sc = s * ph.conjugate()
                se = s * ph

                col_p = a[:, p].copy()
                a[:, p] = c * col_p - sc * a[:, q]
                a[:, q] = s * col_p + (c * ph.conjugate()) * a[:, q]
                row_p = a[p, :].copy()
                a[p, :] = c * row_p - se * a[q, :]
                a[q, :] = s * row_p + (c * ph) * a[q, :]
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                col_p = v[:, p].copy()
                v[:, p] = c * col_p - sc * v[:, q]
                v[:, q] = s * col_p + (c * ph.conjugate()) * v[:, q]
        sweeps += 1
        off = off_diagonal_norm(a)
    return sweeps, off, True


def _falling(x, r):
    acc = np.ones_like(x)
    for j in range(r):
        acc *= np.clip(x - j, 0.0, None)
    return acc


def falling_moments(pops, n_particles, m):
    """Return ``(g_aa, g_ab, g_bb)`` at order ``2m`` from Fock populations.

    ``pops[k]`` is the weight of ``|k, N-k>``.
    """
    k = np.arange(n_particles + 1, dtype=float)
    rest = n_particles - k
    g_aa = float(np.dot(pops, _falling(k, 2 * m)))
    g_ab = float(np.dot(pops, _falling(k, m) * _falling(rest, m)))
    g_bb = float(np.dot(pops, _falling(rest, 2 * m)))
    return g_aa, g_ab, g_bb
