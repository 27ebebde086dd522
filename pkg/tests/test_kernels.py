import numpy as np
import pytest

from bosecsi import _backend, _kernels_py


def random_hermitian(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return np.ascontiguousarray(z + z.conj().T)


@pytest.mark.parametrize("n", [1, 2, 5, 17, 33])
def test_jacobi_sweeps_diagonalize(backend, rng, n):
    a0 = random_hermitian(rng, n)
    a = a0.copy()
    v = np.eye(n, dtype=complex)
    sweeps, off, converged = _backend.kernels().jacobi_sweeps(a, v, 1e-12, 64)
    assert converged
    assert off <= 1e-12 * np.linalg.norm(a0)
    assert sweeps <= 15
    np.testing.assert_allclose(v @ np.diag(a.diagonal()) @ v.conj().T, a0, atol=1e-11)
    np.testing.assert_allclose(np.sort(a.diagonal().real), np.linalg.eigvalsh(a0), atol=1e-11)


def test_jacobi_reports_non_convergence(backend, rng):
    a = random_hermitian(rng, 12)
    v = np.eye(12, dtype=complex)
    _, off, converged = _backend.kernels().jacobi_sweeps(a, v, 1e-12, 1)
    assert not converged
    assert off > 0


def test_backends_agree(rng):
    if "compiled" not in _backend.available_backends():
        pytest.skip("compiled extension not built")
    from bosecsi import _kernels

    a0 = random_hermitian(rng, 20)
    results = []
    for mod in (_kernels, _kernels_py):
        a, v = a0.copy(), np.eye(20, dtype=complex)
        mod.jacobi_sweeps(a, v, 1e-12, 64)
        results.append(np.sort(a.diagonal().real))
    np.testing.assert_allclose(results[0], results[1], atol=1e-12)

    pops = rng.dirichlet(np.ones(31))
    for m in (1, 2, 3):
        np.testing.assert_allclose(_kernels.falling_moments(pops, 30, m), _kernels_py.falling_moments(pops, 30, m), rtol=1e-14)


def brute_falling(x, r):
    out = 1
    for j in range(r):
        out *= x - j
    return max(out, 0) if x >= r else 0


@pytest.mark.parametrize("n_particles,m", [(0, 1), (1, 1), (6, 1), (6, 2), (9, 3), (4, 3)])
def test_falling_moments_match_integer_sums(backend, rng, n_particles, m):
    pops = rng.dirichlet(np.ones(n_particles + 1))
    got = _backend.kernels().falling_moments(pops, n_particles, m)
    ks = range(n_particles + 1)
    want = (
        sum(pops[k] * brute_falling(k, 2 * m) for k in ks),
        sum(pops[k] * brute_falling(k, m) * brute_falling(n_particles - k, m) for k in ks),
        sum(pops[k] * brute_falling(n_particles - k, 2 * m) for k in ks),
    )
    np.testing.assert_allclose(got, want, rtol=1e-14, atol=0)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _backend.set_backend("fortran")


def test_fallback_selected_when_extension_missing():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['bosecsi._kernels'] = None\n"
        "from bosecsi import _backend\n"
        "from bosecsi.correlations import analyze\n"
        "from bosecsi.states import twin_fock\n"
        "assert _backend.available_backends() == ['python'], _backend.available_backends()\n"
        "assert _backend.get_backend() == 'python'\n"
        "print(analyze(twin_fock(10), [2])[0].csi_c)\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert float(proc.stdout) == 1.25
