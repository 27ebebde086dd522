import sys

import numpy as np
import pytest

from bosecsi import _backend


@pytest.fixture(params=_backend.available_backends())
def backend(request):
    previous = _backend.set_backend(request.param)
    yield request.param
    _backend.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def lowering(cutoff):
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1)


def embed_two_mode(rho):
    """Embed a |k, N-k> density into the full (N+1)^2 two-mode Fock space."""
    n = rho.n_particles
    dim = n + 1
    full = np.zeros((dim * dim, dim * dim), dtype=complex)
    idx = [k * dim + (n - k) for k in range(dim)]
    full[np.ix_(idx, idx)] = rho.matrix
    a = np.kron(lowering(n), np.eye(dim))
    b = np.kron(np.eye(dim), lowering(n))
    return full, a, b


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
