"""Two-mode bosonic Fock space: state containers and dense Hermitian algebra.

A fixed-N state of bosons in modes a and b is stored in the basis
``|k, N-k>``, with ``k`` the occupation of mode a, so every density matrix is
(N+1) x (N+1).
"""

from dataclasses import dataclass, field
import math

import numpy as np

from . import _backend
from .errors import InvalidArgument, InvariantViolation, NumericalFailure

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
WEIGHT_TOL = 1e-12
AXIS_TOL = 1e-12

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 64

# diagonal-only paths are O(N); eigendecomposition is O(N^3)
MAX_N_DIAGONAL = 4096
MAX_N_EIGEN = 512


def _frozen_array(a, dtype=np.complex128):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FixedNDensity:
    """Density operator of ``n_particles`` bosons in two modes.

    Only the shape is checked on construction; the physical invariants
    (Hermiticity, unit trace, positivity) are reported by
    :func:`validate_density` so that malformed matrices can still be
    diagnosed.
    """

    n_particles: int
    matrix: np.ndarray

    def __post_init__(self):
        n = self.n_particles
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
            raise InvalidArgument(f"particle number must be a non-negative integer, got {n!r}")
        if n > MAX_N_DIAGONAL:
            raise InvalidArgument(f"N={n} exceeds the supported maximum {MAX_N_DIAGONAL}")
        mat = _frozen_array(self.matrix)
        if mat.shape != (n + 1, n + 1):
            raise InvalidArgument(
                f"matrix shape {mat.shape} does not match N={n} (expected {(n + 1, n + 1)})"
            )
        object.__setattr__(self, "n_particles", int(n))
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_ket(cls, ket):
        ket = np.asarray(ket, dtype=np.complex128)
        return cls(ket.shape[0] - 1, np.outer(ket, ket.conj()))

    @property
    def dim(self):
        return self.n_particles + 1

    @property
    def populations(self):
        """Real diagonal ``rho_kk``: probability of ``k`` particles in mode a."""
        return np.ascontiguousarray(self.matrix.diagonal().real)

    @property
    def purity(self):
        return float(np.vdot(self.matrix, self.matrix).real)

    def check(self):
        """Raise :class:`InvariantViolation` unless the state is a valid density."""
        validate_density(self).raise_on_failure()
        return self


@dataclass(frozen=True, eq=False)
class SectorMixture:
    """Incoherent mixture of fixed-N states with probabilities ``p_N``."""

    sectors: tuple

    def __post_init__(self):
        sectors = tuple((float(p), rho) for p, rho in self.sectors)
        if not sectors:
            raise InvalidArgument("a sector mixture needs at least one sector")
        seen = set()
        for p, rho in sectors:
            if not isinstance(rho, FixedNDensity):
                raise InvalidArgument(f"sector state must be FixedNDensity, got {type(rho).__name__}")
            if not p >= 0.0:
                raise InvalidArgument(f"negative sector weight {p}")
            if rho.n_particles in seen:
                raise InvalidArgument(f"particle number N={rho.n_particles} appears twice")
            seen.add(rho.n_particles)
        total = math.fsum(p for p, _ in sectors)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise InvalidArgument(f"sector weights sum to {total!r}, not 1")
        object.__setattr__(self, "sectors", sectors)

    @property
    def mean_n(self):
        return math.fsum(p * rho.n_particles for p, rho in self.sectors)


def sectors_of(state):
    """Uniform ``[(p_N, FixedNDensity), ...]`` view of either state kind."""
    if isinstance(state, FixedNDensity):
        return [(1.0, state)]
    if isinstance(state, SectorMixture):
        return list(state.sectors)
    raise InvalidArgument(f"expected FixedNDensity or SectorMixture, got {type(state).__name__}")


@dataclass(frozen=True)
class Orbital:
    """Single-particle state with amplitudes ``alpha`` on region a and ``beta`` on b."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        norm = abs(a) ** 2 + abs(b) ** 2
        if not abs(norm - 1.0) <= WEIGHT_TOL:
            raise InvalidArgument(f"orbital is not normalized: |alpha|^2 + |beta|^2 = {norm!r}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_weight(cls, weight_a, phase=0.0):
        """Orbital with ``|alpha|^2 = weight_a`` and relative phase on ``beta``."""
        if not 0.0 <= weight_a <= 1.0:
            raise InvalidArgument(f"region weight must lie in [0, 1], got {weight_a}")
        return cls(math.sqrt(weight_a), math.sqrt(1.0 - weight_a) * complex(math.cos(phase), math.sin(phase)))

    @property
    def weight_a(self):
        return abs(self.alpha) ** 2

    @property
    def weight_b(self):
        return abs(self.beta) ** 2


@dataclass(frozen=True, eq=False)
class HermitianEigensystem:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = field(default=0)

    def reconstruct(self):
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def check_axis(axis):
    """Return ``axis`` as a float array, raising :class:`InvalidArgument` unless unit-norm."""
    try:
        n = np.asarray(axis, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidArgument(f"axis must be a real 3-vector, got {axis!r}") from exc
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise InvalidArgument(f"axis must be a real 3-vector, got {axis!r}")
    if abs(float(np.linalg.norm(n)) - 1.0) > AXIS_TOL:
        raise InvalidArgument(f"axis {n.tolist()} is not unit-norm")
    return n


def ladder_ab(n_particles):
    """Matrix of ``a^dagger b`` on the ``|k, N-k>`` basis."""
    k = np.arange(n_particles)
    op = np.zeros((n_particles + 1, n_particles + 1))
    op[k + 1, k] = np.sqrt((k + 1.0) * (n_particles - k))
    return op


def angular_momentum_matrix(axis, n_particles):
    """Schwinger-boson ``n . J`` for N particles.

    ``J_x = (a^+ b + b^+ a)/2``, ``J_y = (a^+ b - b^+ a)/(2i)``,
    ``J_z = (n_a - n_b)/2``.
    """
    nx, ny, nz = check_axis(axis)
    if n_particles < 0:
        raise InvalidArgument(f"particle number must be non-negative, got {n_particles}")
    up = ladder_ab(n_particles)
    down = up.T
    jx = 0.5 * (up + down)
    jy = -0.5j * (up - down)
    jz = np.diag(np.arange(n_particles + 1) - 0.5 * n_particles)
    return nx * jx + ny * jy + nz * jz


def hermitian_eigensystem(a):
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.

    Eigenvalues are returned ascending; the order among equal eigenvalues is
    unspecified. Raises :class:`NumericalFailure` if the off-diagonal norm is
    still above ``1e-12 * ||A||_F`` after 64 sweeps.
    """
    a = np.array(a, dtype=np.complex128, order="C", copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        raise InvalidArgument("empty matrix")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(a).max()))
    herm = float(np.abs(a - a.conj().T).max())
    if herm > 1e-10 * scale:
        raise InvalidArgument(f"matrix is not Hermitian (residual {herm:.3e})")
    # symmetrize away sub-tolerance noise so rotations see an exact Hermitian input
    a = np.ascontiguousarray(0.5 * (a + a.conj().T))
    v = np.eye(a.shape[0], dtype=np.complex128)
    sweeps, off, converged = _backend.kernels().jacobi_sweeps(a, v, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if not converged:
        raise NumericalFailure(
            f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps; off-diagonal residual {off:.3e}"
        )
    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return HermitianEigensystem(_frozen_array(w[order], float), _frozen_array(v[:, order]), sweeps)


@dataclass(frozen=True)
class DensityDiagnostics:
    hermiticity_residual: float
    trace_deviation: float
    min_eigenvalue: float
    eigenvalue_method: str
    failures: tuple

    @property
    def ok(self):
        return not self.failures

    def raise_on_failure(self):
        if self.failures:
            name = self.failures[0]
            detail = {
                "hermitian": f"Hermiticity residual {self.hermiticity_residual:.3e}",
                "trace": f"trace deviates from 1 by {self.trace_deviation:.3e}",
                "psd": f"minimum eigenvalue {self.min_eigenvalue:.3e}",
            }[name]
            raise InvariantViolation(name, detail)


def density_diagnostics(matrix):
    """Hermiticity, trace and positivity report for any square density matrix."""
    m = np.asarray(matrix, dtype=np.complex128)
    herm = float(np.abs(m - m.conj().T).max())
    trace_dev = abs(complex(np.trace(m)) - 1.0)
    failures = []
    if herm > HERMITIAN_TOL:
        failures.append("hermitian")
    if trace_dev > TRACE_TOL:
        failures.append("trace")
    sym = 0.5 * (m + m.conj().T)
    if m.shape[0] - 1 <= MAX_N_EIGEN:
        method = "jacobi"
        try:
            min_eig = float(hermitian_eigensystem(sym).eigenvalues[0])
        except NumericalFailure:
            method = "numpy-eigvalsh"
            min_eig = float(np.linalg.eigvalsh(sym)[0])
    else:
        method = "numpy-eigvalsh"
        min_eig = float(np.linalg.eigvalsh(sym)[0])
    if min_eig < -PSD_TOL:
        failures.append("psd")
    return DensityDiagnostics(herm, trace_dev, min_eig, method, tuple(failures))


def validate_density(rho):
    """Diagnostic report on a density; never raises for malformed content."""
    return density_diagnostics(rho.matrix)
