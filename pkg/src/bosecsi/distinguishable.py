"""Two distinguishable particles over modes {a, b}: Werner state, G2, PPT, symmetrizer.

Basis order is particle 1 (x) particle 2: ``|aa>, |ab>, |ba>, |bb>``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgument
from .fock import hermitian_eigensystem, density_diagnostics

PPT_TOL = 1e-12
BLOCH_TOL = 1e-12

_S = 1.0 / math.sqrt(2.0)
# symmetric triplet psi_1..psi_3 and the antisymmetric singlet psi_4
PSI_1 = np.array([0.0, _S, _S, 0.0], dtype=complex)
PSI_2 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
PSI_3 = np.array([0.0, 0.0, 0.0, 1.0], dtype=complex)
PSI_4 = np.array([0.0, _S, -_S, 0.0], dtype=complex)

PROJ_A = np.diag([1.0, 0.0]).astype(complex)
PROJ_B = np.diag([0.0, 1.0]).astype(complex)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _proj(v):
    return np.outer(v, v.conj())


BOSONIC_PROJECTOR = _proj(PSI_1) + _proj(PSI_2) + _proj(PSI_3)


@dataclass(frozen=True, eq=False)
class TwoQubitDensity:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.shape != (4, 4):
            raise InvalidArgument(f"two-particle density must be 4x4, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def check(self):
        density_diagnostics(self.matrix).raise_on_failure()
        return self


@dataclass(frozen=True)
class BlochPair:
    s1: tuple
    s2: tuple

    def __post_init__(self):
        for name in ("s1", "s2"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,):
                raise InvalidArgument(f"{name} must be a real 3-vector")
            if float(np.linalg.norm(v)) > 1.0 + BLOCH_TOL:
                raise InvalidArgument(f"{name} has norm {np.linalg.norm(v)!r} > 1")
            object.__setattr__(self, name, tuple(v.tolist()))


def werner_state(p):
    """``(1-p)/4 * 1 + p |psi_1><psi_1|`` with ``psi_1`` the symmetric ab triplet."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgument(f"Werner parameter must lie in [0, 1], got {p}")
    return TwoQubitDensity((1.0 - p) / 4.0 * np.eye(4) + p * _proj(PSI_1))


def product_pair(rho1, rho2):
    return TwoQubitDensity(np.kron(rho1, rho2))


def two_particle_g2(rho, strict_sum=False):
    """Return ``(g_aa, g_ab, g_bb)`` from single-particle mode projectors.

    Default convention: one term for ``aa``/``bb`` and
    both orderings for ``ab``, so that ``C = 2(1+p)/(1-p)`` for the Werner
    state. ``strict_sum=True`` sums every ordered pair ``n != m`` for all
    three, doubling ``g_aa`` and ``g_bb``.
    """
    m = rho.matrix

    def tr(op):
        return float(np.trace(m @ op).real)

    aa = tr(np.kron(PROJ_A, PROJ_A))
    bb = tr(np.kron(PROJ_B, PROJ_B))
    ab = tr(np.kron(PROJ_A, PROJ_B)) + tr(np.kron(PROJ_B, PROJ_A))
    if strict_sum:
        aa, bb = 2.0 * aa, 2.0 * bb
    return aa, ab, bb


def partial_transpose(rho):
    """Transpose over particle 2's indices."""
    t = np.asarray(rho.matrix).reshape(2, 2, 2, 2).transpose(0, 3, 2, 1)
    return t.reshape(4, 4).copy()


def ppt_verdict(rho):
    """``(entangled, min_eigenvalue)``; entangled iff the partial transpose has an eigenvalue < -1e-12."""
    lam = float(hermitian_eigensystem(partial_transpose(rho)).eigenvalues[0])
    return lam < -PPT_TOL, lam


def bloch_density(s):
    s = np.asarray(s, dtype=float)
    return 0.5 * (np.eye(2) + sum(c * sig for c, sig in zip(s, PAULI)))


def bosonic_projection_weight(pair):
    """``Tr[Pi_B (rho_1 (x) rho_2)]`` with ``Pi_B`` the projector onto the symmetric subspace."""
    rho = np.kron(bloch_density(pair.s1), bloch_density(pair.s2))
    return float(np.trace(BOSONIC_PROJECTOR @ rho).real)
