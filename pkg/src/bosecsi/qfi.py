"""Quantum Fisher information for ``exp(-i theta n.J)`` and the ``F_Q > N`` witness."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgument, NumericalFailure
from .fock import FixedNDensity, SectorMixture, angular_momentum_matrix, check_axis, hermitian_eigensystem

NULL_SPACE_TOL = 1e-12
PURE_TOL = 1e-10
PURE_AGREEMENT_TOL = 1e-9
# product states sit on F_Q = N exactly; rounding must not flip the witness
WITNESS_TOL = 1e-8

AXIS_TOKENS = {
    "x": (1.0, 0.0, 0.0),
    "y": (0.0, 1.0, 0.0),
    "z": (0.0, 0.0, 1.0),
}


@dataclass(frozen=True)
class QfiResult:
    f_q: float
    axis: tuple
    n_particles: int
    witness: bool


@dataclass(frozen=True)
class SectorQfi:
    """``p_N``-weighted sector QFI of a sector mixture.

    A bookkeeping quantity: the separable bound ``F_Q <= N`` is only claimed
    per sector, so ``witness`` is true when some populated sector exceeds
    its own N.
    """

    f_q: float
    axis: tuple
    sectors: tuple
    witness: bool


def _qfi_from_eigensystem(eig, generator):
    lam = eig.eigenvalues
    u = eig.eigenvectors
    jk = u.conj().T @ generator @ u
    lk, ll = np.meshgrid(lam, lam, indexing="ij")
    total = lk + ll
    keep = total > NULL_SPACE_TOL
    terms = np.zeros_like(total)
    terms[keep] = (lk[keep] - ll[keep]) ** 2 / total[keep]
    return float(2.0 * np.sum(terms * np.abs(jk) ** 2))


def _pure_qfi(rho, generator):
    mean = np.trace(rho @ generator).real
    mean_sq = np.trace(rho @ generator @ generator).real
    return 4.0 * (mean_sq - mean**2)


def _qfi_rows(rho, axes):
    if not isinstance(rho, FixedNDensity):
        raise InvalidArgument(f"QFI is defined per fixed-N sector, got {type(rho).__name__}")
    axes = [tuple(float(x) for x in check_axis(ax)) for ax in axes]
    eig = hermitian_eigensystem(rho.matrix)
    pure = rho.purity > 1.0 - PURE_TOL
    rows = []
    for axis in axes:
        gen = angular_momentum_matrix(axis, rho.n_particles)
        f_q = _qfi_from_eigensystem(eig, gen)
        if pure:
            shortcut = _pure_qfi(rho.matrix, gen)
            if abs(f_q - shortcut) > PURE_AGREEMENT_TOL * max(1.0, abs(shortcut)):
                raise NumericalFailure(f"mixed-state QFI {f_q!r} disagrees with pure-state 4Var {shortcut!r}")
        f_q = max(f_q, 0.0)
        rows.append(QfiResult(f_q, axis, rho.n_particles, f_q > rho.n_particles + WITNESS_TOL))
    return rows


def qfi(state, axis):
    """QFI of a fixed-N state for rotations about ``axis``.

    Uses ``F_Q = 2 sum_{kl} (l_k - l_l)^2/(l_k + l_l) |<k|n.J|l>|^2`` over the
    eigenpairs of rho, skipping pairs with ``l_k + l_l <= 1e-12``.
    """
    return _qfi_rows(state, [axis])[0]


def qfi_witness_report(state, axes):
    """QFI rows for each axis; a state is entangled-by-QFI if any row witnesses."""
    return _qfi_rows(state, axes)


def witnessed(rows):
    return any(r.witness for r in rows)


def sector_averaged_qfi(mixture, axes):
    """One :class:`SectorQfi` per axis for a :class:`SectorMixture`."""
    if not isinstance(mixture, SectorMixture):
        raise InvalidArgument(f"expected SectorMixture, got {type(mixture).__name__}")
    per_sector = [(p, _qfi_rows(rho, axes)) for p, rho in mixture.sectors]
    out = []
    for i, axis in enumerate(per_sector[0][1]):
        rows = tuple((p, rows[i]) for p, rows in per_sector)
        f_avg = math.fsum(p * r.f_q for p, r in rows)
        out.append(SectorQfi(f_avg, axis.axis, rows, any(p > 0.0 and r.witness for p, r in rows)))
    return out
