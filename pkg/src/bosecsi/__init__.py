"""Particle-entanglement criteria for two-mode bosons.

Cauchy-Schwarz correlator coefficients, number squeezing and quantum Fisher
information on fixed-N Fock-basis densities and sector mixtures, plus the
two-distinguishable-particle Werner counterexample.
"""

from ._backend import available_backends, get_backend, set_backend
from .correlations import CorrelationReport, analyze, csi_coefficient, integrated_gn, number_squeezing
from .distinguishable import (
    BlochPair,
    TwoQubitDensity,
    bosonic_projection_weight,
    partial_transpose,
    ppt_verdict,
    two_particle_g2,
    werner_state,
)
from .errors import InvalidArgument, InvariantViolation, NumericalFailure
from .fock import (
    FixedNDensity,
    Orbital,
    SectorMixture,
    angular_momentum_matrix,
    hermitian_eigensystem,
    validate_density,
)
from .qfi import qfi_witness_report, sector_averaged_qfi
from .states import (
    SeparableSpec,
    fock_state,
    noon,
    product_state,
    random_separable,
    sector_mixture,
    separable_mixture,
    twin_fock,
)

# ``bosecsi.qfi`` stays the submodule; the single-axis function is ``bosecsi.qfi.qfi``
__version__ = "0.1.0"
