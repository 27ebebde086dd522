"""Integrated normally ordered correlators, the CSI coefficient and number squeezing.

In the two-mode reduction the order-n correlators are diagonal in the Fock
basis. With ``m = n/2`` and ``x^(r)`` the falling factorial::

    g_aa = sum_k rho_kk k^(n)
    g_ab = sum_k rho_kk k^(m) (N-k)^(m)
    g_bb = sum_k rho_kk (N-k)^(n)

Sector mixtures are the ``p_N``-weighted sums over sectors.
"""

from dataclasses import asdict, dataclass
import math

import numpy as np

from . import _backend
from .errors import InvalidArgument, NumericalFailure
from .fock import sectors_of

# moments of a valid state can dip below zero only by rounding
NEGATIVE_TOL = 1e-12
IDENTITY_TOL = 1e-10
# C above this counts as a violation; absorbs rounding on the C = 1 boundary
VIOLATION_TOL = 1e-12

DEGENERATE_NOTE = "undefined (degenerate denominator)"


def _check_order(order):
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise InvalidArgument(f"correlator order must be an integer, got {order!r}")
    if order < 2 or order % 2:
        raise InvalidArgument(
            f"correlator order must be even and >= 2 (n/2 particles per region), got {order}"
        )
    return int(order)


def integrated_gn(state, order=2):
    """Return ``(g_aa, g_ab, g_bb)`` at even ``order`` for a fixed-N state or sector mixture."""
    m = _check_order(order) // 2
    kern = _backend.kernels()
    g = [0.0, 0.0, 0.0]
    for p, rho in sectors_of(state):
        if p == 0.0:
            continue
        pops = rho.populations
        for i, val in enumerate(kern.falling_moments(pops, rho.n_particles, m)):
            g[i] += p * val
    if not all(math.isfinite(x) for x in g):
        raise NumericalFailure(f"order-{order} correlators overflow double precision")
    for x in g:
        if x < -NEGATIVE_TOL:
            raise InvalidArgument(f"negative normally ordered moment {x!r}; state is not a valid density")
    g_aa, g_ab, g_bb = (max(x, 0.0) for x in g)
    return g_aa, g_ab, g_bb


def csi_coefficient(g_aa, g_ab, g_bb):
    """``C = g_ab / sqrt(g_aa g_bb)``, or ``None`` when the denominator vanishes."""
    for name, x in (("g_aa", g_aa), ("g_ab", g_ab), ("g_bb", g_bb)):
        if not x >= -NEGATIVE_TOL:
            raise InvalidArgument(f"{name} must be non-negative, got {x!r}")
    denom = max(g_aa, 0.0) * max(g_bb, 0.0)
    if denom == 0.0:
        return None
    return max(g_ab, 0.0) / math.sqrt(denom)


def csi_note(g_aa, g_ab, g_bb):
    """Why :func:`csi_coefficient` is undefined, or ``None`` if it is defined."""
    if g_aa * g_bb != 0.0:
        return None
    if g_ab > 0.0:
        return DEGENERATE_NOTE + "; g_ab > 0"
    return DEGENERATE_NOTE


def _diagonal_moments(state):
    """``(<n_a>, <n_b>, <n>, <n^2>)`` with ``n = n_a - n_b``."""
    mean_na = mean_nb = mean_n = mean_n2 = 0.0
    for p, rho in sectors_of(state):
        pops = rho.populations
        k = np.arange(rho.n_particles + 1, dtype=float)
        imb = 2.0 * k - rho.n_particles
        mean_na += p * float(np.dot(pops, k))
        mean_nb += p * float(np.dot(pops, rho.n_particles - k))
        mean_n += p * float(np.dot(pops, imb))
        mean_n2 += p * float(np.dot(pops, imb * imb))
    return mean_na, mean_nb, mean_n, mean_n2


def number_squeezing(state):
    """Return ``(eta2, mean_imbalance)`` for the imbalance ``n = n_a - n_b``.

    ``eta2 = (<n^2> - <n>^2) / n_tot``. The same quantity rebuilt from the
    order-2 correlators, ``1 + (g_aa + g_bb - 2 g_ab - <n>^2) / n_tot``, is
    evaluated as an internal identity check.
    """
    mean_na, mean_nb, mean_n, mean_n2 = _diagonal_moments(state)
    n_tot = mean_na + mean_nb
    if n_tot <= 0.0:
        raise InvalidArgument("number squeezing is undefined for the vacuum (n_tot = 0)")
    eta2 = (mean_n2 - mean_n**2) / n_tot
    g_aa, g_ab, g_bb = integrated_gn(state, 2)
    via_correlators = 1.0 + (g_aa + g_bb - 2.0 * g_ab - mean_n**2) / n_tot
    if abs(eta2 - via_correlators) > IDENTITY_TOL * max(1.0, abs(eta2)):
        raise NumericalFailure(
            f"eta^2 identity check failed: direct {eta2!r} vs correlators {via_correlators!r}"
        )
    return max(eta2, 0.0), mean_n


@dataclass(frozen=True)
class CorrelationReport:
    order: int
    g_aa: float
    g_ab: float
    g_bb: float
    csi_c: float | None
    csi_note: str | None
    eta2: float | None
    mean_imbalance: float
    mean_na: float
    mean_nb: float
    n_tot: float

    @property
    def csi_violated(self):
        """``True``/``False``, or ``None`` when C is undefined."""
        if self.csi_c is None:
            return None
        return self.csi_c > 1.0 + VIOLATION_TOL

    def to_dict(self):
        return asdict(self)


def analyze(state, orders=(2,)):
    """One :class:`CorrelationReport` per requested order."""
    orders = [_check_order(n) for n in orders]
    if not orders:
        raise InvalidArgument("need at least one correlator order")
    mean_na, mean_nb, _, _ = _diagonal_moments(state)
    n_tot = mean_na + mean_nb
    eta2, mean_n = number_squeezing(state) if n_tot > 0.0 else (None, 0.0)
    reports = []
    for n in orders:
        g_aa, g_ab, g_bb = integrated_gn(state, n)
        reports.append(
            CorrelationReport(
                order=n,
                g_aa=g_aa,
                g_ab=g_ab,
                g_bb=g_bb,
                csi_c=csi_coefficient(g_aa, g_ab, g_bb),
                csi_note=csi_note(g_aa, g_ab, g_bb),
                eta2=eta2,
                mean_imbalance=mean_n,
                mean_na=mean_na,
                mean_nb=mean_nb,
                n_tot=n_tot,
            )
        )
    return reports
