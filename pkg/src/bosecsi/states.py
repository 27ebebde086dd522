"""Constructors for the two-mode boson states analysed by the package."""

from dataclasses import dataclass
import math

import numpy as np

from .errors import InvalidArgument
from .fock import WEIGHT_TOL, FixedNDensity, Orbital, SectorMixture


def _check_n(n, minimum=0):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidArgument(f"particle number must be an integer, got {n!r}")
    if n < minimum:
        raise InvalidArgument(f"particle number must be >= {minimum}, got {n}")
    return int(n)


@dataclass(frozen=True)
class SeparableSpec:
    """Discrete P-representation: ``rho = sum_i P_i |phi_i; N><phi_i; N|``.

    ``components`` is a tuple of ``(weight, Orbital)`` pairs.
    """

    n_particles: int
    components: tuple

    def __post_init__(self):
        n = _check_n(self.n_particles)
        comps = tuple((float(w), orb) for w, orb in self.components)
        if not comps:
            raise InvalidArgument("separable mixture needs at least one component")
        for w, orb in comps:
            if not isinstance(orb, Orbital):
                raise InvalidArgument(f"component orbital must be Orbital, got {type(orb).__name__}")
            if not w >= 0.0:
                raise InvalidArgument(f"negative mixture weight {w}")
        total = math.fsum(w for w, _ in comps)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise InvalidArgument(f"mixture weights sum to {total!r}, not 1")
        object.__setattr__(self, "n_particles", n)
        object.__setattr__(self, "components", comps)


def product_ket(orbital, n_particles):
    """Fock amplitudes of ``|phi>^{(x)N}``: ``sqrt(C(N,k)) alpha^k beta^(N-k)``."""
    n = _check_n(n_particles)
    k = np.arange(n + 1)
    rest = n - k
    log_binom = 0.5 * (math.lgamma(n + 1) - np.array([math.lgamma(x + 1) + math.lgamma(n - x + 1) for x in k]))
    a, b = orbital.alpha, orbital.beta
    mag = log_binom.copy()
    # 0^0 = 1: a vanishing amplitude only kills terms where its power is positive
    for power, amp in ((k, a), (rest, b)):
        if amp != 0:
            mag += power * math.log(abs(amp))
        else:
            mag[power > 0] = -np.inf
    phase = k * np.angle(a) + rest * np.angle(b)
    return np.exp(mag) * np.exp(1j * phase)


def product_state(orbital, n_particles):
    """Pure separable state of N bosons all in ``orbital``."""
    return FixedNDensity.from_ket(product_ket(orbital, n_particles))


def fock_state(n_a, n_b):
    """Projector onto ``|n_a, n_b>``."""
    n_a, n_b = _check_n(n_a), _check_n(n_b)
    ket = np.zeros(n_a + n_b + 1, dtype=complex)
    ket[n_a] = 1.0
    return FixedNDensity.from_ket(ket)


def twin_fock(n_particles):
    """``|N/2, N/2>`` for even N >= 2."""
    n = _check_n(n_particles, 2)
    if n % 2:
        raise InvalidArgument(f"twin-Fock state needs an even particle number, got {n}")
    return fock_state(n // 2, n // 2)


def noon(n_particles):
    """``(|N,0> + |0,N>)/sqrt(2)`` with relative phase +1."""
    n = _check_n(n_particles, 1)
    ket = np.zeros(n + 1, dtype=complex)
    ket[0] = ket[n] = 1.0 / math.sqrt(2.0)
    return FixedNDensity.from_ket(ket)


def separable_mixture(spec):
    if not spec.components:
        raise InvalidArgument("separable mixture needs at least one component")
    n = spec.n_particles
    rho = np.zeros((n + 1, n + 1), dtype=complex)
    for weight, orbital in spec.components:
        ket = product_ket(orbital, n)
        rho += weight * np.outer(ket, ket.conj())
    return FixedNDensity(n, rho)


def sector_mixture(entries, merge_duplicates=False):
    """Build a :class:`SectorMixture` from ``[(p_N, FixedNDensity), ...]``.

    Entries sharing a particle number are rejected unless
    ``merge_duplicates`` is set, in which case they are combined into one
    sector ``rho_N = sum_i p_i rho_i / sum_i p_i`` with weight ``sum_i p_i``.
    """
    entries = [(float(p), rho) for p, rho in entries]
    if merge_duplicates:
        for p, _ in entries:
            if not p >= 0.0:
                raise InvalidArgument(f"negative sector weight {p}")
        merged = {}
        for p, rho in entries:
            merged.setdefault(rho.n_particles, []).append((p, rho))
        entries = []
        for n, group in merged.items():
            total = math.fsum(p for p, _ in group)
            if len(group) == 1:
                entries.append(group[0])
            elif total == 0.0:
                entries.append((0.0, group[0][1]))
            else:
                mat = sum(p * rho.matrix for p, rho in group) / total
                entries.append((total, FixedNDensity(n, mat)))
    return SectorMixture(tuple(entries))


def random_orbital(rng):
    cos_theta = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    half = 0.5 * math.acos(cos_theta)
    return Orbital(math.cos(half), math.sin(half) * complex(math.cos(phi), math.sin(phi)))


def random_separable(n_particles, n_components, seed):
    """Seeded random discrete P-representation.

    Orbitals are uniform on the Bloch sphere and weights are flat on the
    simplex (normalized exponentials). The same seed always gives the same
    spec.
    """
    if n_components < 1:
        raise InvalidArgument(f"need at least one component, got {n_components}")
    rng = np.random.default_rng(seed)
    orbitals = [random_orbital(rng) for _ in range(n_components)]
    raw = rng.exponential(size=n_components)
    weights = raw / raw.sum()
    return SeparableSpec(n_particles, tuple(zip(weights.tolist(), orbitals)))
