"""Seeded property suites behind ``bosecsi selftest``.

Trial ``i`` of every suite draws from its own generator seeded with
``seed + i``, so any failure can be replayed with
``selftest --trials 1 --seed <seed + i> --suite <name>``.
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

from . import correlations, qfi, statespec
from .distinguishable import BlochPair, bosonic_projection_weight, partial_transpose, ppt_verdict, two_particle_g2, werner_state
from .fock import FixedNDensity, Orbital, angular_momentum_matrix, hermitian_eigensystem, validate_density
from .states import SeparableSpec, product_state, random_orbital, random_separable, separable_mixture, sector_mixture, twin_fock

SEPARABLE_TOL = 1e-12
QFI_TOL = 1e-8


class CaseFailure(AssertionError):
    def __init__(self, message, case):
        super().__init__(message)
        self.case = case


def _require(cond, message, **case):
    if not cond:
        raise CaseFailure(message, case)


def _random_spec(rng, n_min=2, n_max=12, max_components=8):
    n = int(rng.integers(n_min, n_max + 1))
    comps = int(rng.integers(1, max_components + 1))
    return random_separable(n, comps, int(rng.integers(2**63)))


def _orders_for(n):
    return [m for m in range(2, min(n, 8) + 1, 2)]


def suite_csi_separable(rng):
    spec = _random_spec(rng)
    rho = separable_mixture(spec)
    _require(validate_density(rho).ok, "constructed separable state fails validation", n=spec.n_particles)
    for rep in correlations.analyze(rho, _orders_for(spec.n_particles)):
        c = rep.csi_c
        _require(c is None or c <= 1.0 + SEPARABLE_TOL, "separable state violates CSI",
                 n=spec.n_particles, order=rep.order, c=c)


def suite_csi_sector_mixture(rng):
    count = int(rng.integers(1, 5))
    ns = rng.choice(np.arange(2, 13), size=count, replace=False)
    raw = rng.exponential(size=count)
    probs = raw / raw.sum()
    entries = [(float(p), separable_mixture(random_separable(int(n), int(rng.integers(1, 9)), int(rng.integers(2**63)))))
               for p, n in zip(probs, ns)]
    mix = sector_mixture(entries)
    for order in (2, 4):
        g = correlations.integrated_gn(mix, order)
        c = correlations.csi_coefficient(*g)
        _require(c is None or c <= 1.0 + SEPARABLE_TOL, "separable sector mixture violates CSI",
                 ns=[int(n) for n in ns], order=order, c=c)


def suite_product_equality(rng):
    n = int(rng.integers(2, 13))
    rho = product_state(random_orbital(rng), n)
    g_aa, g_ab, g_bb = correlations.integrated_gn(rho, 2)
    c = correlations.csi_coefficient(g_aa, g_ab, g_bb)
    if c is not None:
        _require(abs(c - 1.0) <= 1e-12, "product state misses C = 1", n=n, c=c)


def suite_mixture_affinity(rng):
    spec = _random_spec(rng)
    mixed = np.array(correlations.integrated_gn(separable_mixture(spec), 2))
    summed = sum(w * np.array(correlations.integrated_gn(product_state(o, spec.n_particles), 2))
                 for w, o in spec.components)
    _require(np.allclose(mixed, summed, rtol=0, atol=1e-12 * max(1.0, np.abs(summed).max())),
             "mixture correlators are not the weighted component sum", mixed=mixed.tolist(), summed=summed.tolist())


def suite_moment_identities(rng):
    spec = _random_spec(rng)
    n = spec.n_particles
    # adding the a<->b mirror image of every component balances the state
    swapped = tuple((0.5 * w, Orbital(o.beta, o.alpha)) for w, o in spec.components)
    halves = tuple((0.5 * w, o) for w, o in spec.components)
    sym = separable_mixture(SeparableSpec(n, halves + swapped)).matrix
    if n % 2 == 0:
        w = float(rng.uniform())
        sym = w * sym + (1.0 - w) * twin_fock(n).matrix
    rho = FixedNDensity(n, sym)
    rep = correlations.analyze(rho, [2])[0]
    k = np.arange(n + 1)
    direct_n2 = float(np.dot(rho.populations, (2 * k - n) ** 2))
    rebuilt = rep.g_aa + rep.g_bb - 2 * rep.g_ab + rep.n_tot
    _require(abs(direct_n2 - rebuilt) <= 1e-10, "<n^2> moment identity fails", n=n, direct=direct_n2, rebuilt=rebuilt)
    if abs(rep.mean_imbalance) <= 1e-12 and abs(rep.g_aa - rep.g_bb) <= 1e-12 and rep.csi_c is not None:
        # balanced case: g_ab = C g_aa, so eta^2 = 1 + 2(1 - C) g_aa / n_tot
        bridge = 1.0 + 2.0 * (1.0 - rep.csi_c) * rep.g_aa / rep.n_tot
        _require(abs(rep.eta2 - bridge) <= 1e-10, "balanced eta^2 bridge fails", n=n, eta2=rep.eta2, bridge=bridge)


def suite_qfi_separable(rng):
    spec = _random_spec(rng, n_max=10)
    rho = separable_mixture(spec)
    v = rng.normal(size=3)
    axes = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0), tuple(v / np.linalg.norm(v))]
    rows = qfi.qfi_witness_report(rho, axes)
    worst = max(r.f_q for r in rows)
    _require(worst <= spec.n_particles + QFI_TOL and not qfi.witnessed(rows),
             "separable state exceeds F_Q <= N", n=spec.n_particles, f_q=worst)
    neg = qfi.qfi_witness_report(rho, [tuple(-x for x in axes[3])])[0]
    _require(abs(neg.f_q - rows[3].f_q) <= 1e-10, "QFI differs between n and -n", axis=list(axes[3]))


def suite_angular_momentum(rng):
    n = int(rng.integers(0, 21))
    jx = angular_momentum_matrix((1, 0, 0), n)
    jy = angular_momentum_matrix((0, 1, 0), n)
    jz = angular_momentum_matrix((0, 0, 1), n)
    comm = jx @ jy - jy @ jx
    _require(np.abs(comm - 1j * jz).max() <= 1e-10, "[Jx, Jy] != i Jz", n=n)
    v = rng.normal(size=3)
    axis = v / np.linalg.norm(v)
    lam = hermitian_eigensystem(angular_momentum_matrix(axis, n)).eigenvalues
    expected = np.arange(n + 1) - 0.5 * n
    _require(np.abs(lam - expected).max() <= 1e-10, "n.J spectrum is not -N/2..N/2", n=n, axis=axis.tolist())


def suite_eigensolver(rng):
    dim = int(rng.integers(1, 13))
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    u, _ = np.linalg.qr(z)
    spectrum = np.sort(rng.uniform(-5, 5, size=dim))
    a = (u * spectrum) @ u.conj().T
    a = 0.5 * (a + a.conj().T)
    eig = hermitian_eigensystem(a)
    scale = max(1.0, float(np.abs(a).max()))
    _require(np.abs(eig.reconstruct() - a).max() <= 1e-10 * scale, "eigen-reconstruction residual too large", dim=dim)
    _require(np.abs(eig.eigenvectors.conj().T @ eig.eigenvectors - np.eye(dim)).max() <= 1e-10,
             "eigenvectors not unitary", dim=dim)
    _require(np.abs(eig.eigenvalues - spectrum).max() <= 1e-10, "recovered spectrum differs", dim=dim)


def suite_werner(rng):
    p = float(rng.uniform(0.0, 0.99))
    rho = werner_state(p)
    g_aa, g_ab, g_bb = two_particle_g2(rho)
    c = correlations.csi_coefficient(g_aa, g_ab, g_bb)
    expected = 2.0 * (1.0 + p) / (1.0 - p)
    _require(abs(c - expected) <= 1e-12 * expected, "Werner C formula fails", p=p, c=c)
    lam = hermitian_eigensystem(partial_transpose(rho)).eigenvalues
    closed = np.sort([(1 + p) / 4] * 3 + [(1 - 3 * p) / 4])
    _require(np.abs(lam - closed).max() <= 1e-12, "Werner PT spectrum differs from closed form", p=p)
    entangled, _ = ppt_verdict(rho)
    if p <= 1.0 / 3.0:
        _require(c > 1.0 and not entangled, "CSI violation without entanglement not reproduced", p=p)


def suite_bosonic_symmetric(rng):
    v = rng.normal(size=3)
    s = tuple((v / np.linalg.norm(v)).tolist())
    w = bosonic_projection_weight(BlochPair(s, s))
    _require(abs(w - 1.0) <= 1e-12, "symmetric product is not bosonic", s=list(s), weight=w)


def _random_document(rng):
    kind = int(rng.integers(0, 6))

    def orb():
        o = random_orbital(rng)
        return [o.alpha.real, o.alpha.imag], [o.beta.real, o.beta.imag]

    def fixed(n, exact_n=False):
        choice = int(rng.integers(2 if exact_n else 0, 4))
        if choice == 0:
            return {"type": "twin_fock", "n": 2 * max(1, n // 2)}
        if choice == 1:
            return {"type": "noon", "n": max(1, n)}
        if choice == 2:
            a, b = orb()
            return {"type": "product", "n": n, "alpha": a, "beta": b}
        spec = random_separable(n, int(rng.integers(1, 5)), int(rng.integers(2**63)))
        return {
            "type": "separable_mixture",
            "n": n,
            "components": [
                {"weight": w, "alpha": [o.alpha.real, o.alpha.imag], "beta": [o.beta.real, o.beta.imag]}
                for w, o in spec.components
            ],
        }

    if kind == 4:
        ns = rng.choice(np.arange(0, 9), size=int(rng.integers(1, 4)), replace=False)
        raw = rng.exponential(size=len(ns))
        probs = (raw / raw.sum()).tolist()
        return {"type": "sector_mixture",
                "sectors": [{"prob": p, "state": fixed(int(n), exact_n=True)} for p, n in zip(probs, ns)]}
    if kind == 5:
        return {"type": "werner", "p": float(rng.uniform())}
    return fixed(int(rng.integers(1, 11)))


def _matrices(state):
    if hasattr(state, "sectors"):
        return [(p, rho.matrix) for p, rho in state.sectors]
    return [(1.0, state.matrix)]


def suite_spec_round_trip(rng):
    doc = _random_document(rng)
    text = statespec.dumps(doc)
    norm, first = statespec.parse(text)
    _, second = statespec.parse(statespec.dumps(norm))
    for (p1, m1), (p2, m2) in zip(_matrices(first), _matrices(second)):
        _require(p1 == p2 and m1.shape == m2.shape and np.abs(m1 - m2).max() <= 1e-15,
                 "state spec round trip changed the state", doc=doc)


def suite_state_library(rng):
    n = int(rng.integers(0, 30))
    o = random_orbital(rng)
    rho = product_state(o, n)
    k = np.arange(n + 1)
    law = np.array([math.comb(n, int(x)) for x in k], dtype=float) * o.weight_a**k * o.weight_b ** (n - k)
    _require(np.abs(rho.populations - law).max() <= 1e-12, "product populations break the binomial law", n=n)
    if n >= 2 and n % 2 == 0:
        tf = twin_fock(n).matrix
        _require(np.abs(tf @ tf - tf).max() <= 1e-12, "twin-Fock is not idempotent", n=n)


SUITES = {
    "csi_separable": suite_csi_separable,
    "csi_sector_mixture": suite_csi_sector_mixture,
    "product_equality": suite_product_equality,
    "mixture_affinity": suite_mixture_affinity,
    "moment_identities": suite_moment_identities,
    "qfi_separable": suite_qfi_separable,
    "angular_momentum": suite_angular_momentum,
    "eigensolver": suite_eigensolver,
    "werner": suite_werner,
    "bosonic_symmetric": suite_bosonic_symmetric,
    "spec_round_trip": suite_spec_round_trip,
    "state_library": suite_state_library,
}


@dataclass
class SelftestResult:
    trials: int
    seed: int
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    @property
    def text(self):
        lines = [f"selftest trials={self.trials} seed={self.seed}"]
        for name, (passed, total) in self.counts.items():
            lines.append(f"{name}: {passed}/{total} {'PASS' if passed == total else 'FAIL'}")
        for f in self.failures:
            lines.append("FAILED " + json.dumps(f, sort_keys=True, default=str))
        lines.append("ALL PASS" if self.ok else f"{len(self.failures)} FAILURE(S)")
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "trials": self.trials,
            "seed": self.seed,
            "suites": {k: {"passed": p, "total": t} for k, (p, t) in self.counts.items()},
            "failures": self.failures,
            "ok": self.ok,
        }


def run_selftest(trials, seed, suites=None):
    names = list(SUITES) if not suites else suites
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; have {list(SUITES)}")
    result = SelftestResult(trials, seed)
    for name in names:
        passed = 0
        for i in range(trials):
            trial_seed = seed + i
            try:
                SUITES[name](np.random.default_rng(trial_seed))
            except CaseFailure as exc:
                result.failures.append({"suite": name, "trial": i, "seed": trial_seed, "error": str(exc), "case": exc.case})
            except Exception as exc:  # any crash is a failed case, recorded for replay
                result.failures.append({"suite": name, "trial": i, "seed": trial_seed, "error": f"{type(exc).__name__}: {exc}"})
            else:
                passed += 1
        result.counts[name] = (passed, trials)
    return result
