from math import sqrt

import numpy as np
import pytest

from bosecsi.correlations import (
    DEGENERATE_NOTE,
    analyze,
    csi_coefficient,
    csi_note,
    integrated_gn,
    number_squeezing,
)
from bosecsi.errors import InvalidArgument
from bosecsi.fock import Orbital
from bosecsi.states import (
    SeparableSpec,
    fock_state,
    noon,
    product_state,
    random_separable,
    sector_mixture,
    separable_mixture,
    twin_fock,
)

from conftest import embed_two_mode

BALANCED = Orbital(1 / sqrt(2), 1 / sqrt(2))


def brute_gn(rho, order):
    """Operator expectations <a^+m b^+m b^m a^m> etc. in the full two-mode space."""
    full, a, b = embed_two_mode(rho)
    m = order // 2
    mp = np.linalg.matrix_power
    ad, bd = a.conj().T, b.conj().T
    g_aa = np.trace(full @ mp(ad, order) @ mp(a, order)).real
    g_ab = np.trace(full @ mp(ad, m) @ mp(bd, m) @ mp(b, m) @ mp(a, m)).real
    g_bb = np.trace(full @ mp(bd, order) @ mp(b, order)).real
    return g_aa, g_ab, g_bb


@pytest.mark.parametrize(
    "make",
    [lambda: twin_fock(10), lambda: noon(6), lambda: product_state(Orbital.from_weight(0.3, 1.1), 7),
     lambda: separable_mixture(random_separable(9, 4, 11)), lambda: fock_state(2, 5)],
)
@pytest.mark.parametrize("order", [2, 4, 6])
def test_against_operator_oracle(backend, make, order):
    rho = make()
    np.testing.assert_allclose(integrated_gn(rho, order), brute_gn(rho, order), rtol=1e-12, atol=1e-12)


def test_twin_fock_values():
    assert integrated_gn(twin_fock(10), 2) == (20, 25, 20)


def test_balanced_product_values():
    np.testing.assert_allclose(integrated_gn(product_state(BALANCED, 4), 2), (3, 3, 3), rtol=1e-12)


def test_noon_values():
    np.testing.assert_allclose(integrated_gn(noon(6), 2), (15, 0, 15), atol=1e-12)


def test_order_validation():
    for bad in (1, 3, 0, 2.0):
        with pytest.raises(InvalidArgument):
            integrated_gn(twin_fock(4), bad)


def test_order_above_n_gives_zeros():
    assert integrated_gn(twin_fock(4), 6) == (0, 0, 0)
    assert integrated_gn(twin_fock(4), 10) == (0, 0, 0)


def test_sector_mixture_is_weighted_sum():
    s1, s2 = twin_fock(4), product_state(BALANCED, 2)
    mix = sector_mixture([(0.5, s1), (0.5, s2)])
    want = 0.5 * np.array(integrated_gn(s1, 2)) + 0.5 * np.array(integrated_gn(s2, 2))
    np.testing.assert_allclose(integrated_gn(mix, 2), want)


def test_vacuum_and_single_particle_contribute_zero():
    mix = sector_mixture([(0.2, fock_state(0, 0)), (0.3, fock_state(1, 0)), (0.5, twin_fock(4))])
    np.testing.assert_allclose(integrated_gn(mix, 2), 0.5 * np.array(integrated_gn(twin_fock(4), 2)))


def test_csi_values():
    assert csi_coefficient(*integrated_gn(twin_fock(10), 2)) == pytest.approx(1.25, rel=1e-12)
    assert csi_coefficient(*integrated_gn(noon(6), 2)) == 0
    c = csi_coefficient(*integrated_gn(twin_fock(100), 4))
    assert c == pytest.approx((50 * 49) ** 2 / (50 * 49 * 48 * 47), rel=1e-12)


def test_csi_undefined():
    assert csi_coefficient(0, 0, 3) is None
    assert csi_note(0, 0, 3) == DEGENERATE_NOTE
    assert csi_coefficient(0, 2, 3) is None
    assert "g_ab > 0" in csi_note(0, 2, 3)
    assert csi_note(1, 1, 1) is None
    with pytest.raises(InvalidArgument):
        csi_coefficient(-1, 1, 1)


def test_product_states_saturate():
    rng = np.random.default_rng(3)
    for _ in range(50):
        o = Orbital.from_weight(rng.uniform(0.01, 0.99), rng.uniform(0, 6.3))
        c = csi_coefficient(*integrated_gn(product_state(o, int(rng.integers(2, 30))), 2))
        assert abs(c - 1) <= 1e-12


def test_number_squeezing_values():
    assert number_squeezing(twin_fock(10)) == (0.0, 0.0)
    eta2, mean = number_squeezing(noon(6))
    assert eta2 == pytest.approx(6, abs=1e-12) and mean == pytest.approx(0, abs=1e-12)
    eta2, mean = number_squeezing(product_state(Orbital.from_weight(0.75), 20))
    assert eta2 == pytest.approx(0.75, abs=1e-10)
    assert mean == pytest.approx(10, abs=1e-10)


def test_number_squeezing_vacuum_rejected():
    with pytest.raises(InvalidArgument):
        number_squeezing(fock_state(0, 0))


def test_number_squeezing_identity_against_operator(rng):
    rho = separable_mixture(random_separable(7, 3, 99))
    full, a, b = embed_two_mode(rho)
    n_op = a.conj().T @ a - b.conj().T @ b
    mean = np.trace(full @ n_op).real
    var = np.trace(full @ n_op @ n_op).real - mean**2
    eta2, got_mean = number_squeezing(rho)
    assert got_mean == pytest.approx(mean, abs=1e-12)
    assert eta2 == pytest.approx(var / 7, abs=1e-12)


def test_analyze_reports():
    (rep,) = analyze(twin_fock(10), [2])
    assert rep.csi_c == pytest.approx(1.25) and rep.eta2 == 0
    assert rep.csi_violated is True
    assert rep.n_tot == rep.mean_na + rep.mean_nb == 10
    reps = analyze(separable_mixture(random_separable(8, 5, 1)), [2, 4, 6])
    assert [r.order for r in reps] == [2, 4, 6]
    assert all(r.csi_c <= 1 + 1e-12 and r.csi_violated is False for r in reps)


def test_overshadow_threshold():
    sep = separable_mixture(SeparableSpec(6, ((0.5, Orbital(1, 0)), (0.5, Orbital(0, 1)))))
    for w in (0.0, 0.1, 1 / 6, 0.3, 0.9):
        mix = sector_mixture([(w, sep), (1 - w, twin_fock(6))], merge_duplicates=True)
        c = analyze(mix, [2])[0].csi_c
        assert c == pytest.approx(9 * (1 - w) / (6 + 9 * w), rel=1e-12)
    at = sector_mixture([(5 / 6, sep), (1 / 6, twin_fock(6))], merge_duplicates=True)
    assert analyze(at, [2])[0].csi_c <= 1 + 1e-12


def test_balanced_bridge_corrected_sign():
    # g_ab = C g_aa when balanced, so eta^2 = 1 + 2(1 - C) g_aa / n_tot
    for rho in (twin_fock(10), product_state(BALANCED, 6), noon(8)):
        rep = analyze(rho, [2])[0]
        assert rep.eta2 == pytest.approx(1 + 2 * (1 - rep.csi_c) * rep.g_aa / rep.n_tot, abs=1e-10)
