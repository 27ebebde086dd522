from math import comb, sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bosecsi.errors import InvalidArgument
from bosecsi.fock import Orbital, validate_density
from bosecsi.states import (
    SeparableSpec,
    noon,
    product_ket,
    product_state,
    random_separable,
    sector_mixture,
    separable_mixture,
    twin_fock,
)

BALANCED = Orbital(1 / sqrt(2), 1 / sqrt(2))
ALL_A = Orbital(1.0, 0.0)
ALL_B = Orbital(0.0, 1.0)


def test_product_all_in_a():
    ket = product_ket(ALL_A, 5)
    np.testing.assert_array_equal(np.abs(ket), [0, 0, 0, 0, 0, 1])


def test_product_balanced_two_particles():
    np.testing.assert_allclose(product_ket(BALANCED, 2), [0.5, 1 / sqrt(2), 0.5], atol=1e-15)


def test_product_mean_occupation(rng):
    o = Orbital.from_weight(rng.uniform(), rng.uniform(0, 6.28))
    rho = product_state(o, 7)
    assert abs(np.dot(rho.populations, np.arange(8)) - 7 * o.weight_a) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 40), q=st.floats(0, 1), phase=st.floats(0, 6.3))
def test_product_binomial_law(n, q, phase):
    o = Orbital.from_weight(q, phase)
    rho = product_state(o, n)
    law = np.array([comb(n, k) * q**k * (1 - q) ** (n - k) for k in range(n + 1)])
    np.testing.assert_allclose(rho.populations, law, atol=1e-12)
    assert abs(rho.purity - 1) <= 1e-12


def test_product_phase_is_coherent():
    o = Orbital(1 / sqrt(2), 1j / sqrt(2))
    ket = product_ket(o, 3)
    want = np.array([sqrt(comb(3, k)) * o.alpha**k * o.beta ** (3 - k) for k in range(4)])
    np.testing.assert_allclose(ket, want, atol=1e-15)


def test_twin_fock():
    rho = twin_fock(10)
    assert rho.matrix[5, 5] == 1 and np.count_nonzero(rho.matrix) == 1
    assert np.dot(rho.populations, np.arange(11)) == 5
    with pytest.raises(InvalidArgument):
        twin_fock(3)


def test_noon():
    np.testing.assert_allclose(np.diag(noon(2).matrix).real, [0.5, 0, 0.5])
    rho = noon(6)
    imb = 2 * np.arange(7) - 6
    var = np.dot(rho.populations, imb**2) - np.dot(rho.populations, imb) ** 2
    assert var == pytest.approx(36, abs=1e-12)
    with pytest.raises(InvalidArgument):
        noon(0)


@pytest.mark.parametrize("n", [2, 4, 10, 30])
def test_noon_twin_fock_orthogonal_and_idempotent(n):
    tf, nn = twin_fock(n).matrix, noon(n).matrix
    assert abs(np.trace(tf @ nn)) == 0
    for m in (tf, nn):
        np.testing.assert_allclose(m @ m, m, atol=1e-12)


def test_separable_single_component_is_product():
    rho = separable_mixture(SeparableSpec(4, ((1.0, BALANCED),)))
    np.testing.assert_allclose(rho.matrix, product_state(BALANCED, 4).matrix, atol=0)


def test_separable_all_a_all_b():
    rho = separable_mixture(SeparableSpec(6, ((0.5, ALL_A), (0.5, ALL_B))))
    want = np.zeros((7, 7))
    want[0, 0] = want[6, 6] = 0.5
    np.testing.assert_allclose(rho.matrix, want, atol=0)


def test_separable_spec_validation():
    with pytest.raises(InvalidArgument):
        SeparableSpec(3, ())
    with pytest.raises(InvalidArgument):
        SeparableSpec(3, ((0.7, ALL_A), (0.7, ALL_B)))
    with pytest.raises(InvalidArgument):
        SeparableSpec(3, ((-0.5, ALL_A), (1.5, ALL_B)))


def test_sector_mixture_constructor():
    mix = sector_mixture([(0.5, twin_fock(4)), (0.5, product_state(BALANCED, 2))])
    assert mix.mean_n == 3
    with pytest.raises(InvalidArgument):
        sector_mixture([(0.6, twin_fock(4)), (0.6, twin_fock(2))])
    with pytest.raises(InvalidArgument):
        sector_mixture([(0.5, twin_fock(4)), (0.5, twin_fock(4))])


def test_sector_mixture_merges_same_n_on_request():
    sep = separable_mixture(SeparableSpec(6, ((0.5, ALL_A), (0.5, ALL_B))))
    mix = sector_mixture([(0.25, sep), (0.75, twin_fock(6))], merge_duplicates=True)
    assert len(mix.sectors) == 1
    p, rho = mix.sectors[0]
    assert p == 1.0
    np.testing.assert_allclose(rho.matrix, 0.25 * sep.matrix + 0.75 * twin_fock(6).matrix)


def test_random_separable_deterministic():
    a, b = random_separable(8, 5, 123), random_separable(8, 5, 123)
    assert a == b
    assert random_separable(8, 5, 124) != a
    assert random_separable(8, 1, 7).components[0][0] == 1.0
    with pytest.raises(InvalidArgument):
        random_separable(8, 0, 1)


def test_random_separable_states_validate():
    for seed in range(30):
        spec = random_separable(6, 1 + seed % 8, seed)
        assert abs(sum(w for w, _ in spec.components) - 1) <= 1e-12
        assert validate_density(separable_mixture(spec)).ok


def test_random_orbitals_cover_bloch_sphere():
    # uniform measure: <cos theta> = <|alpha|^2 - |beta|^2> = 0, <cos^2 theta> = 1/3
    comps = random_separable(2, 20000, 5).components
    z = np.array([o.weight_a - o.weight_b for _, o in comps])
    assert abs(z.mean()) < 0.02
    assert abs((z**2).mean() - 1 / 3) < 0.02
