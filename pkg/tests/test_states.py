import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dephasim.errors import NotNormalized
from dephasim.states import PairAmplitudes, SingleAmplitudes, dephase, evolve_pair, evolve_single

R = 1 / math.sqrt(2)


def random_amplitudes(rng, n):
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_correlations(rng, n):
    return np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def test_identity_channel_gives_plus_state():
    rho = evolve_single(SingleAmplitudes(R, R), 1.0)
    np.testing.assert_allclose(rho, np.full((2, 2), 0.5), atol=1e-15)


def test_complete_dephasing():
    rho = evolve_single(SingleAmplitudes(R, R), 0.0)
    np.testing.assert_allclose(rho, np.diag([0.5, 0.5]), atol=1e-15)


@given(st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi))
def test_polarized_photon_unaffected(mod, phase):
    rho = evolve_single(SingleAmplitudes(1.0, 0.0), mod * complex(math.cos(phase), math.sin(phase)))
    assert rho.tolist() == [[1.0, 0.0], [0.0, 0.0]]


def test_bell_projector():
    rho = evolve_pair(PairAmplitudes(R, R), 1.0)
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_fully_dephased_pair():
    rho = evolve_pair(PairAmplitudes(R, R), 0.0)
    np.testing.assert_allclose(rho, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-15)


def test_corner_magnitude():
    rho = evolve_pair(PairAmplitudes(math.sqrt(0.8), math.sqrt(0.2)), 0.5j)
    assert abs(rho[0, 3]) == pytest.approx(0.2, abs=1e-15)
    assert abs(rho[3, 0]) == pytest.approx(0.2, abs=1e-15)


def test_phases_are_propagated():
    rho = evolve_single(SingleAmplitudes(R, 1j * R), 1.0)
    assert rho[0, 1] == pytest.approx(-0.5j, abs=1e-15)
    rho = evolve_pair(PairAmplitudes(R, -R), 1.0)
    assert rho[0, 3] == pytest.approx(-0.5, abs=1e-15)


def test_normalization_checked():
    with pytest.raises(NotNormalized):
        SingleAmplitudes(1.0, 0.1)
    with pytest.raises(NotNormalized):
        PairAmplitudes(0.5, 0.5)
    with pytest.raises(ValueError):
        SingleAmplitudes.from_population(1.5)


def test_correlation_modulus_checked():
    with pytest.raises(ValueError):
        evolve_single(SingleAmplitudes(R, R), 1.01)


def test_from_population():
    amps = SingleAmplitudes.from_population(0.25, phase=math.pi / 2)
    assert amps.alpha == 0.5
    assert amps.beta == pytest.approx(1j * math.sqrt(0.75), abs=1e-16)
    assert amps.coherence_weight == pytest.approx(0.75, abs=1e-15)


# dyadic values make every product exact, so composition must match bit for bit
DYADIC_F = [0.5 + 0.25j, 0.75 - 0.5j, -0.125 + 0.5j, 1.0, 0.0, -0.5j]


@pytest.mark.parametrize("f1", DYADIC_F)
@pytest.mark.parametrize("f2", DYADIC_F)
def test_composability_exact(f1, f2):
    single = SingleAmplitudes(0.5 + 0.5j, 0.5 - 0.5j)
    assert np.array_equal(evolve_single(single, f1 * f2), dephase(evolve_single(single, f1), f2))
    pair = PairAmplitudes(0.5 - 0.5j, 0.5 + 0.5j)
    assert np.array_equal(evolve_pair(pair, f1 * f2), dephase(evolve_pair(pair, f1), f2))


def test_composability_random(rng):
    amps = random_amplitudes(rng, 200)
    f1, f2 = random_correlations(rng, 200), random_correlations(rng, 200)
    for (a, b), x, y in zip(amps, f1, f2):
        direct = evolve_single(SingleAmplitudes(a, b), x * y)
        stepwise = dephase(evolve_single(SingleAmplitudes(a, b), x), y)
        assert np.max(np.abs(direct - stepwise)) <= 1e-15


def test_diagonal_invariance(rng):
    amps = random_amplitudes(rng, 500)
    F = random_correlations(rng, 500)
    for (a, b), f in zip(amps, F):
        rho = evolve_single(SingleAmplitudes(a, b), f)
        pa, pb = a.real ** 2 + a.imag ** 2, b.real ** 2 + b.imag ** 2
        assert rho[0, 0] == pa and rho[1, 1] == pb
        rho = evolve_pair(PairAmplitudes(a, b), f)
        assert rho[0, 0] == pa and rho[3, 3] == pb
        assert rho[1, 1] == 0 and rho[2, 2] == 0


def test_outputs_positive_semidefinite(rng):
    n = 10_000
    amps = random_amplitudes(rng, n)
    F = random_correlations(rng, n)
    singles = np.stack([evolve_single(SingleAmplitudes(a, b), f) for (a, b), f in zip(amps, F)])
    pairs = np.stack([evolve_pair(PairAmplitudes(a, b), f) for (a, b), f in zip(amps, F)])
    assert np.linalg.eigvalsh(singles).min() >= -1e-10
    assert np.linalg.eigvalsh(pairs).min() >= -1e-10


def test_broadcasting():
    F = np.array([[1.0, 0.5], [0.0, -0.25j]])
    assert evolve_single(SingleAmplitudes(R, R), F).shape == (2, 2, 2, 2)
    assert evolve_pair(PairAmplitudes(R, R), F).shape == (2, 2, 4, 4)
