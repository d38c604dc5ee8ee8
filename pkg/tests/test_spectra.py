import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from dephasim import spectra
from dephasim.errors import AllZero, EmptyOrUnsorted, KindHasNoDensity, UnsupportedKind
from dephasim.spectra import Kind

W = 1.0


def density_families():
    return [
        spectra.gaussian(W),
        spectra.lorentzian(W),
        spectra.rectangular(W),
        spectra.double_gaussian(W),
        spectra.double_lorentzian(W),
        spectra.gaussian(W, power=2),
        spectra.lorentzian(W, power=2),
        spectra.double_gaussian(W, power=2),
        spectra.double_lorentzian(W, power=2),
    ]


def test_gaussian_peak():
    assert spectra.evaluate(spectra.gaussian(1.0), 0.0) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert spectra.evaluate(spectra.gaussian(1.0), 0.0) == pytest.approx(0.5641895, abs=1e-7)


def test_lorentzian_peak():
    assert spectra.evaluate(spectra.lorentzian(1.0), 0.0) == pytest.approx(0.3183099, abs=1e-7)


def test_rectangular_outside_support():
    rect = spectra.rectangular(1.0)
    assert spectra.evaluate(rect, 1.5) == 0.0
    assert spectra.evaluate(rect, 0.3) == 0.5


@pytest.mark.parametrize("spec", density_families(), ids=lambda s: f"{s.kind.value}-p{s.power}")
def test_density_integrates_to_one(spec):
    # independent integrator, split at every peak and support edge
    edges = sorted(set(spec.centers) | {c + s for c in spec.centers for s in (-1.0, 1.0)})
    f = lambda x: spectra.evaluate(spec, x)
    total = 0.0
    total += integrate.quad(f, -np.inf, edges[0], epsabs=1e-13, epsrel=1e-13, limit=500)[0]
    for a, b in zip(edges[:-1], edges[1:]):
        total += integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=500)[0]
    total += integrate.quad(f, edges[-1], np.inf, epsabs=1e-13, epsrel=1e-13, limit=500)[0]
    assert total == pytest.approx(1.0, abs=1e-10)


SYMMETRIC = [
    spectra.gaussian(2.0),
    spectra.lorentzian(2.0),
    spectra.rectangular(2.0),
    spectra.gaussian(2.0, power=2),
    spectra.lorentzian(2.0, power=2),
    spectra.double_gaussian(2.0, center=-5.0),
    spectra.double_lorentzian(2.0, center=-30.0),
]


@given(st.floats(0.0, 200.0), st.sampled_from(range(len(SYMMETRIC))))
def test_symmetry_about_peak(delta, which):
    spec = SYMMETRIC[which]
    assert spectra.evaluate(spec, delta) == spectra.evaluate(spec, -delta)


@given(st.floats(0.0, 30.0), st.sampled_from(["gaussian", "lorentzian"]))
def test_symmetry_about_offset_peak(delta, kind):
    # the offsets themselves round, so equality holds to a few ulps of the exponent
    spec = getattr(spectra, kind)(2.0, center=3.0)
    left, right = spectra.evaluate(spec, 3.0 - delta), spectra.evaluate(spec, 3.0 + delta)
    assert math.isclose(left, right, rel_tol=1e-12)


@pytest.mark.parametrize("spec", [spectra.white(), spectra.multi_delta([0.0, 1.0])])
def test_no_pointwise_density(spec):
    with pytest.raises(KindHasNoDensity):
        spectra.evaluate(spec, 0.0)


def test_multi_delta_default_weights():
    spec = spectra.multi_delta([0.0, 1.0, 3.0])
    assert [w for _, w in spec.peaks] == [1 / 3] * 3
    with pytest.raises(ValueError):
        spectra.multi_delta([0.0, 1.0], [0.7, 0.7])


def test_normalize_flat_segment():
    spec = spectra.normalize_tabulated([(-1.0, 1.0), (1.0, 1.0)])
    assert spec.kind is Kind.TABULATED
    assert spec.tabulated_arrays()[1].tolist() == [0.5, 0.5]


def test_normalize_sampled_gaussian():
    nu = np.linspace(-8.0, 8.0, 4001)
    dens = spectra.evaluate(spectra.gaussian(1.0), nu)
    spec = spectra.normalize_tabulated(np.column_stack([nu, dens]))
    factor = dens[2000] / spec.tabulated_arrays()[1][2000]
    assert abs(factor - 1.0) < 1e-6


@pytest.mark.parametrize("samples", [[(0.0, 1.0)], [(1.0, 1.0), (0.0, 1.0)], [(0.0, 1.0), (0.0, 2.0)],
                                     [(0.0, -1.0), (1.0, 1.0)]])
def test_normalize_rejects_bad_samples(samples):
    with pytest.raises(EmptyOrUnsorted):
        spectra.normalize_tabulated(samples)


def test_normalize_rejects_all_zero():
    with pytest.raises(AllZero):
        spectra.normalize_tabulated([(0.0, 0.0), (1.0, 0.0)])


def test_pdc_gaussian_peak_density():
    model = spectra.pdc_marginal("gaussian", 4.0e15, 2.0)
    assert model.marginal.reference == 2.0e15
    assert spectra.evaluate(model.marginal, 0.0) == pytest.approx(math.sqrt(2 / math.pi) / 2.0, rel=1e-15)


def test_pdc_rectangular_density():
    model = spectra.pdc_marginal(Kind.RECTANGULAR, 4.0e15, 2.0)
    nu = np.linspace(-2.0, 2.0, 17)
    assert np.all(spectra.evaluate(model.marginal, nu) == 0.25)
    assert spectra.evaluate(model.marginal, 2.5) == 0.0


def test_pdc_double_lorentzian_peaks():
    model = spectra.pdc_marginal("double-lorentzian", 4.0e15, 1.0)
    assert model.marginal.centers == (-15.0, 15.0)


def test_pdc_double_gaussian_is_mirrored_average():
    w, sep = 1.5, 7.5
    model = spectra.pdc_marginal("double-gaussian", 4.0e15, w, separation=sep)
    nu = np.linspace(-12.0, 12.0, 97)
    single = spectra.gaussian(w, power=2)
    expected = 0.5 * (spectra.evaluate(single, nu - sep / 2) + spectra.evaluate(single, nu + sep / 2))
    np.testing.assert_allclose(spectra.evaluate(model.marginal, nu), expected, rtol=1e-14, atol=0)
    # squared Gaussian of 1/e half-width w
    np.testing.assert_allclose(spectra.evaluate(single, nu),
                               math.sqrt(2 / math.pi) / w * np.exp(-2 * (nu / w) ** 2), rtol=1e-14)


@pytest.mark.parametrize("kind", ["white", "multidelta", "tabulated", "sech"])
def test_pdc_unsupported(kind):
    with pytest.raises(UnsupportedKind):
        spectra.pdc_marginal(kind, 4.0e15, 1.0)


def test_envelope_validation():
    with pytest.raises(ValueError):
        spectra.gaussian(0.0)
    with pytest.raises(ValueError):
        spectra.gaussian(1.0, power=3)


def test_centroid():
    assert spectra.centroid(spectra.double_gaussian(1.0, 4.0, center=1.0)) == 3.0
    assert spectra.centroid(spectra.multi_delta([0.0, 2.0], [0.25, 0.75])) == 1.5
    assert spectra.centroid(spectra.white()) == 0.0
