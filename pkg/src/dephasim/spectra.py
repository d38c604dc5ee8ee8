"""Frequency spectrum envelopes of single photons and PDC photon pairs.

All frequencies are *detunings* ``nu = omega - reference`` in rad/s.  Optical
carriers (~1e15 rad/s) never enter the arithmetic; the reference is kept on
the envelope only so the overall carrier phase can be reported on request.

Envelopes are immutable.  Build them with the module-level constructors
(:func:`gaussian`, :func:`lorentzian`, ...) rather than by hand.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import AllZero, EmptyOrUnsorted, KindHasNoDensity, UnsupportedKind

__all__ = [
    "Kind",
    "SpectrumEnvelope",
    "PdcSpectralModel",
    "white",
    "gaussian",
    "lorentzian",
    "rectangular",
    "multi_delta",
    "double_gaussian",
    "double_lorentzian",
    "normalize_tabulated",
    "evaluate",
    "pdc_marginal",
    "centroid",
    "DOUBLE_GAUSSIAN_SEPARATION",
    "DOUBLE_LORENTZIAN_SEPARATION",
]

# peak spacing in units of the width
DOUBLE_GAUSSIAN_SEPARATION = 5.0
DOUBLE_LORENTZIAN_SEPARATION = 30.0

_SQRT_PI = math.sqrt(math.pi)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


class Kind(str, enum.Enum):
    WHITE = "white"
    GAUSSIAN = "gaussian"
    LORENTZIAN = "lorentzian"
    RECTANGULAR = "rectangular"
    MULTI_DELTA = "multidelta"
    DOUBLE_GAUSSIAN = "double-gaussian"
    DOUBLE_LORENTZIAN = "double-lorentzian"
    TABULATED = "tabulated"

    @property
    def is_gaussian_type(self):
        return self in (Kind.GAUSSIAN, Kind.DOUBLE_GAUSSIAN)

    @property
    def is_lorentzian_type(self):
        return self in (Kind.LORENTZIAN, Kind.DOUBLE_LORENTZIAN)

    @property
    def is_double(self):
        return self in (Kind.DOUBLE_GAUSSIAN, Kind.DOUBLE_LORENTZIAN)


_WIDTH_KINDS = {
    Kind.GAUSSIAN,
    Kind.LORENTZIAN,
    Kind.RECTANGULAR,
    Kind.DOUBLE_GAUSSIAN,
    Kind.DOUBLE_LORENTZIAN,
}


@dataclass(frozen=True)
class SpectrumEnvelope:
    """A normalized frequency density ``F(nu)``.

    Attributes
    ----------
    kind : Kind
    width : float or None
        Width parameter in rad/s: 1/e half-width (Gaussian), HWHM
        (Lorentzian) or half-width (rectangular).  ``None`` for kinds that
        have no width.
    center : float
        Detuning of the (first) peak.
    separation : float or None
        Spacing of the second peak for the double families; the second
        peak sits at ``center + separation``.
    peaks : tuple of (detuning, weight)
        Multi-delta lines.
    power : {1, 2}
        2 selects the squared single-photon shape used for PDC marginals.
    samples : tuple of (detuning, density)
        Tabulated spectra only, linearly interpolated and zero outside.
    reference : float
        Absolute frequency the detunings are measured from.
    """

    kind: Kind
    width: float | None = None
    center: float = 0.0
    separation: float | None = None
    peaks: tuple[tuple[float, float], ...] = ()
    power: int = 1
    samples: tuple[tuple[float, float], ...] = ()
    reference: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.power not in (1, 2):
            raise ValueError(f"power must be 1 or 2, got {self.power!r}")
        if self.kind in _WIDTH_KINDS:
            if self.width is None or not (self.width > 0 and math.isfinite(self.width)):
                raise ValueError(f"{self.kind.value} spectrum needs a finite width > 0")
        if self.kind.is_double:
            if self.separation is None or not math.isfinite(self.separation):
                raise ValueError("double spectra need a finite separation")
        if self.kind is Kind.MULTI_DELTA:
            if not self.peaks:
                raise ValueError("multi-delta spectrum needs at least one peak")
            weights = np.array([w for _, w in self.peaks])
            if np.any(weights < 0):
                raise ValueError("multi-delta weights must be non-negative")
            if abs(weights.sum() - 1.0) > 1e-12:
                raise ValueError(f"multi-delta weights sum to {weights.sum()!r}, not 1")
        if self.kind is Kind.TABULATED:
            _check_samples(np.array(self.samples, dtype=float).reshape(-1, 2))

    @property
    def centers(self):
        """Peak detunings of the envelope."""
        if self.kind is Kind.MULTI_DELTA:
            return tuple(nu for nu, _ in self.peaks)
        if self.kind.is_double:
            return (self.center, self.center + self.separation)
        return (self.center,)

    @property
    def has_density(self):
        return self.kind not in (Kind.WHITE, Kind.MULTI_DELTA)

    def tabulated_arrays(self):
        """Return ``(detuning, density)`` arrays of a tabulated envelope."""
        arr = np.array(self.samples, dtype=float).reshape(-1, 2)
        return arr[:, 0], arr[:, 1]


@dataclass(frozen=True)
class PdcSpectralModel:
    """Two-photon PDC spectrum reduced to the density of photon 1.

    The pump is monochromatic, so ``omega_2 = omega_p - omega_1`` and the
    two-photon correlation only sees the one-dimensional ``marginal``,
    expressed as detuning from ``omega_p / 2``.
    """

    pump_frequency: float
    marginal: SpectrumEnvelope


# -- constructors -----------------------------------------------------------

def white(reference=0.0):
    return SpectrumEnvelope(Kind.WHITE, reference=reference)


def gaussian(width, center=0.0, power=1, reference=0.0):
    return SpectrumEnvelope(Kind.GAUSSIAN, width=float(width), center=float(center),
                            power=power, reference=reference)


def lorentzian(width, center=0.0, power=1, reference=0.0):
    return SpectrumEnvelope(Kind.LORENTZIAN, width=float(width), center=float(center),
                            power=power, reference=reference)


def rectangular(width, center=0.0, reference=0.0):
    # a squared box is the same box, so the PDC marginal stays at power 1
    return SpectrumEnvelope(Kind.RECTANGULAR, width=float(width), center=float(center),
                            reference=reference)


def multi_delta(detunings, weights=None, reference=0.0):
    """Comb of delta lines; equal weights ``1/N`` unless given."""
    detunings = [float(nu) for nu in detunings]
    if weights is None:
        weights = [1.0 / len(detunings)] * len(detunings) if detunings else []
    if len(weights) != len(detunings):
        raise ValueError("one weight per detuning is required")
    peaks = tuple(zip(detunings, (float(w) for w in weights)))
    return SpectrumEnvelope(Kind.MULTI_DELTA, peaks=peaks, reference=reference)


def double_gaussian(width, separation=None, center=0.0, power=1, reference=0.0):
    if separation is None:
        separation = DOUBLE_GAUSSIAN_SEPARATION * width
    return SpectrumEnvelope(Kind.DOUBLE_GAUSSIAN, width=float(width), center=float(center),
                            separation=float(separation), power=power, reference=reference)


def double_lorentzian(width, separation=None, center=0.0, power=1, reference=0.0):
    if separation is None:
        separation = DOUBLE_LORENTZIAN_SEPARATION * width
    return SpectrumEnvelope(Kind.DOUBLE_LORENTZIAN, width=float(width), center=float(center),
                            separation=float(separation), power=power, reference=reference)


def _check_samples(arr):
    if arr.ndim != 2 or arr.shape[0] < 2:
        raise EmptyOrUnsorted("at least two (detuning, density) samples are required")
    if not np.all(np.isfinite(arr)):
        raise EmptyOrUnsorted("samples must be finite")
    if np.any(np.diff(arr[:, 0]) <= 0):
        raise EmptyOrUnsorted("detunings must be strictly increasing")
    if np.any(arr[:, 1] < 0):
        raise EmptyOrUnsorted("densities must be non-negative")


def normalize_tabulated(samples, reference=0.0):
    """Build a tabulated envelope whose trapezoid integral is one.

    Parameters
    ----------
    samples : array_like, shape (n, 2)
        ``(detuning [rad/s], density [s/rad])`` rows, strictly increasing
        in detuning.  The density scale is arbitrary.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[-1] != 2:
        raise EmptyOrUnsorted("samples must be (detuning, density) pairs")
    _check_samples(arr)
    area = np.trapezoid(arr[:, 1], arr[:, 0])
    if not area > 0:
        raise AllZero("tabulated spectrum has zero total weight")
    density = arr[:, 1] / area
    rows = tuple(zip(arr[:, 0].tolist(), density.tolist()))
    return SpectrumEnvelope(Kind.TABULATED, samples=rows, reference=reference)


# -- densities --------------------------------------------------------------

def _peak_shape(kind, power, x, width):
    """Single-peak density at reduced offset ``x`` (complex-safe)."""
    if kind.is_gaussian_type:
        if power == 1:
            return np.exp(-x * x) / (width * _SQRT_PI)
        return _SQRT_2_OVER_PI / width * np.exp(-2.0 * x * x)
    if kind.is_lorentzian_type:
        q = 1.0 + x * x
        if power == 1:
            return 1.0 / (math.pi * width * q)
        return 2.0 / (math.pi * width * q * q)
    raise UnsupportedKind(kind)


def _density(spec, nu):
    """Density at detuning ``nu``.

    Gaussian and Lorentzian families are written as entire/rational
    functions so the same code evaluates them at complex detunings, which
    the contour-rotated tail integrals rely on.
    """
    kind = spec.kind
    if kind is Kind.RECTANGULAR:
        x = (np.asarray(nu, dtype=float) - spec.center) / spec.width
        return np.where(np.abs(x) <= 1.0, 0.5 / spec.width, 0.0)
    if kind is Kind.TABULATED:
        grid, dens = spec.tabulated_arrays()
        return np.interp(np.asarray(nu, dtype=float), grid, dens, left=0.0, right=0.0)
    if kind in (Kind.GAUSSIAN, Kind.LORENTZIAN):
        return _peak_shape(kind, spec.power, (nu - spec.center) / spec.width, spec.width)
    if kind.is_double:
        c1, c2 = spec.centers
        w = spec.width
        return 0.5 * (_peak_shape(kind, spec.power, (nu - c1) / w, w)
                      + _peak_shape(kind, spec.power, (nu - c2) / w, w))
    raise KindHasNoDensity(f"{kind.value} spectrum has no pointwise density")


def evaluate(spec, nu):
    """Spectral density ``F`` at detuning ``nu`` (rad/s), in s/rad.

    Raises
    ------
    KindHasNoDensity
        For white and multi-delta envelopes.
    """
    if not spec.has_density:
        raise KindHasNoDensity(f"{spec.kind.value} spectrum has no pointwise density")
    nu = np.asarray(nu, dtype=float)
    out = np.asarray(_density(spec, nu), dtype=float)
    return float(out) if out.ndim == 0 else out


# -- PDC marginals ------------------------------------------------------------

_PDC_KINDS = (
    Kind.GAUSSIAN,
    Kind.LORENTZIAN,
    Kind.RECTANGULAR,
    Kind.DOUBLE_GAUSSIAN,
    Kind.DOUBLE_LORENTZIAN,
)


def pdc_marginal(kind, pump_frequency, width, separation=None):
    """Effective density of photon 1 for a filtered, narrow-pump PDC source.

    The filter transmission ``|h|^2`` takes the single-photon shape, so the
    marginal in ``omega_1`` is ``|h(omega_1)|^2 |h(omega_p - omega_1)|^2``
    renormalized: a squared Gaussian / Lorentzian centered at
    ``omega_p / 2``, a plain box for the rectangular filter, and for the
    double families two squared peaks placed symmetrically about
    ``omega_p / 2`` at ``-separation/2`` and ``+separation/2``.
    """
    try:
        kind = Kind(kind)
    except ValueError:
        raise UnsupportedKind(f"unknown spectrum kind {kind!r}") from None
    if kind not in _PDC_KINDS:
        raise UnsupportedKind(f"no PDC marginal for {kind.value} spectra")
    if not width > 0:
        raise ValueError("width must be > 0")
    ref = 0.5 * float(pump_frequency)
    if kind is Kind.GAUSSIAN:
        marginal = gaussian(width, power=2, reference=ref)
    elif kind is Kind.LORENTZIAN:
        marginal = lorentzian(width, power=2, reference=ref)
    elif kind is Kind.RECTANGULAR:
        marginal = rectangular(width, reference=ref)
    else:
        if separation is None:
            mult = (DOUBLE_GAUSSIAN_SEPARATION if kind is Kind.DOUBLE_GAUSSIAN
                    else DOUBLE_LORENTZIAN_SEPARATION)
            separation = mult * width
        build = double_gaussian if kind is Kind.DOUBLE_GAUSSIAN else double_lorentzian
        marginal = build(width, separation=separation, center=-0.5 * separation,
                         power=2, reference=ref)
    return PdcSpectralModel(float(pump_frequency), marginal)


def centroid(spec):
    """Mean detuning of the envelope (0 for white noise).

    Symmetric envelopes have a real correlation once this carrier is
    removed, which is what zero-crossing detection relies on.
    """
    spec = as_envelope(spec)
    if spec.kind is Kind.WHITE:
        return 0.0
    if spec.kind is Kind.MULTI_DELTA:
        return math.fsum(nu * w for nu, w in spec.peaks)
    if spec.kind is Kind.TABULATED:
        grid, dens = spec.tabulated_arrays()
        return float(np.trapezoid(grid * dens, grid) / np.trapezoid(dens, grid))
    return 0.5 * (spec.centers[0] + spec.centers[-1])


def as_envelope(spectrum):
    """Accept either an envelope or a PDC model and return the envelope."""
    if isinstance(spectrum, PdcSpectralModel):
        return spectrum.marginal
    return spectrum
