"""Polarization decoherence of photons in a birefringent crystal.

The crystal acts as a phase-damping channel whose strength is set by the
photon's frequency spectrum.  The package computes the correlation
function for analytic and tabulated spectra, the resulting one- and
two-photon density matrices, their linear entropy and concurrence, and
scans all of these over crystal length.
"""

from .correlation import DEFAULT_K, DEFAULT_WIDTH, SPEED_OF_LIGHT, ChannelParams, carrier_phase, \
    closed_form, quadrature
from .errors import (AllZero, DephasimError, EigenNotConverged, EmptyOrUnsorted, InvalidConfig,
                     InvalidDensityMatrix, KindHasNoDensity, NotConverged, NotNormalized,
                     OracleMismatch, TabulatedNeedsQuadrature, UnsupportedKind, WhiteIsSingular)
from .measures import concurrence, concurrence_closed, eigh_jacobi, linear_entropy_2, \
    linear_entropy_4, validate_density_matrix
from .spectra import Kind, PdcSpectralModel, SpectrumEnvelope, double_gaussian, double_lorentzian, \
    evaluate, gaussian, lorentzian, multi_delta, normalize_tabulated, pdc_marginal, rectangular, white
from .states import PairAmplitudes, SingleAmplitudes, dephase, evolve_pair, evolve_single
from .sweep import CorrelationMode, Event, EventKind, SweepConfig, SweepResult, reproduce_figure, \
    run_sweep

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_K", "DEFAULT_WIDTH", "SPEED_OF_LIGHT", "ChannelParams", "carrier_phase",
    "closed_form", "quadrature",
    "AllZero", "DephasimError", "EigenNotConverged", "EmptyOrUnsorted", "InvalidConfig",
    "InvalidDensityMatrix", "KindHasNoDensity", "NotConverged", "NotNormalized",
    "OracleMismatch", "TabulatedNeedsQuadrature", "UnsupportedKind", "WhiteIsSingular",
    "concurrence", "concurrence_closed", "eigh_jacobi", "linear_entropy_2", "linear_entropy_4",
    "validate_density_matrix",
    "Kind", "PdcSpectralModel", "SpectrumEnvelope", "double_gaussian", "double_lorentzian",
    "evaluate", "gaussian", "lorentzian", "multi_delta", "normalize_tabulated", "pdc_marginal",
    "rectangular", "white",
    "PairAmplitudes", "SingleAmplitudes", "dephase", "evolve_pair", "evolve_single",
    "CorrelationMode", "Event", "EventKind", "SweepConfig", "SweepResult", "reproduce_figure",
    "run_sweep",
]
