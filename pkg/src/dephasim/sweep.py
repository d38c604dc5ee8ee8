"""Crystal-length scans and detection of decoherence events.

A sweep evaluates the correlation on a uniform grid of lengths, builds the
output states and reports, per grid point, the correlation, the normalized
linear entropy and (for photon pairs) the concurrence.  Three kinds of
events are extracted from the curves:

``Revival``
    interior local minimum of the linear entropy with prominence >= 1e-6;
``CoherenceZero``
    the correlation vanishes: ``|F| < 1e-12`` on a grid point, or the
    carrier-free correlation changes sign between two grid points (the
    crossing is located by linear interpolation);
``Disentangled``
    the same test applied to the concurrence of pair sweeps.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from .correlation import DEFAULT_K, DEFAULT_TOL, DEFAULT_WIDTH, ChannelParams, closed_form, quadrature
from .errors import InvalidConfig, OracleMismatch
from .measures import concurrence, linear_entropy_2, linear_entropy_4
from .spectra import Kind, PdcSpectralModel, SpectrumEnvelope, as_envelope, centroid, double_gaussian, \
    double_lorentzian, pdc_marginal
from .states import PairAmplitudes, SingleAmplitudes, evolve_pair, evolve_single

__all__ = [
    "CorrelationMode",
    "EventKind",
    "Event",
    "SweepConfig",
    "SweepResult",
    "run_sweep",
    "detect_events",
    "reproduce_figure",
    "FIGURES",
    "ZERO_THRESHOLD",
    "REVIVAL_PROMINENCE",
    "ORACLE_TOL",
]

ZERO_THRESHOLD = 1e-12
REVIVAL_PROMINENCE = 1e-6
ORACLE_TOL = 1e-7

# pump of the PDC figures, about 400 nm; only the unused carrier phase depends on it
DEFAULT_PUMP = 4.7e15


class CorrelationMode(str, enum.Enum):
    CLOSED = "closed"
    QUAD = "quad"
    BOTH = "both"


class EventKind(str, enum.Enum):
    COHERENCE_ZERO = "CoherenceZero"
    REVIVAL = "Revival"
    DISENTANGLED = "Disentangled"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    length: float
    amplitude: float


@dataclass(frozen=True)
class SweepConfig:
    """What to scan.

    ``mode=None`` picks the closed form for analytic spectra and quadrature
    for tabulated ones.
    """

    spectrum: SpectrumEnvelope | PdcSpectralModel
    channel: ChannelParams
    state: SingleAmplitudes | PairAmplitudes
    l_start: float = 0.0
    l_stop: float = 0.02
    points: int = 2001
    mode: CorrelationMode | None = None
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.mode is not None:
            object.__setattr__(self, "mode", CorrelationMode(self.mode))
        if not (math.isfinite(self.l_start) and self.l_start >= 0):
            raise InvalidConfig(f"l_start must be >= 0, got {self.l_start!r}")
        if not (math.isfinite(self.l_stop) and self.l_stop > self.l_start):
            raise InvalidConfig("l_stop must exceed l_start")
        if int(self.points) != self.points or self.points < 2:
            raise InvalidConfig(f"points must be an integer >= 2, got {self.points!r}")
        if not isinstance(self.state, (SingleAmplitudes, PairAmplitudes)):
            raise InvalidConfig("state must be SingleAmplitudes or PairAmplitudes")
        kind = as_envelope(self.spectrum).kind
        mode = self.resolved_mode
        if kind is Kind.TABULATED and mode is not CorrelationMode.QUAD:
            raise InvalidConfig("tabulated spectra only support quadrature")
        if kind is Kind.WHITE and mode is not CorrelationMode.CLOSED:
            raise InvalidConfig("the white spectrum has no quadrature route")

    @property
    def resolved_mode(self):
        if self.mode is not None:
            return self.mode
        if as_envelope(self.spectrum).kind is Kind.TABULATED:
            return CorrelationMode.QUAD
        return CorrelationMode.CLOSED

    @property
    def is_pair(self):
        return isinstance(self.state, PairAmplitudes)

    @property
    def lengths(self):
        return np.linspace(self.l_start, self.l_stop, int(self.points))


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Columns of a sweep plus the detected events.

    ``concurrence`` is ``None`` for single-photon sweeps.  ``oracle_error``
    is the largest closed-form/quadrature gap of a ``both`` run.
    """

    length: np.ndarray
    correlation: np.ndarray
    entropy: np.ndarray
    concurrence: np.ndarray | None
    events: tuple[Event, ...]
    config: SweepConfig
    oracle_error: float | None = None
    thresholds: dict = field(default_factory=lambda: {
        "zero": ZERO_THRESHOLD,
        "revival_prominence": REVIVAL_PROMINENCE,
    })

    def rows(self):
        """Yield ``(l, F, S_L, C)`` tuples in ascending ``l``."""
        for i, l in enumerate(self.length):
            c = None if self.concurrence is None else float(self.concurrence[i])
            yield float(l), complex(self.correlation[i]), float(self.entropy[i]), c

    def events_of(self, kind):
        kind = EventKind(kind)
        return [ev for ev in self.events if ev.kind is kind]


def _correlations(cfg, lengths):
    spec, ch = cfg.spectrum, cfg.channel
    mode = cfg.resolved_mode
    if mode is CorrelationMode.CLOSED:
        return closed_form(spec, ch, lengths), None
    quad = np.array([quadrature(spec, ch, l, tol=cfg.tol) for l in lengths])
    if mode is CorrelationMode.QUAD:
        return quad, None
    closed = closed_form(spec, ch, lengths)
    gap = np.abs(closed - quad)
    worst = int(np.argmax(gap))
    if gap[worst] > ORACLE_TOL:
        raise OracleMismatch(
            f"closed form and quadrature differ by {gap[worst]:.3g} at l = {lengths[worst]!r} m",
            length=float(lengths[worst]), difference=float(gap[worst]))
    return closed, float(gap[worst])


def run_sweep(cfg):
    """Evaluate the configured scan.

    Raises
    ------
    OracleMismatch
        In ``both`` mode, when the two routes differ by more than 1e-7.
    NotConverged
        Propagated from the quadrature.
    """
    lengths = cfg.lengths
    F, oracle_error = _correlations(cfg, lengths)
    if cfg.is_pair:
        rho = evolve_pair(cfg.state, F)
        entropy = np.atleast_1d(linear_entropy_4(rho))
        conc = np.atleast_1d(concurrence(rho))
    else:
        rho = evolve_single(cfg.state, F)
        entropy = np.atleast_1d(linear_entropy_2(rho))
        conc = None
    carrier = np.exp(-1j * centroid(cfg.spectrum) * cfg.channel.delay(lengths))
    events = detect_events(lengths, F * carrier, entropy, conc)
    return SweepResult(lengths, F, entropy, conc, tuple(events), cfg, oracle_error)


def _zero_events(kind, lengths, values, amplitude):
    """Zeros of ``amplitude`` (|values| scaled) on or between grid points.

    ``values`` is the carrier-free correlation; a zero between two grid
    points shows up as an angle of more than 90 degrees between neighbours.
    """
    below = amplitude < ZERO_THRESHOLD
    scale = np.divide(amplitude, np.abs(values), out=np.zeros_like(amplitude),
                      where=np.abs(values) > 0)
    events = []
    for i in range(len(lengths)):
        if below[i]:
            if i == 0 or not below[i - 1]:
                events.append(Event(kind, float(lengths[i]), float(amplitude[i])))
            continue
        if i + 1 < len(lengths) and not below[i + 1]:
            f0, f1 = values[i], values[i + 1]
            if (f0 * np.conj(f1)).real < 0:
                direction = f0 / abs(f0)
                s0 = abs(f0)
                s1 = (f1 * np.conj(direction)).real
                frac = s0 / (s0 - s1)
                where = lengths[i] + frac * (lengths[i + 1] - lengths[i])
                residual = abs(f0 + frac * (f1 - f0)) * scale[i]
                events.append(Event(kind, float(where), float(residual)))
    return events


def detect_events(lengths, correlation, entropy, conc=None):
    """Revivals and zeros along a sweep, sorted by length.

    ``correlation`` should have the spectral carrier removed so that the
    correlation of a symmetric spectrum is real and its zeros are sign
    changes.
    """
    lengths = np.asarray(lengths, dtype=float)
    correlation = np.asarray(correlation, dtype=complex)
    entropy = np.asarray(entropy, dtype=float)
    events = []
    minima, _ = find_peaks(-entropy, prominence=REVIVAL_PROMINENCE)
    events.extend(Event(EventKind.REVIVAL, float(lengths[i]), float(entropy[i])) for i in minima)
    events.extend(_zero_events(EventKind.COHERENCE_ZERO, lengths, correlation, np.abs(correlation)))
    if conc is not None:
        events.extend(_zero_events(EventKind.DISENTANGLED, lengths, correlation,
                                   np.asarray(conc, dtype=float)))
    order = {EventKind.COHERENCE_ZERO: 0, EventKind.DISENTANGLED: 1, EventKind.REVIVAL: 2}
    events.sort(key=lambda ev: (ev.length, order[ev.kind]))
    return events


# -- figures ------------------------------------------------------------------

FIGURES = {
    "fig1": "S_L",
    "fig2": "S_L",
    "fig3a": "S_L",
    "fig3b": "C",
}

FIGURE_POPULATIONS = (0.1, 0.5, 0.8)
PDC_CURVES = ("gaussian", "lorentzian", "rectangular", "double_gaussian", "double_lorentzian")


def figure_configs(fig_id, k=DEFAULT_K, width=DEFAULT_WIDTH, l_stop=0.02, points=2001,
                   mode=None, tol=DEFAULT_TOL):
    """Sweep configurations behind one figure, keyed by curve label."""
    if fig_id not in FIGURES:
        raise InvalidConfig(f"unknown figure {fig_id!r}; choose from {sorted(FIGURES)}")
    channel = ChannelParams.from_k(k, width)
    common = dict(channel=channel, l_stop=l_stop, points=points, mode=mode, tol=tol)
    if fig_id in ("fig1", "fig2"):
        build = double_gaussian if fig_id == "fig1" else double_lorentzian
        spectrum = build(width)
        return {
            f"alpha2_{p}": SweepConfig(spectrum=spectrum,
                                       state=SingleAmplitudes.from_population(p), **common)
            for p in FIGURE_POPULATIONS
        }
    state = PairAmplitudes.from_population(0.5)
    return {
        label: SweepConfig(spectrum=pdc_marginal(label.replace("_", "-"), DEFAULT_PUMP, width),
                           state=state, **common)
        for label in PDC_CURVES
    }


def reproduce_figure(fig_id, **kwargs):
    """Run every curve of ``fig1``, ``fig2``, ``fig3a`` or ``fig3b``.

    Figures 1 and 2 scan single photons with double-Gaussian and
    double-Lorentzian spectra at ``|alpha|^2`` of 0.1, 0.5 and 0.8; figures 3a
    and 3b scan the pair ``(|HH> + |VV>)/sqrt(2)`` over the five PDC marginals
    (3a plots ``S_L``, 3b plots ``C``; both quantities are in every result).
    All at ``k = 500 /m`` unless overridden.
    """
    return {label: run_sweep(cfg) for label, cfg in figure_configs(fig_id, **kwargs).items()}
