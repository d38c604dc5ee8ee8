"""Command-line frontend: ``dephasim sweep ...`` and ``dephasim figure ...``.

Every run is described by a :class:`RunConfig`.  Its canonical JSON form is
written into each output file, and :meth:`RunConfig.from_json` reads it
back, so any output can be regenerated from its own ``# config:`` line.

Exit codes: 0 success, 2 usage error, 3 unreadable input file, 4 output
error, 5 oracle mismatch or non-converged quadrature.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import spectra
from .correlation import DEFAULT_K, DEFAULT_TOL, DEFAULT_WIDTH, TOL_RANGE, ChannelParams
from .errors import DephasimError, InvalidConfig, NotConverged, OracleMismatch
from .states import PairAmplitudes, SingleAmplitudes
from .sweep import DEFAULT_PUMP, FIGURES, SweepConfig, figure_configs, run_sweep

__all__ = [
    "RunConfig",
    "UsageError",
    "parse_cli",
    "build_sweep_config",
    "read_tabulated",
    "format_result",
    "write_output",
    "output_paths",
    "read_config_line",
    "main",
]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_OUTPUT = 4
EXIT_NUMERIC = 5

TOL_ENV = "DEPHASIM_TOL"
TABULATED_HEADER = ("detuning_rad_per_s", "density_s_per_rad")
CSV_HEADER = "l_m,re_F,im_F,abs_F,S_L,C"
SPECTRUM_CHOICES = ("white", "gaussian", "lorentzian", "rectangular", "multidelta",
                    "double-gaussian", "double-lorentzian")
# separation (in widths) used when --sep is not given
DEFAULT_SEPARATION = {"double-gaussian": 5.0, "double-lorentzian": 30.0, "multidelta": 5.0}


class UsageError(DephasimError, ValueError):
    """Invalid command line; maps to exit code 2."""


class InputFileError(DephasimError, OSError):
    """Tabulated spectrum missing or malformed; maps to exit code 3."""


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run depends on.

    ``figure`` is set for ``figure`` runs and ``spectrum`` for ``sweep``
    runs, never both.  ``alpha2`` (single photon) and ``a2`` (pair) are
    stored resolved, so exactly one of them is set on a sweep.
    """

    command: str
    figure: str | None = None
    spectrum: str | None = None
    k: float = DEFAULT_K
    sep: float | None = None
    delta_n: float | None = None
    width: float | None = None
    alpha2: float | None = None
    a2: float | None = None
    pair: bool = False
    lmax: float = 0.02
    points: int = 2001
    mode: str | None = None
    out: str | None = None
    format: str = "csv"
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.command not in ("sweep", "figure"):
            raise UsageError(f"unknown command {self.command!r}")
        if (self.figure is None) == (self.spectrum is None):
            raise UsageError("give exactly one of a sweep spectrum or a figure id")
        if self.figure is not None and self.figure not in FIGURES:
            raise UsageError(f"unknown figure {self.figure!r}; choose from {', '.join(FIGURES)}")
        if self.spectrum is not None:
            name = self.spectrum
            if not (name in SPECTRUM_CHOICES or (name.startswith("tabulated:") and len(name) > 10)):
                raise UsageError(f"unknown spectrum {name!r}")
        for name in ("k", "lmax"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise UsageError(f"--{name} must be finite and > 0, got {value!r}")
        for name in ("sep", "delta_n", "width"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0):
                raise UsageError(f"--{name.replace('_', '-')} must be finite and > 0, got {value!r}")
        for name in ("alpha2", "a2"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise UsageError(f"--{name} must lie in [0, 1], got {value!r}")
        if self.points < 2:
            raise UsageError(f"--points must be >= 2, got {self.points!r}")
        if self.mode not in (None, "closed", "quad", "both"):
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        lo, hi = TOL_RANGE
        if not lo <= self.tol <= hi:
            raise UsageError(f"{TOL_ENV} must lie in [{lo:g}, {hi:g}], got {self.tol!r}")
        if self.command == "sweep":
            if (self.alpha2 is None) == (self.a2 is None) or self.pair != (self.a2 is not None):
                raise UsageError("a sweep needs --alpha2 (single photon) or --a2/--pair")
            if self.is_tabulated and self.mode in ("closed", "both"):
                raise UsageError("tabulated spectra only support --mode quad")
            if self.spectrum == "white" and self.mode in ("quad", "both"):
                raise UsageError("the white spectrum only supports --mode closed")

    @property
    def is_tabulated(self):
        return self.spectrum is not None and self.spectrum.startswith("tabulated:")

    @property
    def oracle(self):
        """True when closed form and quadrature are cross-checked."""
        return self.mode == "both"

    def to_json(self):
        """Canonical serialization: sorted keys, no whitespace, repr floats."""
        return json.dumps(dataclasses.asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)


def _integer(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None


def _make_parser():
    parser = argparse.ArgumentParser(
        prog="dephasim",
        description="Decoherence of photon polarization in a birefringent crystal.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--k", type=float, default=DEFAULT_K,
                       help="dn * width / c in 1/m (default 500)")
        p.add_argument("--delta-n", type=float, default=None,
                       help="birefringence; overrides --k together with --width")
        p.add_argument("--width", type=float, default=None,
                       help=f"spectral width in rad/s (default {DEFAULT_WIDTH:g})")
        p.add_argument("--lmax", type=float, default=0.02, help="largest crystal length in m")
        p.add_argument("--points", type=_integer, default=2001, help="grid points")
        p.add_argument("--mode", choices=("closed", "quad", "both"), default=None,
                       help="correlation route; 'both' cross-checks the two")
        p.add_argument("--out", default=None, help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p_sweep = sub.add_parser("sweep", help="scan one spectrum and state over crystal length")
    p_sweep.add_argument("--spectrum", default="gaussian",
                         help=f"one of {', '.join(SPECTRUM_CHOICES)} or tabulated:<path>")
    p_sweep.add_argument("--sep", type=float, default=None,
                         help="peak separation in widths (double and multidelta spectra)")
    amps = p_sweep.add_mutually_exclusive_group()
    amps.add_argument("--alpha2", type=float, default=None,
                      help="|alpha|^2 of the single photon (default 0.5)")
    amps.add_argument("--a2", type=float, default=None,
                      help="|a|^2 of the pair a|HH> + b|VV> (implies --pair)")
    p_sweep.add_argument("--pair", action="store_true", help="sweep the photon pair")
    add_common(p_sweep)

    p_fig = sub.add_parser("figure", help="reproduce the curves of one figure")
    p_fig.add_argument("figure", choices=tuple(FIGURES))
    add_common(p_fig)
    return parser


def _tol_from_env(environ):
    text = environ.get(TOL_ENV)
    if text is None:
        return DEFAULT_TOL
    try:
        tol = float(text)
    except ValueError:
        raise UsageError(f"{TOL_ENV} is not a number: {text!r}") from None
    lo, hi = TOL_RANGE
    if not lo <= tol <= hi:
        raise UsageError(f"{TOL_ENV} must lie in [{lo:g}, {hi:g}], got {text!r}")
    return tol


def parse_cli(argv=None, environ=None):
    """Turn command-line arguments into a validated :class:`RunConfig`.

    Raises
    ------
    SystemExit
        With code 2 for unknown flags or malformed values (from argparse).
    UsageError
        For values that parse but are out of range.
    """
    environ = os.environ if environ is None else environ
    ns = _make_parser().parse_args(argv)
    options = dict(
        command=ns.command, k=ns.k, delta_n=ns.delta_n, width=ns.width, lmax=ns.lmax,
        points=ns.points, mode=ns.mode, out=ns.out, format=ns.format,
        tol=_tol_from_env(environ))
    if ns.command == "figure":
        options["figure"] = ns.figure
    else:
        pair = ns.pair or ns.a2 is not None
        if pair and ns.alpha2 is not None:
            raise UsageError("--alpha2 describes a single photon; use --a2 with --pair")
        options.update(
            spectrum=ns.spectrum, sep=ns.sep, pair=pair,
            alpha2=None if pair else (0.5 if ns.alpha2 is None else ns.alpha2),
            a2=(0.5 if ns.a2 is None else ns.a2) if pair else None)
    return RunConfig(**options)


def read_tabulated(path, reference=0.0):
    """Load a two-column CSV (detuning in rad/s, density in s/rad).

    The header must be ``detuning_rad_per_s,density_s_per_rad``; lines
    starting with ``#`` are skipped.  The density is renormalized.
    """
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if not rows or tuple(c.strip() for c in rows[0]) != TABULATED_HEADER:
        raise InputFileError(f"{path}: expected header {','.join(TABULATED_HEADER)}")
    try:
        samples = np.array([[float(c) for c in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise InputFileError(f"{path}: {exc}") from exc
    if samples.ndim != 2 or samples.shape[1] != 2:
        raise InputFileError(f"{path}: expected two columns per row")
    try:
        return spectra.normalize_tabulated(samples, reference)
    except ValueError as exc:
        raise InputFileError(f"{path}: {exc}") from exc


def _channel(rc):
    width = DEFAULT_WIDTH if rc.width is None else rc.width
    if rc.delta_n is not None:
        return ChannelParams(rc.delta_n, width)
    return ChannelParams.from_k(rc.k, width)


def _spectrum(rc, width):
    name = rc.spectrum
    if rc.is_tabulated:
        return read_tabulated(name[len("tabulated:"):])
    sep = DEFAULT_SEPARATION.get(name, 0.0) if rc.sep is None else rc.sep
    if rc.pair and name in ("gaussian", "lorentzian", "rectangular", "double-gaussian",
                            "double-lorentzian"):
        separation = sep * width if name.startswith("double") else None
        return spectra.pdc_marginal(name, DEFAULT_PUMP, width, separation=separation)
    if name == "white":
        return spectra.white()
    if name == "gaussian":
        return spectra.gaussian(width)
    if name == "lorentzian":
        return spectra.lorentzian(width)
    if name == "rectangular":
        return spectra.rectangular(width)
    if name == "multidelta":
        return spectra.multi_delta([0.0, sep * width])
    if name == "double-gaussian":
        return spectra.double_gaussian(width, sep * width)
    return spectra.double_lorentzian(width, sep * width)


def build_sweep_config(rc):
    """Map a ``sweep`` RunConfig to the library's :class:`SweepConfig`."""
    channel = _channel(rc)
    spectrum = _spectrum(rc, channel.width)
    if rc.pair:
        state = PairAmplitudes.from_population(rc.a2)
    else:
        state = SingleAmplitudes.from_population(rc.alpha2)
    return SweepConfig(spectrum=spectrum, channel=channel, state=state, l_stop=rc.lmax,
                       points=rc.points, mode=rc.mode, tol=rc.tol)


def _num(x):
    return repr(float(x))


def format_result(result, rc, curve=None):
    """Render one sweep as CSV or JSON text (deterministic)."""
    events = [(ev.kind.value, float(ev.length), float(ev.amplitude)) for ev in result.events]
    config = rc.to_json()
    if rc.format == "json":
        rows = [
            {"l_m": l, "re_F": F.real, "im_F": F.imag, "abs_F": abs(F), "S_L": s, "C": c}
            for l, F, s, c in result.rows()
        ]
        doc = {
            "rows": rows,
            "events": [{"kind": k, "l_m": l, "amplitude": a} for k, l, a in events],
            "config": json.loads(config),
            "curve": curve,
            "thresholds": result.thresholds,
        }
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for l, F, s, c in result.rows():
        cell = "" if c is None else _num(c)
        buf.write(f"{_num(l)},{_num(F.real)},{_num(F.imag)},{_num(abs(F))},{_num(s)},{cell}\n")
    buf.write("# events: kind,l_m,amplitude\n")
    for kind, l, a in events:
        buf.write(f"# {kind},{_num(l)},{_num(a)}\n")
    th = result.thresholds
    buf.write(f"# thresholds: zero={_num(th['zero'])},"
              f"revival_prominence={_num(th['revival_prominence'])}\n")
    if curve is not None:
        buf.write(f"# curve: {curve}\n")
    buf.write(f"# config: {config}\n")
    return buf.getvalue()


def read_config_line(text):
    """Recover the RunConfig from the text of a CSV output."""
    for line in text.splitlines():
        if line.startswith("# config: "):
            return RunConfig.from_json(line[len("# config: "):])
    raise ValueError("no '# config:' line found")


def output_paths(rc, labels=None):
    """Destination of each curve; ``None`` means standard output.

    Figure runs write one file per curve, suffixing the stem with the
    curve label (``fig3b.csv`` -> ``fig3b_gaussian.csv``).
    """
    out = rc.out
    if labels is None:
        return {None: None if out in (None, "-") else Path(out)}
    if out == "-":
        raise UsageError("figure runs write one file per curve; --out cannot be '-'")
    base = Path(out if out is not None else f"{rc.figure}.{rc.format}")
    return {label: base.with_name(f"{base.stem}_{label}{base.suffix}") for label in labels}


def write_output(result, rc, path=None, curve=None, stream=None):
    """Write one rendered result to ``path`` (or ``stream`` when path is None)."""
    text = format_result(result, rc, curve)
    if path is None:
        (stream or sys.stdout).write(text)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def _execute(rc):
    if rc.command == "figure":
        configs = figure_configs(rc.figure, k=rc.k, width=DEFAULT_WIDTH if rc.width is None else rc.width,
                                 l_stop=rc.lmax, points=rc.points, mode=rc.mode, tol=rc.tol)
        if rc.delta_n is not None:
            channel = _channel(rc)
            configs = {label: dataclasses.replace(cfg, channel=channel)
                       for label, cfg in configs.items()}
        paths = output_paths(rc, list(configs))
        results = {label: run_sweep(cfg) for label, cfg in configs.items()}
        return [(results[label], paths[label], label) for label in configs]
    cfg = build_sweep_config(rc)
    return [(run_sweep(cfg), output_paths(rc)[None], None)]


def main(argv=None):
    """Entry point of the ``dephasim`` console script; returns the exit code."""
    try:
        rc = parse_cli(argv)
        outputs = _execute(rc)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, InvalidConfig) as exc:
        print(f"dephasim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputFileError as exc:
        print(f"dephasim: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OracleMismatch, NotConverged) as exc:
        print(f"dephasim: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    try:
        for result, path, curve in outputs:
            write_output(result, rc, path, curve)
    except OSError as exc:
        print(f"dephasim: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK
