"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line stating the
measured quantity next to the required tolerance; the lines are repeated in
the pytest terminal summary.  Run this file directly to print the lines
without pytest.
"""

import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

from dephasim import spectra
from dephasim.correlation import ChannelParams, closed_form, quadrature
from dephasim.errors import WhiteIsSingular
from dephasim.measures import concurrence, linear_entropy_2, linear_entropy_4
from dephasim.states import PairAmplitudes, SingleAmplitudes, evolve_pair, evolve_single, population
from dephasim.sweep import EventKind, SweepConfig, reproduce_figure, run_sweep

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = {}

K = 500.0
W = 1e13
CH = ChannelParams.from_k(K, W)
PUMP = 4.7e15


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert ok, line


def test_criterion_1_oracle_equivalence():
    lengths = np.geomspace(1e-5, 1e-1, 64)
    families = {
        "gaussian": spectra.gaussian(W),
        "lorentzian": spectra.lorentzian(W),
        "rectangular": spectra.rectangular(W),
        "multidelta": spectra.multi_delta([0.0, 5.0 * W]),
        "double-gaussian": spectra.double_gaussian(W),
        "double-lorentzian": spectra.double_lorentzian(W),
    }
    for kind in ("gaussian", "lorentzian", "rectangular", "double-gaussian", "double-lorentzian"):
        families[f"pdc-{kind}"] = spectra.pdc_marginal(kind, PUMP, W)
    worst = {}
    for name, spec in families.items():
        closed = closed_form(spec, CH, lengths)
        quad = np.array([quadrature(spec, CH, l) for l in lengths])
        worst[name] = float(np.max(np.abs(closed - quad)))
    # white noise has no density to integrate; its closed form is the exact indicator
    white = closed_form(spectra.white(), CH, np.concatenate([[0.0], lengths]))
    white_ok = white[0] == 1.0 and np.all(white[1:] == 0.0)
    try:
        quadrature(spectra.white(), CH, 1e-3)
        white_ok = False
    except WhiteIsSingular:
        pass
    name = max(worst, key=worst.get)
    ok = max(worst.values()) <= 1e-8 and white_ok
    report(1, ok, f"max |closed - quad| = {worst[name]:.2e} ({name}) over 11 densities x 64 lengths, "
                  f"tol 1e-8; white indicator exact: {white_ok}")


def test_criterion_2_closed_form_regression():
    l_gauss = 1.0 / K
    errs = []
    for p in (0.1, 0.5, 0.8):
        amps = SingleAmplitudes.from_population(p)
        s = linear_entropy_2(evolve_single(amps, closed_form(spectra.gaussian(W), CH, l_gauss)))
        errs.append(abs(s - 4 * p * (1 - p) * (1 - math.exp(-0.5))))
    gauss_err = max(errs)
    l_lor = math.log(2) / K
    lor_err = max(abs(abs(closed_form(spectra.lorentzian(W), CH, l_lor)) - 0.5),
                  abs(abs(quadrature(spectra.lorentzian(W), CH, l_lor)) - 0.5))
    amps = SingleAmplitudes.from_population(0.3)
    s_rect = linear_entropy_2(evolve_single(amps, closed_form(spectra.rectangular(W), CH, math.pi / K)))
    rect_err = abs(s_rect - 4 * 0.3 * 0.7)
    ok = gauss_err <= 1e-10 and lor_err <= 1e-10 and rect_err <= 1e-9
    report(2, ok, f"Gaussian S_L(u=1) err {gauss_err:.1e} (tol 1e-10); Lorentzian |F|(u=ln2) err "
                  f"{lor_err:.1e} (tol 1e-10); rectangular S_L(u=pi) err {rect_err:.1e} (tol 1e-9)")


def test_criterion_3_revival_structure():
    cfg = SweepConfig(spectrum=spectra.double_gaussian(W), channel=CH,
                      state=SingleAmplitudes.from_population(0.5))
    res = run_sweep(cfg)
    step = res.length[1] - res.length[0]
    revivals = res.events_of(EventKind.REVIVAL)
    expected = [(2.513e-3, 0.546), (5.027e-3, 0.921), (7.540e-3, 0.996)]
    parts, ok = [], True
    for l_exp, s_exp in expected:
        near = [ev for ev in revivals if abs(ev.length - l_exp) <= step]
        if near:
            ev = near[0]
            good = abs(ev.amplitude - s_exp) <= 1e-3
            parts.append(f"{l_exp * 1e3:.3f} mm: S_L {ev.amplitude:.4f} vs {s_exp}")
        else:
            good = False
            parts.append(f"{l_exp * 1e3:.3f} mm: no revival within one step")
        ok &= good
    found = ", ".join(f"{ev.length * 1e3:.3f} mm (S_L {ev.amplitude:.4f})" for ev in revivals[:3])
    report(3, ok, "; ".join(parts) + f" [reported revivals: {found}]; tol one grid step, S_L 1e-3")


def test_criterion_4_concurrence_equivalence():
    rng = np.random.default_rng(4)
    n = 10_000
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    G = np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    rho = np.stack([evolve_pair(PairAmplitudes(a, b), g) for (a, b), g in zip(z, G)])
    expected = 2 * np.abs(z[:, 0]) * np.abs(z[:, 1]) * np.abs(G)
    err = float(np.max(np.abs(concurrence(rho) - expected)))
    r = 1 / math.sqrt(2)
    bell_one = concurrence(evolve_pair(PairAmplitudes(r, r), 1.0))
    bell_zero = concurrence(evolve_pair(PairAmplitudes(r, r), 0.0))
    ok = err <= 1e-10 and bell_one == 1.0 and bell_zero == 0.0
    report(4, ok, f"max |C - 2|a||b||G|| = {err:.1e} over 1e4 draws (tol 1e-10); "
                  f"Bell G=1 -> {bell_one!r}, G=0 -> {bell_zero!r}")


def test_criterion_5_conservation_law():
    runs = {}
    for label, res in reproduce_figure("fig3a").items():
        runs[f"bell-{label}"] = res
    for kind in ("rectangular", "double-lorentzian"):
        for a2 in (0.1, 0.7):
            cfg = SweepConfig(spectrum=spectra.pdc_marginal(kind, PUMP, W), channel=CH,
                              state=PairAmplitudes.from_population(a2, phase=1.1))
            runs[f"{kind}-a2={a2}"] = run_sweep(cfg)
    runs["white"] = run_sweep(SweepConfig(spectrum=spectra.white(), channel=CH,
                                          state=PairAmplitudes.from_population(0.3)))
    worst_spread, worst_start = 0.0, 0.0
    for res in runs.values():
        inv = res.concurrence ** 2 + 1.5 * res.entropy
        a, b = res.config.state.a, res.config.state.b
        worst_spread = max(worst_spread, float(np.ptp(inv)))
        worst_start = max(worst_start, abs(inv[0] - 4 * abs(a) ** 2 * abs(b) ** 2))
    ok = worst_spread <= 1e-9 and worst_start <= 1e-9
    report(5, ok, f"max spread of C^2 + 1.5 S_L = {worst_spread:.1e} over {len(runs)} pair sweeps "
                  f"(tol 1e-9); max |value(0) - 4|a|^2|b|^2| = {worst_start:.1e}")


def test_criterion_6_markovian_idealization():
    # dyadic amplitudes make every population exact, so the comparison is exact
    single = SingleAmplitudes(0.5 + 0.5j, 0.5 - 0.5j)
    pair = PairAmplitudes(0.5 - 0.5j, 0.5 + 0.5j)
    s_res = run_sweep(SweepConfig(spectrum=spectra.white(), channel=CH, state=single))
    p_res = run_sweep(SweepConfig(spectrum=spectra.white(), channel=CH, state=pair))
    weight = 4 * population(single.alpha) * population(single.beta)
    c0 = 2 * math.sqrt(population(pair.a) * population(pair.b))
    checks = {
        "S_L(l>0) = 4|a|^2|b|^2": bool(np.all(s_res.entropy[1:] == weight)),
        "S_L(0) = 0": s_res.entropy[0] == 0.0,
        "C(l>0) = 0": bool(np.all(p_res.concurrence[1:] == 0.0)),
        "C(0) = 2|a||b|": p_res.concurrence[0] == c0,
        "pair S_L(0) = 0": p_res.entropy[0] == 0.0,
    }
    ok = all(checks.values())
    report(6, ok, "exact equality on 2001-point white sweeps: "
                  + ", ".join(f"{k}: {v}" for k, v in checks.items()))


def test_criterion_7_multi_delta_periodicity():
    worst, count = 0.0, 0
    for sep in (5.0, 3.7):
        period = 2 * math.pi * CH.speed_of_light / (CH.delta_n * sep * W)
        # grid chosen so that every multiple of the period is a grid point
        cfg = SweepConfig(spectrum=spectra.multi_delta([0.0, sep * W]), channel=CH,
                          state=SingleAmplitudes.from_population(0.5), l_stop=8 * period, points=2001)
        res = run_sweep(cfg)
        idx = np.arange(0, 2001, 250)
        worst = max(worst, float(np.max(res.entropy[idx])))
        count += len(idx)
    ok = worst < 1e-10
    report(7, ok, f"max S_L at {count} period multiples = {worst:.1e} (tol 1e-10)")


def _run_cli(args, cwd):
    env = dict(os.environ)
    env.pop("DEPHASIM_TOL", None)
    proc = subprocess.run([sys.executable, "-m", "dephasim", *args], cwd=cwd, env=env,
                          capture_output=True, text=True)
    return proc.returncode


def test_criterion_8_determinism():
    commands = [
        ["sweep", "--spectrum", "gaussian", "--k", "500", "--alpha2", "0.5", "--out", "a.csv"],
        ["sweep", "--spectrum", "double-lorentzian", "--pair", "--mode", "both", "--points", "201",
         "--format", "json", "--out", "b.json"],
        ["figure", "fig3b", "--out", "c.csv"],
        ["figure", "fig1", "--format", "json", "--out", "d.json"],
    ]
    with tempfile.TemporaryDirectory() as tmp:
        first, second = Path(tmp, "1"), Path(tmp, "2")
        first.mkdir()
        second.mkdir()
        codes = [_run_cli(cmd, folder) for folder in (first, second) for cmd in commands]
        names = sorted(p.name for p in first.iterdir())
        identical = names == sorted(p.name for p in second.iterdir()) and all(
            (first / n).read_bytes() == (second / n).read_bytes() for n in names)
    ok = all(c == 0 for c in codes) and identical and len(names) == 10
    report(8, ok, f"{len(commands)} commands run twice, {len(names)} files, byte-identical: {identical}")


def test_criterion_9_density_matrix_validity():
    rng = np.random.default_rng(9)
    n = 10_000
    z = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    F = np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    herm = trace = 0.0
    min_eig = np.inf
    for build, cls in ((evolve_single, SingleAmplitudes), (evolve_pair, PairAmplitudes)):
        rho = np.stack([build(cls(a, b), f) for (a, b), f in zip(z, F)])
        herm = max(herm, float(np.max(np.abs(rho - np.swapaxes(rho.conj(), -1, -2)))))
        trace = max(trace, float(np.max(np.abs(np.trace(rho, axis1=-2, axis2=-1) - 1))))
        min_eig = min(min_eig, float(np.linalg.eigvalsh(rho).min()))
    ok = herm <= 1e-12 and trace <= 1e-12 and min_eig >= -1e-10
    report(9, ok, f"2 x 1e4 outputs: max Hermiticity defect {herm:.1e} (tol 1e-12), max trace error "
                  f"{trace:.1e} (tol 1e-12), min eigenvalue {min_eig:.1e} (tol -1e-10)")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
