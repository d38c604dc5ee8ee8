"""Numerical integration kernels used by the correlation oracle.

* :func:`adaptive_gk15` -- globally adaptive 7/15-point Gauss-Kronrod on a
  set of breakpoints, vectorized over panels, complex integrands allowed.
* :func:`filon_linear` -- exact Fourier integral of a piecewise-linear
  function (Filon-type rule on each segment).
"""

import math

import numpy as np

from .errors import NotConverged

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:7], _XGK[7::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:7], _WGK[7::-1]])
GAUSS_WEIGHTS = np.zeros(15)
# Gauss nodes are the odd entries of _XGK
GAUSS_WEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:3], _WG[3::-1]])

_EPS = np.finfo(float).eps


def gk15(f, a, b):
    """Apply the G7/K15 pair on every panel ``[a[i], b[i]]``.

    Returns the Kronrod estimates, the error estimates and the Kronrod
    estimate of the integral of ``|f|`` (used for the round-off floor).
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    y = f(mid[:, None] + half[:, None] * NODES[None, :])
    kron = half * (y @ KRONROD_WEIGHTS)
    gauss = half * (y @ GAUSS_WEIGHTS)
    resabs = np.abs(half) * (np.abs(y) @ KRONROD_WEIGHTS)
    err = np.maximum(np.abs(kron - gauss), 50.0 * _EPS * resabs)
    return kron, err, resabs


def _initial_panels(breaks, max_panel, min_panels):
    lo, hi = [], []
    for left, right in zip(breaks[:-1], breaks[1:]):
        n = min_panels
        if max_panel is not None:
            n = max(n, math.ceil((right - left) / max_panel))
        edges = np.linspace(left, right, n + 1)
        lo.append(edges[:-1])
        hi.append(edges[1:])
    return np.concatenate(lo), np.concatenate(hi)


def _sum(values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def adaptive_gk15(f, breaks, tol, scale=0.0, max_panel=None, min_panels=2, limit=200_000):
    """Integrate ``f`` over ``[breaks[0], breaks[-1]]`` adaptively.

    Panels are bisected until the summed error estimate drops below
    ``tol * max(|I|, scale)``; ``scale`` lets callers express the tolerance
    relative to a known norm when the integral itself can be tiny.  No
    initial panel is longer than ``max_panel``.

    Returns ``(value, error)``.  Raises :class:`NotConverged` once the panel
    count would exceed ``limit``.
    """
    breaks = np.asarray(breaks, dtype=float)
    a, b = _initial_panels(breaks, max_panel, min_panels)
    val, err, _ = gk15(f, a, b)
    while True:
        total = _sum(val)
        total_err = math.fsum(err)
        goal = tol * max(abs(total), scale)
        if total_err <= goal:
            return total, total_err
        splittable = (b - a) > 64.0 * _EPS * np.maximum(np.abs(a), np.abs(b))
        cand = (err > goal / len(a)) & splittable
        if not cand.any():
            masked = np.where(splittable, err, -1.0)
            worst = int(np.argmax(masked))
            if masked[worst] < 0:
                raise NotConverged("panels cannot be subdivided further",
                                   estimate=total, error=total_err)
            cand[worst] = True
        if len(a) + cand.sum() > limit:
            raise NotConverged(f"subdivision budget of {limit} panels exhausted",
                               estimate=total, error=total_err)
        mid = 0.5 * (a[cand] + b[cand])
        na = np.concatenate([a[cand], mid])
        nb = np.concatenate([mid, b[cand]])
        nval, nerr, _ = gk15(f, na, nb)
        keep = ~cand
        a = np.concatenate([a[keep], na])
        b = np.concatenate([b[keep], nb])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])
        order = np.argsort(a, kind="stable")
        a, b, val, err = a[order], b[order], val[order], err[order]


def _moments(theta):
    """``E0 = int_0^1 e^{i theta s} ds`` and ``E1 = int_0^1 s e^{i theta s} ds``."""
    theta = np.asarray(theta, dtype=float)
    e0 = np.empty(theta.shape, dtype=complex)
    e1 = np.empty(theta.shape, dtype=complex)
    small = np.abs(theta) < 0.5
    ts = theta[small]
    if ts.size:
        # power series, 0.5**22 / 22! is far below eps
        term = np.ones_like(ts, dtype=complex)
        s0 = np.zeros_like(term)
        s1 = np.zeros_like(term)
        for k in range(24):
            s0 += term / (k + 1)
            s1 += term / (k + 2)
            term = term * (1j * ts) / (k + 1)
        e0[small] = s0
        e1[small] = s1
    tl = theta[~small]
    if tl.size:
        ex = np.exp(1j * tl)
        e0[~small] = (ex - 1.0) / (1j * tl)
        e1[~small] = ex / (1j * tl) + (ex - 1.0) / (tl * tl)
    return e0, e1


def filon_linear(x, y, t):
    """``int y(s) exp(i t s) ds`` for the piecewise-linear interpolant of (x, y).

    The oscillatory factor is integrated exactly on every segment, so the
    result has no step-size restriction with respect to ``t``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    h = np.diff(x)
    e0, e1 = _moments(t * h)
    seg = h * np.exp(1j * t * x[:-1]) * (y[:-1] * e0 + (y[1:] - y[:-1]) * e1)
    return _sum(seg)
