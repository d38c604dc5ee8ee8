"""Polarization states before and after the phase-damping channel.

Density matrices are plain complex ``ndarray`` objects.  Single-photon
states use the basis (H, V); photon pairs use (HH, HV, VH, VV).  The
channel functions broadcast over arrays of correlation values and return
stacks of matrices of shape ``(..., 2, 2)`` or ``(..., 4, 4)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized

__all__ = [
    "SingleAmplitudes",
    "PairAmplitudes",
    "evolve_single",
    "evolve_pair",
    "dephase",
    "population",
]

NORM_TOL = 1e-12
CORRELATION_TOL = 1e-12


def population(z):
    """``|z|^2`` as ``re^2 + im^2``; unlike ``abs(z)**2`` this skips the square root."""
    z = complex(z)
    return z.real * z.real + z.imag * z.imag


def _check_norm(x, y, names):
    total = population(x) + population(y)
    if not abs(total - 1.0) <= NORM_TOL:
        raise NotNormalized(f"|{names[0]}|^2 + |{names[1]}|^2 = {total!r}, expected 1")


def _split_population(p, phase, name):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    return complex(math.sqrt(p)), math.sqrt(1.0 - p) * complex(math.cos(phase), math.sin(phase))


@dataclass(frozen=True)
class SingleAmplitudes:
    """``alpha |H> + beta |V>`` with ``|alpha|^2 + |beta|^2 = 1``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        _check_norm(self.alpha, self.beta, ("alpha", "beta"))

    @classmethod
    def from_population(cls, alpha2, phase=0.0):
        """Real ``alpha = sqrt(alpha2)``; ``beta`` carries the relative phase."""
        return cls(*_split_population(alpha2, phase, "alpha2"))

    @property
    def coherence_weight(self):
        """``4 |alpha|^2 |beta|^2``, the largest reachable linear entropy."""
        return 4.0 * population(self.alpha) * population(self.beta)


@dataclass(frozen=True)
class PairAmplitudes:
    """``a |HH> + b |VV>`` with ``|a|^2 + |b|^2 = 1``."""

    a: complex
    b: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        _check_norm(self.a, self.b, ("a", "b"))

    @classmethod
    def from_population(cls, a2, phase=0.0):
        return cls(*_split_population(a2, phase, "a2"))


def _as_correlation(value):
    value = np.asarray(value, dtype=complex)
    if np.any(np.abs(value) > 1.0 + CORRELATION_TOL):
        raise ValueError("correlation modulus exceeds 1")
    return value


def evolve_single(amps, F):
    """Reduced polarization state after the crystal.

    Populations are untouched; the coherence ``alpha beta*`` is multiplied
    by ``conj(F)`` (and its mirror by ``F``).
    """
    if not isinstance(amps, SingleAmplitudes):
        amps = SingleAmplitudes(*amps)
    F = _as_correlation(F)
    rho = np.empty(F.shape + (2, 2), dtype=complex)
    rho[..., 0, 0] = population(amps.alpha)
    rho[..., 1, 1] = population(amps.beta)
    rho[..., 0, 1] = amps.alpha * amps.beta.conjugate() * F.conj()
    rho[..., 1, 0] = amps.alpha.conjugate() * amps.beta * F
    return rho


def evolve_pair(amps, G):
    """Two-photon state after photon 1 crosses the crystal.

    Only the four corner entries in the (HH, HV, VH, VV) basis are nonzero.
    """
    if not isinstance(amps, PairAmplitudes):
        amps = PairAmplitudes(*amps)
    G = _as_correlation(G)
    rho = np.zeros(G.shape + (4, 4), dtype=complex)
    rho[..., 0, 0] = population(amps.a)
    rho[..., 3, 3] = population(amps.b)
    rho[..., 0, 3] = amps.a * amps.b.conjugate() * G.conj()
    rho[..., 3, 0] = amps.a.conjugate() * amps.b * G
    return rho


def dephase(rho, F):
    """Apply a further channel with correlation ``F`` to existing states.

    Works for single-photon states and for pair states whose dephased
    photon is photon 1: every element coupling H and V of that photon picks
    up ``conj(F)`` (upper triangle) or ``F`` (lower triangle).
    """
    rho = np.array(rho, dtype=complex)
    F = _as_correlation(F)
    n = rho.shape[-1]
    if n == 2:
        first = np.array([0, 1])
    elif n == 4:
        first = np.array([0, 0, 1, 1])
    else:
        raise ValueError("expected a 2x2 or 4x4 density matrix")
    flip = first[:, None] != first[None, :]
    upper = np.triu(flip)
    lower = np.tril(flip)
    Fb = F[..., None, None]
    rho = np.where(upper, rho * Fb.conj(), rho)
    rho = np.where(lower, rho * Fb, rho)
    return rho
