"""
Spectra and their correlation functions
=======================================

A birefringent crystal delays the V polarization relative to H by
``tau = dn * l / c``.  The coherence between the two polarizations is then
multiplied by the correlation ``F(l)``, the Fourier transform of the
photon's frequency spectrum evaluated at that delay.

This script builds each built-in spectrum, evaluates the correlation with
the closed forms and with the numerical quadrature, and plots both.
"""

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dephasim import ChannelParams, closed_form, quadrature, spectra

# %%
# All curves depend on the composite k = dn * width / c only.  The width
# itself just sets the frequency unit.
width = 1e13
channel = ChannelParams.from_k(500.0, width)
print(f"k = {channel.k:.1f} 1/m, dn = {channel.delta_n:.4g}")

families = {
    "Gaussian": spectra.gaussian(width),
    "Lorentzian": spectra.lorentzian(width),
    "rectangular": spectra.rectangular(width),
    "double Gaussian": spectra.double_gaussian(width),
    "double Lorentzian": spectra.double_lorentzian(width),
}

# %%
# The densities, in units of the width.
nu = np.linspace(-40, 40, 4001) * width
fig, ax = plt.subplots(figsize=(7, 3.5))
for name, spec in families.items():
    ax.plot(nu / width, spectra.evaluate(spec, nu) * width, label=name)
ax.set_xlabel("detuning / width")
ax.set_ylabel("density x width")
ax.set_xlim(-40, 40)
ax.legend()
fig.savefig("spectra.png", dpi=120, bbox_inches="tight")

# %%
# |F(l)| from the closed forms, with the quadrature oracle overlaid at a
# handful of lengths.
lengths = np.linspace(0, 0.02, 801)
probe = np.linspace(0, 0.02, 21)
fig, ax = plt.subplots(figsize=(7, 3.5))
for name, spec in families.items():
    line, = ax.plot(lengths * 1e3, np.abs(closed_form(spec, channel, lengths)), label=name)
    quad = [abs(quadrature(spec, channel, l)) for l in probe]
    ax.plot(probe * 1e3, quad, "o", color=line.get_color(), ms=3)
ax.set_xlabel("crystal length l (mm)")
ax.set_ylabel("|F(l)|")
ax.legend()
fig.savefig("correlations.png", dpi=120, bbox_inches="tight")

# %%
# The two routes agree to roughly 1e-13 across four decades of length.
for name, spec in families.items():
    ls = np.geomspace(1e-5, 1e-1, 64)
    gap = max(abs(closed_form(spec, channel, l) - quadrature(spec, channel, l)) for l in ls)
    print(f"{name:18s} max |closed - quadrature| = {gap:.1e}")

# %%
# White noise has no density; its correlation is the indicator of l = 0,
# so any nonzero length destroys the coherence completely.
print(closed_form(spectra.white(), channel, np.array([0.0, 1e-9, 1e-3])))
