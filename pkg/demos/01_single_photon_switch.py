"""
One control photon switches the waveguide
=========================================

With no photon in the control mode the emitter acts as a two-level system and
a resonant waveguide photon bounces back. Put a single photon into the control
mode (on resonance with the upper transition) and the same photon goes
straight through.
"""

import math

from cavityswitch import make_point, preset, scattering_amplitudes

k = 2 * math.pi / 3  # delta_a = 0 for the fig2 parameters
params = preset("fig2a").base

for n in (0, 1, 2, 30):
    p = params.replace(n=n)
    res = scattering_amplitudes(p, make_point(p, k))
    print(f"n={n:2d}  R={res.R:.6f}  T={res.T:.6f}  ({res.branch.value})")

# Away from resonance the number of control photons does matter.
for n in (1, 30):
    p = params.replace(n=n)
    res = scattering_amplitudes(p, make_point(p, 1.5))
    print(f"k=1.5, n={n:2d}: T={res.T:.4f}")
