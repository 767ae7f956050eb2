"""
The V-type view
===============

The control photons mix |2,n> and |3,n-1> into two dressed states. The
waveguide photon then sees a V-type emitter with couplings g_+ and g_-.
Full reflection happens when the photon hits either dressed level. Full
transmission happens between them, where the two scattering paths cancel.
"""

import math

import numpy as np

from cavityswitch import (
    condition_equivalence_check,
    dressed_basis,
    make_point,
    preset,
    scattering_amplitudes,
    scattering_amplitudes_vtype,
)

spec = preset("fig3a")
k = spec.k

for db in (-3.0, -0.8, 0.0, 1 / 0.8 - 0.8, 2.0):
    p = spec.params_at(db)
    pt = make_point(p, k)
    b = dressed_basis(p, pt)
    bare = scattering_amplitudes(p, pt)
    vtype = scattering_amplitudes_vtype(p, pt, b)
    rep = condition_equivalence_check(p, pt)
    print(
        f"delta_b={db:+.3f}  delta_+={b.delta_plus:+.3f} delta_-={b.delta_minus:+.3f}  "
        f"g_+^2={b.g_plus**2:.3f} g_-^2={b.g_minus**2:.3f}  T={bare.T:.4f}  "
        f"|bare - vtype|={abs(bare.t - vtype.t):.1e}  "
        f"reflect={rep.reflection_dressed_holds} transmit={rep.transmission_dressed_holds}"
    )

# On the transmission point the two dressed detunings have opposite signs and
# their ratio is minus the ratio of the squared couplings.
p = spec.params_at(-0.8)
b = dressed_basis(p, make_point(p, k))
print("delta_+/delta_- =", b.delta_plus / b.delta_minus, "  g_+^2/g_-^2 =", b.g_plus**2 / b.g_minus**2)

# The dressed energies are the eigenvalues of the 2x2 emitter block.
c = p.g_b * math.sqrt(p.n)
h = np.array([[p.omega_2 + p.n * p.omega_b, c], [c, p.omega_3 + (p.n - 1) * p.omega_b]])
print("eigvalsh:", np.linalg.eigvalsh(h), " dressed:", (b.omega_minus, b.omega_plus))
