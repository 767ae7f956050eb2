"""
Transmission spectra and asymmetric lineshapes
==============================================

Sweeps over the photon momentum (fig2 presets) and over the control detuning
and coupling (fig3 presets). The delta_b sweeps show a transmission peak right
next to a reflection dip, which gives the asymmetric profiles.

Figures go to ``demos/out/``.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cavityswitch import preset, run_sweep
from cavityswitch.sweep import analytic_loci

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

fig, axes = plt.subplots(1, 5, figsize=(16, 3), sharey=True)
for ax, name in zip(axes, ["fig2a", "fig2b", "fig2c", "fig2d", "fig2e"]):
    table = run_sweep(preset(name))
    ax.plot(table.axis_values, table.T, label="T")
    ax.plot(table.axis_values, table.R, label="R")
    base = table.spec.base
    ax.set_title(f"{name}: n={base.n}, delta_b={base.delta_b:g}")
    ax.set_xlabel("k")
axes[0].legend()
fig.tight_layout()
fig.savefig(out / "momentum_sweeps.png", dpi=120)

fig, axes = plt.subplots(1, 3, figsize=(12, 3.2))
for ax, name in zip(axes, ["fig3a", "fig3b", "fig3c"]):
    spec = preset(name)
    table = run_sweep(spec)
    ax.plot(table.axis_values, table.T)
    for x in analytic_loci(spec)["full_reflection"]:
        ax.axvline(x, color="grey", ls=":")
    ax.set_xlabel(spec.axis.value)
    ax.set_title(name)
axes[2].set_xscale("symlog", linthresh=10)
fig.tight_layout()
fig.savefig(out / "control_sweeps.png", dpi=120)

for name in ("fig3a", "fig3b", "fig3c"):
    print(name, analytic_loci(preset(name)))
print("figures written to", out)
