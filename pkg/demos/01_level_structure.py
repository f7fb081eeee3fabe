"""Level structure of the dipolar spin-1 model across the transverse field.

Scans the lowest energy levels of

    H = (-1 - c) L^2 + 3c (Lz^2 + n0) - h_x Lx

for N = 10 atoms with ferromagnetic dipolar ratio c = -0.1.  The ground
and first excited levels merge into a degenerate doublet as h_x -> 0
(the stretched pair |N, +N>, |N, -N>), while above the saturation field
h_x^c = -6 N c = 6 the spin is polarized along x and the gap opens wide.
The classical minimizer shows the same picture: the tilt angle moves from
pi/2 (polarized) down to 0/pi (Ising-like doublet) as the field drops.

Run:  python3 demos/01_level_structure.py
"""

import numpy as np

from spinmz import (
    ModelParams,
    build_basis,
    build_collective_ops,
    classical_minimizer,
    critical_field,
    gap_profile,
    level_scan,
)

params = ModelParams(n_atoms=10, c=-0.1)
ops = build_collective_ops(build_basis(params.n_atoms))

print(f"model: N = {params.n_atoms}, c = {params.c}")
print(f"saturation field h_x^c = {critical_field(params):.3f}")
print(f"basis dimension: {ops.basis.dim}")

grid = np.linspace(0.0, 10.0, 101)
scan = level_scan(ops, params.c, h_z=0.0, h_x_grid=grid, k=6)
min_gap, at = gap_profile(scan)
print(f"\nminimum E1 - E0 over the scan: {min_gap:.3e} at h_x = {at}")

print("\n  h_x    E1-E0      classical tilt")
for h_x in (0.0, 2.0, 4.0, 6.0, 8.0, 10.0):
    i = np.argmin(np.abs(grid - h_x))
    cfg = classical_minimizer(ModelParams(10, -0.1, h_x=h_x))
    tag = " (doubly degenerate)" if cfg.degenerate else ""
    print(f"  {h_x:4.1f}   {scan.levels[i, 1] - scan.levels[i, 0]:8.4f}"
          f"   theta = {cfg.vartheta:.3f}{tag}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for k in range(scan.levels.shape[1]):
        ax.plot(scan.grid, scan.levels[:, k], lw=1)
    ax.axvline(critical_field(params), ls="--", color="gray", label=r"$h_x^c$")
    ax.set_xlabel(r"$h_x$")
    ax.set_ylabel("energy")
    ax.legend()
    fig.tight_layout()
    fig.savefig("level_structure.png", dpi=150)
    print("\nwrote level_structure.png")
except ImportError:
    print("\n(matplotlib not available; skipping the plot)")
