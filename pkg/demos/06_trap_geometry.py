"""Tuning the dipolar coupling through the trap aspect ratio.

For a Gaussian condensate in an axially symmetric trap, the effective
dipole-dipole coupling is proportional to the geometry factor
chi(kappa), kappa = q_r / q_z: attractive (chi < 0) in cigar traps,
vanishing in a spherical trap, repulsive (chi < 2) in pancakes.  The
interferometer needs c = cd'/|c2'| < 0, so the trap shape is the control
knob that selects the working regime.

Run:  python3 demos/06_trap_geometry.py
"""

import numpy as np

from spinmz import TrapGeometry, chi, collision_params, dipolar_ratio, rescaled_couplings

print("  kappa     chi(kappa)")
for kappa in (0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0):
    print(f"  {kappa:6.2f}   {chi(kappa):+9.5f}")
print("limits: chi ->", f"{chi(1e-8):+.4f} (kappa -> 0),", f"{chi(1e8):+.4f} (kappa -> inf)")

# illustrative rubidium-like inputs in arbitrary consistent units:
# a2 < a0 makes the spin exchange ferromagnetic (c2 < 0)
c0, c2 = collision_params(a0=101.8, a2=100.4, mass=87.0, hbar=1.0)
print(f"\ncollision parameters (arbitrary units): c0 = {c0:.3f}, c2 = {c2:.3f}")

for q_r, q_z in ((1.0, 2.0), (1.0, 1.0), (2.0, 1.0)):
    geom = TrapGeometry(q_r=q_r, q_z=q_z)
    cs = rescaled_couplings(c0, c2, c_d=0.05 * abs(c2), geometry=geom)
    signed = dipolar_ratio(0.05 * abs(c2), c2, geom.kappa)
    print(f"kappa = {geom.kappa:4.1f}:  cd' = {cs.cdp:+.3e},  "
          f"c = cd'/|c2'| = {cs.c_ratio:+.4f},  cd'/c2' = {signed:+.4f}")

print("\nnote the two ratio conventions differ by sign when c2 < 0;")
print("the sweep modules take c = cd'/|c2'| and require it negative")
