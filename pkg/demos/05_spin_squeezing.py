"""Spin squeezing generated along the splitting sweep.

The squeezing parameter xi^2 = 4 min Var(L_perp) / N is tracked while
the transverse field sweeps from 10 to 0.  For N spin-1 atoms the
polarized product state sits at xi^2 = 2 (each atom carries transverse
variance 1/2); interactions squeeze the state as the field approaches
the saturation value h_x^c = 6, where xi^2 dips to its minimum, and the
parameter loses its meaning near h_x -> 0 where the mean spin of the
forming GHZ superposition vanishes.

Run:  python3 demos/05_spin_squeezing.py
"""

import numpy as np

from spinmz import (
    ModelParams,
    QuantumState,
    UndefinedSqueezingError,
    build_basis,
    build_collective_ops,
    build_hamiltonian,
    critical_field,
    eigh,
    fock_state,
    make_linear_sweep,
    propagate,
    squeezing_parameter,
)

N, C, RATE = 10, -0.1, 0.08
ops = build_collective_ops(build_basis(N))
basis = ops.basis

baseline = squeezing_parameter(fock_state(basis, (0, 0, N)), ops)
print(f"polarized product state: xi^2 = {baseline.xi2:.6f} (the spin-1 baseline)")
print(f"saturation field: {critical_field(ModelParams(N, C)):.1f}")


def xi2_or_nan(state):
    try:
        return squeezing_parameter(state, ops).xi2
    except UndefinedSqueezingError:
        return float("nan")


h_init = build_hamiltonian(ops, ModelParams(N, C, h_x=10.0))
start = QuantumState(eigh(h_init).eigenvectors[:, 0], basis)
record = propagate(start, ops, C, make_linear_sweep(10.0, 0.0, RATE),
                   max_field_step=5e-3, observables={"xi2": xi2_or_nan})

xi2 = record.observables["xi2"]
print("\n  h_x    xi^2")
for h_x in (10.0, 8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0, 0.0):
    i = np.argmin(np.abs(record.h_x - h_x))
    value = xi2[i]
    print(f"  {record.h_x[i]:4.1f}   " + (f"{value:.4f}" if np.isfinite(value) else "undefined"))

defined = np.isfinite(xi2)
i_min = np.flatnonzero(defined)[np.argmin(xi2[defined])]
print(f"\nstrongest squeezing: xi^2 = {xi2[i_min]:.4f} at h_x = {record.h_x[i_min]:.2f} "
      "(near the saturation field)")
