"""Dimensionless dipolar spin-1 Hamiltonian and its mean-field landscape.

Energies are measured in units of the spin-exchange strength |c2'|, time in
hbar/|c2'|, and fields absorb the gyromagnetic factor (h = g_F mu_B B).
With c = c_d'/|c2'| the model Hamiltonian reads

    H = (-1 - c) L^2 + 3 c (Lz^2 + n0) - h_x Lx - h_z Lz,

with no constant offset.  For c < 0 the zero-field ground doublet is the
stretched pair |N, +N>, |N, -N>; a transverse field h_x above the critical
value h_x^c = -6 N c fully polarizes the spin along x.  The large-N energy
of a classical spin tilted by a polar angle theta is

    E(theta) = 3 c N^2 cos^2(theta) - h_x N sin(theta),

which is the leading-order mean-field expression (the L^2 and n0 terms
contribute only constants and subleading corrections at large N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import CollectiveOperators


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model parameters: dipolar ratio c and fields in |c2'| units."""

    n_atoms: int
    c: float
    h_x: float = 0.0
    h_z: float = 0.0

    def __post_init__(self):
        if int(self.n_atoms) != self.n_atoms or self.n_atoms < 1:
            raise ValueError("n_atoms must be a positive integer")
        for name in ("c", "h_x", "h_z"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Dense Hermitian matrix of the model at a parameter snapshot."""

    matrix: np.ndarray
    params: ModelParams


@dataclass(frozen=True)
class ClassicalConfig:
    """Polar angle and energy of the classical spin minimum.

    Below the critical field the minimum is doubly degenerate; the
    theta in [0, pi/2] branch is reported and ``mirror_vartheta`` holds
    the pi - theta partner.
    """

    vartheta: float
    energy: float
    degenerate: bool
    mirror_vartheta: float | None


def build_hamiltonian(ops: CollectiveOperators, params: ModelParams) -> HamiltonianMatrix:
    """Assemble (-1-c) L^2 + 3c (Lz^2 + n0) - h_x Lx - h_z Lz."""
    if params.n_atoms != ops.basis.n_atoms:
        raise ValueError(
            f"params are for N={params.n_atoms} but operators act on "
            f"N={ops.basis.n_atoms}"
        )
    m = (
        (-1.0 - params.c) * ops.L2
        + 3.0 * params.c * (ops.Lz @ ops.Lz + ops.n0)
        - params.h_x * ops.Lx
        - params.h_z * ops.Lz
    )
    m.flags.writeable = False
    return HamiltonianMatrix(matrix=m, params=params)


def classical_energy(params: ModelParams, vartheta: float) -> float:
    """Large-N spin energy 3 c N^2 cos^2(theta) - h_x N sin(theta)."""
    n = params.n_atoms
    return 3.0 * params.c * n * n * math.cos(vartheta) ** 2 - params.h_x * n * math.sin(vartheta)


def critical_field(params: ModelParams) -> float:
    """Saturation field h_x^c = -6 N c, positive in the ferromagnetic regime."""
    if params.c >= 0:
        raise ValueError("critical field is defined for c < 0 only")
    return -6.0 * params.n_atoms * params.c


def classical_minimizer(params: ModelParams) -> ClassicalConfig:
    """Minimize the classical energy over the polar angle.

    For h_x >= h_x^c the spin is fully polarized (theta = pi/2); below
    the critical field sin(theta) = h_x / h_x^c with a degenerate mirror
    at pi - theta.
    """
    if params.c >= 0:
        raise ValueError("classical minimizer is defined for c < 0 only")
    if params.h_x < 0:
        raise ValueError("h_x must be non-negative (transverse field magnitude)")
    h_c = critical_field(params)
    if params.h_x >= h_c:
        theta = math.pi / 2
        return ClassicalConfig(
            vartheta=theta, energy=classical_energy(params, theta),
            degenerate=False, mirror_vartheta=None,
        )
    theta = math.asin(params.h_x / h_c)
    return ClassicalConfig(
        vartheta=theta, energy=classical_energy(params, theta),
        degenerate=True, mirror_vartheta=math.pi - theta,
    )
