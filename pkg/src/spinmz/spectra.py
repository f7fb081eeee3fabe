"""Dense Hermitian eigendecomposition and adiabatic level scans.

``eigh`` wraps the LAPACK Hermitian solver with the validation and
conventions the rest of the package relies on: the input is checked for
Hermiticity, eigenvalues come out ascending, and each eigenvector is
rotated so its largest-magnitude component is real and positive, which
makes serialized eigenvectors reproducible across runs.

``level_scan`` tabulates the k lowest levels over a transverse-field grid
(the spaghetti of avoided crossings that controls adiabatic sweeps) and
``gap_profile`` reduces a scan to the minimum ground-excited gap, the
standard sweep-rate diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import CollectiveOperators
from .hamiltonian import HamiltonianMatrix, ModelParams, build_hamiltonian


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class LevelScan:
    """The k lowest eigenvalues per point of a transverse-field grid."""

    grid: np.ndarray
    levels: np.ndarray  # shape (len(grid), k), sorted ascending per row
    n_atoms: int
    c: float
    h_z: float


def _as_matrix(h) -> np.ndarray:
    if isinstance(h, HamiltonianMatrix):
        return h.matrix
    return np.asarray(h)


def _fix_phases(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-|.| component is real positive."""
    lead_idx = np.argmax(np.abs(v), axis=0)
    lead = v[lead_idx, np.arange(v.shape[1])]
    return v * (np.abs(lead) / lead)


def eigh(h, hermitian_tol: float = 1e-12) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix with a deterministic phase convention.

    Raises ValueError when the input deviates from Hermiticity by more
    than ``hermitian_tol`` relative to its largest entry.  LAPACK
    convergence failures propagate as numpy.linalg.LinAlgError.
    """
    m = _as_matrix(h)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = np.abs(m).max()
    if scale == 0:
        scale = 1.0
    if np.abs(m - m.conj().T).max() > hermitian_tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    if np.iscomplexobj(m) and not m.imag.any():
        w, v = np.linalg.eigh(m.real)
    else:
        w, v = np.linalg.eigh(m)
    v = _fix_phases(v).astype(complex)
    w = w.astype(float)
    w.flags.writeable = False
    v.flags.writeable = False
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)


def level_scan(
    ops: CollectiveOperators, c: float, h_z: float, h_x_grid, k: int = 10,
) -> LevelScan:
    """Tabulate the k lowest levels of the model along a transverse-field grid."""
    grid = np.asarray(h_x_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("h_x grid must be a non-empty 1-d sequence")
    dim = ops.basis.dim
    if not 1 <= k <= dim:
        raise ValueError(f"level count k={k} must be in 1..{dim}")
    n = ops.basis.n_atoms
    levels = np.empty((grid.size, k))
    for i, h_x in enumerate(grid):
        params = ModelParams(n_atoms=n, c=c, h_x=float(h_x), h_z=h_z)
        levels[i] = eigh(build_hamiltonian(ops, params)).eigenvalues[:k]
    grid.flags.writeable = False
    levels.flags.writeable = False
    return LevelScan(grid=grid, levels=levels, n_atoms=n, c=c, h_z=h_z)


def gap_profile(scan: LevelScan) -> tuple[float, float]:
    """Minimum E1 - E0 over the scan grid and the h_x where it occurs."""
    if scan.levels.shape[1] < 2:
        raise ValueError("gap profile needs at least two levels per grid point")
    gaps = scan.levels[:, 1] - scan.levels[:, 0]
    i = int(np.argmin(gaps))
    return float(gaps[i]), float(scan.grid[i])


def resolve_degenerate(
    decomp: EigenDecomposition, op: np.ndarray, cluster_tol: float = 1e-10,
) -> EigenDecomposition:
    """Re-diagonalize degenerate clusters against a commuting observable.

    Within each cluster of eigenvalues closer than ``cluster_tol`` times
    the spectral scale, the eigenvector columns are rotated to diagonalize
    ``op``, producing e.g. the physical |N, +-N> labeling of the zero-field
    ground doublet.  Non-degenerate columns are returned unchanged.
    """
    w = decomp.eigenvalues
    v = decomp.eigenvectors.copy()
    scale = max(np.abs(w).max(), 1.0)
    start = 0
    for stop in range(1, len(w) + 1):
        if stop < len(w) and w[stop] - w[stop - 1] < cluster_tol * scale:
            continue
        if stop - start > 1:
            block = v[:, start:stop]
            sub = block.conj().T @ op @ block
            sub = (sub + sub.conj().T) / 2
            _, u = np.linalg.eigh(sub)
            v[:, start:stop] = block @ u
        start = stop
    v = _fix_phases(v)
    v.flags.writeable = False
    return EigenDecomposition(eigenvalues=w, eigenvectors=v)
