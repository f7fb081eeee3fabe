import numpy as np
import pytest

from spinmz import (
    ModelParams,
    build_basis,
    build_collective_ops,
    build_hamiltonian,
    eigh,
    gap_profile,
    level_scan,
    resolve_degenerate,
)


def random_hermitian(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (m + m.conj().T) / 2


def test_diagonal_matrix():
    d = eigh(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(d.eigenvalues, [1.0, 2.0, 3.0])
    # permutation eigenvectors with the positive-phase convention
    assert np.allclose(np.abs(d.eigenvectors), np.eye(3)[:, [1, 2, 0]])
    assert np.allclose(d.eigenvectors.imag, 0)


def test_rejects_non_hermitian():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        eigh(m)
    with pytest.raises(ValueError):
        eigh(np.zeros((2, 3)))


def test_reconstruction_and_orthonormality(rng):
    for _ in range(20):
        m = random_hermitian(rng, 66)
        d = eigh(m)
        scale = np.abs(d.eigenvalues).max()
        assert np.all(np.diff(d.eigenvalues) >= 0)
        v = d.eigenvectors
        assert np.abs(v.conj().T @ v - np.eye(66)).max() <= 1e-10
        recon = (v * d.eigenvalues) @ v.conj().T
        assert np.abs(recon - m).max() <= 1e-10 * scale
        resid = m @ v - v * d.eigenvalues
        assert np.linalg.norm(resid, axis=0).max() <= 1e-10 * scale


def test_phase_convention_and_determinism(rng):
    m = random_hermitian(rng, 12)
    a = eigh(m)
    b = eigh(m.copy())
    assert a.eigenvectors.tobytes() == b.eigenvectors.tobytes()
    lead = np.abs(a.eigenvectors).argmax(axis=0)
    for k in range(12):
        z = a.eigenvectors[lead[k], k]
        assert z.imag == pytest.approx(0.0, abs=1e-14)
        assert z.real > 0


def test_single_atom_scan_matches_formula():
    ops = build_collective_ops(build_basis(1))
    grid = np.linspace(0, 2, 5)
    scan = level_scan(ops, c=-0.1, h_z=0.0, h_x_grid=grid, k=3)
    for i, h_x in enumerate(grid):
        expected = sorted([-2.1 - h_x, -2.1, -2.1 + h_x])
        assert np.abs(scan.levels[i] - expected).max() <= 1e-12


def test_level_scan_validation(ops10):
    with pytest.raises(ValueError):
        level_scan(ops10, -0.1, 0.0, [], k=3)
    with pytest.raises(ValueError):
        level_scan(ops10, -0.1, 0.0, [1.0], k=67)


def test_degenerate_doublet_and_open_gap(ops10):
    grid = np.linspace(0, 10, 21)
    scan = level_scan(ops10, c=-0.1, h_z=0.0, h_x_grid=grid, k=10)
    assert np.all(np.diff(scan.levels, axis=1) >= 0)
    gaps = scan.levels[:, 1] - scan.levels[:, 0]
    assert gaps[0] <= 1e-10
    assert gaps[-1] > 0.5
    min_gap, at = gap_profile(scan)
    assert min_gap <= 1e-10
    assert at == 0.0

    # ground level is non-increasing with h_x
    assert np.all(np.diff(scan.levels[:, 0]) <= 1e-12)


def test_scan_symmetric_in_h_x(ops10):
    grid = np.linspace(-3, 3, 7)
    scan = level_scan(ops10, c=-0.1, h_z=0.0, h_x_grid=grid, k=6)
    assert np.abs(scan.levels - scan.levels[::-1]).max() <= 1e-10


def test_longitudinal_field_splits_doublet(ops10):
    grid = np.linspace(0, 10, 11)
    scan = level_scan(ops10, c=-0.1, h_z=0.002, h_x_grid=grid, k=2)
    gaps = scan.levels[:, 1] - scan.levels[:, 0]
    # the zero-field doublet splits by exactly 2 N h_z ...
    assert gaps[0] == pytest.approx(0.04, abs=1e-9)
    # ... and the gap stays strictly open along the whole scan
    assert np.all(gaps > 0)
    min_gap, _ = gap_profile(scan)
    assert min_gap > 0


def test_gap_profile_needs_two_levels(ops10):
    scan = level_scan(ops10, -0.1, 0.0, [1.0, 2.0], k=1)
    with pytest.raises(ValueError):
        gap_profile(scan)


def test_definite_lz_after_degeneracy_resolution(ops10):
    h = build_hamiltonian(ops10, ModelParams(10, -0.1))
    resolved = resolve_degenerate(eigh(h), ops10.Lz)
    v = resolved.eigenvectors
    lz = ops10.Lz
    mean = np.einsum("ik,ij,jk->k", v.conj(), lz, v).real
    second = np.einsum("ik,ij,jk->k", v.conj(), lz @ lz, v).real
    assert (second - mean**2).max() <= 1e-8
