import math

import numpy as np
import pytest

from spinmz import (
    build_basis,
    build_collective_ops,
    fock_state,
    ghz_state,
    mean_spin,
    normalize,
    spin_coherent,
    state_from_pairs,
    state_to_pairs,
    QuantumState,
)


def frob(m):
    return np.linalg.norm(m)


def test_basis_dimension_and_order():
    b = build_basis(10)
    assert b.dim == 66
    assert all(sum(t) == 10 for t in b.states)

    b1 = build_basis(1)
    assert b1.states == ((0, 0, 1), (0, 1, 0), (1, 0, 0))

    b2 = build_basis(2)
    assert b2.dim == 6
    assert b2.states[0] == (0, 0, 2)
    assert b2.states[-1] == (2, 0, 0)


def test_basis_index_map_is_inverse():
    b = build_basis(7)
    for i, t in enumerate(b.states):
        assert b.index_of[t] == i


def test_basis_size_errors():
    with pytest.raises(ValueError):
        build_basis(0)
    with pytest.raises(ValueError):
        build_basis(61)
    # explicit override lifts the cap
    assert build_basis(61, max_atoms=61).dim == 62 * 63 // 2


def test_basis_deterministic():
    a, b = build_basis(9), build_basis(9)
    assert a.states == b.states
    assert a.index_of == b.index_of


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_operator_algebra(n):
    ops = build_collective_ops(build_basis(n))
    mats = {"Lx": ops.Lx, "Ly": ops.Ly, "Lz": ops.Lz, "L2": ops.L2, "n0": ops.n0}
    for name, m in mats.items():
        assert np.abs(m - m.conj().T).max() <= 1e-14 * frob(m), name

    for a, b, c in [(ops.Lx, ops.Ly, ops.Lz), (ops.Ly, ops.Lz, ops.Lx),
                    (ops.Lz, ops.Lx, ops.Ly)]:
        assert np.abs(a @ b - b @ a - 1j * c).max() <= 1e-12

    l2 = ops.Lx @ ops.Lx + ops.Ly @ ops.Ly + ops.Lz @ ops.Lz
    assert np.abs(ops.L2 - l2).max() <= 1e-12

    for m in (ops.Lx, ops.Ly, ops.Lz):
        assert np.abs(ops.L2 @ m - m @ ops.L2).max() <= 1e-12

    # n0 diagonal with the middle occupation on the diagonal
    diag = np.diag([t[1] for t in ops.basis.states])
    assert np.array_equal(ops.n0, diag)

    # completeness: occupations reconstruct N * identity exactly
    total = np.diag([float(sum(t)) for t in ops.basis.states])
    assert np.array_equal(total, n * np.eye(ops.basis.dim))


def test_rotation_flips_lx(ops10):
    mz = np.real(np.diag(ops10.Lz))
    d = np.exp(1j * np.pi * mz)
    rotated = (d[:, None] * ops10.Lx) * d.conj()[None, :]
    assert np.abs(rotated + ops10.Lx).max() <= 1e-10


def test_operators_deterministic():
    a = build_collective_ops(build_basis(6))
    b = build_collective_ops(build_basis(6))
    for name in ("Lx", "Ly", "Lz", "L2", "n0"):
        assert getattr(a, name).tobytes() == getattr(b, name).tobytes()


def test_stretched_state_eigenvalues(ops10, basis10):
    psi = fock_state(basis10, (0, 0, 10)).amplitudes
    assert np.vdot(psi, ops10.Lz @ psi).real == pytest.approx(10.0, abs=1e-12)
    l2psi = ops10.L2 @ psi
    assert np.allclose(l2psi, 10 * 11 * psi, atol=1e-10)


def test_single_atom_lx_matrix():
    ops = build_collective_ops(build_basis(1))
    # basis order (0,0,1)=m+1, (0,1,0)=m0, (1,0,0)=m-1
    expected = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / math.sqrt(2)
    assert np.abs(ops.Lx - expected).max() <= 1e-15


def test_fock_state(basis10):
    psi = fock_state(basis10, (0, 0, 10))
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=1e-12)
    assert psi.amplitudes[basis10.index_of[(0, 0, 10)]] == 1.0
    other = fock_state(basis10, (3, 4, 3))
    assert abs(np.vdot(psi.amplitudes, other.amplitudes)) == 0.0
    with pytest.raises(ValueError):
        fock_state(basis10, (1, 1, 1))
    with pytest.raises(ValueError):
        fock_state(basis10, (-1, 1, 10))


def test_quantum_state_norm_enforced(basis10):
    vec = np.zeros(basis10.dim, dtype=complex)
    vec[0] = 0.9
    with pytest.raises(ValueError):
        QuantumState(vec, basis10)
    assert normalize(basis10, vec).amplitudes[0] == pytest.approx(1.0)


def test_spin_coherent_limits(basis10, ops10):
    up = spin_coherent(basis10, 0.0, 0.0, ops=ops10)
    target = fock_state(basis10, (0, 0, 10))
    assert abs(np.vdot(up.amplitudes, target.amplitudes)) ** 2 == pytest.approx(1.0, abs=1e-12)

    down = spin_coherent(basis10, math.pi, 0.0, ops=ops10)
    target = fock_state(basis10, (10, 0, 0))
    assert abs(np.vdot(down.amplitudes, target.amplitudes)) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_spin_coherent_mean_spin(basis10, ops10):
    x = spin_coherent(basis10, math.pi / 2, 0.0, ops=ops10)
    assert np.abs(mean_spin(x, ops10) - [10, 0, 0]).max() <= 1e-9
    # generic direction
    theta, phi = 1.1, 2.3
    s = spin_coherent(basis10, theta, phi, ops=ops10)
    expected = 10 * np.array([
        math.sin(theta) * math.cos(phi),
        math.sin(theta) * math.sin(phi),
        math.cos(theta),
    ])
    assert np.abs(mean_spin(s, ops10) - expected).max() <= 1e-9


def test_ghz_state(basis10):
    g = ghz_state(basis10, 0.0)
    amp = g.amplitudes
    assert amp[basis10.index_of[(0, 0, 10)]] == pytest.approx(1 / math.sqrt(2))
    assert amp[basis10.index_of[(10, 0, 0)]] == pytest.approx(1 / math.sqrt(2))
    assert np.count_nonzero(amp) == 2
    assert np.linalg.norm(amp) == pytest.approx(1.0, abs=1e-12)

    shifted = ghz_state(basis10, 1.7)
    beta = shifted.amplitudes[basis10.index_of[(10, 0, 0)]]
    assert np.angle(beta) == pytest.approx(1.7)


def test_state_serialization_roundtrip(basis10, ops10):
    s = spin_coherent(basis10, 0.7, -0.4, ops=ops10)
    pairs = state_to_pairs(s)
    assert len(pairs) == basis10.dim
    back = state_from_pairs(basis10, pairs)
    assert np.abs(back.amplitudes - s.amplitudes).max() <= 1e-15
    with pytest.raises(ValueError):
        state_from_pairs(basis10, pairs[:-1])
