"""Symmetric N-boson spin-1 Fock basis and collective spin operators.

The three Zeeman modes m = -1, 0, +1 of a spin-1 condensate under the
single-mode approximation are described by occupation triples
(n_-1, n_0, n_+1) with n_-1 + n_0 + n_+1 = N.  The collective spin

    L = sum over atoms of the single-atom spin-1 operator,

is represented here by dense Hermitian matrices built from the bosonic
ladder formulas L+ = sqrt(2)(a+^dag a0 + a0^dag a-), Lz = n+ - n-.

The basis is ordered lexicographically ascending in (n_-1, n_0), which
fixes serialized states across runs.  All structures are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_MAX_ATOMS = 60

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class FockBasis:
    """Enumerated occupation triples (n_-1, n_0, n_+1) with a fixed order."""

    n_atoms: int
    states: tuple[Triple, ...]
    index_of: dict[Triple, int] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.states)


@dataclass(frozen=True)
class CollectiveOperators:
    """Dense collective-spin matrices Lx, Ly, Lz, L^2 and n0 on a FockBasis."""

    Lx: np.ndarray
    Ly: np.ndarray
    Lz: np.ndarray
    L2: np.ndarray
    n0: np.ndarray
    basis: FockBasis


@dataclass(frozen=True)
class QuantumState:
    """Unit-norm complex amplitude vector over a FockBasis."""

    amplitudes: np.ndarray
    basis: FockBasis

    def __post_init__(self):
        amp = np.array(self.amplitudes, dtype=complex)
        if amp.shape != (self.basis.dim,):
            raise ValueError(
                f"amplitude vector has shape {amp.shape}, expected ({self.basis.dim},)"
            )
        nrm = np.linalg.norm(amp)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"state norm {nrm!r} deviates from 1 by more than 1e-10")
        amp.flags.writeable = False
        object.__setattr__(self, "amplitudes", amp)


def build_basis(n_atoms: int, max_atoms: int = DEFAULT_MAX_ATOMS) -> FockBasis:
    """Enumerate the symmetric spin-1 sector for ``n_atoms`` bosons.

    The list has (N+1)(N+2)/2 triples, lexicographically ascending in
    (n_-1, n_0).  ``max_atoms`` guards against accidental quadratic-memory
    blowups; pass a larger value explicitly to go beyond the default cap.
    """
    n = int(n_atoms)
    if n < 1:
        raise ValueError("n_atoms must be a positive integer")
    if n > max_atoms:
        raise ValueError(
            f"n_atoms={n} exceeds the cap of {max_atoms}; "
            "pass max_atoms explicitly to override"
        )
    states = []
    for n_m1 in range(n + 1):
        for n_0 in range(n + 1 - n_m1):
            states.append((n_m1, n_0, n - n_m1 - n_0))
    index_of = {t: i for i, t in enumerate(states)}
    return FockBasis(n_atoms=n, states=tuple(states), index_of=index_of)


def _freeze(m: np.ndarray) -> np.ndarray:
    m.flags.writeable = False
    return m


def build_collective_ops(basis: FockBasis) -> CollectiveOperators:
    """Build Lx, Ly, Lz, L^2 and n0 as dense Hermitian matrices.

    Matrix elements come from the spin-1 ladder representation; each
    element is a single square root of an integer radicand, so no
    accumulation error beyond one rounding per entry.
    """
    d = basis.dim
    lp = np.zeros((d, d), dtype=complex)
    for i, (a, b, c) in enumerate(basis.states):
        if b >= 1:  # a_+^dag a_0
            j = basis.index_of[(a, b - 1, c + 1)]
            lp[j, i] += math.sqrt(2 * (c + 1) * b)
        if a >= 1:  # a_0^dag a_-
            j = basis.index_of[(a - 1, b + 1, c)]
            lp[j, i] += math.sqrt(2 * (b + 1) * a)
    lm = lp.conj().T
    lx = (lp + lm) / 2
    ly = (lp - lm) / 2j
    lz = np.diag([float(c - a) for (a, b, c) in basis.states]).astype(complex)
    n0 = np.diag([float(b) for (a, b, c) in basis.states]).astype(complex)
    l2 = lx @ lx + ly @ ly + lz @ lz
    l2 = (l2 + l2.conj().T) / 2
    return CollectiveOperators(
        Lx=_freeze(lx), Ly=_freeze(ly), Lz=_freeze(lz), L2=_freeze(l2),
        n0=_freeze(n0), basis=basis,
    )


def fock_state(basis: FockBasis, triple) -> QuantumState:
    """Basis ket with occupation ``triple``; e.g. (0, 0, N) is |N, +N>."""
    t = tuple(int(x) for x in triple)
    if len(t) != 3 or any(x < 0 for x in t) or sum(t) != basis.n_atoms:
        raise ValueError(
            f"occupation triple {triple} must be three non-negative integers "
            f"summing to N={basis.n_atoms}"
        )
    amp = np.zeros(basis.dim, dtype=complex)
    amp[basis.index_of[t]] = 1.0
    return QuantumState(amp, basis)


def spin_coherent(
    basis: FockBasis, theta: float, phi: float,
    ops: CollectiveOperators | None = None,
) -> QuantumState:
    """All atoms polarized along (theta, phi) on the Bloch sphere.

    Constructed by rotating the stretched state |N, +N>:
    exp(-i phi Lz) exp(-i theta Ly) |N, +N>.  Pass ``ops`` to reuse
    prebuilt operators.
    """
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("angles must be finite")
    if ops is None:
        ops = build_collective_ops(basis)
    elif ops.basis is not basis and ops.basis != basis:
        raise ValueError("operators were built on a different basis")
    amp = np.zeros(basis.dim, dtype=complex)
    amp[basis.index_of[(0, 0, basis.n_atoms)]] = 1.0
    w, v = np.linalg.eigh(ops.Ly)
    amp = v @ (np.exp(-1j * theta * w) * (v.conj().T @ amp))
    amp = np.exp(-1j * phi * np.real(np.diag(ops.Lz))) * amp
    return QuantumState(amp, basis)


def ghz_state(basis: FockBasis, phi: float = 0.0) -> QuantumState:
    """Path-entangled state (|N, +N> + e^{i phi} |N, -N>) / sqrt(2)."""
    n = basis.n_atoms
    amp = np.zeros(basis.dim, dtype=complex)
    amp[basis.index_of[(0, 0, n)]] = 1 / math.sqrt(2)
    amp[basis.index_of[(n, 0, 0)]] = np.exp(1j * phi) / math.sqrt(2)
    return QuantumState(amp, basis)


def normalize(basis: FockBasis, vector) -> QuantumState:
    """Wrap an arbitrary complex vector as a unit-norm QuantumState."""
    v = np.asarray(vector, dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("cannot normalize the zero vector")
    return QuantumState(v / nrm, basis)


def state_to_pairs(state: QuantumState) -> list[list[float]]:
    """Serialize amplitudes as [re, im] pairs in basis order (JSON-friendly)."""
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def state_from_pairs(basis: FockBasis, pairs) -> QuantumState:
    """Inverse of :func:`state_to_pairs`."""
    if len(pairs) != basis.dim:
        raise ValueError(f"expected {basis.dim} [re, im] pairs, got {len(pairs)}")
    amp = np.array([complex(re, im) for re, im in pairs])
    return QuantumState(amp, basis)
