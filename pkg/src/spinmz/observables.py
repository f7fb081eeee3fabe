"""Fidelities, phase extraction, spin moments, squeezing and Fisher information.

Fidelity follows the squared-overlap convention F = |<a|b>|^2 throughout.
The GHZ-family overlap max_phi |<psi|(|N,+N> + e^{i phi}|N,-N>)/sqrt(2)>|^2
has the closed form (|alpha| + |beta|)^2 / 2 in terms of the two stretched
amplitudes, maximized at phi* = arg(beta) - arg(alpha).

Spin squeezing is quantified as xi^2 = 4 min Var(L_perp) / N, the minimal
variance over axes perpendicular to the mean spin.  With this
normalization a fully polarized product of N spin-1 atoms gives xi^2 = 2
(each atom contributes perpendicular variance 1/2), so values below that
baseline indicate squeezing of the spin-1 ensemble; the parameter is
undefined when the mean spin vanishes, as it does for GHZ states, and
that case raises UndefinedSqueezingError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import CollectiveOperators, QuantumState, ghz_state


class UndefinedSqueezingError(ValueError):
    """The mean spin vanishes, so no perpendicular plane is defined."""


@dataclass(frozen=True)
class SpinMoments:
    """Mean spin vector and symmetrized 3x3 covariance matrix."""

    mean: np.ndarray
    covariance: np.ndarray


@dataclass(frozen=True)
class SqueezingReport:
    """Squeezing parameter with the minimizing perpendicular axis."""

    xi2: float
    optimal_axis: np.ndarray
    mean_spin_magnitude: float


def _check_same_basis(a: QuantumState, b: QuantumState):
    if a.basis is not b.basis and a.basis != b.basis:
        raise ValueError("states live on different bases")


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """Squared overlap |<a|b>|^2."""
    _check_same_basis(a, b)
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def ghz_fidelity(psi: QuantumState) -> float:
    """Fidelity against the equal-phase GHZ state (|N,+N> + |N,-N>)/sqrt(2)."""
    return fidelity(psi, ghz_state(psi.basis, 0.0))


def max_phase_fidelity(psi: QuantumState) -> tuple[float, float]:
    """Best overlap with the phase-parameterized GHZ family, and its phase.

    Returns ((|alpha| + |beta|)^2 / 2, arg(beta) - arg(alpha) mod 2 pi)
    where alpha, beta are the amplitudes on |N, +N> and |N, -N>.  When
    either amplitude vanishes the phase is reported as 0.
    """
    basis = psi.basis
    n = basis.n_atoms
    alpha = psi.amplitudes[basis.index_of[(0, 0, n)]]
    beta = psi.amplitudes[basis.index_of[(n, 0, 0)]]
    f_max = (abs(alpha) + abs(beta)) ** 2 / 2
    if abs(alpha) == 0 or abs(beta) == 0:
        return float(f_max), 0.0
    phi = (np.angle(beta) - np.angle(alpha)) % (2 * math.pi)
    return float(f_max), float(phi)


def extract_phase(f0: float, f1: float) -> float:
    """Invert F0 = cos^2(phi/2), F1 = sin^2(phi/2) to phi in [0, pi].

    The inversion cannot distinguish +-phi; the non-negative branch is
    returned.
    """
    if f0 < 0 or f1 < 0:
        raise ValueError("fidelities must be non-negative")
    if f0 + f1 > 1 + 1e-6:
        raise ValueError(f"f0 + f1 = {f0 + f1!r} exceeds 1 + 1e-6")
    return 2.0 * math.atan2(math.sqrt(f1), math.sqrt(f0))


def mean_spin(psi: QuantumState, ops: CollectiveOperators) -> np.ndarray:
    """Expectation values (<Lx>, <Ly>, <Lz>)."""
    if psi.basis is not ops.basis and psi.basis != ops.basis:
        raise ValueError("state and operators live on different bases")
    a = psi.amplitudes
    return np.array([
        float(np.vdot(a, m @ a).real) for m in (ops.Lx, ops.Ly, ops.Lz)
    ])


def spin_moments(psi: QuantumState, ops: CollectiveOperators) -> SpinMoments:
    """Mean spin and symmetrized covariance C_ij = Re<L_i L_j> - <L_i><L_j>."""
    if psi.basis is not ops.basis and psi.basis != ops.basis:
        raise ValueError("state and operators live on different bases")
    a = psi.amplitudes
    w = [m @ a for m in (ops.Lx, ops.Ly, ops.Lz)]
    mean = np.array([float(np.vdot(a, wi).real) for wi in w])
    cov = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            # Re<w_i|w_j> is exactly the symmetrized second moment
            cov[i, j] = cov[j, i] = float(np.vdot(w[i], w[j]).real) - mean[i] * mean[j]
    mean.flags.writeable = False
    cov.flags.writeable = False
    return SpinMoments(mean=mean, covariance=cov)


def _perpendicular_frame(direction: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal pair spanning the plane normal to ``direction``.

    Gram-Schmidt against the coordinate axis least aligned with the
    direction, then a cross product for the second leg.
    """
    k = int(np.argmin(np.abs(direction)))
    e1 = np.zeros(3)
    e1[k] = 1.0
    e1 -= (e1 @ direction) * direction
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(direction, e1)
    return e1, e2


def squeezing_parameter(psi: QuantumState, ops: CollectiveOperators) -> SqueezingReport:
    """Spin squeezing xi^2 = 4 min Var(L_perp) / N and the optimal axis.

    Raises UndefinedSqueezingError when |<L>| < 1e-6 N, where the
    perpendicular plane (and hence the parameter) is undefined.
    """
    moments = spin_moments(psi, ops)
    n = psi.basis.n_atoms
    magnitude = float(np.linalg.norm(moments.mean))
    if magnitude < 1e-6 * n:
        raise UndefinedSqueezingError(
            f"mean spin magnitude {magnitude:.3e} is below 1e-6 N; "
            "the squeezing parameter is undefined (GHZ-like state)"
        )
    direction = moments.mean / magnitude
    e1, e2 = _perpendicular_frame(direction)
    c = moments.covariance
    b11 = e1 @ c @ e1
    b22 = e2 @ c @ e2
    b12 = e1 @ c @ e2
    discriminant = math.hypot(b11 - b22, 2 * b12)
    var_min = (b11 + b22 - discriminant) / 2
    # eigenvector of the 2x2 block for its smaller eigenvalue
    if discriminant == 0:
        u = np.array([1.0, 0.0])
    else:
        u = np.array([b12, var_min - b11])
        alt = np.array([var_min - b22, b12])
        if np.linalg.norm(alt) > np.linalg.norm(u):
            u = alt
        u /= np.linalg.norm(u)
    axis = u[0] * e1 + u[1] * e2
    if axis[int(np.argmax(np.abs(axis)))] < 0:
        axis = -axis
    axis.flags.writeable = False
    return SqueezingReport(
        xi2=float(4 * var_min / n),
        optimal_axis=axis,
        mean_spin_magnitude=magnitude,
    )


def qfi(psi: QuantumState, generator: np.ndarray) -> float:
    """Pure-state quantum Fisher information 4 Var(G) for a Hermitian generator.

    For the GHZ state with G = Lz/2 this equals N^2, the Heisenberg
    scaling; uncorrelated probes are bounded by N.
    """
    g = np.asarray(generator)
    dim = psi.basis.dim
    if g.shape != (dim, dim):
        raise ValueError(f"generator shape {g.shape} does not match basis dim {dim}")
    scale = np.abs(g).max() or 1.0
    if np.abs(g - g.conj().T).max() > 1e-12 * scale:
        raise ValueError("generator is not Hermitian within tolerance")
    a = psi.amplitudes
    w = g @ a
    mean = np.vdot(a, w).real
    second = np.vdot(w, w).real
    return float(4.0 * (second - mean * mean))
