"""Trap-geometry factors and interaction parameters for a Gaussian condensate.

For a cigar- or pancake-shaped harmonic trap with radial width q_r and
axial width q_z, the aspect ratio kappa = q_r / q_z controls the sign and
size of the effective dipole-dipole coupling through

    chi(kappa) = [2 kappa^2 + 1 - 3 kappa^2 H(kappa)] / (kappa^2 - 1),
    H(kappa)   = arctanh(sqrt(1 - kappa^2)) / sqrt(1 - kappa^2),

which sweeps from -1 (kappa -> 0, attractive) through 0 (kappa = 1, the
dipolar term vanishes) to +2 (kappa -> infinity, repulsive).  For
kappa > 1 the arctanh form continues analytically to
arctan(sqrt(kappa^2 - 1)) / sqrt(kappa^2 - 1); near kappa = 1 both closed
forms lose ~half their digits to cancellation, so a short Taylor series
in (1 - kappa^2) takes over inside a small window.

The rescaled couplings per unit mode volume are

    c0' = c0 / (2 (2 pi)^(3/2) q_r^2 q_z),   c2' likewise,
    cd' = c_d chi(kappa) / (6 sqrt(2 pi) q_r^2 q_z),

and the bare collision parameters follow from the s-wave scattering
lengths, c0 = 4 pi hbar^2 (a0 + 2 a2) / (3 M), c2 = 4 pi hbar^2 (a2 - a0)
/ (3 M).  Inputs carry whatever consistent units the caller chooses; the
module does no unit conversion.

Sign bookkeeping: the dimensionless simulation parameter is reported both
as c_ratio = cd'/|c2'| (the convention used by the interferometer modules,
which require c < 0) and, via dipolar_ratio, as the signed closed form
2 pi c_d chi(kappa) / (3 c_2).  For c2 < 0 the two differ by sign, so pick
deliberately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# closed forms lose precision to cancellation inside this window around kappa = 1
_SERIES_WINDOW = 1e-4


@dataclass(frozen=True)
class TrapGeometry:
    """Gaussian-ansatz widths; kappa = q_r / q_z is derived and validated."""

    q_r: float
    q_z: float
    kappa: float | None = None

    def __post_init__(self):
        if not (self.q_r > 0 and self.q_z > 0):
            raise ValueError("trap widths must be positive")
        ratio = self.q_r / self.q_z
        if self.kappa is None:
            object.__setattr__(self, "kappa", ratio)
        elif abs(self.kappa - ratio) > 1e-12 * max(abs(ratio), 1.0):
            raise ValueError(
                f"kappa={self.kappa} is inconsistent with q_r/q_z={ratio}"
            )


@dataclass(frozen=True)
class CouplingSet:
    """Rescaled couplings and the dimensionless dipolar ratio cd'/|c2'|."""

    c0p: float
    c2p: float
    cdp: float
    c_ratio: float


def shape_function(kappa: float) -> float:
    """Aspect-ratio shape function H(kappa), with H(1) = 1 and H'(1) = -2/3.

    Diverges like log(2/kappa) as kappa -> 0 and decays like
    (pi/2)/kappa as kappa -> infinity.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    u = 1.0 - kappa * kappa
    if abs(kappa - 1.0) < _SERIES_WINDOW:
        # arctanh(sqrt(u))/sqrt(u) = sum u^k/(2k+1); |u| < 3e-4 so 4 terms
        # reach machine precision
        return 1.0 + u / 3.0 + u * u / 5.0 + u * u * u / 7.0
    if kappa < 1.0:
        r = math.sqrt(u)
        # arctanh(r) = (ln(1+r) - ln(1-r))/2 with 1-r = kappa^2/(1+r), which
        # stays accurate where r rounds to 1 (kappa below ~1e-8)
        one_minus_r = kappa * kappa / (1.0 + r)
        return 0.5 * (math.log1p(r) - math.log(one_minus_r)) / r
    r = math.sqrt(-u)
    return math.atan(r) / r


def chi(kappa: float) -> float:
    """Dipolar geometry factor chi(kappa), increasing from -1 to 2.

    The kappa = 1 point is a removable singularity with chi(1) = 0,
    handled by a Taylor series inside the switchover window.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    if abs(kappa - 1.0) < _SERIES_WINDOW:
        w = kappa * kappa - 1.0
        return (2.0 / 5.0) * w - (6.0 / 35.0) * w * w + (2.0 / 21.0) * w ** 3
    k2 = kappa * kappa
    return (2.0 * k2 + 1.0 - 3.0 * k2 * shape_function(kappa)) / (k2 - 1.0)


def dipolar_ratio(c_d: float, c_2: float, kappa: float) -> float:
    """Signed coupling ratio cd'/c2' = 2 pi c_d chi(kappa) / (3 c_2)."""
    if c_2 == 0:
        raise ValueError("c_2 must be nonzero")
    return 2.0 * math.pi * c_d * chi(kappa) / (3.0 * c_2)


def rescaled_couplings(
    c0: float, c2: float, c_d: float, geometry: TrapGeometry,
) -> CouplingSet:
    """Couplings per Gaussian mode volume, plus c_ratio = cd'/|c2'|."""
    if c2 == 0:
        raise ValueError("c2 must be nonzero, otherwise the ratio is undefined")
    volume = geometry.q_r ** 2 * geometry.q_z
    contact_scale = 2.0 * (2.0 * math.pi) ** 1.5 * volume
    c0p = c0 / contact_scale
    c2p = c2 / contact_scale
    cdp = c_d * chi(geometry.kappa) / (6.0 * math.sqrt(2.0 * math.pi) * volume)
    return CouplingSet(c0p=c0p, c2p=c2p, cdp=cdp, c_ratio=cdp / abs(c2p))


def collision_params(a0: float, a2: float, mass: float, hbar: float = 1.0) -> tuple[float, float]:
    """Spin-independent and spin-exchange collision parameters (c0, c2).

    c0 = 4 pi hbar^2 (a0 + 2 a2) / (3 M), c2 = 4 pi hbar^2 (a2 - a0) / (3 M),
    in whatever consistent unit system the inputs use.
    """
    if not mass > 0:
        raise ValueError("mass must be positive")
    prefactor = 4.0 * math.pi * hbar * hbar / (3.0 * mass)
    return prefactor * (a0 + 2.0 * a2), prefactor * (a2 - a0)
