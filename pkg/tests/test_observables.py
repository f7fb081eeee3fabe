import math

import numpy as np
import pytest

from spinmz import (
    UndefinedSqueezingError,
    build_basis,
    build_collective_ops,
    extract_phase,
    fidelity,
    fock_state,
    ghz_fidelity,
    ghz_state,
    max_phase_fidelity,
    mean_spin,
    normalize,
    qfi,
    spin_coherent,
    spin_moments,
    squeezing_parameter,
)


def random_state(rng, basis):
    v = rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim)
    return normalize(basis, v)


def ghz_overlap_peak_from_samples(psi, n_samples=4096):
    """Sampled-overlap oracle: fidelity to the GHZ family on a uniform phase
    grid, with the exact peak of the single-harmonic curve recovered from the
    samples by Fourier quadrature."""
    phis = np.arange(n_samples) * (2 * np.pi / n_samples)
    f = np.array([fidelity(psi, ghz_state(psi.basis, p)) for p in phis])
    mean = f.mean()
    harmonic = 2.0 / n_samples * np.sum(f * np.exp(-1j * phis))
    return mean + abs(harmonic), float(f.max())


def test_fidelity_basics(basis10):
    a = fock_state(basis10, (0, 0, 10))
    b = fock_state(basis10, (10, 0, 0))
    assert fidelity(a, a) == pytest.approx(1.0)
    assert fidelity(a, b) == 0.0
    assert fidelity(a, b) == fidelity(b, a)
    g = ghz_state(basis10)
    assert fidelity(g, a) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ValueError):
        fidelity(a, fock_state(build_basis(9), (0, 0, 9)))


def test_global_phase_invariance(rng, basis10, ops10):
    psi = random_state(rng, basis10)
    rotated = normalize(basis10, np.exp(1j * 1.234) * psi.amplitudes)
    assert ghz_fidelity(rotated) == pytest.approx(ghz_fidelity(psi), abs=1e-12)
    f0, _ = max_phase_fidelity(psi)
    f1, _ = max_phase_fidelity(rotated)
    assert f0 == pytest.approx(f1, abs=1e-12)
    assert np.allclose(mean_spin(rotated, ops10), mean_spin(psi, ops10), atol=1e-12)
    assert qfi(rotated, np.asarray(ops10.Lz)) == pytest.approx(
        qfi(psi, np.asarray(ops10.Lz)), abs=1e-9
    )


def test_ghz_fidelity_values(basis10):
    assert ghz_fidelity(ghz_state(basis10, 0.0)) == pytest.approx(1.0)
    assert ghz_fidelity(ghz_state(basis10, math.pi)) == pytest.approx(0.0, abs=1e-14)


def test_max_phase_fidelity_on_family(basis10):
    for phi in (0.0, 0.4, math.pi, 5.9):
        f, phi_star = max_phase_fidelity(ghz_state(basis10, phi))
        assert f == pytest.approx(1.0, abs=1e-12)
        assert phi_star == pytest.approx(phi % (2 * math.pi), abs=1e-12)
    f, phi_star = max_phase_fidelity(fock_state(basis10, (0, 0, 10)))
    assert f == pytest.approx(0.5)
    assert phi_star == 0.0


def test_max_phase_fidelity_vs_sampled_oracle(rng, basis10):
    for _ in range(20):
        psi = random_state(rng, basis10)
        f, _ = max_phase_fidelity(psi)
        oracle, grid_max = ghz_overlap_peak_from_samples(psi)
        assert abs(f - oracle) <= 1e-10
        assert abs(f - grid_max) <= 1e-5
        assert f >= ghz_fidelity(psi) - 1e-14


def test_extract_phase():
    assert extract_phase(1.0, 0.0) == pytest.approx(0.0)
    assert extract_phase(0.5, 0.5) == pytest.approx(math.pi / 2)
    assert extract_phase(0.0, 1.0) == pytest.approx(math.pi)
    for phi in np.linspace(0, math.pi, 17):
        f0 = math.cos(phi / 2) ** 2
        f1 = math.sin(phi / 2) ** 2
        assert extract_phase(f0, f1) == pytest.approx(phi, abs=1e-12)
    with pytest.raises(ValueError):
        extract_phase(-0.1, 0.5)
    with pytest.raises(ValueError):
        extract_phase(0.9, 0.2)


def test_mean_spin_values(basis10, ops10):
    assert np.allclose(mean_spin(fock_state(basis10, (0, 0, 10)), ops10), [0, 0, 10])
    for phi in (0.0, 2.2):
        assert np.abs(mean_spin(ghz_state(basis10, phi), ops10)).max() <= 1e-12
    x = spin_coherent(basis10, math.pi / 2, 0.0, ops=ops10)
    assert np.abs(mean_spin(x, ops10) - [10, 0, 0]).max() <= 1e-9


def test_covariance_symmetric_psd(rng, basis10, ops10):
    for _ in range(10):
        m = spin_moments(random_state(rng, basis10), ops10)
        assert np.array_equal(m.covariance, m.covariance.T)
        assert np.linalg.eigvalsh(m.covariance).min() >= -1e-10


def test_squeezing_polarized_baseline(ops10, basis10):
    report = squeezing_parameter(fock_state(basis10, (0, 0, 10)), ops10)
    assert report.xi2 == pytest.approx(2.0, abs=1e-9)
    assert report.mean_spin_magnitude == pytest.approx(10.0, abs=1e-12)
    assert abs(report.optimal_axis @ [0, 0, 1]) <= 1e-10
    assert np.linalg.norm(report.optimal_axis) == pytest.approx(1.0)


def test_squeezing_undefined_for_ghz(basis10, ops10):
    with pytest.raises(UndefinedSqueezingError):
        squeezing_parameter(ghz_state(basis10, 0.0), ops10)
    with pytest.raises(UndefinedSqueezingError):
        squeezing_parameter(ghz_state(basis10, 1.3), ops10)


def test_squeezing_axis_orthogonal_and_frame_independent(rng, basis10, ops10):
    for _ in range(10):
        psi = random_state(rng, basis10)
        m = spin_moments(psi, ops10)
        nrm = np.linalg.norm(m.mean)
        if nrm < 1e-6 * 10:
            continue
        report = squeezing_parameter(psi, ops10)
        direction = m.mean / nrm
        assert abs(report.optimal_axis @ direction) <= 1e-10
        # minimal perpendicular variance is frame independent: rotate the
        # perpendicular basis by an arbitrary angle and re-minimize
        e1 = report.optimal_axis
        e2 = np.cross(direction, e1)
        for ang in (0.3, 1.1, 2.7):
            f1 = math.cos(ang) * e1 + math.sin(ang) * e2
            f2 = -math.sin(ang) * e1 + math.cos(ang) * e2
            b = np.array([
                [f1 @ m.covariance @ f1, f1 @ m.covariance @ f2],
                [f1 @ m.covariance @ f2, f2 @ m.covariance @ f2],
            ])
            lam_min = np.linalg.eigvalsh(b)[0]
            assert 4 * lam_min / 10 == pytest.approx(report.xi2, abs=1e-10)
        # variance along the reported axis equals the reported minimum
        var_axis = report.optimal_axis @ m.covariance @ report.optimal_axis
        assert 4 * var_axis / 10 == pytest.approx(report.xi2, abs=1e-10)


def test_qfi_values(basis10, ops10):
    g = np.asarray(ops10.Lz) / 2
    assert qfi(ghz_state(basis10, 0.0), g) == pytest.approx(100.0, abs=1e-9)
    assert qfi(fock_state(basis10, (0, 0, 10)), g) == pytest.approx(0.0, abs=1e-12)
    shifted = g + 3.7 * np.eye(basis10.dim)
    psi = ghz_state(basis10, 0.7)
    assert qfi(psi, shifted) == pytest.approx(qfi(psi, g), abs=1e-9)
    with pytest.raises(ValueError):
        qfi(psi, np.triu(np.ones((66, 66))))
    with pytest.raises(ValueError):
        qfi(psi, np.eye(10))
