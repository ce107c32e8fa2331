import math

import numpy as np
import pytest

from dbbdirac.errors import DomainError, LowDensityError
from dbbdirac.packet import (FieldSample, PacketSpec, QuadratureConfig,
                             amplitude, field_sample, fields_on_grid,
                             initial_peak_radius, radial_fields, velocity)
from dbbdirac.special import bessel_j
from dbbdirac.units import C, HBAR

SPEC = PacketSpec(two_j=5, p0=1e-4, sigma_p=1e-7)


def test_spec_validation():
    with pytest.raises(DomainError):
        PacketSpec(two_j=4, p0=1e-4, sigma_p=1e-7)
    with pytest.raises(DomainError):
        PacketSpec(two_j=5, p0=0.0, sigma_p=1e-7)
    with pytest.raises(DomainError):
        PacketSpec(two_j=5, p0=1e-4, sigma_p=0.0)
    with pytest.raises(DomainError):
        PacketSpec(two_j=5, p0=1e-4, sigma_p=1e-7, m=-1.0)
    with pytest.raises(DomainError):
        QuadratureConfig(n_nodes=8)


def test_amplitude_profile():
    assert amplitude(SPEC, SPEC.p0) == pytest.approx(math.sqrt(SPEC.p0))
    # symmetric Gaussian factor around p0 once sqrt(p) is divided out
    dp = 3.0 * SPEC.sigma_p
    up = amplitude(SPEC, SPEC.p0 + dp) / math.sqrt(SPEC.p0 + dp)
    dn = amplitude(SPEC, SPEC.p0 - dp) / math.sqrt(SPEC.p0 - dp)
    assert up == pytest.approx(dn, rel=1e-12)
    with pytest.raises(DomainError):
        amplitude(SPEC, -1e-5)


def test_radial_fields_match_direct_quadrature():
    """Independent oracle: assemble the integral from nodes by hand."""
    r, t = 21.0, 0.003
    p, w, a, omega, _, _ = SPEC._nodes
    phase = np.exp(-1j * omega * t)
    x = r * p / HBAR
    f1_o = 1j * np.sum(w * a * C * p * phase * bessel_j(2, x))
    f2_o = -np.sum(w * a * C * p * phase * bessel_j(3, x))
    f1, f2 = radial_fields(SPEC, r, t)
    assert f1 == pytest.approx(f1_o, rel=1e-13)
    assert f2 == pytest.approx(f2_o, rel=1e-13)


def test_quadrature_convergence():
    fine = PacketSpec(two_j=5, p0=1e-4, sigma_p=1e-7,
                      quad=QuadratureConfig(n_nodes=4096))
    for r, t in [(5.0, 0.0), (22.7, 0.001), (60.0, 0.01)]:
        c_def = field_sample(SPEC, r, t)
        c_fine = field_sample(fine, r, t)
        assert c_def.rho == pytest.approx(c_fine.rho, rel=1e-8)
        assert c_def.j_phi == pytest.approx(c_fine.j_phi, rel=1e-8)


def test_initial_flux_is_purely_azimuthal():
    # at t = 0 the cross term f1* f2 is i x (real), so j_r vanishes
    for r in (3.0, 22.7, 50.0):
        s = field_sample(SPEC, r, 0.0)
        assert s.j_r == pytest.approx(0.0, abs=1e-12 * abs(s.j_phi))


def test_fields_on_grid_matches_scalar_path():
    r = np.array([2.0, 22.7, 41.5])
    rho, jr, jphi = fields_on_grid(SPEC, r, 0.004)
    for i, ri in enumerate(r):
        s = field_sample(SPEC, float(ri), 0.004)
        assert rho[i] == pytest.approx(s.rho, rel=1e-14)
        assert jr[i] == pytest.approx(s.j_r, rel=1e-14)
        assert jphi[i] == pytest.approx(s.j_phi, rel=1e-14)


def test_speed_bound_on_sampled_fields():
    rng = np.random.default_rng(3)
    for _ in range(300):
        r = float(rng.uniform(0.5, 80.0))
        t = float(rng.uniform(0.0, 0.02))
        try:
            v_r, v_phi = velocity(SPEC, r, t)
        except LowDensityError:
            continue
        assert math.hypot(v_r, v_phi) <= C * (1.0 + 1e-6)


def test_velocity_refused_in_dead_zone():
    # far outside every populated region the density underflows the floor
    with pytest.raises(LowDensityError) as err:
        velocity(SPEC, 1e30, 0.0)
    assert "density" in str(err.value)


def test_amplitude_scaling_invariance():
    scaled = PacketSpec(two_j=5, p0=1e-4, sigma_p=1e-7, amplitude_factor=137.0)
    for r, t in [(10.0, 0.0), (22.7, 0.005), (35.0, 0.012)]:
        v1 = velocity(SPEC, r, t)
        v2 = velocity(scaled, r, t)
        assert v1[0] == pytest.approx(v2[0], rel=1e-12, abs=1e-9 * C)
        assert v1[1] == pytest.approx(v2[1], rel=1e-12, abs=1e-9 * C)
    # the floor scales with amplitude too, so the dead zone is unchanged
    ratio = scaled.rho_floor / SPEC.rho_floor
    assert ratio == pytest.approx(137.0 ** 2, rel=1e-12)


def test_continuity_residual_on_grid():
    """d rho / dt + (1/r) d(r j_r)/dr = 0 within 1e-4 of the field scale."""
    r = np.linspace(5.0, 60.0, 881)
    dt = 1e-7
    dr = r[1] - r[0]
    for t in (0.002, 0.006):
        rho_p, _, _ = fields_on_grid(SPEC, r, t + dt)
        rho_m, _, _ = fields_on_grid(SPEC, r, t - dt)
        _, jr, _ = fields_on_grid(SPEC, r, t)
        drho_dt = (rho_p - rho_m) / (2.0 * dt)
        div = np.gradient(r * jr, dr) / r
        resid = drho_dt + div
        scale = np.max(np.abs(drho_dt))
        assert np.max(np.abs(resid[2:-2])) <= 1e-4 * scale


def test_initial_peak_radius_against_dense_scan():
    r = np.linspace(0.0, 60.0, 600001)
    rho, _, _ = fields_on_grid(SPEC, r, 0.0)
    idx = np.nonzero((rho[1:-1] > rho[:-2]) & (rho[1:-1] >= rho[2:]))[0]
    assert initial_peak_radius(SPEC) == pytest.approx(r[idx[0] + 1], abs=1e-3)


def test_initial_peak_radius_origin_case():
    spec = PacketSpec(two_j=1, p0=1e-4, sigma_p=1e-7)
    assert initial_peak_radius(spec) == 0.0


def test_narrow_packet_approaches_stationary_profile():
    from dbbdirac.stationary import StationaryState, density_stat
    narrow = PacketSpec(two_j=5, p0=1e-4, sigma_p=1e-10)
    state = StationaryState(two_j=5, p=1e-4)
    r = np.linspace(1.0, 50.0, 25)
    rho, _, _ = fields_on_grid(narrow, r, 0.0)
    ref = density_stat(state, r)
    # shapes agree after normalizing out the overall packet weight
    assert rho / rho.max() == pytest.approx(ref / ref.max(), abs=1e-4)


def test_field_sample_type():
    s = field_sample(SPEC, 10.0, 0.0)
    assert isinstance(s, FieldSample)
    assert s.rho > 0.0
