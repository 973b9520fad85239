import numpy as np
import pytest
from scipy.linalg import expm

from flagorbits.explorer import (CensusReport, FlowConfig, empirical_orbit_census, flow_point,
                                 invariant_stability_test, random_element, scaling_invariance_test)
from flagorbits.flag_models import ProjectivePoint, on_quadric, parse_point, random_quadric_point
from flagorbits.geometry import orbit_dimension
from flagorbits.invariants import base_points, classify_point
from flagorbits.lie_core import DomainError, RealFormSpec, real_form_basis

R = RealFormSpec


def test_flow_at_zero_is_identity():
    spec = R.su(2, 1)
    z = parse_point("1:2:i")
    x = real_form_basis(spec)[3]
    assert np.allclose(flow_point(spec, z, x, 0.0).array(), z.to_float().canonical().array())


def test_flow_inverse():
    spec = R.sp_r(4)
    rng = np.random.default_rng(3)
    x = random_element(spec, rng)
    z = parse_point("1:i:2:0").to_float()
    w = flow_point(spec, flow_point(spec, z, x, 0.7), x, -0.7)
    assert np.allclose(w.array(), z.canonical().array(), atol=1e-9)


def test_flow_preserves_quadric():
    spec = R.so(4, 3)
    rng = np.random.default_rng(5)
    z = random_quadric_point(rng, 5)
    w = flow_point(spec, z, random_element(spec, rng), 1.0)
    assert on_quadric(w, 1e-9)


def test_expm_accuracy_against_series():
    # Taylor series to high order as an independent reference on a small-norm element
    rng = np.random.default_rng(0)
    x = random_element(R.so(5, 3, 1), rng) * 0.5
    ref, term = np.eye(8, dtype=complex), np.eye(8, dtype=complex)
    for k in range(1, 40):
        term = term @ x / k
        ref = ref + term
    assert np.max(np.abs(expm(x) - ref)) <= 1e-12 * np.max(np.abs(ref))


def test_flow_rejects_foreign_matrix():
    with pytest.raises(DomainError):
        flow_point(R.su(2, 1), parse_point("1:0:0"), np.eye(3), 0.1)


def test_flow_rejects_long_times():
    x = real_form_basis(R.su(2, 1))[0]
    with pytest.raises(DomainError):
        flow_point(R.su(2, 1), parse_point("1:0:0"), x, 1.5)


def test_su21_flows_stay_in_B_plus():
    rep = invariant_stability_test(R.su(2, 1), parse_point("1:0:0"), FlowConfig(seed=1, trials=100))
    assert rep.label == "B+" and rep.passed
    assert rep.probes == 100 * 20


def test_sigma_flows_stay_in_sigma():
    rep = invariant_stability_test(R.sp_r(4), parse_point("1:i:0:0"), FlowConfig(seed=2, trials=30))
    assert rep.label == "Sigma" and rep.passed
    assert rep.max_form_residual <= 1e-9


def test_gamma_flows_keep_dimension_nine():
    z = parse_point("1:0:0:0:i:0:0:0")
    rep = invariant_stability_test(R.so(5, 3, 1), z, FlowConfig(seed=3, trials=5), track_dimension=True)
    assert rep.label == "Gamma" and rep.passed


def test_boundary_uncertain_start_rejected():
    with pytest.raises(DomainError):
        invariant_stability_test(R.su(2, 1), ProjectivePoint.of([1, 0, 1 + 1e-8], exact=False))


def test_scaling_probes():
    for spec in (R.so(4, 3), R.so_star(10), R.sp_r(6)):
        for z in base_points(spec).values():
            assert scaling_invariance_test(spec, z, FlowConfig(seed=4, trials=20)) == []


def test_census_su21():
    rep = empirical_orbit_census(R.su(2, 1), 2, 2000, FlowConfig(seed=0))
    assert rep.sampled_labels == ["B+", "B-"]
    assert rep.constructed["Q"]["classified_as"] == "Q"
    assert rep.constructed["Q"]["orbit_dim"] == 3
    assert rep.passed
    assert sum(v["count"] for v in rep.counts.values()) == 2000


def test_census_so71_twisted_single_orbit():
    rep = empirical_orbit_census(R.so(7, 1, 1), 6, 500, FlowConfig(seed=0))
    assert rep.sampled_labels == ["transitive"]
    assert rep.counts["transitive"]["min_dim"] == rep.counts["transitive"]["max_dim"] == 12


def test_census_so53_twisted():
    rep = empirical_orbit_census(R.so(5, 3, 1), 6, 500, FlowConfig(seed=0))
    assert rep.counts["open_53"]["min_dim"] == 12 and rep.counts["open_53"]["max_dim"] == 12
    assert rep.constructed["Gamma"]["orbit_dim"] == 9
    assert rep.passed


def _unit(v):
    return v / np.linalg.norm(v)


def test_gamma_contains_the_two_point_families():
    rng = np.random.default_rng(9)
    spec = R.so(5, 3, 1)
    pts = []
    for _ in range(4):
        c, d = _unit(rng.standard_normal(4)), _unit(rng.standard_normal(4))
        pts.append(np.concatenate([c, 1j * d]))
        # c in C^4 with Im(sum c_j^2) = 0: rotate a random vector by the phase that makes sum c^2 real
        w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = _unit(w * np.exp(-0.5j * np.angle(np.sum(w ** 2))))
        assert abs(np.sum(w ** 2).imag) < 1e-12
        pts.append(np.concatenate([w, 1j * np.conj(w)]))
    for z in pts:
        pt = ProjectivePoint.of(z, exact=False)
        assert on_quadric(pt)
        assert orbit_dimension(spec, pt) == 9
        assert classify_point(spec, pt).label.name == "Gamma"


def test_census_deterministic_and_mergeable():
    cfg = FlowConfig(seed=12)
    a = empirical_orbit_census(R.sl_r(3), 2, 300, cfg)
    b = empirical_orbit_census(R.sl_r(3), 2, 300, cfg)
    assert a.to_json() == b.to_json()
    merged = a.merge(b)
    assert merged.samples == 600
    assert sum(v["count"] for v in merged.counts.values()) == 600
    with pytest.raises(DomainError):
        a.merge(empirical_orbit_census(R.su(2, 1), 2, 10, cfg))


def test_census_rejects_wrong_dimension():
    with pytest.raises(DomainError):
        empirical_orbit_census(R.so(4, 2), 3, 10)
    with pytest.raises(DomainError):
        empirical_orbit_census(R.su(2, 1), 3, 10)


def test_config_validation():
    with pytest.raises(DomainError):
        FlowConfig(zero_tol=0)
    with pytest.raises(DomainError):
        FlowConfig(grid=1)
    assert len(FlowConfig().times()) == 20
    assert isinstance(CensusReport(R.su(2, 1), 2, 1, 0).passed, bool)
