import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from flagorbits.flag_models import (ProjectivePoint, parse_point, random_exact_quadric_point,
                                    random_projective_point, random_quadric_point)
from flagorbits.geometry import orbit_dimension, tangent_span, tangent_vector
from flagorbits.lie_core import DomainError, RealFormSpec, real_form_basis
from flagorbits.linalg import QMat

R = RealFormSpec


def test_torus_fixes_e1():
    x = QMat.diag([1, -1, 0])
    assert all(c == 0 for c in tangent_vector(x, parse_point("1:0:0")))


def test_elementary_moves_e1_to_e2():
    x = QMat.unit(3, 1, 0)
    v = tangent_vector(x, parse_point("1:0:0"))
    assert [complex(c) for c in v] == [1, 0]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_tangent_matches_finite_difference(seed):
    rng = np.random.default_rng(seed)
    basis = real_form_basis(R.su(2, 2)).to_numpy()
    x = np.tensordot(rng.standard_normal(len(basis)), basis, axes=1)
    z = random_projective_point(rng, 3)
    piv = z.pivot()
    zv = z.array()
    h = 1e-5

    def chart(t):
        w = expm(t * x) @ zv
        return np.delete(w / w[piv], piv)

    fd = (chart(h) - chart(-h)) / (2 * h)
    assert np.allclose(tangent_vector(x, z, piv), fd, atol=1e-8 * max(1.0, np.abs(fd).max()))


@pytest.mark.parametrize("spec,point,dim", [
    (R.su(2, 1), "1:0:1", 3),
    (R.sl_r(4), "1:0:0:0", 3),
    (R.sp_r(4), "1:i:0:0", 5),
    (R.so(5, 3, 1), "1:0:0:0:i:0:0:0", 9),
    (R.sp(1, 1), "1:1:0:0", 5),
])
def test_exact_anchors(spec, point, dim):
    assert orbit_dimension(spec, parse_point(point)) == dim


def test_so71_twisted_is_transitive_at_exact_points():
    spec = R.so(7, 1, 1)
    for seed in range(4):
        assert orbit_dimension(spec, random_exact_quadric_point(seed, 6)) == 12


def test_chart_independence():
    spec = R.su(2, 1)
    z = parse_point("3:4*i:5")
    ranks = {tangent_span(spec, z, piv).rank for piv in range(3)}
    assert ranks == {3}


@pytest.mark.parametrize("spec,n", [
    (R.su(3, 1), 3), (R.sl_r(3), 2), (R.sl_h(2), 3), (R.sp(2, 1), 5), (R.sp_r(6), 5),
    (R.so(5, 2), 5), (R.so_star(10), 8), (R.complex_as_real("A", 3), 2),
])
def test_open_orbit_at_random_points(spec, n):
    rng = np.random.default_rng(11)
    for _ in range(5):
        z = random_quadric_point(rng, n) if spec.ambient == "so" else random_projective_point(rng, n)
        assert orbit_dimension(spec, z) == 2 * n


def test_exact_and_float_rank_agree():
    spec = R.so(4, 3)
    z = random_exact_quadric_point(3, 5)
    assert orbit_dimension(spec, z) == orbit_dimension(spec, z.to_float())


def test_size_mismatch():
    with pytest.raises(DomainError):
        orbit_dimension(R.su(2, 1), parse_point("1:0"))
    with pytest.raises(DomainError):
        tangent_vector(QMat.identity(3), ProjectivePoint.of([1, 0]))
