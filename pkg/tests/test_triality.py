import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagorbits.lie_core import DomainError, RealFormSpec, j_matrix, satisfies_defining_relations
from flagorbits.linalg import QMat, commutator, real_rank
from flagorbits.triality import (PAIRS, check_so53_conditions, coefficients, conjugate_by_R, from_coefficients,
                                 r_matrix, so53_audit, theta, theta_cube_conjugator, theta_inverse, theta_power,
                                 twisted_real_form, verify_theta_automorphism)


@pytest.fixture(scope="module")
def report():
    return verify_theta_automorphism()


def test_theta_is_automorphism(report):
    assert report.pairs_checked == 378
    assert report.failures == []
    assert report.invertible and report.inverse_ok


def test_theta_cubed_is_inner(report):
    g = report.cube_conjugator
    assert report.cube_inner
    for r, s in PAIRS[:6]:
        x = j_matrix(8, r, s)
        assert g @ x @ g.T == theta_power(x, 3)


def test_theta_is_not_a_conjugation():
    # conjugation by O_8(C) preserves the spectrum of every matrix; theta does not
    h = j_matrix(8, 1, 2) + j_matrix(8, 3, 4).scale(2) + j_matrix(8, 5, 6).scale(3) + j_matrix(8, 7, 8).scale(5)
    a, b = h.to_numpy(), theta(h).to_numpy()
    assert not np.isclose(np.trace(np.linalg.matrix_power(a, 4)), np.trace(np.linalg.matrix_power(b, 4)))


coeffs = st.lists(st.integers(-3, 3), min_size=28, max_size=28)


@settings(max_examples=25, deadline=None)
@given(coeffs, coeffs)
def test_theta_preserves_brackets_of_combinations(u, v):
    x = from_coefficients(QMat.from_entries([[c] for c in u]))
    y = from_coefficients(QMat.from_entries([[c] for c in v]))
    assert theta(commutator(x, y)) == commutator(theta(x), theta(y))
    assert theta_inverse(theta(x)) == x
    assert from_coefficients(coefficients(x)) == x


def test_theta_float_matches_exact():
    x = j_matrix(8, 2, 7) + j_matrix(8, 1, 5)
    assert np.allclose(theta_power(x.to_numpy(), 2), theta_power(x, 2).to_numpy())


def test_theta_rejects_non_antisymmetric():
    with pytest.raises(DomainError):
        theta(QMat.identity(8))


def test_so53_conditions_hold_on_theta_image():
    audit = so53_audit(1)
    assert audit.contained and audit.violations == []
    assert audit.form_dim == 28
    assert audit.conditions == 19
    assert audit.solution_dim >= 28


def test_so53_conditions_single_out_j1():
    assert not so53_audit(2).contained
    base = twisted_real_form(5, 3, 0)
    assert not all(check_so53_conditions(x) for x in base)


@pytest.mark.parametrize("p,q", [(7, 1), (6, 2), (5, 3)])
@pytest.mark.parametrize("j", [1, 2])
def test_twisted_forms(p, q, j):
    basis = twisted_real_form(p, q, j)
    assert real_rank(list(basis)) == 28
    spec = RealFormSpec.so(p, q, j)
    assert all(satisfies_defining_relations(spec, x) for x in basis)


def test_twisted_form_differs_from_untwisted():
    spec = RealFormSpec.so(5, 3)
    assert not all(satisfies_defining_relations(spec, x) for x in twisted_real_form(5, 3, 1))


def test_cube_conjugator_is_signed_permutation():
    g = theta_cube_conjugator().to_numpy()
    assert np.allclose(np.abs(g).sum(axis=0), 1) and np.allclose(np.abs(g).sum(axis=1), 1)
    assert np.isclose(np.linalg.det(g), 1)


def test_r_matrix_is_improper_orthogonal():
    r = r_matrix(8)
    assert r.T @ r == QMat.identity(8)
    assert np.isclose(np.linalg.det(r.to_numpy()), -1)
    x = j_matrix(8, 1, 2)
    assert conjugate_by_R(x, 8) == x.scale(-1)
    assert conjugate_by_R(j_matrix(8, 2, 3), 8) == j_matrix(8, 2, 3)
