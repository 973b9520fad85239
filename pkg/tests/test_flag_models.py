import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagorbits.flag_models import (ProjectivePoint, is_projectively_real, on_quadric, parse_point,
                                    quadric_value, random_exact_quadric_point, random_projective_point,
                                    random_quadric_point)
from flagorbits.scalars import GaussianRational


def test_parse_exact_and_float():
    z = parse_point("1:i:-1/2")
    assert z.exact and z[1] == GaussianRational(0, 1)
    w = parse_point("0.5:1+2j")
    assert not w.exact and w[1] == 1 + 2j


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        parse_point("0:0:0")


def test_pivot_prefers_lowest_index_on_ties():
    assert parse_point("1:i:0").pivot() == 0
    assert parse_point("0:2:-2").pivot() == 1


def test_canonical_is_scale_free():
    z = parse_point("1:2:i")
    assert z.scaled(GaussianRational(3, -2)).canonical() == z.canonical()


@pytest.mark.parametrize("text", ["1:i:-1/2:3/7-2/5*i", "0:1:0"])
def test_json_roundtrip_exact(text):
    z = parse_point(text)
    back = ProjectivePoint.from_json(json.loads(json.dumps(z.to_json())))
    assert back == z


@given(st.integers(0, 10**6))
def test_json_roundtrip_float(seed):
    z = random_projective_point(seed, 4)
    assert ProjectivePoint.from_json(json.loads(json.dumps(z.to_json()))) == z


@given(st.integers(0, 10**6), st.integers(1, 10))
def test_random_quadric_points_lie_on_quadric(seed, n):
    z = random_quadric_point(seed, n)
    assert len(z) == n + 2
    assert on_quadric(z)


@given(st.integers(0, 10**6))
def test_exact_quadric_points(seed):
    z = random_exact_quadric_point(seed, 6)
    assert quadric_value(z) == 0


def test_projective_reality():
    assert is_projectively_real(parse_point("1:2:3"))
    assert is_projectively_real(parse_point("i:2*i:3*i"))
    assert not is_projectively_real(parse_point("1:i:0"))
    assert is_projectively_real(ProjectivePoint.of(np.array([1, 2, 3]) * (0.3 + 0.8j)))
    assert not is_projectively_real(parse_point("1:i:0").to_float())


def test_seeded_sampling_is_deterministic():
    assert random_projective_point(7, 3) == random_projective_point(7, 3)
    assert random_projective_point(7, 3) != random_projective_point(8, 3)
