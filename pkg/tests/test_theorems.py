import json
from pathlib import Path

import pytest

from flagorbits.flag_models import parse_point, random_quadric_point
from flagorbits.invariants import base_points, orbit_labels
from flagorbits.lie_core import DomainError, RealFormSpec
from flagorbits.theorems import InadmissibleError, classified_real_forms, classify_manifolds, membership

R = RealFormSpec
GOLDEN = json.loads((Path(__file__).parent / "golden" / "theorem_lists.json").read_text())


def spec_from(args):
    fam, *rest = args
    if fam == "complex":
        return R.complex_as_real(*rest)
    return getattr(R, fam)(*rest)


@pytest.mark.parametrize("case", GOLDEN, ids=lambda c: f"{c['form']}-n{c['n']}")
def test_golden_lists(case):
    res = classify_manifolds(spec_from(case["form"]), case["n"])
    assert res.names == case["models"]


def test_twist_does_not_change_the_list():
    for j in (1, 2):
        for p, q in ((5, 3), (6, 2), (7, 1)):
            a = classify_manifolds(R.so(p, q, j), 6)
            assert a.names == classify_manifolds(R.so(p, q), 6).names
            assert any("twist" in note for note in a.notes)


def test_so_star_8_points_to_so62():
    with pytest.raises(DomainError, match="so\\(6,2\\)"):
        classify_manifolds(R.so_star(8), 6)


@pytest.mark.parametrize("spec,n", [(R.su(2, 1), 3), (R.su(3, 2), 2), (R.so(5, 3), 5), (R.sp(1, 0), 2)])
def test_non_admissible_raises(spec, n):
    with pytest.raises(InadmissibleError):
        classify_manifolds(spec, n)


def test_models_are_unions_of_orbits():
    for spec in classified_real_forms():
        for n in range(2, 11):
            try:
                res = classify_manifolds(spec, n)
            except DomainError:
                continue
            for m in res.models:
                if m.compact:
                    continue
                names = {l.name: l for l in orbit_labels(m.realization)}
                assert m.labels <= set(names), (spec, m.name)
                assert any(names[x].is_open for x in m.labels), (spec, m.name)
                assert m.labels != set(names), (spec, m.name)     # proper subset: not the compact model


@pytest.mark.parametrize("form,n,model,point,inside", [
    (R.su(3, 1), 3, "B+_{3,1}", "1:0:0:0", True),
    (R.su(3, 1), 3, "B+_{3,1}", "0:0:0:1", False),
    (R.su(3, 1), 3, "B-_{3,1}", "0:0:0:1", True),
    (R.sl_r(4), 3, "P^3 \\ RP^3", "1:i:0:0", True),
    (R.sl_r(4), 3, "P^3 \\ RP^3", "1:2:3:4", False),
    (R.sp_r(6), 5, "P^5 \\ RP^5", "1:i:0:0:0:0", True),
    (R.sp_r(6), 5, "B+_{3,3}", "1:0:0:i:0:0", True),
    (R.sp_r(6), 5, "B+_{3,3}", "1:i:0:0:0:0", False),
    (R.so(5, 3), 6, "Q_6 \\ Gamma", "1:0:0:0:i:0:0:0", False),
    (R.so(5, 3), 6, "Q_6", "1:0:0:0:i:0:0:0", True),
])
def test_membership(form, n, model, point, inside):
    m = {x.name: x for x in classify_manifolds(form, n).models}[model]
    assert membership(m, parse_point(point)) is inside


def test_membership_of_base_points_in_so_models():
    res = {m.name: m for m in classify_manifolds(R.so(4, 3), 5).models}
    pts = base_points(R.so(4, 3))
    complement = res["Q_5 \\ S^1_{4,3}"]
    assert not membership(complement, pts["S1"])
    assert all(membership(complement, pts[x]) for x in ("Omega+", "Omega-", "S2"))
    assert membership(res["Omega-_{4,3}"], pts["Omega-"])
    assert not membership(res["Omega-_{4,3}"], pts["Omega+"])


def test_generic_point_lies_in_the_open_53_model():
    m = classify_manifolds(R.so(5, 3), 6).models[-1]
    assert membership(m, random_quadric_point(1, 6))


def test_membership_checks_ambient():
    m = classify_manifolds(R.so(4, 3), 5).models[1]
    with pytest.raises(DomainError):
        membership(m, parse_point("1:0:0"))
    with pytest.raises(DomainError):
        membership(m, parse_point("1:0:0:0:0:0:0"))


def test_text_rendering():
    txt = classify_manifolds(R.sl_h(2), 3).to_text()
    assert txt.endswith("biholomorphic to P^3.")
    assert "one of" in classify_manifolds(R.su(2, 1), 2).to_text()
