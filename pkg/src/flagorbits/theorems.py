"""Classification lists of manifolds with classical symmetry, as data tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .flag_models import ProjectivePoint, on_quadric
from .invariants import classify_point
from .lie_core import DomainError, RealFormSpec
from .parabolic import check_conditions

R = RealFormSpec


class InadmissibleError(DomainError):
    """The (form, n) pair does not satisfy Condition (>) and (=)."""

    def __init__(self, result):
        self.result = result
        super().__init__(f"{result.spec} with n={result.n}: {result.message()} (see check_conditions)")


@dataclass(frozen=True)
class ModelSpace:
    """A model manifold: a union of orbits of ``realization`` on the flag manifold ``ambient``.

    ``labels`` lists orbit names whose union is the model; ``None`` means the whole
    flag manifold.
    """

    name: str
    ambient: str                     # "P^n" or "Q_n"
    n: int
    realization: Optional[RealFormSpec] = None
    labels: Optional[frozenset] = None

    @property
    def compact(self):
        return self.labels is None

    @property
    def on_quadric(self):
        return self.ambient.startswith("Q")

    def descriptor(self):
        if self.compact:
            return f"all of {self.ambient}"
        return f"orbits {sorted(self.labels)} of {self.realization} on {self.ambient}"

    def to_json(self):
        return {"name": self.name, "ambient": self.ambient, "open": True,
                "compact": self.compact,
                "realization": None if self.realization is None else self.realization.name,
                "labels": None if self.labels is None else sorted(self.labels),
                "descriptor": self.descriptor()}


def membership(model: ModelSpace, z: ProjectivePoint) -> bool:
    want = model.n + (2 if model.on_quadric else 1)
    if len(z) != want:
        raise DomainError(f"{model.name} lives in P^{want - 1}; point has {len(z)} coordinates")
    if model.on_quadric and not on_quadric(z):
        raise DomainError(f"point is not on {model.ambient}")
    if model.compact:
        return True
    return classify_point(model.realization, z).label.name in model.labels


@dataclass
class ClassificationResult:
    spec: RealFormSpec
    n: int
    table: str
    models: list
    notes: list = field(default_factory=list)

    @property
    def names(self):
        return [m.name for m in self.models]

    def to_json(self):
        return {"form": self.spec.name, "n": self.n, "table": self.table,
                "models": [m.to_json() for m in self.models], "notes": self.notes}

    def to_text(self):
        body = ", ".join(self.names)
        if len(self.models) == 1:
            return f"{self.spec} acting on a connected complex {self.n}-manifold X: X is biholomorphic to {body}."
        return f"{self.spec} acting on a connected complex {self.n}-manifold X: X is biholomorphic to one of {body}."


# ---------------------------------------------------------------------------
# helpers building models


def _P(n):
    return ModelSpace(f"P^{n}", f"P^{n}", n)


def _Q(n):
    return ModelSpace(f"Q_{n}", f"Q_{n}", n)


def _inP(name, n, spec, *labels):
    return ModelSpace(name, f"P^{n}", n, spec, frozenset(labels))


def _inQ(name, n, spec, *labels):
    return ModelSpace(name, f"Q_{n}", n, spec, frozenset(labels))


def _su(p, q, n):
    s = R.su(p, q)
    if q == 0:
        return [_P(n)]
    return [_P(n), _inP(f"B+_{{{p},{q}}}", n, s, "B+"), _inP(f"B-_{{{p},{q}}}", n, s, "B-")]


def _sl_r(m, n):
    return [_P(n), _inP(f"P^{n} \\ RP^{n}", n, R.sl_r(m), "open_sl")]


def _sp(p, q, n):
    s = R.sp(p, q)
    if q == 0:
        return [_P(n)]
    return [_P(n), _inP(f"B+_{{{2 * p},{2 * q}}}", n, s, "Bhat+"),
            _inP(f"B-_{{{2 * p},{2 * q}}}", n, s, "Bhat-")]


def _sp_r(k, n):
    s = R.sp_r(k)
    l = k // 2
    return [_P(n), _inP(f"P^{n} \\ RP^{n}", n, s, "D+", "D-", "Sigma"),
            _inP(f"B+_{{{l},{l}}}", n, s, "D+")]


def _so(p, q, n):
    s = R.so(p, q)
    sub = f"{{{p},{q}}}"
    if q == 0:
        return [_Q(n)]
    if q == 1:
        # Omega-minus and S^2 are empty, so Omega-plus coincides with Q_n \ S^1.
        return [_Q(n), _inQ(f"Q_{n} \\ S^1_{sub}", n, s, "Omega+")]
    return [_Q(n), _inQ(f"Q_{n} \\ S^1_{sub}", n, s, "Omega+", "Omega-", "S2"),
            _inQ(f"Omega+_{sub}", n, s, "Omega+"), _inQ(f"Omega-_{sub}", n, s, "Omega-")]


def _so_star(m, n):
    s = R.so_star(m)
    return [_Q(n), _inQ(f"E+_{{{n}}}", n, s, "E+"), _inQ(f"E-_{{{n}}}", n, s, "E-")]


def _so62():
    base = _so(6, 2, 6)
    t = R.so(6, 2, 1)
    return base + [_inQ("E+_{6}", 6, t, "E+"), _inQ("E-_{6}", 6, t, "E-")]


def _so71():
    return [_Q(6), _inQ("Q_6 \\ S^1_{7,1}", 6, R.so(7, 1), "Omega+")]


def _so53():
    return _so(5, 3, 6) + [_inQ("Q_6 \\ Gamma", 6, R.so(5, 3, 1), "open_53")]


# so_5(C) = sp_4(C): the three real forms, each with its so- and sp-realization.
_B5_PARTNERS = {5: (R.so(5, 0), R.sp(2, 0)), 4: (R.so(4, 1), R.sp(1, 1)), 3: (R.so(3, 2), R.sp_r(4))}


def _n3(p):
    so_s, sp_s = _B5_PARTNERS[p]
    out = [_P(3), _Q(3)]
    if p == 4:
        out += [_inP("B+_{2,2}", 3, sp_s, "Bhat+"), _inQ("Omega+_{4,1}", 3, so_s, "Omega+")]
    elif p == 3:
        out += [_inP("P^3 \\ RP^3", 3, sp_s, "D+", "D-", "Sigma"),
                _inQ("Q_3 \\ S^1_{3,2}", 3, so_s, "Omega+", "Omega-", "S2"),
                _inP("B+_{2,2}", 3, sp_s, "D+"),
                _inQ("Omega+_{3,2}", 3, so_s, "Omega+"), _inQ("Omega-_{3,2}", 3, so_s, "Omega-")]
    return out


# Forms of so_6(C) = sl_4(C) and their sl_4-side partners.
_A4_PARTNERS = {
    ("so", 6, 0): R.su(4, 0), ("so", 5, 1): R.sl_h(2), ("so", 4, 2): R.su(2, 2),
    ("so", 3, 3): R.sl_r(4), ("so_star", None, None): R.su(3, 1),
}


def _sp_pq_to_so(spec):
    if spec.family == "sp":
        return {(2, 0): 5, (1, 1): 4}[(spec.p, spec.q)]
    if spec.family == "sp_r":
        return 3
    return spec.p


def classify_manifolds(spec: RealFormSpec, n: int) -> ClassificationResult:
    """The list of manifolds X of dimension n with an action of the given real form."""
    if spec.family == "so_star" and spec.k == 8:
        raise DomainError("so*(8) is isomorphic to so(6,2); query --form so --p 6 --q 2 instead")
    adm = check_conditions(spec, n)
    if not adm.admissible:
        raise InadmissibleError(adm)
    notes = []
    f = spec.family
    if spec.twist:
        notes.append(f"the list depends only on the isomorphism class; twist {spec.twist} is ignored")
    if f == "complex":
        if adm.series in ("A", "C"):
            return ClassificationResult(spec, n, "complex_as_real", [_P(n)], notes)
        if adm.k == 5:
            return ClassificationResult(spec, n, "complex_as_real", [_P(3), _Q(3)], notes)
        return ClassificationResult(spec, n, "complex_as_real", [_Q(n)], notes)

    # low-rank identifications
    if adm.series == "A" and spec.ambient == "so":
        key = (f, spec.p, spec.q) if f == "so" else ("so_star", None, None)
        partner = _A4_PARTNERS[key]
        notes.append(f"{spec} is isomorphic to {partner}")
        res = classify_manifolds(partner, n)
        res.spec, res.notes = spec, notes + res.notes
        return res
    if adm.series == "B" and adm.k == 5:
        p = _sp_pq_to_so(spec)
        return ClassificationResult(spec, n, "so_pq_n3", _n3(p), notes)

    if f == "su":
        return ClassificationResult(spec, n, "su_pq", _su(spec.p, spec.q, n), notes)
    if f == "sl_r":
        return ClassificationResult(spec, n, "sl_R", _sl_r(spec.k, n), notes)
    if f == "sl_h":
        return ClassificationResult(spec, n, "sl_H", [_P(n)], notes)
    if f == "sp":
        return ClassificationResult(spec, n, "sp_pq", _sp(spec.p, spec.q, n), notes)
    if f == "sp_r":
        return ClassificationResult(spec, n, "sp_R", _sp_r(spec.k, n), notes)
    if f == "so_star":
        return ClassificationResult(spec, n, "so_star", _so_star(spec.k, n), notes)
    if f == "so":
        pq = (spec.p, spec.q)
        if n == 6 and pq == (6, 2):
            return ClassificationResult(spec, n, "so_62", _so62(), notes)
        if n == 6 and pq == (7, 1):
            return ClassificationResult(spec, n, "so_71", _so71(), notes)
        if n == 6 and pq == (5, 3):
            return ClassificationResult(spec, n, "so_53", _so53(), notes)
        return ClassificationResult(spec, n, "so_pq", _so(spec.p, spec.q, n), notes)
    raise DomainError(f"no classification table for {spec}")


def classified_real_forms(k_max=12):
    """All real forms covered by the classification, over matrix sizes up to k_max."""
    out = []
    for k in range(2, k_max + 1):
        for q in range(0, k // 2 + 1):
            out.append(R.su(k - q, q))
        out.append(R.sl_r(k))
        if k % 2 == 0:
            out.append(R.sl_h(k // 2))
            l = k // 2
            for q in range(0, l // 2 + 1):
                out.append(R.sp(l - q, q))
            out.append(R.sp_r(k))
        if k >= 3 and k != 4:
            for q in range(0, k // 2 + 1):
                out.append(R.so(k - q, q))
            if k % 2 == 0 and k >= 6:
                out.append(R.so_star(k))
    for s, ks in (("A", range(2, k_max + 1)), ("B", range(5, k_max + 1, 2)),
                  ("C", range(6, k_max + 1, 2)), ("D", range(8, k_max + 1, 2))):
        for k in ks:
            out.append(R.complex_as_real(s, k))
    return out
