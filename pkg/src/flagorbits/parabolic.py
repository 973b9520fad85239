"""Stabilizers of model subspaces, maximal parabolic classes and the admissibility conditions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lie_core import DomainError, RealFormSpec, SeriesTag, build_complex_algebra, normalized_series
from .linalg import QMat, commutator, complex_rank, gauss_nullspace
from .scalars import GaussianRational

I = GaussianRational(0, 1)
VARIANTS = {"A": ("L1",), "C": ("L2",), "B": ("L3",), "D": ("L4", "L4'")}


@dataclass(frozen=True)
class SubspaceSpec:
    series: str
    k: int
    m: int
    variant: str

    def __post_init__(self):
        SeriesTag(self.series, self.k)
        if self.variant not in VARIANTS[self.series]:
            raise DomainError(f"variant {self.variant} does not belong to series {self.series}")
        hi = self.k - 1 if self.series == "A" else self.k // 2
        if not 1 <= self.m <= hi:
            raise DomainError(f"m={self.m} outside [1, {hi}] for {self.series}{self.k}")
        if self.variant == "L4'" and self.m != self.k // 2:
            raise DomainError("L4' is only defined for m = l")

    @property
    def label(self):
        return f"{self.variant}_{self.m}"

    def vectors(self):
        """Spanning vectors as lists of exact scalars."""
        k, m = self.k, self.m
        zero = GaussianRational(0)
        out = []
        if self.series in ("A", "C"):
            for j in range(m):
                v = [zero] * k
                v[j] = GaussianRational(1)
                out.append(v)
            return out
        for j in range(m):
            v = [zero] * k
            v[2 * j] = GaussianRational(-1 if (self.variant == "L4'" and j == 0) else 1)
            v[2 * j + 1] = I
            out.append(v)
        return out

    def matrix(self):
        """k x m matrix whose columns span the subspace."""
        vs = self.vectors()
        return QMat.from_entries([[v[r] for v in vs] for r in range(self.k)])

    def is_isotropic(self):
        vs = self.vectors()
        if self.series == "A":
            return True
        if self.series == "C":
            l = self.k // 2
            form = lambda a, b: sum((a[j] * b[l + j] - a[l + j] * b[j] for j in range(l)), GaussianRational(0))
        else:
            form = lambda a, b: sum((x * y for x, y in zip(a, b)), GaussianRational(0))
        return all(not form(a, b) for a in vs for b in vs)


def _annihilator(sub: SubspaceSpec) -> QMat:
    """Rows spanning the left annihilator of the subspace."""
    vs = sub.vectors()
    rows = gauss_nullspace(vs, sub.k)
    return QMat.from_entries(rows)


def stabilizer_basis(series, k, sub: SubspaceSpec):
    """A complex basis of {X in g : X L in L}, as exact matrices."""
    tag = SeriesTag(series, k)
    if (sub.series, sub.k) != (series, k):
        raise DomainError("subspace belongs to a different algebra")
    basis = build_complex_algebra(tag).matrices
    w, v = _annihilator(sub), sub.matrix()
    images = [w @ x @ v for x in basis]
    # exact complex nullspace of the map c -> sum c_i images_i
    cols = [[img[r, c] for r in range(img.shape[0]) for c in range(img.shape[1])] for img in images]
    rows = [list(r) for r in zip(*cols)]
    null = gauss_nullspace([r for r in rows if any(r)], len(basis))
    out = []
    for coeffs in null:
        acc = QMat.zeros(k)
        for c, x in zip(coeffs, basis):
            if c:
                acc = acc + x.scale(c)
        out.append(acc)
    return out


def stabilizer_dimension(series, k, sub: SubspaceSpec) -> int:
    """Complex dimension of the stabilizer of L in the complex algebra."""
    tag = SeriesTag(series, k)
    if (sub.series, sub.k) != (series, k):
        raise DomainError("subspace belongs to a different algebra")
    basis = build_complex_algebra(tag).matrices
    w, v = _annihilator(sub), sub.matrix()
    return len(basis) - complex_rank([w @ x @ v for x in basis])


def is_subalgebra(mats) -> bool:
    """Exact check that the complex span of mats is closed under brackets."""
    mats = list(mats)
    r = complex_rank(mats)
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if complex_rank(mats + [commutator(mats[a], mats[b])]) != r:
                return False
    return True


def candidate_subspaces(series, k):
    tag = SeriesTag(series, k)
    hi = k - 1 if series == "A" else k // 2
    out = [SubspaceSpec(series, k, m, VARIANTS[series][0]) for m in range(1, hi + 1)]
    if series == "D":
        out.append(SubspaceSpec(series, k, k // 2, "L4'"))
    return out


def _model(series, k, sub):
    if series in ("A", "C"):
        return f"P^{k - 1}"
    if series == "B" and k == 5 and sub.m == 2:
        return "P^3"
    return f"Q_{k - 2}"


def _group(series, k, model):
    if series == "A":
        return f"PSL_{k}(C)"
    if series == "C":
        return f"PSp_{k}(C)"
    if series == "B":
        return "PSp_4(C)" if model == "P^3" else f"SO_{k}(C)"
    return f"PSO_{k}(C)"


def expected_class_count(series, k):
    l = k // 2
    if series == "A":
        return 2 if k >= 3 else 1
    if series == "C":
        return 1
    if series == "B":
        return 2 if l == 2 else 1
    return 3 if l == 4 else 1


@dataclass
class ParabolicRow:
    sub: SubspaceSpec
    dim: int
    codim: int
    is_max: bool
    model: str

    def to_json(self):
        return {"m": self.sub.m, "variant": self.sub.variant, "dim": self.dim,
                "codim": self.codim, "is_max": self.is_max,
                "model": self.model if self.is_max else None}


@dataclass
class ParabolicClassInfo:
    series: str
    k: int
    rows: list
    classes: list = field(default_factory=list)    # rows attaining the maximum
    models: list = field(default_factory=list)
    groups: list = field(default_factory=list)

    @property
    def count_matches(self):
        return len(self.classes) == expected_class_count(self.series, self.k)

    @property
    def min_codim(self):
        return min(r.codim for r in self.rows)

    def to_json(self):
        return {"series": self.series, "k": self.k,
                "rows": [r.to_json() for r in self.rows],
                "classes": [r.sub.label for r in self.classes],
                "models": self.models, "groups": self.groups,
                "expected_classes": expected_class_count(self.series, self.k),
                "count_matches": self.count_matches}


def max_parabolic_classes(series, k) -> ParabolicClassInfo:
    tag = SeriesTag(series, k)
    dim_g = tag.dim
    subs = candidate_subspaces(series, k)
    dims = [stabilizer_dimension(series, k, s) for s in subs]
    best = max(dims)
    rows = []
    for s, d in zip(subs, dims):
        rows.append(ParabolicRow(s, d, dim_g - d, d == best, _model(series, k, s)))
    info = ParabolicClassInfo(series, k, rows)
    info.classes = [r for r in rows if r.is_max]
    info.models = [r.model for r in info.classes]
    info.groups = [_group(series, k, r.model) for r in info.classes]
    return info


# ---------------------------------------------------------------------------
# Conditions (>) and (=)

ADMISSIBLE, INADMISSIBLE, VACUOUS = "admissible", "inadmissible", "vacuous"


@dataclass
class AdmissibilityResult:
    spec: RealFormSpec
    n: int
    series: str
    k: int
    condition_gt: bool
    condition_eq: bool
    models: list

    @property
    def status(self):
        if not self.condition_gt:
            return INADMISSIBLE
        return ADMISSIBLE if self.condition_eq else VACUOUS

    @property
    def admissible(self):
        return self.status == ADMISSIBLE

    def message(self):
        lin = self.series in ("A", "C")
        if not self.condition_gt:
            bound = "n" if lin else "n+1"
            return f"Condition (>) fails: k={self.k} <= {bound}={self.n + (0 if lin else 1)}"
        if not self.condition_eq:
            want = self.n + 1 if lin else self.n + 2
            return f"Condition (>) holds but k={self.k} != {want}; no such manifold exists"
        return f"admissible: k={self.k}, flag manifold {' or '.join(self.models)}"

    def to_json(self):
        return {"form": self.spec.name, "type": self.spec.type, "n": self.n,
                "series": self.series, "k": self.k,
                "condition_gt": self.condition_gt, "condition_eq": self.condition_eq,
                "status": self.status, "models": self.models, "message": self.message()}


def check_conditions(spec: RealFormSpec, n: int) -> AdmissibilityResult:
    if n < 2:
        raise DomainError("n must be at least 2")
    tag = normalized_series(spec)
    k, s = tag.k, tag.series
    if s in ("A", "C"):
        gt, eq = k > n, k == n + 1
    else:
        gt, eq = k > n + 1, k == n + 2
    models = []
    if gt and eq:
        if s in ("A", "C"):
            models = [f"P^{n}"]
        elif k == 5:
            models = ["P^3", "Q_3"]
        else:
            models = [f"Q_{n}"]
    return AdmissibilityResult(spec, n, s, k, gt, eq, models)
