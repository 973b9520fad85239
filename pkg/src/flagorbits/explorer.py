"""Floating-point Monte Carlo checks: flows along one-parameter subgroups and orbit censuses."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .flag_models import ProjectivePoint, quadric_value, random_projective_point, random_quadric_point
from .geometry import _float_basis, orbit_dimension
from .invariants import ZERO_TOL, base_points, classify_point, flag_dimension, orbit_labels
from .lie_core import DomainError, RealFormSpec, satisfies_defining_relations
from .linalg import QMat
from .parabolic import check_conditions


@dataclass(frozen=True)
class FlowConfig:
    seed: int = 0
    trials: int = 50
    horizon: float = 1.0
    grid: int = 20
    expm_tol: float = 1e-12
    zero_tol: float = ZERO_TOL
    residual_tol: float = 1e-9

    def __post_init__(self):
        for name in ("horizon", "expm_tol", "zero_tol", "residual_tol"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if self.trials < 1 or self.grid < 2:
            raise DomainError("trials must be >= 1 and grid >= 2")

    def times(self):
        return np.linspace(-self.horizon, self.horizon, self.grid)

    def rng(self, *stream):
        """Independent generator for one trial, keyed by (seed, *stream)."""
        return np.random.default_rng([self.seed, *stream])

    def to_json(self):
        return {"seed": self.seed, "trials": self.trials, "horizon": self.horizon, "grid": self.grid,
                "expm_tol": self.expm_tol, "zero_tol": self.zero_tol, "residual_tol": self.residual_tol}


def _as_array(x):
    return x.to_numpy() if isinstance(x, QMat) else np.asarray(x, dtype=complex)


def random_element(spec: RealFormSpec, rng) -> np.ndarray:
    """Random real combination of the basis, scaled to Frobenius norm 1."""
    b = _float_basis(spec)
    x = np.tensordot(rng.standard_normal(len(b)), b, axes=1)
    return x / np.linalg.norm(x)


def _raw_flow(x, zv, t):
    return expm(t * x) @ zv


def flow_point(spec: RealFormSpec, z: ProjectivePoint, x, t, cfg: FlowConfig = None) -> ProjectivePoint:
    """exp(tX) z, canonicalized. X must lie in the real form."""
    cfg = cfg or FlowConfig()
    if abs(t) > cfg.horizon:
        raise DomainError(f"|t|={abs(t)} exceeds the horizon {cfg.horizon}")
    if len(z) != spec.k:
        raise DomainError(f"{spec} acts on {spec.k} coordinates, got {len(z)}")
    xa = _as_array(x)
    if not satisfies_defining_relations(spec, xa, cfg.residual_tol):
        raise DomainError(f"matrix is not in {spec}")
    return ProjectivePoint.of(_raw_flow(xa, z.array(), t), exact=False).canonical()


def _float_value(v):
    return None if v is None else float(v)


@dataclass
class StabilityReport:
    spec: RealFormSpec
    point: ProjectivePoint
    label: str
    probes: int = 0
    violations: list = field(default_factory=list)
    uncertain: int = 0
    max_form_residual: float = 0.0
    max_quadric_residual: float = 0.0
    residual_tol: float = 1e-9

    @property
    def passed(self):
        return (not self.violations and self.max_form_residual <= self.residual_tol
                and self.max_quadric_residual <= self.residual_tol)

    def to_json(self):
        return {"form": self.spec.name, "point": self.point.to_json(), "label": self.label,
                "probes": self.probes, "violations": self.violations, "uncertain": self.uncertain,
                "max_form_residual": self.max_form_residual,
                "max_quadric_residual": self.max_quadric_residual, "passed": self.passed}


def _start(spec, z, cfg):
    c = classify_point(spec, z, cfg.zero_tol)
    if c.boundary_uncertain:
        raise DomainError(f"{z} is too close to an orbit boundary to serve as a start point")
    return c


def invariant_stability_test(spec: RealFormSpec, z: ProjectivePoint, cfg: FlowConfig = None,
                             track_dimension=False) -> StabilityReport:
    """Flow z along random one-parameter subgroups and check the orbit label never changes."""
    cfg = cfg or FlowConfig()
    start = _start(spec, z, cfg)
    name = start.label.name
    rep = StabilityReport(spec, z, name, residual_tol=cfg.residual_tol)
    zv = z.array()
    scale0 = float(np.vdot(zv, zv).real)
    v0 = _float_value(start.form_value)
    quad = spec.ambient == "so"
    for trial in range(cfg.trials):
        x = random_element(spec, cfg.rng(trial))
        for t in cfg.times():
            wv = _raw_flow(x, zv, t)
            w = ProjectivePoint.of(wv, exact=False)
            scale = max(scale0, w.norm2())
            if quad:
                rep.max_quadric_residual = max(rep.max_quadric_residual, abs(quadric_value(w)) / w.norm2())
            c = classify_point(spec, w, cfg.zero_tol)
            rep.probes += 1
            rep.uncertain += c.boundary_uncertain
            if v0 is not None and c.form_value is not None and start.label.kind != "closed9":
                rep.max_form_residual = max(rep.max_form_residual, abs(_float_value(c.form_value) - v0) / scale)
            bad = c.label.name != name
            if track_dimension and not bad:
                bad = orbit_dimension(spec, w) != start.label.expected_dim
            if bad:
                rep.violations.append({"trial": trial, "t": float(t), "label": c.label.name})
    return rep


def scaling_invariance_test(spec: RealFormSpec, z: ProjectivePoint, cfg: FlowConfig = None):
    """Labels of lambda*z for random nonzero lambda; returns the list of mismatching lambdas."""
    cfg = cfg or FlowConfig()
    name = _start(spec, z, cfg).label.name
    bad = []
    for trial in range(cfg.trials):
        rng = cfg.rng(trial, 1)
        lam = complex(*rng.standard_normal(2)) * float(np.exp(rng.uniform(-3, 3)))
        if classify_point(spec, z.to_float().scaled(lam), cfg.zero_tol).label.name != name:
            bad.append(lam)
    return bad


# ---------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    spec: RealFormSpec
    n: int
    samples: int
    seed: int
    counts: dict = field(default_factory=dict)      # label -> {"count", "min_dim", "max_dim"}
    constructed: dict = field(default_factory=dict)  # label -> {"point", "classified_as", "orbit_dim"}
    expected_sampled: list = field(default_factory=list)
    expected_labels: list = field(default_factory=list)
    uncertain: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def sampled_labels(self):
        return sorted(self.counts)

    @property
    def observed_labels(self):
        return sorted(set(self.counts) | {c["classified_as"] for c in self.constructed.values()})

    @property
    def passed(self):
        return not self.mismatches

    def merge(self, other: "CensusReport") -> "CensusReport":
        """Combine two censuses of the same form (counts add, dimension ranges widen)."""
        if (self.spec, self.n) != (other.spec, other.n):
            raise DomainError("cannot merge censuses of different forms")
        counts = {k: dict(v) for k, v in self.counts.items()}
        for k, v in other.counts.items():
            if k not in counts:
                counts[k] = dict(v)
                continue
            cur = counts[k]
            cur["count"] += v["count"]
            cur["min_dim"] = min(cur["min_dim"], v["min_dim"])
            cur["max_dim"] = max(cur["max_dim"], v["max_dim"])
        out = CensusReport(self.spec, self.n, self.samples + other.samples, self.seed, counts,
                           dict(self.constructed), self.expected_sampled, self.expected_labels,
                           self.uncertain + other.uncertain, self.mismatches + other.mismatches)
        return out

    def to_json(self):
        return {"form": self.spec.name, "n": self.n, "samples": self.samples, "seed": self.seed,
                "counts": self.counts, "constructed": self.constructed,
                "expected_sampled": self.expected_sampled, "expected_labels": self.expected_labels,
                "sampled_labels": self.sampled_labels, "observed_labels": self.observed_labels,
                "uncertain": self.uncertain, "mismatches": self.mismatches, "passed": self.passed}


def _sample(spec, rng):
    n = flag_dimension(spec)
    return random_quadric_point(rng, n) if spec.ambient == "so" else random_projective_point(rng, n)


def _tally(spec, cfg, start, stop, with_dims):
    counts, uncertain = {}, 0
    for i in range(start, stop):
        z = _sample(spec, cfg.rng(i))
        c = classify_point(spec, z, cfg.zero_tol)
        uncertain += c.boundary_uncertain
        d = orbit_dimension(spec, z) if with_dims else c.label.expected_dim
        e = counts.setdefault(c.label.name, {"count": 0, "min_dim": d, "max_dim": d})
        e["count"] += 1
        e["min_dim"], e["max_dim"] = min(e["min_dim"], d), max(e["max_dim"], d)
    return counts, uncertain


def empirical_orbit_census(spec: RealFormSpec, n: int, samples: int = 10_000, cfg: FlowConfig = None,
                           with_dims=True) -> CensusReport:
    """Classify random points of the flag manifold and one constructed point per orbit.

    Random sampling reaches only the open orbits; every other orbit is checked through its
    exact base point. Sample i uses the generator keyed by (seed, i).
    """
    cfg = cfg or FlowConfig()
    adm = check_conditions(spec, n)
    if not adm.admissible:
        raise DomainError(f"{spec} with n={n} is not admissible: {adm.message()}")
    if flag_dimension(spec) != n:
        raise DomainError(f"{spec} acts on a flag manifold of dimension {flag_dimension(spec)}, "
                          f"not {n}; run the census for an isomorphic form acting in dimension {n}")
    if samples < 1:
        raise DomainError("samples must be positive")
    labels = orbit_labels(spec)
    rep = CensusReport(spec, n, samples, cfg.seed)
    rep.expected_labels = sorted(l.name for l in labels)
    rep.expected_sampled = sorted(l.name for l in labels if l.is_open)
    rep.counts, rep.uncertain = _tally(spec, cfg, 0, samples, with_dims)
    by_name = {l.name: l for l in labels}
    for name, info in sorted(rep.counts.items()):
        want = by_name.get(name)
        if want is None or not want.is_open:
            rep.mismatches.append(f"random sample landed in non-open orbit {name}")
        elif info["min_dim"] != want.expected_dim or info["max_dim"] != want.expected_dim:
            rep.mismatches.append(f"{name}: dimensions {info['min_dim']}..{info['max_dim']}, "
                                  f"expected {want.expected_dim}")
    for name in sorted(set(rep.expected_sampled) - set(rep.counts)):
        rep.mismatches.append(f"open orbit {name} never sampled")
    for name, z in sorted(base_points(spec).items()):
        got = classify_point(spec, z).label.name
        d = orbit_dimension(spec, z)
        rep.constructed[name] = {"point": str(z), "classified_as": got, "orbit_dim": d}
        if got != name:
            rep.mismatches.append(f"base point of {name} classified as {got}")
        if d != by_name[name].expected_dim:
            rep.mismatches.append(f"base point of {name} has orbit dimension {d}, "
                                  f"expected {by_name[name].expected_dim}")
    if rep.observed_labels != rep.expected_labels:
        rep.mismatches.append(f"observed {rep.observed_labels}, expected {rep.expected_labels}")
    return rep


def label_display(spec: RealFormSpec, name: str) -> str:
    for lab in orbit_labels(spec):
        if lab.name == name:
            return str(lab)
    raise DomainError(f"{name} is not an orbit of {spec}")
