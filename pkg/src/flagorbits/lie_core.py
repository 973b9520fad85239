"""Classical complex matrix Lie algebras and their real forms.

Every real form is realized as the fixed-point set of an antilinear involution
``sigma`` of the ambient complex algebra (sl_k, sp_k or so_k).  Real bases are
produced by projecting the complex basis: ``(Y + sigma Y)/2`` and
``i (Y - sigma Y)/2``, keeping the ones that enlarge the real span.  With the
standard complex bases this reproduces the usual bases, e.g. ``j_rs`` and
``i j_rs`` for so(p,q) in the conjugated picture.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .linalg import MAX_DIM, QMat, RealSpan, commutator
from .scalars import GaussianRational

I = GaussianRational(0, 1)
HALF = GaussianRational(1, 0) / 2
FLOAT_TOL = 1e-9


class DomainError(ValueError):
    """Invalid series, real form or matrix size."""


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class SeriesTag:
    series: str
    k: int

    def __post_init__(self):
        s, k = self.series, self.k
        ok = {
            "A": k >= 2,
            "B": k % 2 == 1 and k >= 5,
            "C": k % 2 == 0 and k >= 6,
            "D": k % 2 == 0 and k >= 8,
        }.get(s)
        if not ok or k > MAX_DIM:
            raise DomainError(f"invalid series tag ({s}, {k})")

    @property
    def ambient(self):
        return {"A": "sl", "B": "so", "C": "sp", "D": "so"}[self.series]

    @property
    def dim(self):
        k = self.k
        if self.series == "A":
            return k * k - 1
        if self.series == "C":
            l = k // 2
            return 2 * l * l + l
        return k * (k - 1) // 2

    def __str__(self):
        return f"{self.series}{self.k}"


FAMILIES = ("su", "sl_r", "sl_h", "sp", "sp_r", "so", "so_star", "complex")


@dataclass(frozen=True)
class RealFormSpec:
    """A real form, described by family, signature and defining complex dimension k.

    ``k`` is always the size of the matrices: p+q for su/so, 2(p+q) for sp(p,q),
    2m for sl(m,H), m for sl(m,R), sp(m,R) and so*(m).
    """

    family: str
    k: int
    p: Optional[int] = None
    q: Optional[int] = None
    twist: int = 0
    series: Optional[str] = None  # only for family == "complex"

    def __post_init__(self):
        f, k = self.family, self.k
        if f not in FAMILIES:
            raise DomainError(f"unknown family {f!r}")
        if not 2 <= k <= MAX_DIM:
            raise DomainError(f"matrix size {k} outside [2, {MAX_DIM}]")
        if f in ("su", "so", "sp"):
            p, q = self.p, self.q
            if p is None or q is None or p < q or q < 0:
                raise DomainError(f"{f} needs p >= q >= 0, got ({p}, {q})")
            if (2 * (p + q) if f == "sp" else p + q) != k:
                raise DomainError("signature does not match matrix size")
        if f in ("sl_h", "sp_r", "so_star") and k % 2:
            raise DomainError(f"{f} needs an even matrix size")
        if self.twist not in (0, 1, 2):
            raise DomainError("twist must be 0, 1 or 2")
        if self.twist and not (f == "so" and k == 8):
            raise DomainError("twist is only meaningful for so(p,q) with p+q=8")
        if f == "complex":
            SeriesTag(self.series, k)  # validates
        elif self.series is not None:
            raise DomainError("series is only set for complex-as-real forms")

    # convenience constructors
    @classmethod
    def su(cls, p, q):
        return cls("su", p + q, p, q)

    @classmethod
    def sl_r(cls, m):
        return cls("sl_r", m)

    @classmethod
    def sl_h(cls, m):
        return cls("sl_h", 2 * m)

    @classmethod
    def sp(cls, p, q):
        return cls("sp", 2 * (p + q), p, q)

    @classmethod
    def sp_r(cls, m):
        return cls("sp_r", m)

    @classmethod
    def so(cls, p, q, twist=0):
        return cls("so", p + q, p, q, twist)

    @classmethod
    def so_star(cls, m):
        return cls("so_star", m)

    @classmethod
    def complex_as_real(cls, series, k):
        return cls("complex", k, series=series)

    @property
    def ambient(self):
        """Name of the ambient complex matrix algebra: 'sl', 'sp' or 'so'."""
        if self.family == "complex":
            return SeriesTag(self.series, self.k).ambient
        return {"su": "sl", "sl_r": "sl", "sl_h": "sl", "sp": "sp", "sp_r": "sp",
                "so": "so", "so_star": "so"}[self.family]

    @property
    def type(self):
        return "II" if self.family == "complex" else "I"

    @property
    def name(self):
        f = self.family
        if f in ("su", "sp"):
            return f"{f}({self.p},{self.q})"
        if f == "so":
            t = f"^{self.twist}" if self.twist else ""
            return f"so({self.p},{self.q}){t}"
        if f == "sl_r":
            return f"sl({self.k},R)"
        if f == "sl_h":
            return f"sl({self.k // 2},H)"
        if f == "sp_r":
            return f"sp({self.k},R)"
        if f == "so_star":
            return f"so*({self.k})"
        return f"{self.ambient}({self.k},C)^R"

    def __str__(self):
        return self.name


def normalized_series(spec: RealFormSpec) -> SeriesTag:
    """Series tag of the complexification after the low-rank identifications.

    sp_2 and so_3 are sl_2; sp_4 is taken as so_5 (B-series) and so_6 as sl_4
    (A-series).  so_4 is not simple and is rejected.
    """
    amb, k = spec.ambient, spec.k
    if amb == "sl":
        return SeriesTag("A", k)
    if amb == "sp":
        if k == 2:
            return SeriesTag("A", 2)
        if k == 4:
            return SeriesTag("B", 5)
        return SeriesTag("C", k)
    if k == 3:
        return SeriesTag("A", 2)
    if k == 4:
        raise DomainError("so_4 is not simple")
    if k == 6:
        return SeriesTag("A", 4)
    return SeriesTag("B" if k % 2 else "D", k)


@dataclass(frozen=True)
class LieBasis:
    tag: object            # SeriesTag or RealFormSpec
    matrices: tuple        # of QMat
    field: str             # "C" or "R"

    @property
    def dim(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    def to_numpy(self):
        return np.array([m.to_numpy() for m in self.matrices])


# ---------------------------------------------------------------------------
# ambient complex algebras


def _e(k, r, s, v=1):
    return QMat.unit(k, r, s, v)


def j_matrix(k, r, s):
    """The antisymmetric basis matrix j_rs (1-based r < s)."""
    return _e(k, r - 1, s - 1) - _e(k, s - 1, r - 1)


@lru_cache(maxsize=None)
def sl_basis(k):
    mats = [_e(k, r, s) for r in range(k) for s in range(k) if r != s]
    mats += [_e(k, r, r) - _e(k, r + 1, r + 1) for r in range(k - 1)]
    return tuple(mats)


@lru_cache(maxsize=None)
def so_basis(k):
    return tuple(j_matrix(k, r, s) for r in range(1, k + 1) for s in range(r + 1, k + 1))


@lru_cache(maxsize=None)
def sp_basis(k):
    l = k // 2
    mats = [_e(k, r, s) - _e(k, l + s, l + r) for r in range(l) for s in range(l)]
    for off_r, off_c in ((0, l), (l, 0)):
        for r in range(l):
            for s in range(r, l):
                m = _e(k, off_r + r, off_c + s)
                if r != s:
                    m = m + _e(k, off_r + s, off_c + r)
                mats.append(m)
    return tuple(mats)


def symplectic_J(k):
    l = k // 2
    rows = [[0] * k for _ in range(k)]
    for j in range(l):
        rows[j][l + j] = 1
        rows[l + j][j] = -1
    return QMat.from_entries(rows)


def ambient_basis(amb, k):
    return {"sl": sl_basis, "so": so_basis, "sp": sp_basis}[amb](k)


def ambient_dim(amb, k):
    if amb == "sl":
        return k * k - 1
    if amb == "so":
        return k * (k - 1) // 2
    return (k // 2) * (k + 1)


def build_complex_algebra(series: SeriesTag) -> LieBasis:
    if not isinstance(series, SeriesTag):
        raise DomainError("expected a SeriesTag")
    return LieBasis(series, ambient_basis(series.ambient, series.k), "C")


def bracket(x, y):
    """Commutator xy - yx for QMat (exact) or numpy (float) matrices."""
    if isinstance(x, QMat) and isinstance(y, QMat):
        return commutator(x, y)
    if isinstance(x, QMat) or isinstance(y, QMat):
        raise TypeError("scalar mode mismatch: mix of exact and float matrices")
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise ValueError(f"dimension mismatch {x.shape} vs {y.shape}")
    return x @ y - y @ x


def in_ambient_exact(amb, x: QMat) -> bool:
    if amb == "sl":
        return x.trace() == 0
    if amb == "so":
        return (x + x.T).is_zero()
    J = symplectic_J(x.n)
    return (x.T @ J + J @ x).is_zero()


def _in_ambient_float(amb, x, tol):
    if amb == "sl":
        return abs(np.trace(x)) <= tol
    if amb == "so":
        return np.max(np.abs(x + x.T)) <= tol
    J = symplectic_J(x.shape[0]).to_numpy()
    return np.max(np.abs(x.T @ J + J @ x)) <= tol


# ---------------------------------------------------------------------------
# real structures


def _signs(p, q):
    return [1] * p + [-1] * q


@lru_cache(maxsize=None)
def _structure_matrix(spec: RealFormSpec):
    """The matrix entering the involution of ``spec`` (exact)."""
    f, k = spec.family, spec.k
    if f in ("su", "so"):
        return QMat.diag(_signs(spec.p, spec.q))
    if f == "sp":
        d = _signs(spec.p, spec.q)
        return QMat.diag(d + d)
    if f in ("sl_h", "so_star"):
        return -symplectic_J(k)    # [[0, -I], [I, 0]]
    return None


def involution(spec: RealFormSpec, x):
    """Antilinear involution whose fixed points form the real form (type I only).

    su(p,q), sp(p,q):  X -> -H X^* H
    sl(R), sp(R):      X -> conj(X)
    so(p,q):           X -> H conj(X) H     (the A_{p,q}-conjugated picture)
    sl(H), so*:        X -> J conj(X) J^{-1}
    """
    f = spec.family
    exact = isinstance(x, QMat)
    conj = x.conj() if exact else np.conj(x)
    if f in ("sl_r", "sp_r"):
        return conj
    h = _structure_matrix(spec)
    if not exact:
        h = h.to_numpy()
    if f in ("su", "sp"):
        xh = x.H if exact else x.conj().T
        out = h @ xh @ h
        return -out
    if f == "so":
        return h @ conj @ h
    if f in ("sl_h", "so_star"):
        return -(h @ conj @ h)   # J^{-1} = -J
    raise DomainError(f"no involution for {spec}")


@lru_cache(maxsize=None)
def real_form_basis(spec: RealFormSpec) -> LieBasis:
    """Real basis of the real form, embedded in k x k complex matrices."""
    if spec.family == "so" and spec.twist:
        from .triality import twisted_real_form
        return twisted_real_form(spec.p, spec.q, spec.twist)
    amb, k = spec.ambient, spec.k
    cbasis = ambient_basis(amb, k)
    if spec.family == "complex":
        return LieBasis(spec, cbasis + tuple(y.scale(I) for y in cbasis), "R")
    target = ambient_dim(amb, k)
    span = RealSpan()
    out = []
    for y in cbasis:
        s = involution(spec, y)
        for cand in ((y + s).scale(HALF), (y - s).scale(I / 2)):
            if not cand.is_zero() and span.add(cand):
                out.append(cand)
    if len(out) != target:
        raise DomainError(f"real form {spec} produced {len(out)} of {target} basis elements")
    return LieBasis(spec, tuple(out), "R")


def satisfies_defining_relations(spec: RealFormSpec, x, tol=FLOAT_TOL) -> bool:
    """Membership of a matrix in the real form (exact for QMat, residual <= tol for floats)."""
    exact = isinstance(x, QMat)
    n = x.n if exact else np.asarray(x).shape[0]
    if n != spec.k:
        raise DomainError(f"matrix size {n} does not match {spec}")
    amb = spec.ambient
    if exact:
        if not in_ambient_exact(amb, x):
            return False
    else:
        x = np.asarray(x, dtype=complex)
        scale = max(1.0, float(np.max(np.abs(x))))
        if not _in_ambient_float(amb, x, tol * scale):
            return False
    if spec.family == "complex":
        return True
    if spec.family == "so" and spec.twist:
        from .triality import theta_power
        y = theta_power(x, -spec.twist)
        return satisfies_defining_relations(RealFormSpec.so(spec.p, spec.q), y, tol)
    s = involution(spec, x)
    if exact:
        return s == x
    return float(np.max(np.abs(s - x))) <= tol * scale


def structure_closed(basis: LieBasis) -> bool:
    """Exact check that all brackets of basis elements stay in the real span."""
    span = RealSpan(basis.matrices)
    mats = basis.matrices
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            if not span.contains(commutator(mats[a], mats[b])):
                return False
    return True
