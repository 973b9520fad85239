"""Orbit dimensions from the infinitesimal action of a real form on projective space."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .flag_models import ProjectivePoint
from .lie_core import DomainError, RealFormSpec, real_form_basis
from .linalg import QMat, numerical_rank, real_rank

RANK_TOL = 1e-8


@dataclass(frozen=True)
class TangentSpan:
    point: ProjectivePoint
    pivot: int
    vectors: tuple      # real chart vectors (length 2N)
    rank: int


def tangent_vector(x, z: ProjectivePoint, pivot=None):
    """Image of Xz in the affine chart {z_pivot = 1}, pivot slot removed (complex, length N)."""
    n = x.n if isinstance(x, QMat) else np.asarray(x).shape[0]
    if n != len(z):
        raise DomainError(f"matrix size {n} does not match point with {len(z)} coordinates")
    piv = z.pivot() if pivot is None else pivot
    if not z.coords[piv]:
        raise DomainError("pivot coordinate vanishes")
    if z.exact:
        if not isinstance(x, QMat):
            raise TypeError("exact point needs an exact matrix")
        xz = x.apply(z.coords)
        zp = z.coords[piv]
        mu = xz[piv] / zp
        return [(a - mu * b) / zp for j, (a, b) in enumerate(zip(xz, z.coords)) if j != piv]
    zv = z.array()
    xm = x.to_numpy() if isinstance(x, QMat) else np.asarray(x, dtype=complex)
    xz = xm @ zv
    zp = zv[piv]
    v = (xz - (xz[piv] / zp) * zv) / zp
    return np.delete(v, piv)


@lru_cache(maxsize=None)
def _float_basis(spec):
    return real_form_basis(spec).to_numpy()


def float_tangent_vectors(spec: RealFormSpec, z: ProjectivePoint, pivot=None):
    """Real tangent vectors (rows of length 2N) for all basis elements, vectorized."""
    b = _float_basis(spec)
    zv = z.array() if z.exact is False else np.array([complex(c) for c in z.coords])
    piv = z.pivot() if pivot is None else pivot
    xz = b @ zv                       # (d, N+1)
    zp = zv[piv]
    v = (xz - np.outer(xz[:, piv] / zp, zv)) / zp
    v = np.delete(v, piv, axis=1)
    return np.hstack([v.real, v.imag])


def tangent_span(spec: RealFormSpec, z: ProjectivePoint, pivot=None) -> TangentSpan:
    if len(z) != spec.k:
        raise DomainError(f"{spec} acts on P^{spec.k - 1}, got a point with {len(z)} coordinates")
    piv = z.pivot() if pivot is None else pivot
    if z.exact:
        vecs = []
        for x in real_form_basis(spec):
            v = tangent_vector(x, z, piv)
            vecs.append(tuple(c.real for c in v) + tuple(c.imag for c in v))
        rank = real_rank(vecs)
        return TangentSpan(z, piv, tuple(vecs), rank)
    rows = float_tangent_vectors(spec, z, piv)
    return TangentSpan(z, piv, tuple(map(tuple, rows)), numerical_rank(rows, RANK_TOL))


def orbit_dimension(spec: RealFormSpec, z: ProjectivePoint, pivot=None) -> int:
    """Real dimension of the orbit through z: rank of the tangent vectors of the basis."""
    return tangent_span(spec, z, pivot).rank
