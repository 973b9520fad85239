"""Points of projective space and of the projective quadric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import GaussianRational, format_gauss, gauss, parse_float_scalar, parse_gauss

ZERO_TOL = 1e-10


def _as_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous coordinates of a point of P^N, either exact or float."""

    coords: tuple
    exact: bool

    def __post_init__(self):
        if len(self.coords) < 2:
            raise ValueError("need at least two homogeneous coordinates")
        if not any(self.coords):
            raise ValueError("the zero vector is not a projective point")

    @classmethod
    def of(cls, coords, exact=None):
        """Build from a sequence; exact when every entry is an int, Fraction, str or GaussianRational."""
        coords = list(coords)
        if exact is None:
            exact = all(isinstance(c, (int, Fraction, GaussianRational, str)) for c in coords)
        if exact:
            return cls(tuple(gauss(c) for c in coords), True)
        vals = tuple(complex(c) for c in coords)
        if not all(np.isfinite(v.real) and np.isfinite(v.imag) for v in vals):
            raise ValueError("coordinates must be finite")
        return cls(vals, False)

    @property
    def ambient(self):
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def pivot(self):
        """Index of the largest-modulus coordinate, lowest index on ties."""
        if self.exact:
            mods = [c.abs2() for c in self.coords]
        else:
            mods = [abs(c) for c in self.coords]
        best = max(mods)
        return mods.index(best)

    def canonical(self):
        piv = self.coords[self.pivot()]
        return ProjectivePoint(tuple(c / piv for c in self.coords), self.exact)

    def scaled(self, lam):
        lam = gauss(lam) if self.exact else complex(lam)
        if not lam:
            raise ValueError("scaling factor must be nonzero")
        return ProjectivePoint(tuple(c * lam for c in self.coords), self.exact)

    def to_float(self):
        return ProjectivePoint(tuple(complex(c) for c in self.coords), False)

    def array(self):
        return np.array([complex(c) for c in self.coords])

    def norm2(self):
        if self.exact:
            return sum((c.abs2() for c in self.coords), Fraction(0))
        return float(np.sum(np.abs(self.array()) ** 2))

    def to_json(self):
        if self.exact:
            coords = [format_gauss(c) for c in self.coords]
        else:
            coords = [[c.real, c.imag] for c in self.coords]
        return {"ambient": self.ambient, "coords": coords}

    @classmethod
    def from_json(cls, obj):
        coords = obj["coords"]
        if len(coords) != obj["ambient"] + 1:
            raise ValueError("coordinate count does not match ambient dimension")
        if all(isinstance(c, str) for c in coords):
            return cls.of([parse_gauss(c) for c in coords], exact=True)
        return cls.of([complex(a, b) for a, b in coords], exact=False)

    def __str__(self):
        if self.exact:
            return ":".join(format_gauss(c) for c in self.coords)
        return ":".join(repr(c) for c in self.coords)


def parse_point(text: str, exact=None) -> ProjectivePoint:
    """Parse colon-separated coordinates such as ``"1:i:0"`` or ``"0.5:1+2j"``."""
    parts = [p.strip() for p in text.split(":")]
    if exact is not False:
        try:
            return ProjectivePoint.of([parse_gauss(p) for p in parts], exact=True)
        except ValueError:
            if exact:
                raise
    return ProjectivePoint.of([parse_float_scalar(p) for p in parts], exact=False)


def quadric_value(z: ProjectivePoint):
    return sum((c * c for c in z.coords), GaussianRational(0) if z.exact else 0j)


def on_quadric(z: ProjectivePoint, tol=ZERO_TOL) -> bool:
    v = quadric_value(z)
    if z.exact:
        return not v
    return abs(v) <= tol * z.norm2()


def is_projectively_real(z: ProjectivePoint, tol=ZERO_TOL) -> bool:
    """True iff lambda*z is real for some lambda != 0 (rows Re z, Im z have rank <= 1).

    In float mode the second singular value of [Re z; Im z] is compared with tol*|z|.
    """
    if z.exact:
        xs = [c.real for c in z.coords]
        ys = [c.imag for c in z.coords]
        n = len(xs)
        return all(xs[a] * ys[b] == xs[b] * ys[a] for a in range(n) for b in range(a + 1, n))
    a = z.array()
    sv = np.linalg.svd(np.vstack([a.real, a.imag]), compute_uv=False)
    return sv[1] <= tol * np.sqrt(z.norm2())


def random_projective_point(seed, N) -> ProjectivePoint:
    """Float point of P^N with i.i.d. complex Gaussian homogeneous coordinates."""
    rng = _as_rng(seed)
    v = rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1)
    return ProjectivePoint.of(v, exact=False)


def random_quadric_point(seed, n) -> ProjectivePoint:
    """Float point of Q_n in P^{n+1}: z = x + iy with |x| = |y| = 1 and x.y = 0."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _as_rng(seed)
    x = rng.standard_normal(n + 2)
    x /= np.linalg.norm(x)
    y = rng.standard_normal(n + 2)
    y -= (y @ x) * x
    y /= np.linalg.norm(y)
    return ProjectivePoint.of(x + 1j * y, exact=False)


def _random_gauss(rng, bound):
    return GaussianRational(Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1))),
                            Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1))))


def random_exact_point(seed, N, bound=5) -> ProjectivePoint:
    rng = _as_rng(seed)
    while True:
        coords = [_random_gauss(rng, bound) for _ in range(N + 1)]
        if any(coords):
            return ProjectivePoint(tuple(coords), True)


def random_exact_quadric_point(seed, n, bound=5) -> ProjectivePoint:
    """Exact point of Q_n from the rational parametrization (1 - u.u, i(1 + u.u), 2u)."""
    rng = _as_rng(seed)
    u = [_random_gauss(rng, bound) for _ in range(n)]
    uu = sum((a * a for a in u), GaussianRational(0))
    coords = [1 - uu, GaussianRational(0, 1) * (1 + uu)] + [2 * a for a in u]
    return ProjectivePoint(tuple(coords), True)
