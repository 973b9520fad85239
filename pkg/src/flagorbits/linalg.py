"""Exact Gaussian-rational matrices and exact rank / span / nullspace routines.

A ``QMat`` stores integer numerator arrays for the real and imaginary parts
over one common positive denominator.  Python ints in numpy object arrays keep
the arithmetic exact while letting ``@`` do the looping.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np

from .scalars import GaussianRational, gauss

MAX_DIM = 12


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _split(x):
    """(re_num, im_num, den) of a scalar with a common positive denominator."""
    z = gauss(x)
    d = _lcm(z.real.denominator, z.imag.denominator)
    return z.real.numerator * (d // z.real.denominator), z.imag.numerator * (d // z.imag.denominator), d


def _int_array(shape):
    a = np.empty(shape, dtype=object)
    a.fill(0)
    return a


class QMat:
    """Immutable exact complex matrix with Gaussian-rational entries."""

    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, re, im, den=1, _normalized=False):
        self.re = re
        self.im = im
        self.den = den
        self._hash = None
        if not _normalized:
            self._normalize()
        self.re.flags.writeable = False
        self.im.flags.writeable = False

    def _normalize(self):
        if self.den < 0:
            self.re, self.im, self.den = -self.re, -self.im, -self.den
        g = reduce(math.gcd, self.re.flat, self.den)
        g = reduce(math.gcd, self.im.flat, g)
        if g > 1:
            self.re = self.re // g
            self.im = self.im // g
            self.den //= g

    # construction -----------------------------------------------------------

    @classmethod
    def from_entries(cls, rows):
        rows = [[gauss(x) for x in row] for row in rows]
        nr, nc = len(rows), len(rows[0])
        d = 1
        for row in rows:
            for z in row:
                d = _lcm(d, _lcm(z.real.denominator, z.imag.denominator))
        re, im = _int_array((nr, nc)), _int_array((nr, nc))
        for r, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged matrix")
            for c, z in enumerate(row):
                re[r, c] = z.real.numerator * (d // z.real.denominator)
                im[r, c] = z.imag.numerator * (d // z.imag.denominator)
        return cls(re, im, d)

    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls(_int_array((n, m)), _int_array((n, m)), 1, _normalized=True)

    @classmethod
    def identity(cls, n):
        re = _int_array((n, n))
        for i in range(n):
            re[i, i] = 1
        return cls(re, _int_array((n, n)), 1, _normalized=True)

    @classmethod
    def unit(cls, n, r, s, value=1):
        """Matrix with ``value`` at (r, s) (0-based) and zeros elsewhere."""
        a, b, d = _split(value)
        re, im = _int_array((n, n)), _int_array((n, n))
        re[r, s], im[r, s] = a, b
        return cls(re, im, d)

    @classmethod
    def diag(cls, values):
        n = len(values)
        return cls.from_entries([[values[r] if r == c else 0 for c in range(n)] for r in range(n)])

    # basic properties -------------------------------------------------------

    @property
    def shape(self):
        return self.re.shape

    @property
    def n(self):
        return self.re.shape[0]

    def __getitem__(self, rc):
        r, c = rc
        return GaussianRational(Fraction(self.re[r, c], self.den), Fraction(self.im[r, c], self.den))

    def entries(self):
        nr, nc = self.shape
        return [[self[r, c] for c in range(nc)] for r in range(nr)]

    def is_real(self):
        return not any(self.im.flat)

    def is_zero(self):
        return not any(self.re.flat) and not any(self.im.flat)

    def int_row(self):
        """Real coordinates scaled to integers; suitable for rank computations."""
        return list(self.re.flat) + list(self.im.flat)

    def to_numpy(self):
        re = np.array(self.re, dtype=float)
        im = np.array(self.im, dtype=float)
        return (re + 1j * im) / self.den

    # arithmetic -------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, QMat):
            raise TypeError("expected QMat")
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check(other)
        a, b = other.den, self.den
        return QMat(self.re * a + other.re * b, self.im * a + other.im * b, a * b)

    def __sub__(self, other):
        self._check(other)
        a, b = other.den, self.den
        return QMat(self.re * a - other.re * b, self.im * a - other.im * b, a * b)

    def __neg__(self):
        return QMat(-self.re, -self.im, self.den, _normalized=True)

    def scale(self, c):
        cr, ci, cd = _split(c)
        if ci == 0:
            return QMat(self.re * cr, self.im * cr, self.den * cd)
        return QMat(self.re * cr - self.im * ci, self.re * ci + self.im * cr, self.den * cd)

    def __mul__(self, c):
        if isinstance(c, QMat):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, QMat):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        sr, orl = self.is_real(), other.is_real()
        re = self.re @ other.re
        if sr and orl:
            im = _int_array(re.shape)
        elif sr:
            im = self.re @ other.im
        elif orl:
            im = self.im @ other.re
        else:
            re = re - self.im @ other.im
            im = self.re @ other.im + self.im @ other.re
        return QMat(re, im, self.den * other.den)

    def apply(self, v):
        """Matrix-vector product for a sequence of exact scalars."""
        vm = QMat.from_entries([[x] for x in v])
        w = self @ vm
        return [w[r, 0] for r in range(w.shape[0])]

    @property
    def T(self):
        return QMat(self.re.T.copy(), self.im.T.copy(), self.den, _normalized=True)

    def conj(self):
        return QMat(self.re, -self.im, self.den, _normalized=True)

    @property
    def H(self):
        return self.conj().T

    def trace(self):
        return GaussianRational(Fraction(sum(self.re.diagonal()), self.den),
                                Fraction(sum(self.im.diagonal()), self.den))

    def __eq__(self, other):
        if not isinstance(other, QMat):
            return NotImplemented
        return (self.shape == other.shape and self.den == other.den
                and np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.den, tuple(self.re.flat), tuple(self.im.flat)))
        return self._hash

    def __repr__(self):
        return f"QMat({self.to_strings()})"

    def to_strings(self):
        return [[str(x) for x in row] for row in self.entries()]


def commutator(x: QMat, y: QMat) -> QMat:
    return x @ y - y @ x


# ---------------------------------------------------------------------------
# exact rank over Q (fraction-free elimination on integers)


def int_rank(rows) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        prow = m[rank]
        for r in range(rank + 1, len(m)):
            row = m[r]
            f = row[col]
            if f == 0 and p == prev:
                continue
            m[r] = [(p * row[c] - f * prow[c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _as_int_row(v):
    """Integer real-coordinate row for a vector of exact scalars or a QMat."""
    if isinstance(v, QMat):
        return v.int_row()
    zs = [gauss(x) for x in v]
    d = 1
    for z in zs:
        d = _lcm(d, _lcm(z.real.denominator, z.imag.denominator))
    return ([z.real.numerator * (d // z.real.denominator) for z in zs]
            + [z.imag.numerator * (d // z.imag.denominator) for z in zs])


def real_rank(vectors) -> int:
    """Dimension over R of the real span of exact complex vectors (or QMats)."""
    return int_rank([_as_int_row(v) for v in vectors])


def _times_i(v):
    if isinstance(v, QMat):
        return v.scale(GaussianRational(0, 1))
    return [gauss(x) * GaussianRational(0, 1) for x in v]


def complex_rank(vectors) -> int:
    """Dimension over C of the complex span, via the real rank of {v, iv}."""
    vs = list(vectors)
    r = real_rank(vs + [_times_i(v) for v in vs])
    assert r % 2 == 0
    return r // 2


class RealSpan:
    """Incrementally built real span of exact vectors, kept in integer echelon form."""

    def __init__(self, vectors=()):
        self._rows = []   # (pivot column, integer row)
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self._rows)

    def _reduce(self, row):
        row = list(row)
        for col, prow in self._rows:
            f = row[col]
            if f:
                p = prow[col]
                row = [p * a - f * b for a, b in zip(row, prow)]
                g = reduce(math.gcd, row, 0)
                if g > 1:
                    row = [a // g for a in row]
        return row

    def add(self, v) -> bool:
        row = self._reduce(_as_int_row(v))
        col = next((c for c, a in enumerate(row) if a), None)
        if col is None:
            return False
        if row[col] < 0:
            row = [-a for a in row]
        self._rows.append((col, row))
        return True

    def contains(self, v) -> bool:
        return not any(self._reduce(_as_int_row(v)))


# ---------------------------------------------------------------------------
# exact elimination over Q(i)


def gauss_rref(rows, ncols):
    """Reduced row echelon form over Q(i); returns (rref rows, pivot columns)."""
    m = [[gauss(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv if x else x for x in m[rank]]
        prow = m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b if b else a for a, b in zip(m[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def gauss_nullspace(rows, ncols):
    """Basis of {c in Q(i)^ncols : rows @ c = 0}."""
    if not rows:
        return [[GaussianRational(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = gauss_rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [GaussianRational(0)] * ncols
        v[f] = GaussianRational(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rational_nullspace(rows, ncols):
    """Basis of the rational nullspace of a rational matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots, rank = [], 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(m[:rank], pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rational_inverse(mat):
    """Inverse of a square rational matrix (list of rows); raises if singular."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# floating point rank


def numerical_rank(vectors, rel_tol=1e-8) -> int:
    """Rank with singular values counted when sigma >= rel_tol * sigma_max."""
    a = np.atleast_2d(np.asarray(vectors, dtype=float))
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s >= rel_tol * s[0]))
