"""Triality automorphism of so_8(C), the twisted real forms, and related checks."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional
from itertools import combinations

import numpy as np

from .lie_core import DomainError, LieBasis, RealFormSpec, j_matrix, real_form_basis
from .linalg import QMat, RealSpan, _int_array, commutator, gauss_nullspace, int_rank, rational_inverse
from .scalars import GaussianRational

PAIRS = tuple((r, s) for r in range(1, 9) for s in range(r + 1, 9))
INDEX = {rs: i for i, rs in enumerate(PAIRS)}

# Images of the basis matrices j_rs.  Each line reads  rs: sign (terms)/2.
_THETA_TEXT = """
12: +(12 - 34 + 56 - 78)
13: +(13 + 24 + 57 + 68)
14: -(14 - 23 - 58 + 67)
15: +(18 - 27 + 36 - 45)
16: +(17 + 28 + 35 + 46)
17: -(16 + 25 - 38 - 47)
18: -(15 - 26 - 37 + 48)
23: -(14 - 23 + 58 - 67)
24: -(13 + 24 - 57 - 68)
25: +(17 + 28 - 35 - 46)
26: -(18 - 27 - 36 + 45)
27: +(15 - 26 + 37 - 48)
28: -(16 + 25 + 38 + 47)
34: +(12 - 34 - 56 + 78)
35: -(16 - 25 - 38 + 47)
36: -(15 + 26 - 37 - 48)
37: -(18 + 27 + 36 + 45)
38: -(17 - 28 + 35 - 46)
45: -(15 + 26 + 37 + 48)
46: +(16 - 25 + 38 - 47)
47: +(17 - 28 - 35 + 46)
48: -(18 + 27 - 36 - 45)
56: +(12 + 34 - 56 - 78)
57: +(13 - 24 - 57 + 68)
58: -(14 + 23 - 58 - 67)
67: +(14 + 23 + 58 + 67)
68: +(13 - 24 + 57 - 68)
78: -(12 + 34 + 56 + 78)
"""

_LINE = re.compile(r"(\d)(\d):\s*([+-])\((.*)\)")
_TERM = re.compile(r"([+-]?)\s*(\d)(\d)")


def _parse_theta():
    """28x28 integer matrix T with theta(j_c) = sum_r T[r][c] j_r / 2."""
    t = [[0] * 28 for _ in range(28)]
    seen = set()
    for line in _THETA_TEXT.strip().splitlines():
        m = _LINE.fullmatch(line.strip())
        src = (int(m.group(1)), int(m.group(2)))
        outer = -1 if m.group(3) == "-" else 1
        seen.add(src)
        for sign, a, b in _TERM.findall(m.group(4).replace(" ", "")):
            t[INDEX[(int(a), int(b))]][INDEX[src]] += outer * (-1 if sign == "-" else 1)
    assert seen == set(PAIRS)
    return t


THETA_INT = _parse_theta()


@lru_cache(maxsize=None)
def theta_matrix(power=1):
    """Exact coefficient matrix of theta**power (power may be negative), as Fraction rows."""
    base = [[Fraction(x, 2) for x in row] for row in THETA_INT]
    if power < 0:
        base = rational_inverse(base)
        power = -power
    out = [[Fraction(int(i == j)) for j in range(28)] for i in range(28)]
    for _ in range(power):
        out = [[sum(out[i][k] * base[k][j] for k in range(28) if out[i][k] and base[k][j])
                for j in range(28)] for i in range(28)]
    return tuple(tuple(r) for r in out)


@lru_cache(maxsize=None)
def _theta_qmat(power):
    return QMat.from_entries(theta_matrix(power))


@lru_cache(maxsize=None)
def _theta_float(power):
    return np.array([[float(x) for x in row] for row in theta_matrix(power)])


_ROWS = np.array([r - 1 for r, _ in PAIRS])
_COLS = np.array([s - 1 for _, s in PAIRS])


def _check_antisymmetric(x):
    if isinstance(x, QMat):
        if x.shape != (8, 8) or not (x + x.T).is_zero():
            raise DomainError("theta needs an antisymmetric 8x8 matrix")
    else:
        x = np.asarray(x)
        if x.shape != (8, 8) or np.max(np.abs(x + x.T)) > 1e-9 * max(1.0, np.max(np.abs(x))):
            raise DomainError("theta needs an antisymmetric 8x8 matrix")


def coefficients(x: QMat) -> QMat:
    """Coordinates of an antisymmetric matrix in the j_rs basis, as a 28x1 column."""
    re, im = _int_array((28, 1)), _int_array((28, 1))
    re[:, 0] = x.re[_ROWS, _COLS]
    im[:, 0] = x.im[_ROWS, _COLS]
    return QMat(re, im, x.den)


def from_coefficients(col: QMat) -> QMat:
    re, im = _int_array((8, 8)), _int_array((8, 8))
    re[_ROWS, _COLS] = col.re[:, 0]
    re[_COLS, _ROWS] = -col.re[:, 0]
    im[_ROWS, _COLS] = col.im[:, 0]
    im[_COLS, _ROWS] = -col.im[:, 0]
    return QMat(re, im, col.den)


def theta_power(x, power):
    """theta**power applied to an antisymmetric 8x8 matrix (exact or float)."""
    _check_antisymmetric(x)
    if power == 0:
        return x
    if isinstance(x, QMat):
        return from_coefficients(_theta_qmat(power) @ coefficients(x))
    x = np.asarray(x, dtype=complex)
    c = _theta_float(power) @ x[_ROWS, _COLS]
    out = np.zeros((8, 8), dtype=complex)
    out[_ROWS, _COLS] = c
    out[_COLS, _ROWS] = -c
    return out


def theta(x):
    return theta_power(x, 1)


def theta_inverse(x):
    return theta_power(x, -1)


def r_matrix(m):
    return QMat.diag([-1] + [1] * (m - 1))


def conjugate_by_R(x, m):
    """R_m X R_m^{-1} with R_m = diag(-1, 1, ..., 1); flips the sign of row and column 1."""
    n = x.n if isinstance(x, QMat) else np.asarray(x).shape[0]
    if n != m:
        raise DomainError(f"matrix size {n} does not match R_{m}")
    if isinstance(x, QMat):
        r = r_matrix(m)
        return r @ x @ r
    r = np.diag([-1.0] + [1.0] * (m - 1))
    return r @ np.asarray(x) @ r


# ---------------------------------------------------------------------------
# verification


@dataclass
class TrialityReport:
    pairs_checked: int
    failures: list = field(default_factory=list)   # (pair_a, pair_b) with 1-based indices
    invertible: bool = False
    inverse_ok: bool = False
    cube_inner: bool = False
    cube_conjugator: Optional[QMat] = None

    @property
    def passed(self):
        return not self.failures and self.invertible and self.inverse_ok and self.cube_inner

    def to_dict(self):
        return {
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "pairs_passed": self.pairs_checked - len(self.failures),
            "failures": [[list(a), list(b)] for a, b in self.failures],
            "invertible": self.invertible,
            "inverse_ok": self.inverse_ok,
            "theta_cubed_inner": self.cube_inner,
            "theta_cubed_conjugator": None if self.cube_conjugator is None else self.cube_conjugator.to_strings(),
        }


def _automorphism_failures(images):
    """Pairs (a, b) of basis indices where map([j_a, j_b]) != [map j_a, map j_b]."""
    basis = [j_matrix(8, r, s) for r, s in PAIRS]
    bad = []
    for a, b in combinations(range(28), 2):
        lhs = images(commutator(basis[a], basis[b]))
        rhs = commutator(images(basis[a]), images(basis[b]))
        if lhs != rhs:
            bad.append((PAIRS[a], PAIRS[b]))
    return bad


def theta_cube_conjugator():
    """Matrix g with theta^3(X) = g X g^{-1} for all X, normalized so g^T g = I, or None.

    Solves g X - theta^3(X) g = 0 over Q(i) for the 64 entries of g.
    """
    zero = GaussianRational(0)
    rows = []
    for r0, s0 in PAIRS:
        x = j_matrix(8, r0, s0)
        y = theta_power(x, 3)
        for r in range(8):
            for c in range(8):
                row = [zero] * 64
                for m in range(8):
                    row[r * 8 + m] = row[r * 8 + m] + x[m, c]
                    row[m * 8 + c] = row[m * 8 + c] - y[r, m]
                if any(row):
                    rows.append(row)
    null = gauss_nullspace(rows, 64)
    if len(null) != 1:
        return None
    g = QMat.from_entries([[null[0][a * 8 + b] for b in range(8)] for a in range(8)])
    gram = g.T @ g
    c = gram[0, 0]
    if not c or gram != QMat.identity(8).scale(c):
        return None
    # rescale by a square root of c when it is a rational square
    re = c.real
    if c.imag == 0 and re > 0:
        num, den = re.numerator, re.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is not None and rd is not None:
            g = g.scale(GaussianRational(Fraction(rd, rn)))
    return g


def _isqrt_exact(v):
    r = math.isqrt(v)
    return r if r * r == v else None


def _is_special_orthogonal(g: QMat) -> bool:
    return g.T @ g == QMat.identity(8) and round(float(np.linalg.det(g.to_numpy()).real)) == 1


def verify_theta_automorphism(check_cube=True) -> TrialityReport:
    rep = TrialityReport(pairs_checked=28 * 27 // 2)
    rep.failures = _automorphism_failures(theta)
    rep.invertible = int_rank([[int(2 * x) for x in row] for row in theta_matrix(1)]) == 28
    if rep.invertible:
        basis = [j_matrix(8, r, s) for r, s in PAIRS]
        rep.inverse_ok = all(theta_inverse(theta(b)) == b and theta(theta_inverse(b)) == b
                             for b in basis)
    if check_cube:
        g = theta_cube_conjugator()
        rep.cube_conjugator = g
        rep.cube_inner = g is not None and _is_special_orthogonal(g)
    return rep


# ---------------------------------------------------------------------------
# twisted real forms


@lru_cache(maxsize=None)
def twisted_real_form(p, q, j) -> LieBasis:
    """Basis of so(p,q)^j = theta^j(so(p,q)^0) inside so_8(C)."""
    if p + q != 8 or p < q or q < 0:
        raise DomainError(f"twisted forms need p + q = 8 and p >= q >= 0, got ({p}, {q})")
    if j not in (0, 1, 2):
        raise DomainError("twist must be 0, 1 or 2")
    base = real_form_basis(RealFormSpec.so(p, q))
    if j == 0:
        return base
    return LieBasis(RealFormSpec.so(p, q, j), tuple(theta_power(x, j) for x in base), "R")


# The displayed real-linear conditions on a_{ml} cutting out so(5,3)^1.
# Each entry: (part, {(m, l): coefficient}).
def _so53_conditions():
    conds = []
    for terms in ("12 +34 -56 -78", "14 +23 -58 -67", "13 -24 -57 +68"):
        conds.append(("re", _combo(terms)))
    for chain in ("15 26 37 48", "18 -27 36 -45", "16 -25 -38 47", "17 28 -35 -46"):
        items = [_signed(t) for t in chain.split()]
        for (s1, a), (s2, b) in zip(items, items[1:]):
            conds.append(("re", {a: s1, b: -s2}))
    for terms in ("17 +28 -35 -46", "18 -27 +36 -45", "16 -25 -38 +47", "15 +26 +37 +48"):
        conds.append(("im", _combo(terms)))
    return tuple(conds)


def _signed(tok):
    sign = -1 if tok.startswith("-") else 1
    digits = tok.lstrip("+-")
    return sign, (int(digits[0]), int(digits[1]))


def _combo(text):
    out = {}
    for tok in text.split():
        s, rs = _signed(tok)
        out[rs] = out.get(rs, 0) + s
    return out


SO53_CONDITIONS = _so53_conditions()


def check_so53_conditions(x: QMat) -> bool:
    """True iff the antisymmetric matrix satisfies all displayed so(5,3)^1 conditions exactly."""
    _check_antisymmetric(x)
    for part, coeffs in SO53_CONDITIONS:
        val = sum((c * (x[r - 1, s - 1].real if part == "re" else x[r - 1, s - 1].imag)
                   for (r, s), c in coeffs.items()), Fraction(0))
        if val != 0:
            return False
    return True


def _condition_rows():
    """Conditions as rows over the 56 real coordinates (Re a_rs ..., Im a_rs ...)."""
    rows = []
    for part, coeffs in SO53_CONDITIONS:
        row = [0] * 56
        off = 0 if part == "re" else 28
        for rs, c in coeffs.items():
            row[off + INDEX[rs]] += c
        rows.append(row)
    return rows


@dataclass
class So53Audit:
    conditions: int
    condition_rank: int
    solution_dim: int
    form_dim: int
    contained: bool
    violations: list

    def to_dict(self):
        return dict(self.__dict__)


def so53_audit(j=1) -> So53Audit:
    """Compare the displayed conditions with theta^j(so(5,3)^0) computed from the table."""
    rows = _condition_rows()
    rank = int_rank(rows)
    basis = twisted_real_form(5, 3, j)
    bad = [i for i, x in enumerate(basis) if not check_so53_conditions(x)]
    return So53Audit(
        conditions=len(rows),
        condition_rank=rank,
        solution_dim=56 - rank,
        form_dim=RealSpan(basis.matrices).dim,
        contained=not bad,
        violations=bad,
    )
