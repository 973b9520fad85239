"""Gaussian rationals: exact complex numbers with rational real and imaginary parts.

The class deliberately duck-types with the builtin ``complex`` (``.real``,
``.imag``, ``.conjugate()``) so form evaluations can be written once and run
in either exact or floating point mode.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational


class GaussianRational:
    __slots__ = ("real", "imag")

    def __init__(self, real=0, imag=0):
        if isinstance(real, GaussianRational):
            if imag:
                raise TypeError("imag must be zero when real is a GaussianRational")
            self.real, self.imag = real.real, real.imag
            return
        if isinstance(real, (complex, float)) or isinstance(imag, (complex, float)):
            raise TypeError("floats are not exact; use GaussianRational.from_complex")
        self.real = Fraction(real)
        self.imag = Fraction(imag)

    @classmethod
    def from_complex(cls, z, max_denominator=10**6):
        z = complex(z)
        return cls(Fraction(z.real).limit_denominator(max_denominator),
                   Fraction(z.imag).limit_denominator(max_denominator))

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)

    def abs2(self):
        return self.real * self.real + self.imag * self.imag

    def __complex__(self):
        return complex(float(self.real), float(self.imag))

    def __bool__(self):
        return bool(self.real) or bool(self.imag)

    def __hash__(self):
        if self.imag == 0:
            return hash(self.real)
        return hash((self.real, self.imag))

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.real == o.real and self.imag == o.imag

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.real + o.real, self.imag + o.imag)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.real - o.real, self.imag - o.imag)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.real, self.imag, o.real, o.imag
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.real, self.imag, o.real, o.imag
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __repr__(self):
        return f"GaussianRational({format_gauss(self)!r})"

    def __str__(self):
        return format_gauss(self)


I = GaussianRational(0, 1)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(x)
    return NotImplemented


def gauss(x) -> GaussianRational:
    """Convert ints, Fractions, strings or GaussianRationals to a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return parse_gauss(x)
    if isinstance(x, (int, Rational)):
        return GaussianRational(x)
    raise TypeError(f"cannot convert {type(x).__name__} exactly")


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(z: GaussianRational) -> str:
    """Canonical string form ``a/b+c/d*i``; zero parts are omitted."""
    re_, im = z.real, z.imag
    if im == 0:
        return _fmt_q(re_)
    im_s = "i" if abs(im) == 1 else f"{_fmt_q(abs(im))}*i"
    if re_ == 0:
        return im_s if im > 0 else "-" + im_s
    return f"{_fmt_q(re_)}{'+' if im > 0 else '-'}{im_s}"


_NUM = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)(?:({_NUM})(\*?i)?|(i))")


def parse_gauss(s: str) -> GaussianRational:
    """Parse strings such as ``"1"``, ``"-i"``, ``"2*i"``, ``"1/2-3/4*i"``, ``"1+i"``."""
    text = s.replace(" ", "")
    if not text:
        raise ValueError("empty scalar")
    pos, re_, im = 0, Fraction(0), Fraction(0)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse scalar {s!r}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ValueError(f"cannot parse scalar {s!r}")
        if m.group(4):
            im += sign
        elif m.group(3):
            im += sign * Fraction(m.group(2))
        else:
            re_ += sign * Fraction(m.group(2))
        pos = m.end()
    return GaussianRational(re_, im)


def parse_float_scalar(s: str) -> complex:
    """Parse a floating point scalar; accepts Python's ``1+2j`` as well as ``1+2*i``."""
    t = s.replace(" ", "").replace("*i", "j").replace("*j", "j")
    t = re.sub(r"(?<![0-9.])i", "1j", t).replace("i", "j")
    return complex(t)
