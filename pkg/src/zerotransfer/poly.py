"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored lowest degree first, ``coeffs[k]`` being the
coefficient of ``z**k``.  Trailing zeros are always stripped, so the zero
polynomial is the empty tuple and has no degree.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"num/den"`` strings to ``Fraction``.

    Floats are refused: nothing in this package may round silently.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def _strip(coeffs: Sequence[Fraction]) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    """Immutable dense polynomial over the rationals."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self._c = _strip([as_fraction(c) for c in coeffs])
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> "Polynomial":
        # trusted constructor: coefficients are already Fractions
        p = cls.__new__(cls)
        p._c = _strip(coeffs)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], lead: Scalar = 1) -> "Polynomial":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def degree(self):
        """Degree, or ``None`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else None

    @property
    def leading(self) -> Fraction:
        if not self._c:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self._c[-1]

    def __getitem__(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError("negative coefficient index")
        return self._c[k] if k < len(self._c) else Fraction(0)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Polynomial.constant(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._c)
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._c]})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                coef = "" if a == 1 else (f"{a}*" if a.denominator == 1 else f"({a})*")
                body = coef + ("z" if k == 1 else f"z^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw([-c for c in self._c])

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            return Polynomial._raw([c * a for a in self._c])
        a, b = self._c, other._c
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Polynomial":
        c = as_fraction(c)
        if c == 0:
            raise ZeroDivisionError("polynomial divided by zero scalar")
        return Polynomial._raw([a / c for a in self._c])

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = Polynomial.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``, also accepts Polynomials."""
        if isinstance(x, Polynomial):
            return self.compose(x)
        if not isinstance(x, Fraction) and isinstance(x, (int, Rational)):
            x = Fraction(x)
        acc = 0 * x
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def compose(self, q: "Polynomial") -> "Polynomial":
        """Return ``self(q(z))``."""
        acc = Polynomial()
        for c in reversed(self._c):
            acc = acc * q + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial._raw([k * c for k, c in enumerate(self._c)][1:])

    def divrem(self, divisor: "Polynomial"):
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self._c)
        db = len(divisor._c) - 1
        lead = divisor._c[-1]
        if len(rem) - 1 < db:
            return Polynomial(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            c = c / lead
            quot[k - db] = c
            for i, b in enumerate(divisor._c):
                rem[k - db + i] -= c * b
        return Polynomial._raw(quot), Polynomial._raw(rem[:db])

    def __floordiv__(self, divisor: "Polynomial") -> "Polynomial":
        return self.divrem(divisor)[0]

    def __mod__(self, divisor: "Polynomial") -> "Polynomial":
        return self.divrem(divisor)[1]

    def shift_down(self) -> "Polynomial":
        """Drop the constant term and divide by ``z``."""
        return Polynomial._raw(self._c[1:])

    def monic(self) -> "Polynomial":
        return self / self.leading

    def denominator_lcm(self) -> int:
        from math import lcm

        d = 1
        for c in self._c:
            d = lcm(d, c.denominator)
        return d

    def to_strings(self) -> list:
        return [f"{c.numerator}/{c.denominator}" for c in self._c]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "Polynomial":
        return cls(Fraction(s) for s in items)


Z = Polynomial((0, 1))
ONE = Polynomial((1,))
ZERO = Polynomial()


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero:
        a, b = b, a % b
    return a if a.is_zero else a.monic()


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_eval(p: Polynomial, x) -> Fraction:
    return p(as_fraction(x))


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def poly_divrem(a: Polynomial, b: Polynomial):
    return a.divrem(b)
