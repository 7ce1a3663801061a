"""Exact scalars: rationals and univariate polynomials in the genus variable.

``Rational`` is :class:`fractions.Fraction`; it is already immutable, normalized,
hashable and backed by Python's arbitrary-precision ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def rat(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(num, den)


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def rational_to_json(q: Scalar) -> str:
    """``35/2`` -> ``"35/2"``; integers become bare strings (``"21"``)."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_json(s: str) -> Fraction:
    num, sep, den = s.partition("/")
    if not sep:
        return Fraction(int(num))
    return rat(int(num), int(den))


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in one variable ``g`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``g**i``; trailing zeros are stripped so
    the zero polynomial is ``()``.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [as_rational(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c: Scalar) -> "UniPoly":
        return cls((as_rational(c),))

    @classmethod
    def var(cls) -> "UniPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> "UniPoly":
        return cls(tuple(as_rational(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial -> -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def _lift(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = UniPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        if self.is_zero():
            return "UniPoly(0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            coef = rational_to_json(c)
            if mono and c == 1:
                coef = ""
            elif mono and c == -1:
                coef = "-"
            terms.append(f"{coef}{mono}")
        return "UniPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"


G = UniPoly.var()


def poly_identity_check(p: UniPoly, q: UniPoly | Scalar) -> bool:
    """True iff ``p - q`` is the zero polynomial."""
    return (p - q).is_zero()


def nonneg_on_range_from(p: UniPoly, start: int) -> bool:
    """Certify ``p(g) >= 0`` for every integer ``g >= start``.

    Uses a Taylor shift ``p(start + h)``: nonnegative coefficients in ``h``
    suffice. Returns False when the certificate does not apply (no claim is
    made about ``p`` in that case).
    """
    shifted = UniPoly()
    h_plus_start = G + start
    for c in reversed(p.coeffs):
        shifted = shifted * h_plus_start + c
    return all(c >= 0 for c in shifted.coeffs)

