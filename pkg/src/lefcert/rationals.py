"""Exact Gaussian-rational scalars.

Every computation in the library happens over Q(i).  Rational parts are
kept in canonical form (reduced, positive denominator) by the backing
rational type.  Floating-point input is rejected outright: nothing in
this library is approximate.
"""

from __future__ import annotations

from fractions import Fraction

try:  # gmpy2.mpq is a drop-in, much faster rational
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction

__all__ = ["Rat", "as_rat", "GaussianRational", "GR", "ZERO", "ONE", "I", "cpq_constant"]


def as_rat(x):
    """Coerce x to the exact rational backend.

    Accepts ints, Fractions, Rat values and "p/q" strings.  Floats are
    rejected rather than rationalized.
    """
    if isinstance(x, float):
        raise TypeError(f"floating-point value {x!r} rejected; use int, Fraction or 'p/q'")
    if isinstance(x, str):
        return Rat(Fraction(x))
    return Rat(x)


class GaussianRational:
    """Exact complex number a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rat(re))
        object.__setattr__(self, "im", as_rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # ---- predicates ----

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def as_real(self):
        """Return the rational value, raising if the imaginary part is nonzero."""
        if self.im:
            raise ArithmeticError(f"expected a real value, got {self!r}")
        return self.re

    # ---- arithmetic ----

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise TypeError("only nonnegative integer powers")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ---- comparison / hashing ----

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if not self.im:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im})"


def GR(re=0, im=0):
    """Shorthand constructor."""
    if isinstance(re, GaussianRational):
        if im:
            raise TypeError("cannot add imaginary part to a GaussianRational")
        return re
    return GaussianRational(re, im)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, type(Rat(0)))):
        return GaussianRational(x)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def cpq_constant(p: int, q: int) -> GaussianRational:
    """The bidegree sign constant i^(q-p) * (-1)^((p+q)(p+q+1)/2)."""
    k = (q - p) % 4
    ipow = (ONE, I, -ONE, -I)[k]
    sign = -1 if ((p + q) * (p + q + 1) // 2) % 2 else 1
    return ipow * sign
