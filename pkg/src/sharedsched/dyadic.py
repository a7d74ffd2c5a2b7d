"""Exact dyadic-rational arithmetic.

Every time quantity in a synchronized shared-processor schedule is built
from job processing times by repeated averaging, so all values live in
the ring of dyadic rationals: numbers of the form ``mantissa / 2**exponent``.
This module provides that number type with exact (arbitrary-precision)
addition, subtraction, multiplication, halving and comparison.  There is
no rounding anywhere and no general division.

Canonical form: the mantissa is odd or zero, and zero has exponent 0.
Values are immutable and safe to share between threads.
"""

from __future__ import annotations

import fractions
import re

__all__ = ["Dyadic", "as_dyadic", "ZERO", "ONE"]

_INT_RE = re.compile(r"^-?\d+$")
_FRAC_RE = re.compile(r"^(-?\d+)/(\d+)$")
_POW_RE = re.compile(r"^(-?\d+)/2\^(\d+)$")


class Dyadic:
    """A dyadic rational ``mantissa / 2**exponent`` in canonical form."""

    __slots__ = ("mantissa", "exponent")

    def __init__(self, mantissa: int, exponent: int = 0):
        if isinstance(mantissa, bool) or not isinstance(mantissa, int):
            raise TypeError(f"mantissa must be an int, got {type(mantissa).__name__}")
        if isinstance(exponent, bool) or not isinstance(exponent, int):
            raise TypeError(f"exponent must be an int, got {type(exponent).__name__}")
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        if mantissa == 0:
            exponent = 0
        else:
            # strip factors of two shared with the denominator
            shift = min(exponent, ((mantissa & -mantissa).bit_length() - 1))
            mantissa >>= shift
            exponent -= shift
        object.__setattr__(self, "mantissa", mantissa)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic values are immutable")

    # -- parsing / formatting -------------------------------------------------

    @classmethod
    def from_string(cls, text: str) -> "Dyadic":
        """Parse ``"n"``, ``"n/d"`` (d a power of two) or ``"n/2^k"``."""
        if _INT_RE.match(text):
            return cls(int(text))
        m = _POW_RE.match(text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        m = _FRAC_RE.match(text)
        if m:
            den = int(m.group(2))
            if den <= 0 or den & (den - 1):
                raise ValueError(f"denominator is not a power of two: {text!r}")
            return cls(int(m.group(1)), den.bit_length() - 1)
        raise ValueError(f"not a dyadic literal: {text!r}")

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.mantissa)
        return f"{self.mantissa}/{1 << self.exponent}"

    def __repr__(self) -> str:
        return f"Dyadic({str(self)!r})"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.exponent, other.exponent)
        m = (self.mantissa << (e - self.exponent)) + (other.mantissa << (e - other.exponent))
        return Dyadic(m, e)

    __radd__ = __add__

    def __sub__(self, other) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        e = max(self.exponent, other.exponent)
        m = (self.mantissa << (e - self.exponent)) - (other.mantissa << (e - other.exponent))
        return Dyadic(m, e)

    def __rsub__(self, other) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "Dyadic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.mantissa, self.exponent)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.mantissa), self.exponent)

    def half(self) -> "Dyadic":
        """Exact division by two."""
        return Dyadic(self.mantissa, self.exponent + 1)

    def mul_pow2(self, k: int) -> "Dyadic":
        """Exact multiplication by ``2**k`` (``k`` may be negative)."""
        e = self.exponent - k
        if e >= 0:
            return Dyadic(self.mantissa, e)
        return Dyadic(self.mantissa << -e, 0)

    # -- comparison -----------------------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        e = max(self.exponent, other.exponent)
        a = self.mantissa << (e - self.exponent)
        b = other.mantissa << (e - other.exponent)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.mantissa == other.mantissa and self.exponent == other.exponent

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        # consistent with int/Fraction hashing so Dyadic(4) == 4 hashes alike
        return hash(fractions.Fraction(self.mantissa, 1 << self.exponent))

    def __bool__(self) -> bool:
        return self.mantissa != 0

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    @property
    def is_integer(self) -> bool:
        return self.exponent == 0


def _coerce(value):
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Dyadic(value)
    return NotImplemented


def as_dyadic(value) -> Dyadic:
    """Coerce an int, canonical string, or Dyadic to a Dyadic.

    Floats are rejected: binary floats would silently smuggle rounding
    into what must stay an exact computation.
    """
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Dyadic(value)
    if isinstance(value, str):
        return Dyadic.from_string(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a dyadic rational")


ZERO = Dyadic(0)
ONE = Dyadic(1)
