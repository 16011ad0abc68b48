"""Exact half-integer quantum numbers."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class HalfInt:
    """A half-integer stored as twice its value.

    Arithmetic and comparison are exact.  Plain numbers (int, Fraction, or a
    float that is exactly a half-integer) are accepted wherever a HalfInt is
    expected in arithmetic.
    """

    doubled: int

    def __post_init__(self):
        if isinstance(self.doubled, bool) or int(self.doubled) != self.doubled:
            raise DomainError(f"doubled value must be an integer, got {self.doubled!r}")
        object.__setattr__(self, "doubled", int(self.doubled))
        # equal to the hash of the numerically equal int / Fraction / float
        object.__setattr__(self, "_hash", hash(Fraction(self.doubled, 2)))

    @classmethod
    def of(cls, value) -> HalfInt:
        """Convert int, Fraction, float or a string like '3/2' to a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        try:
            frac = Fraction(value)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"not a number: {value!r}") from exc
        twice = 2 * frac
        if twice.denominator != 1:
            raise DomainError(f"{value!r} is not a half-integer")
        return cls(twice.numerator)

    @property
    def frac(self) -> Fraction:
        return Fraction(self.doubled, 2)

    @property
    def value(self) -> float:
        return self.doubled / 2

    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def __float__(self):
        return self.doubled / 2

    def __add__(self, other):
        return HalfInt(self.doubled + HalfInt.of(other).doubled)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.doubled - HalfInt.of(other).doubled)

    def __rsub__(self, other):
        return HalfInt(HalfInt.of(other).doubled - self.doubled)

    def __neg__(self):
        return HalfInt(-self.doubled)

    def __abs__(self):
        return HalfInt(abs(self.doubled))

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.doubled == other.doubled
        if isinstance(other, (int, float, Fraction)):
            return Fraction(self.doubled, 2) == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, HalfInt):
            return self.doubled < other.doubled
        if isinstance(other, (int, float, Fraction)):
            return Fraction(self.doubled, 2) < other
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __str__(self):
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self):
        return f"HalfInt({str(self)!r})"


@dataclass(frozen=True)
class QNum:
    """Index triple (s, j, m) of a spin-weighted spherical harmonic.

    Fields accept anything ``HalfInt.of`` accepts.  Validity requires
    j >= |s|, |m| <= j, and j - s, j - m integral.
    """

    s: HalfInt
    j: HalfInt
    m: HalfInt

    def __post_init__(self):
        for name in ("s", "j", "m"):
            object.__setattr__(self, name, HalfInt.of(getattr(self, name)))
        s, j, m = self.s.doubled, self.j.doubled, self.m.doubled
        if j < abs(s):
            raise DomainError(f"j={self.j} below |s|={abs(self.s)}")
        if abs(m) > j:
            raise DomainError(f"|m|={abs(self.m)} exceeds j={self.j}")
        if (j - s) % 2 or (j - m) % 2:
            raise DomainError(f"j - s and j - m must be integers in {self}")

    @classmethod
    def try_make(cls, s, j, m):
        """Return the QNum, or None when the triple is not valid."""
        try:
            return cls(s, j, m)
        except DomainError:
            return None

    def __str__(self):
        return f"({self.s},{self.j},{self.m})"


def basis_indices(s, j_max):
    """All valid QNum with spin weight s and j <= j_max, ordered by (j, m)."""
    s = HalfInt.of(s)
    j_max = HalfInt.of(j_max)
    out = []
    j2 = abs(s.doubled)
    while j2 <= j_max.doubled:
        for m2 in range(-j2, j2 + 1, 2):
            out.append(QNum(s, HalfInt(j2), HalfInt(m2)))
        j2 += 2
    return out
