"""Minimal dimensional-analysis layer.

Formulas in :mod:`kdquad.core` are written once as plain arithmetic
expressions. Feeding them floats gives numbers; feeding them :class:`Dim`
values gives the dimension of the result, which is how the unit audit works.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Dim:
    """Exponents of (kg, m, s, A)."""

    kg: Fraction = Fraction(0)
    m: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    A: Fraction = Fraction(0)

    def _combine(self, other: Dim, sign: int) -> Dim:
        return Dim(
            self.kg + sign * other.kg,
            self.m + sign * other.m,
            self.s + sign * other.s,
            self.A + sign * other.A,
        )

    def __mul__(self, other):
        if isinstance(other, Dim):
            return self._combine(other, +1)
        if isinstance(other, (int, float)):
            return self
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dim):
            return self._combine(other, -1)
        if isinstance(other, (int, float)):
            return self
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return DIMENSIONLESS / self
        return NotImplemented

    def __pow__(self, p):
        p = Fraction(p)
        return Dim(self.kg * p, self.m * p, self.s * p, self.A * p)

    def __abs__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Dim) and other != self:
            raise TypeError(f"cannot add {self} and {other}")
        return self

    __radd__ = __add__
    __sub__ = __add__

    def __str__(self) -> str:
        parts = []
        for name in ("kg", "m", "s", "A"):
            exp = getattr(self, name)
            if exp == 1:
                parts.append(name)
            elif exp != 0:
                parts.append(f"{name}^{exp}")
        return " ".join(parts) or "1"


def dim(kg=0, m=0, s=0, A=0) -> Dim:
    return Dim(Fraction(kg), Fraction(m), Fraction(s), Fraction(A))


DIMENSIONLESS = dim()
KILOGRAM = dim(kg=1)
METRE = dim(m=1)
SECOND = dim(s=1)
AMPERE = dim(A=1)

COULOMB = AMPERE * SECOND
JOULE = KILOGRAM * METRE**2 / SECOND**2
WATT = JOULE / SECOND
TESLA = KILOGRAM / (SECOND**2 * AMPERE)
FARAD = COULOMB**2 / JOULE

ENERGY = JOULE
RATE = 1 / SECOND  # s^-1, also angular frequency
WAVENUMBER = 1 / METRE
MOMENTUM = KILOGRAM * METRE / SECOND
VECTOR_POTENTIAL = TESLA * METRE
INTENSITY = WATT / METRE**2
ACTION = JOULE * SECOND

CONSTANT_DIMS = {
    "e": COULOMB,
    "hbar": ACTION,
    "c": METRE / SECOND,
    "m_e": KILOGRAM,
    "eps0": FARAD / METRE,
    "amu": KILOGRAM,
}
