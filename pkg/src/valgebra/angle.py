"""Angles carried as exact multiples of pi where possible, floats otherwise.

Angles between rational vectors have rational squared cosine.  When that
value is one of 0, 1/4, 1/2, 3/4, 1 the angle is an exact rational multiple
of pi (these are the only rational cos^2 at rational angles), which keeps
right angles, pi/3, pi/4 and pi/6 exact through the whole pipeline.  All
remaining evaluation runs in 40-digit working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpf

from .linalg import dot, exact_sqrt

WORK_DPS = 40

# cos^2(theta) -> theta/pi for the nonnegative-cosine representative
_COS2_TO_PI_MULT = {
    Fraction(1): Fraction(0),
    Fraction(3, 4): Fraction(1, 6),
    Fraction(1, 2): Fraction(1, 4),
    Fraction(1, 4): Fraction(1, 3),
    Fraction(0): Fraction(1, 2),
}


def _mpf_frac(q: Fraction):
    return mpf(q.numerator) / mpf(q.denominator)


@dataclass(frozen=True)
class Angle:
    """An angle in [0, pi] (sums may exceed); `pi_mult` set when exact."""

    pi_mult: Optional[Fraction]
    value: float

    @staticmethod
    def from_pi_multiple(q) -> "Angle":
        q = Fraction(q)
        with mp.workdps(WORK_DPS):
            return Angle(q, float(_mpf_frac(q) * mp.pi))

    @staticmethod
    def from_cos2(cos2: Fraction, negative: bool) -> "Angle":
        """Angle with the given rational squared cosine and cosine sign."""
        cos2 = Fraction(cos2)
        if not 0 <= cos2 <= 1:
            raise ValueError(f"cos^2 out of range: {cos2}")
        q = _COS2_TO_PI_MULT.get(cos2)
        if q is not None:
            return Angle.from_pi_multiple(1 - q if negative else q)
        with mp.workdps(WORK_DPS):
            c = mp.sqrt(_mpf_frac(cos2))
            if negative:
                c = -c
            return Angle(None, float(mp.acos(c)))

    @staticmethod
    def from_cos(r: Fraction) -> "Angle":
        """acos of an exact rational, exact when Niven's theorem applies."""
        r = Fraction(r)
        return Angle.from_cos2(r * r, r < 0)

    def __add__(self, other: "Angle") -> "Angle":
        if self.pi_mult is not None and other.pi_mult is not None:
            return Angle.from_pi_multiple(self.pi_mult + other.pi_mult)
        return Angle(None, self.value + other.value)

    def __sub__(self, other: "Angle") -> "Angle":
        if self.pi_mult is not None and other.pi_mult is not None:
            return Angle.from_pi_multiple(self.pi_mult - other.pi_mult)
        return Angle(None, self.value - other.value)

    def scaled(self, c) -> "Angle":
        c = Fraction(c)
        if self.pi_mult is not None:
            return Angle.from_pi_multiple(c * self.pi_mult)
        return Angle(None, float(c) * self.value)

    def over_two_pi(self):
        """theta / 2pi as Fraction when exact, else float."""
        if self.pi_mult is not None:
            return self.pi_mult / 2
        return self.value / (2.0 * float(mp.pi))

    def is_exact(self) -> bool:
        return self.pi_mult is not None


ZERO_ANGLE = Angle(Fraction(0), 0.0)


def angle_between(u: Sequence, v: Sequence) -> Angle:
    """Angle between two nonzero rational vectors."""
    uu, vv, uv = dot(u, u), dot(v, v), dot(u, v)
    if uu == 0 or vv == 0:
        raise ValueError("zero vector has no direction")
    cos2 = Fraction(uv * uv, uu * vv)
    return Angle.from_cos2(cos2, uv < 0)


def angle_from_gram(g00, g11, g01) -> Angle:
    """Angle between generators with the given exact Gram entries."""
    cos2 = Fraction(g01 * g01, g00 * g11)
    return Angle.from_cos2(cos2, g01 < 0)
