"""Mantissa-exponent arithmetic for magnitudes beyond float64 range.

A ScaledValue represents mantissa * 2**exponent with the mantissa normalized
into [1, 2) or (-2, -1] (zero is stored as (0.0, 0)).  It exists so that
quantities such as high-degree weighted Hermite polynomial values or Gamma
ratios like G(4n+1)/G(2n+1) can be carried exactly through recurrences that
would overflow native floats long before degree 20000.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class ScaledValue:
    mantissa: float
    exponent: int

    # -- constructors ------------------------------------------------------

    @staticmethod
    def compose(mantissa: float, exponent: int) -> "ScaledValue":
        """Build from an arbitrary mantissa/exponent pair, renormalizing."""
        if mantissa == 0.0:
            return ScaledValue(0.0, 0)
        if not math.isfinite(mantissa):
            raise DomainError("ScaledValue mantissa must be finite")
        frac, e = math.frexp(mantissa)  # |frac| in [0.5, 1)
        return ScaledValue(frac * 2.0, exponent + e - 1)

    @staticmethod
    def from_float(value: float) -> "ScaledValue":
        return ScaledValue.compose(value, 0)

    @staticmethod
    def from_log2(log2_magnitude: float, sign: int = 1) -> "ScaledValue":
        """Build sign * 2**log2_magnitude."""
        if sign == 0:
            return ScaledValue(0.0, 0)
        e = math.floor(log2_magnitude)
        mant = 2.0 ** (log2_magnitude - e)
        if mant >= 2.0:  # guard the boundary rounding case
            mant *= 0.5
            e += 1
        return ScaledValue(math.copysign(mant, sign), int(e))

    # -- queries -----------------------------------------------------------

    @property
    def sign(self) -> int:
        if self.mantissa > 0.0:
            return 1
        if self.mantissa < 0.0:
            return -1
        return 0

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    def log2_magnitude(self) -> float:
        if self.is_zero:
            raise DomainError("log2 of zero ScaledValue")
        return self.exponent + math.log2(abs(self.mantissa))

    def to_float(self) -> float:
        """Exact float64 when representable; raises OverflowError otherwise."""
        return math.ldexp(self.mantissa, self.exponent)

    def __float__(self) -> float:
        return self.to_float()

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "ScaledValue":
        return ScaledValue(-self.mantissa, self.exponent if self.mantissa != 0.0 else 0)

    def __abs__(self) -> "ScaledValue":
        return ScaledValue(abs(self.mantissa), self.exponent)

    def _coerce(self, other) -> "ScaledValue":
        if isinstance(other, ScaledValue):
            return other
        if isinstance(other, (int, float)):
            return ScaledValue.from_float(float(other))
        return NotImplemented

    def __mul__(self, other) -> "ScaledValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return ScaledValue(0.0, 0)
        return ScaledValue.compose(self.mantissa * o.mantissa, self.exponent + o.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero ScaledValue")
        if self.is_zero:
            return ScaledValue(0.0, 0)
        return ScaledValue.compose(self.mantissa / o.mantissa, self.exponent - o.exponent)

    def __add__(self, other) -> "ScaledValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        hi, lo = (self, o) if self.exponent >= o.exponent else (o, self)
        shift = hi.exponent - lo.exponent
        if shift > 1100:  # lo is below one ulp of hi
            return hi
        return ScaledValue.compose(hi.mantissa + math.ldexp(lo.mantissa, -shift), hi.exponent)

    def __sub__(self, other) -> "ScaledValue":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.__add__(-o)

    # -- comparison ---------------------------------------------------------

    def _cmp(self, other: "ScaledValue") -> int:
        a, b = self.sign, other.sign
        if a != b:
            return -1 if a < b else 1
        if a == 0:
            return 0
        diff = self - other
        return diff.sign

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp(o) < 0

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp(o) <= 0

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp(o) > 0

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._cmp(o) >= 0

    def relative_difference(self, other: "ScaledValue") -> float:
        """|self/other - 1| without leaving the scaled representation."""
        if other.is_zero:
            raise DomainError("relative difference against zero")
        ratio = self / other
        if abs(ratio.exponent) > 60:
            return math.inf
        return abs(ratio.to_float() - 1.0)
