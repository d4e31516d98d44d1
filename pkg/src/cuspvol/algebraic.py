"""Exact arithmetic in Q(√2, √3, √5).

Elements are stored as eight rationals over the basis
{1, √2, √3, √5, √6, √10, √15, √30}.  Internally each basis element is a
bitmask over the primes (2, 3, 5); the product of two basis elements is the
XOR of their masks times the primes they share.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

_PRIMES = (2, 3, 5)
# public basis order -> mask
BASIS_LABELS = ("1", "√2", "√3", "√5", "√6", "√10", "√15", "√30")
_ORDER_TO_MASK = (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)
_MASK_TO_ORDER = {m: i for i, m in enumerate(_ORDER_TO_MASK)}
_MASK_VALUE = tuple(
    math.sqrt(math.prod(p for b, p in enumerate(_PRIMES) if m >> b & 1)) for m in range(8)
)

Scalar = Union[int, Fraction]


def _shared(a: int, b: int) -> int:
    return math.prod(p for bit, p in enumerate(_PRIMES) if (a & b) >> bit & 1)


class AlgebraicNumber:
    """Element of Q(√2, √3, √5) with rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[Scalar] = ()) -> None:
        coeffs = [Fraction(c) for c in coefficients]
        if len(coeffs) > 8:
            raise ValueError("at most 8 coefficients")
        coeffs += [Fraction(0)] * (8 - len(coeffs))
        # stored by mask
        self._c = tuple(coeffs[_MASK_TO_ORDER[m]] for m in range(8))

    @classmethod
    def _from_masks(cls, by_mask: list[Fraction]) -> AlgebraicNumber:
        obj = cls.__new__(cls)
        obj._c = tuple(by_mask)
        return obj

    @classmethod
    def rational(cls, q: Scalar) -> AlgebraicNumber:
        return cls([q])

    @classmethod
    def sqrt(cls, n: int) -> AlgebraicNumber:
        """√n for a squarefree-reducible n whose prime factors lie in {2, 3, 5}."""
        if n <= 0:
            raise ValueError("n must be positive")
        mask, square, m = 0, 1, n
        for bit, p in enumerate(_PRIMES):
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e % 2:
                mask |= 1 << bit
            square *= p ** (e // 2)
        if m != 1:
            raise ValueError(f"√{n} is not in Q(√2,√3,√5)")
        by_mask = [Fraction(0)] * 8
        by_mask[mask] = Fraction(square)
        return cls._from_masks(by_mask)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients in the order 1, √2, √3, √5, √6, √10, √15, √30."""
        return tuple(self._c[m] for m in _ORDER_TO_MASK)

    def _coerce(self, other: object) -> AlgebraicNumber | None:
        if isinstance(other, AlgebraicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber.rational(other)
        return None

    def __add__(self, other: object) -> AlgebraicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber._from_masks([a + b for a, b in zip(self._c, o._c)])

    __radd__ = __add__

    def __neg__(self) -> AlgebraicNumber:
        return AlgebraicNumber._from_masks([-a for a in self._c])

    def __sub__(self, other: object) -> AlgebraicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> AlgebraicNumber:
        return (-self) + other

    def __mul__(self, other: object) -> AlgebraicNumber:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = [Fraction(0)] * 8
        for a, ca in enumerate(self._c):
            if not ca:
                continue
            for b, cb in enumerate(o._c):
                if cb:
                    out[a ^ b] += ca * cb * _shared(a, b)
        return AlgebraicNumber._from_masks(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __float__(self) -> float:
        return math.fsum(float(c) * _MASK_VALUE[m] for m, c in enumerate(self._c))

    def is_rational(self) -> bool:
        return not any(self._c[1:])

    def is_rational_integer(self) -> bool:
        return self.is_rational() and self._c[0].denominator == 1

    def __repr__(self) -> str:
        return f"AlgebraicNumber({[str(c) for c in self.coefficients]})"

    def __str__(self) -> str:
        parts = []
        for label, c in zip(BASIS_LABELS, self.coefficients):
            if not c:
                continue
            if label == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(label)
            elif c == -1:
                parts.append("-" + label)
            else:
                parts.append(f"{c}*{label}" if c.denominator == 1 else f"({c})*{label}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def two_cos_pi_over(m: int | float) -> AlgebraicNumber | None:
    """Exact 2cos(π/m) for m ∈ {2, 3, 4, 5, 6, ∞}; None outside the table."""
    if m == math.inf:
        return AlgebraicNumber.rational(2)
    table = {
        2: AlgebraicNumber.rational(0),
        3: AlgebraicNumber.rational(1),
        4: AlgebraicNumber.sqrt(2),
        5: AlgebraicNumber([Fraction(1, 2), 0, 0, Fraction(1, 2)]),
        6: AlgebraicNumber.sqrt(3),
    }
    return table.get(m)
