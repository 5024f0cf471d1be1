"""Semiring weights shared by every weighted computation in the package."""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Iterable

from .core import SemiringMismatchError

Carrier = bool | float


class SemiringName(str, Enum):
    bool = "bool"
    real = "real"
    viterbi = "viterbi"


@dataclass(frozen=True, order=True)
class SemiringValue:
    """An element of a named semiring. The tag keeps instances from being mixed."""

    semiring: str
    value: Carrier

    def __add__(self, other: "SemiringValue") -> "SemiringValue":
        return get_semiring(self.semiring).add(self, other)

    def __mul__(self, other: "SemiringValue") -> "SemiringValue":
        return get_semiring(self.semiring).mul(self, other)

    def __str__(self) -> str:
        return get_semiring(self.semiring).format(self)


class Semiring(ABC):
    name: SemiringName
    # Every bundled instance has a commutative product; fitting relies on it.
    commutative: bool = True

    def _check(self, *values: SemiringValue) -> None:
        for v in values:
            if v.semiring != self.name.value:
                raise SemiringMismatchError(f"'{v.semiring}' value used with semiring '{self.name.value}'")

    def value(self, carrier: Carrier) -> SemiringValue:
        return SemiringValue(self.name.value, self._coerce(carrier))

    def zero(self) -> SemiringValue:
        return self.value(self._zero)

    def one(self) -> SemiringValue:
        return self.value(self._one)

    def add(self, a: SemiringValue, b: SemiringValue) -> SemiringValue:
        self._check(a, b)
        # Results go back through the carrier check, so an overflow to inf raises.
        return self.value(self._add(a.value, b.value))

    def mul(self, a: SemiringValue, b: SemiringValue) -> SemiringValue:
        self._check(a, b)
        return self.value(self._mul(a.value, b.value))

    def sum(self, values: Iterable[SemiringValue]) -> SemiringValue:
        return reduce(self.add, values, self.zero())

    def product(self, values: Iterable[SemiringValue]) -> SemiringValue:
        return reduce(self.mul, values, self.one())

    def is_zero(self, a: SemiringValue) -> bool:
        self._check(a)
        return a.value == self._zero

    def approx_eq(self, a: SemiringValue, b: SemiringValue, tol: float = 0.0) -> bool:
        self._check(a, b)
        if tol < 0:
            raise ValueError(f"Tolerance must be non-negative, got {tol}")
        return abs(float(a.value) - float(b.value)) <= tol

    def parse(self, text: str) -> SemiringValue:
        """Read a weight annotation such as '0.25' or 'true'."""
        try:
            number = float(text)
        except ValueError:
            raise ValueError(f"'{text}' is not a {self.name.value} weight") from None
        return self.value(number)

    def format(self, a: SemiringValue) -> str:
        return f"{float(a.value):.17g}"

    def to_json(self, a: SemiringValue) -> Carrier:
        self._check(a)
        return a.value

    @property
    @abstractmethod
    def _zero(self) -> Carrier:
        pass

    @property
    @abstractmethod
    def _one(self) -> Carrier:
        pass

    @abstractmethod
    def _coerce(self, carrier: Carrier) -> Carrier:
        pass

    @abstractmethod
    def _add(self, a: Carrier, b: Carrier) -> Carrier:
        pass

    @abstractmethod
    def _mul(self, a: Carrier, b: Carrier) -> Carrier:
        pass


class BooleanSemiring(Semiring):
    name = SemiringName.bool
    _zero = False
    _one = True

    def _coerce(self, carrier: Carrier) -> Carrier:
        if isinstance(carrier, bool):
            return carrier
        if carrier in (0, 1):
            return bool(carrier)
        raise ValueError(f"{carrier!r} is not a Boolean weight")

    def _add(self, a: Carrier, b: Carrier) -> Carrier:
        return bool(a) or bool(b)

    def _mul(self, a: Carrier, b: Carrier) -> Carrier:
        return bool(a) and bool(b)

    def approx_eq(self, a: SemiringValue, b: SemiringValue, tol: float = 0.0) -> bool:
        self._check(a, b)
        return a.value == b.value

    def parse(self, text: str) -> SemiringValue:
        lowered = text.strip().lower()
        if lowered in ("true", "1"):
            return self.one()
        if lowered in ("false", "0"):
            return self.zero()
        # Numeric annotations collapse to their support, so real-weighted files load as Boolean.
        try:
            number = float(lowered)
        except ValueError:
            raise ValueError(f"'{text}' is not a bool weight") from None
        if not math.isfinite(number) or number < 0:
            raise ValueError(f"'{text}' is not a bool weight")
        return self.value(number > 0)

    def format(self, a: SemiringValue) -> str:
        return "true" if a.value else "false"


class RealSemiring(Semiring):
    """Non-negative reals under ordinary addition and multiplication."""

    name = SemiringName.real
    _zero = 0.0
    _one = 1.0

    def _coerce(self, carrier: Carrier) -> Carrier:
        number = float(carrier)
        if not math.isfinite(number) or number < 0:
            raise ValueError(f"{carrier!r} is not a non-negative real weight")
        return number

    def _add(self, a: Carrier, b: Carrier) -> Carrier:
        return float(a) + float(b)

    def _mul(self, a: Carrier, b: Carrier) -> Carrier:
        return float(a) * float(b)


class ViterbiSemiring(Semiring):
    """Weights in [0, 1] with max as addition; sums pick out the best derivation."""

    name = SemiringName.viterbi
    _zero = 0.0
    _one = 1.0

    def _coerce(self, carrier: Carrier) -> Carrier:
        number = float(carrier)
        if not 0.0 <= number <= 1.0:
            raise ValueError(f"{carrier!r} is not a Viterbi weight in [0, 1]")
        return number

    def _add(self, a: Carrier, b: Carrier) -> Carrier:
        return max(float(a), float(b))

    def _mul(self, a: Carrier, b: Carrier) -> Carrier:
        return float(a) * float(b)


SEMIRINGS: dict[str, Semiring] = {s.name.value: s for s in (BooleanSemiring(), RealSemiring(), ViterbiSemiring())}


def get_semiring(name: "str | SemiringName") -> Semiring:
    key = name.value if isinstance(name, SemiringName) else name
    if key not in SEMIRINGS:
        raise ValueError(f"Unknown semiring '{key}'; expected one of {sorted(SEMIRINGS)}")
    return SEMIRINGS[key]


def add(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    if a.semiring != b.semiring:
        raise SemiringMismatchError(f"Cannot add '{a.semiring}' and '{b.semiring}' values")
    return get_semiring(a.semiring).add(a, b)


def mul(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    if a.semiring != b.semiring:
        raise SemiringMismatchError(f"Cannot multiply '{a.semiring}' and '{b.semiring}' values")
    return get_semiring(a.semiring).mul(a, b)


def approx_eq(a: SemiringValue, b: SemiringValue, tol: float) -> bool:
    if a.semiring != b.semiring:
        raise SemiringMismatchError(f"Cannot compare '{a.semiring}' and '{b.semiring}' values")
    return get_semiring(a.semiring).approx_eq(a, b, tol)
