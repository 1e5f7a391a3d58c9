"""Exact scalar arithmetic over the rationals and prime fields GF(p).

Two kinds of field are supported, both exact:

* :class:`Rationals` -- arbitrary-precision fractions (``fractions.Fraction``
  underneath, so overflow is impossible).
* :class:`PrimeField` -- GF(p) for a machine-word prime p, residues stored
  as plain ints in ``[0, p)``.

A field object does double duty: it identifies the field (value equality,
hashable) and implements arithmetic on *raw* canonical values.  Raw values
are what matrices and subspace bases store internally; the
:class:`FieldElement` wrapper carries a ``(spec, value)`` pair for use at
API boundaries and supports the usual operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import (
    DivisionByZeroError,
    InfiniteFieldError,
    MixedFieldsError,
    NotPrimeError,
)

# Raw scalar: Fraction over the rationals, int residue over GF(p).
Raw = Union[Fraction, int]

_MAX_PRIME = 2**31  # machine-word primes only


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldSpec:
    """Common interface of the two field kinds.

    Subclasses implement exact arithmetic on raw canonical values.  All
    instances are immutable and hashable, so they can tag every matrix,
    subspace and scalar without copying.
    """

    kind: str

    # arithmetic on raw values ------------------------------------------

    def zero(self) -> Raw:
        raise NotImplementedError

    def one(self) -> Raw:
        raise NotImplementedError

    def add(self, a: Raw, b: Raw) -> Raw:
        raise NotImplementedError

    def sub(self, a: Raw, b: Raw) -> Raw:
        raise NotImplementedError

    def mul(self, a: Raw, b: Raw) -> Raw:
        raise NotImplementedError

    def neg(self, a: Raw) -> Raw:
        raise NotImplementedError

    def inv(self, a: Raw) -> Raw:
        raise NotImplementedError

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    # conversion ---------------------------------------------------------

    def coerce(self, x) -> Raw:
        """Normalize ``x`` (int, raw value, text or FieldElement) to a raw value."""
        raise NotImplementedError

    def parse(self, text: str) -> Raw:
        """Parse the canonical text form; raises ValueError on bad input."""
        raise NotImplementedError

    def format(self, value: Raw) -> str:
        """Canonical text form ("n" or "n/d" over Q, residue over GF(p))."""
        return str(value)

    def element(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    def sort_key(self, value: Raw):
        """Total order used for canonical eigenvalue ordering."""
        return value

    # enumeration / sampling ----------------------------------------------

    @property
    def is_finite(self) -> bool:
        raise NotImplementedError

    def order(self) -> int:
        """Number of elements; InfiniteFieldError over the rationals."""
        raise InfiniteFieldError("the rationals cannot be enumerated")

    def raw_elements(self) -> Iterator[Raw]:
        raise InfiniteFieldError("the rationals cannot be enumerated")

    def elements(self) -> Iterator["FieldElement"]:
        return (FieldElement(self, v) for v in self.raw_elements())

    def rand(self, rng) -> Raw:
        raise NotImplementedError

    def rand_nonzero(self, rng) -> Raw:
        while True:
            v = self.rand(rng)
            if v != self.zero():
                return v

    # helpers --------------------------------------------------------------

    def check_same(self, other: "FieldSpec") -> None:
        if self != other:
            raise MixedFieldsError(f"mixed fields: {self} and {other}")

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class Rationals(FieldSpec):
    """The field of rational numbers with arbitrary-precision arithmetic."""

    kind = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        return 1 / a

    def coerce(self, x) -> Fraction:
        if isinstance(x, FieldElement):
            self.check_same(x.spec)
            return x.value
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational scalar: {text!r}") from exc

    @property
    def is_finite(self) -> bool:
        return False

    def rand(self, rng) -> Fraction:
        # Small numerators and denominators keep generated instances readable.
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def to_json(self) -> dict:
        return {"kind": "Q"}

    def __repr__(self) -> str:
        return "Q"


@dataclass(frozen=True, slots=True)
class PrimeField(FieldSpec):
    """GF(p) for a prime p below 2^31; residues are ints in [0, p)."""

    p: int

    kind = "GF"

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p < _MAX_PRIME:
            raise NotPrimeError(f"modulus must be a prime in [2, 2^31): {self.p}")
        if not _is_prime(self.p):
            raise NotPrimeError(f"modulus is not prime: {self.p}")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZeroError("inverse of zero")
        return pow(a, -1, self.p)

    def coerce(self, x) -> int:
        if isinstance(x, FieldElement):
            self.check_same(x.spec)
            return x.value
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator % self.p
            raise TypeError(f"cannot coerce fraction {x} into {self}")
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str) -> int:
        try:
            return int(text.strip(), 10) % self.p
        except ValueError as exc:
            raise ValueError(f"not a GF({self.p}) scalar: {text!r}") from exc

    @property
    def is_finite(self) -> bool:
        return True

    def order(self) -> int:
        return self.p

    def raw_elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def rand(self, rng) -> int:
        return rng.randrange(self.p)

    def to_json(self) -> dict:
        return {"kind": "GF", "p": self.p}

    def __repr__(self) -> str:
        return f"GF({self.p})"


#: Shared instance of the rational field.
QQ = Rationals()


def GF(p: int) -> PrimeField:
    """Convenience constructor for GF(p)."""
    return PrimeField(p)


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An exact scalar tagged with its field.

    Values are always canonical: reduced fraction over Q, residue in
    ``[0, p)`` over GF(p).  Arithmetic between elements of different
    fields raises :class:`MixedFieldsError`.
    """

    spec: FieldSpec
    value: Raw

    def _rhs(self, other) -> Raw:
        if isinstance(other, FieldElement):
            self.spec.check_same(other.spec)
            return other.value
        return self.spec.coerce(other)

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._rhs(other)))

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._rhs(other)))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._rhs(other)))

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.value, self._rhs(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.spec.coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    @property
    def is_zero(self) -> bool:
        return self.value == self.spec.zero()

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        return self.spec.format(self.value)

    def __repr__(self) -> str:
        return f"{self.spec.format(self.value)}@{self.spec!r}"


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inv()


def enumerate_field(spec: FieldSpec) -> Iterator[FieldElement]:
    """All elements of a finite field, each exactly once.

    Raises :class:`InfiniteFieldError` over the rationals.
    """
    return spec.elements()
