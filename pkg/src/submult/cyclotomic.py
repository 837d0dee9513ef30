"""Exact arithmetic for roots of unity and finite spectra.

A root of unity is stored as a reduced fraction num/den in Q/Z and means
exp(2*pi*i*num/den).  Multiplication is fraction addition mod 1, so the
whole unit-circle group is exact; floating point appears only in
``to_complex``, the bridge used by the numerical test oracles.

Fractions (rather than exponents against a fixed modulus) are used because
eigenvalues of an l-cycle over p**k-th roots of unity live among
(l * p**k)-th roots: no single ambient modulus is convenient.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Iterator


def is_prime(n: int) -> bool:
    """Trial-division primality test; inputs here are tiny."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CyclotomicUnit:
    """exp(2*pi*i*num/den), normalized so 0 <= num < den and gcd(num, den) = 1.

    The identity is exactly (0, 1), and the multiplicative order of the
    value equals ``den``.
    """

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        if self.den <= 0:
            raise ValueError(f"denominator must be positive, got {self.den}")
        num = self.num % self.den
        g = math.gcd(num, self.den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", self.den // g)

    @property
    def order(self) -> int:
        return self.den

    def __mul__(self, other: "CyclotomicUnit") -> "CyclotomicUnit":
        return CyclotomicUnit(self.num * other.den + other.num * self.den,
                              self.den * other.den)

    def __pow__(self, k: int) -> "CyclotomicUnit":
        return CyclotomicUnit(self.num * k, self.den)

    def inverse(self) -> "CyclotomicUnit":
        return CyclotomicUnit(-self.num, self.den)

    def sort_key(self) -> tuple[int, int]:
        return (self.den, self.num)

    def __lt__(self, other: "CyclotomicUnit") -> bool:
        return self.sort_key() < other.sort_key()

    def to_complex(self) -> complex:
        return cmath.exp(2j * cmath.pi * self.num / self.den)

    def to_json(self) -> dict:
        return {"num": self.num, "den": self.den}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicUnit":
        return cls(int(data["num"]), int(data["den"]))

    def __repr__(self) -> str:
        return f"CyclotomicUnit({self.num}, {self.den})"


ONE = CyclotomicUnit(0, 1)


class Spectrum:
    """Finite set of roots of unity with a canonical (den, num) ordering.

    Duplicates collapse; equality and hashing are structural, so two
    spectra compare equal exactly when they contain the same values.
    """

    __slots__ = ("elems",)

    def __init__(self, values: Iterable[CyclotomicUnit] = ()):
        self.elems: tuple[CyclotomicUnit, ...] = tuple(
            sorted(set(values), key=CyclotomicUnit.sort_key))

    def __iter__(self) -> Iterator[CyclotomicUnit]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, value: CyclotomicUnit) -> bool:
        return value in set(self.elems)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Spectrum) and self.elems == other.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def key(self) -> tuple[tuple[int, int], ...]:
        """Hashable canonical form, used for interning in pair scans."""
        return tuple((u.num, u.den) for u in self.elems)

    def issubset(self, other: "Spectrum") -> bool:
        return set(self.elems) <= set(other.elems)

    def product(self, other: "Spectrum") -> "Spectrum":
        """All pairwise products, collapsed to a set."""
        return Spectrum(a * b for a in self.elems for b in other.elems)

    def union(self, other: "Spectrum") -> "Spectrum":
        return Spectrum(self.elems + other.elems)

    def inverses(self) -> "Spectrum":
        return Spectrum(u.inverse() for u in self.elems)

    def to_json(self) -> list[dict]:
        return [u.to_json() for u in self.elems]

    @classmethod
    def from_json(cls, data: list[dict]) -> "Spectrum":
        return cls(CyclotomicUnit.from_json(d) for d in data)

    def __repr__(self) -> str:
        inner = ", ".join(f"{u.num}/{u.den}" for u in self.elems)
        return f"Spectrum({{{inner}}})"


def roots_of_unity(order: int) -> Spectrum:
    """All order-th roots of unity (i.e. all values of order dividing it)."""
    if order < 1:
        raise ValueError("order must be positive")
    return Spectrum(CyclotomicUnit(t, order) for t in range(order))


def prime_power_roots(p: int, k: int) -> Spectrum:
    """All p**k-th roots of unity; rejects composite p."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return roots_of_unity(p ** k)
