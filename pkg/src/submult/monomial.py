"""Monomial matrices over roots of unity, with exact spectra.

Convention (fixed once, column-major): a monomial matrix M of dimension n
is stored as a permutation ``perm`` and an entry list ``entries`` such that
M[perm[j], j] = entries[j] and all other positions are zero.  Equivalently
M maps the basis vector e_j to entries[j] * e_{perm[j]}.

Eigenvalues are computed per permutation cycle, never through a
characteristic polynomial: a cycle of length l whose entries multiply to
the root of unity a/b contributes the l exact solutions of x**l = a/b,
i.e. the reduced fractions (a + b*t) / (b*l).  No floats enter this path;
``to_dense`` exists only so numerical oracles can cross-check it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclotomic import ONE, CyclotomicUnit, Spectrum


@dataclass(frozen=True)
class MonomialMatrix:
    n: int
    perm: tuple[int, ...]
    entries: tuple[CyclotomicUnit, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.perm) != self.n or len(self.entries) != self.n:
            raise ValueError("perm and entries must have length n")
        if sorted(self.perm) != list(range(self.n)):
            raise ValueError("perm is not a bijection on 0..n-1")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "MonomialMatrix":
        return cls(n, tuple(range(n)), (ONE,) * n)

    @classmethod
    def diagonal(cls, values: list[CyclotomicUnit] | tuple[CyclotomicUnit, ...]) -> "MonomialMatrix":
        values = tuple(values)
        return cls(len(values), tuple(range(len(values))), values)

    @classmethod
    def from_perm(cls, perm: list[int] | tuple[int, ...]) -> "MonomialMatrix":
        perm = tuple(perm)
        return cls(len(perm), perm, (ONE,) * len(perm))

    # -- predicates ----------------------------------------------------------

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(e == ONE for e in self.entries)

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.n))

    # -- group structure -----------------------------------------------------

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        entries = tuple(self.entries[other.perm[j]] * other.entries[j]
                        for j in range(self.n))
        return MonomialMatrix(self.n, perm, entries)

    def inverse(self) -> "MonomialMatrix":
        iperm = [0] * self.n
        for j, r in enumerate(self.perm):
            iperm[r] = j
        entries = tuple(self.entries[iperm[i]].inverse() for i in range(self.n))
        return MonomialMatrix(self.n, tuple(iperm), entries)

    def __pow__(self, k: int) -> "MonomialMatrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = MonomialMatrix.identity(self.n)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def identity_like(self) -> "MonomialMatrix":
        return MonomialMatrix.identity(self.n)

    # -- cycle data ----------------------------------------------------------

    def cycles(self) -> list[list[int]]:
        """Cycles of the permutation j -> perm[j], each starting at its
        least member, listed by that member."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.perm[j]
            out.append(cyc)
        return out

    def order(self) -> int:
        """Least k >= 1 with self**k = identity.

        Per cycle of length l with entry product c, the block satisfies
        M**l = c * I, so the block order is l * order(c); the matrix order
        is the lcm over cycles.
        """
        result = 1
        for cyc in self.cycles():
            c = ONE
            for j in cyc:
                c = c * self.entries[j]
            result = math.lcm(result, len(cyc) * c.order)
        return result

    def spectrum(self) -> Spectrum:
        values = []
        for cyc in self.cycles():
            c = ONE
            for j in cyc:
                c = c * self.entries[j]
            l = len(cyc)
            values.extend(CyclotomicUnit(c.num + c.den * t, c.den * l)
                          for t in range(l))
        return Spectrum(values)

    def det(self) -> CyclotomicUnit:
        cycles = self.cycles()
        sign_odd = (self.n - len(cycles)) % 2 == 1
        d = CyclotomicUnit(1, 2) if sign_odd else ONE
        for e in self.entries:
            d = d * e
        return d

    def trace(self) -> complex:
        """Float bridge; exact code never calls this."""
        return sum((self.entries[j].to_complex()
                    for j in range(self.n) if self.perm[j] == j), 0j)

    # -- combination ---------------------------------------------------------

    def tensor(self, other: "MonomialMatrix") -> "MonomialMatrix":
        """Kronecker product; row/column (i1, i2) is packed as i1 * other.n + i2."""
        m = other.n
        n = self.n * m
        perm = [0] * n
        entries: list[CyclotomicUnit] = [ONE] * n
        for j1 in range(self.n):
            for j2 in range(m):
                col = j1 * m + j2
                perm[col] = self.perm[j1] * m + other.perm[j2]
                entries[col] = self.entries[j1] * other.entries[j2]
        return MonomialMatrix(n, tuple(perm), tuple(entries))

    def direct_sum(self, other: "MonomialMatrix") -> "MonomialMatrix":
        perm = self.perm + tuple(r + self.n for r in other.perm)
        return MonomialMatrix(self.n + other.n, perm, self.entries + other.entries)

    # -- canonical form and serialization -------------------------------------

    def key(self) -> tuple:
        return (self.n, self.perm, tuple((e.num, e.den) for e in self.entries))

    def to_dense(self) -> list[list[complex]]:
        out = [[0j] * self.n for _ in range(self.n)]
        for j in range(self.n):
            out[self.perm[j]][j] = self.entries[j].to_complex()
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "perm": list(self.perm),
                "entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialMatrix":
        return cls(int(data["n"]), tuple(int(x) for x in data["perm"]),
                   tuple(CyclotomicUnit.from_json(e) for e in data["entries"]))


@dataclass(frozen=True)
class ExponentVector:
    """Vector over Z/modulus, the target of the diagonal exponent map."""

    modulus: int
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "coords",
                           tuple(c % self.modulus for c in self.coords))

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        if self.modulus != other.modulus or len(self.coords) != len(other.coords):
            raise ValueError("incompatible exponent vectors")
        return ExponentVector(self.modulus,
                              tuple(a + b for a, b in zip(self.coords, other.coords)))

    def rotate_left(self) -> "ExponentVector":
        """(k_1, ..., k_n) -> (k_2, ..., k_n, k_1)."""
        return ExponentVector(self.modulus, self.coords[1:] + self.coords[:1])


def diagonal_exponents(d: MonomialMatrix, p: int, k: int) -> ExponentVector:
    """Write a diagonal matrix as diag(w**l_j) for w = exp(2*pi*i/p**k) and
    return (l_0, ..., l_{n-1}) over Z/p**k.

    This is a homomorphism from diagonal matrices under multiplication to
    exponent vectors under addition.
    """
    if not d.is_diagonal():
        raise ValueError("matrix is not diagonal")
    modulus = p ** k
    coords = []
    for e in d.entries:
        if modulus % e.den != 0:
            raise ValueError(
                f"entry order {e.den} does not divide {p}**{k}")
        coords.append(e.num * (modulus // e.den))
    return ExponentVector(modulus, tuple(coords))


# -- linear algebra over Z/p for the rotation-difference filtration ----------

def _rref_mod_p(rows: list[list[int]], p: int) -> list[tuple[int, ...]]:
    """Row-reduce over the field Z/p; returns the nonzero rows, pivots 1,
    pivot columns cleared, in pivot-column order."""
    rows = [[x % p for x in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    reduced: list[list[int]] = []
    pivot_cols: list[int] = []
    for row in rows:
        row = row[:]
        for prow, pcol in zip(reduced, pivot_cols):
            factor = row[pcol]
            if factor:
                row = [(a - factor * b) % p for a, b in zip(row, prow)]
        pcol = next((c for c in range(ncols) if row[c]), None)
        if pcol is None:
            continue
        inv = pow(row[pcol], -1, p)
        row = [(a * inv) % p for a in row]
        # clear the new pivot column in earlier rows
        for idx, prow in enumerate(reduced):
            factor = prow[pcol]
            if factor:
                reduced[idx] = [(a - factor * b) % p for a, b in zip(prow, row)]
        reduced.append(row)
        pivot_cols.append(pcol)
    order = sorted(range(len(reduced)), key=lambda i: pivot_cols[i])
    return [tuple(reduced[i]) for i in order]


def rotation_matrix(p: int) -> list[list[int]]:
    """Matrix of the left rotation (k_1, ..., k_p) -> (k_2, ..., k_p, k_1)."""
    return [[1 if c == (r + 1) % p else 0 for c in range(p)] for r in range(p)]


def rotation_difference_image(p: int, j: int) -> tuple[tuple[int, ...], ...]:
    """Row-reduced basis over Z/p of the image of (I - rotation)**j.

    The dimension is p - j for 0 <= j <= p - 1, and the image is zero for
    j = p since (I - rotation)**p vanishes mod p.
    """
    if not 0 <= j <= p:
        raise ValueError(f"j must lie in 0..{p}, got {j}")
    if j == 0:
        return tuple(tuple(1 if c == r else 0 for c in range(p)) for r in range(p))
    rot = rotation_matrix(p)
    diff = [[(int(r == c) - rot[r][c]) % p for c in range(p)] for r in range(p)]
    power = [[int(r == c) for c in range(p)] for r in range(p)]
    for _ in range(j):
        power = [[sum(power[r][t] * diff[t][c] for t in range(p)) % p
                  for c in range(p)] for r in range(p)]
    columns = [[power[r][c] for r in range(p)] for c in range(p)]
    return tuple(_rref_mod_p(columns, p))


def in_row_span(basis: tuple[tuple[int, ...], ...], vec: tuple[int, ...], p: int) -> bool:
    """Membership of vec in the row space of an rref basis over Z/p."""
    residual = [x % p for x in vec]
    for row in basis:
        pcol = next(c for c in range(len(row)) if row[c])
        factor = residual[pcol]
        if factor:
            residual = [(a - factor * b) % p for a, b in zip(residual, row)]
    return not any(residual)
