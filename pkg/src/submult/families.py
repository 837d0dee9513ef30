"""Reproducible builders for the matrix and group families the engine studies.

Every constructor is deterministic: the same parameters produce identical
serialized generators.  Groups are persisted by recipe plus generators
(see ``write_group_file``/``load_group_file``), never by full tables.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from .cyclotomic import ONE, CyclotomicUnit, is_prime
from .groups import DEFAULT_CLOSURE_CAP, FiniteGroup, close
from .monomial import MonomialMatrix

FAMILIES = ("cyclic", "heisenberg", "wreath_cp_cp", "basic", "quaternion8",
            "dihedral8", "diagonal_abelian", "direct_product", "induced_rep")


# -- monomial matrix families --------------------------------------------------

def big_cycle(p: int, k: int) -> MonomialMatrix:
    """The p**k x p**k cyclic permutation matrix (order p**k, entries all 1)."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 1:
        raise ValueError("k must be >= 1")
    n = p ** k
    return MonomialMatrix.from_perm([(j + 1) % n for j in range(n)])


def binomial_diagonal(p: int, k: int, i: int, eta: CyclotomicUnit) -> MonomialMatrix:
    """Diagonal p**k x p**k matrix with entry eta**binom(j, i) at position j
    (binom(j, i) = 0 for j < i).  For 1 <= i <= p - 2 and eta a p**k-th
    root the determinant is 1."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 1 or i < 1:
        raise ValueError("k and i must be >= 1")
    n = p ** k
    if n % eta.order != 0:
        raise ValueError(f"eta has order {eta.order}, not a p**k-th root")
    return MonomialMatrix.diagonal([eta ** math.comb(j, i) for j in range(n)])


def block_reorder_permutation(p: int, k: int) -> MonomialMatrix:
    """Basis reordering that groups the coordinates 0..p**k-1 by residue
    class mod p (class b at block b, ordered inside by the quotient t, so
    new position b*p**(k-1) + t holds old coordinate b + t*p).

    Under conjugation by this permutation the p-th power of the big cycle
    becomes a block diagonal of p copies of the (k-1)-level big cycle.
    """
    n = p ** k
    m = p ** (k - 1)
    perm = [0] * n
    for b in range(p):
        for t in range(m):
            # column (new position) -> row (old coordinate)
            perm[b * m + t] = b + t * p
    return MonomialMatrix.from_perm(perm)


def binomial_diagonal_block_split(p: int, k: int, i: int, eta: CyclotomicUnit
                                  ) -> tuple[bool, dict]:
    """Reorder ``binomial_diagonal(p, k, i, eta)`` by residue classes mod p
    and try to factor each diagonal block as a scalar from the p**k-th
    roots times a product of level-(k-1) binomial diagonals.

    Returns (verdict, details); the details carry the factorization found
    (per block: the scalar exponent and the factor list (u, theta)), or the
    first obstruction.  A False verdict is a checkable failure, not an error.
    """
    if k < 2:
        raise ValueError("block splitting needs k >= 2")
    d = binomial_diagonal(p, k, i, eta)
    n, m = p ** k, p ** (k - 1)
    base = p ** k
    omega = CyclotomicUnit(1, base)
    # exponent of eta against the primitive p**k-th root
    x = eta.num * (base // eta.den)
    blocks = []
    for b in range(p):
        seq = [(math.comb(b + t * p, i) * x) % base for t in range(m)]
        alpha_exp = seq[0]
        rel = [(s - alpha_exp) % base for s in seq]
        # Newton forward differences give the integer coefficients of the
        # block exponents in the binomial basis binom(t, u).
        coeffs = []
        diff = rel[:]
        while diff:
            coeffs.append(diff[0] % base)
            diff = [(diff[t + 1] - diff[t]) % base for t in range(len(diff) - 1)]
            if all(c == 0 for c in diff):
                break
        factors = []
        for u, c in enumerate(coeffs):
            if u == 0 or c == 0:
                continue
            if u > i:
                return False, {"block": b, "reason": f"degree {u} exceeds {i}"}
            theta = omega ** c
            if (p ** (k - 1)) % theta.order != 0:
                return False, {"block": b, "coefficient": c,
                               "reason": "factor scalar is not a p**(k-1)-th root"}
            factors.append((u, theta))
        rebuilt = MonomialMatrix.identity(m)
        for u, theta in factors:
            rebuilt = rebuilt * binomial_diagonal(p, k - 1, u, theta)
        expected = MonomialMatrix.diagonal([omega ** r for r in rel])
        if rebuilt != expected:
            return False, {"block": b, "reason": "factor product mismatch"}
        if rebuilt.det() != ONE:
            return False, {"block": b, "reason": "block determinant is not 1"}
        blocks.append({"alpha_exp": alpha_exp,
                       "factors": [(u, theta.to_json()) for u, theta in factors]})
    return True, {"blocks": blocks, "modulus": base}


def heisenberg_generators(p: int) -> list[MonomialMatrix]:
    """Generators of the degree-p irreducible monomial group of order p**3,
    exponent p and class 2 (p odd): the p-cycle and diag(1, w, ..., w**(p-1))."""
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    omega = CyclotomicUnit(1, p)
    return [big_cycle(p, 1),
            MonomialMatrix.diagonal([omega ** j for j in range(p)])]


def wreath_generators(p: int) -> list[MonomialMatrix]:
    """Generators of the wreath product of two cyclic groups of order p as
    a degree-p monomial group (order p**(p+1), class p, exponent p**2)."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    omega = CyclotomicUnit(1, p)
    return [big_cycle(p, 1),
            MonomialMatrix.diagonal([omega] + [ONE] * (p - 1))]


def quaternion_generators() -> list[MonomialMatrix]:
    """Quaternion group of order 8: diag(i, -i) and the signed swap."""
    i_unit = CyclotomicUnit(1, 4)
    return [MonomialMatrix.diagonal([i_unit, i_unit.inverse()]),
            MonomialMatrix(2, (1, 0), (ONE, CyclotomicUnit(1, 2)))]


def dihedral_generators() -> list[MonomialMatrix]:
    """Dihedral group of order 8: diag(i, -i) and the plain swap."""
    i_unit = CyclotomicUnit(1, 4)
    return [MonomialMatrix.diagonal([i_unit, i_unit.inverse()]),
            MonomialMatrix(2, (1, 0), (ONE, ONE))]


def diagonal_abelian_generators(m: int, vectors: Sequence[Sequence[int]]
                                ) -> list[MonomialMatrix]:
    """Diagonal matrices diag(w**v_0, ..., w**v_{n-1}) for w = exp(2*pi*i/m)."""
    if m < 1 or not vectors:
        raise ValueError("need a positive modulus and at least one vector")
    width = len(vectors[0])
    if any(len(v) != width for v in vectors):
        raise ValueError("all exponent vectors must have the same length")
    omega = CyclotomicUnit(1, m)
    return [MonomialMatrix.diagonal([omega ** int(c) for c in vec])
            for vec in vectors]


def cyclic_generator(m: int) -> list[MonomialMatrix]:
    """The cyclic group of order m as the 1 x 1 matrix (exp(2*pi*i/m))."""
    if m < 1:
        raise ValueError("order must be positive")
    return [MonomialMatrix.diagonal([CyclotomicUnit(1, m)])]


# -- affine carrier for the split-extension family ------------------------------

class AffineContext:
    """Shared data for affine pairs (v, t) in Z_{p**e}**c x Z_{p**e} with
    multiplication (v, t) * (w, s) = (v + M**t w, t + s).

    M is the inverse of (I + L), L the index-raising shift, which realizes
    conjugation of the i-th base generator by the extending generator as
    "multiply in the next base generator".  Associativity of the product
    needs M**(p**e) = I, which holds exactly when c <= p; the constructor
    verifies it.
    """

    def __init__(self, p: int, c: int, e: int):
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if c < 1 or e < 1:
            raise ValueError("c and e must be >= 1")
        self.p, self.c, self.e = p, c, e
        self.modulus = p ** e
        shift_plus = [[(1 if r == col else 0) + (1 if r == col + 1 else 0)
                       for col in range(c)] for r in range(c)]
        pows = [self._identity_matrix()]
        for _ in range(self.modulus - 1):
            pows.append(self._matmul(pows[-1], shift_plus))
        if self._matmul(pows[-1], shift_plus) != self._identity_matrix():
            raise ValueError(
                f"shift automorphism order exceeds p**e; need c <= p (c={c}, p={p})")
        # M**t = (I + L)**(-t) = (I + L)**(modulus - t)
        self._m_pows = [pows[(self.modulus - t) % self.modulus]
                        for t in range(self.modulus)]

    def _identity_matrix(self) -> list[list[int]]:
        return [[int(r == col) for col in range(self.c)] for r in range(self.c)]

    def _matmul(self, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
        c, mod = self.c, self.modulus
        return [[sum(a[r][t] * b[t][col] for t in range(c)) % mod
                 for col in range(c)] for r in range(c)]

    def apply_m_power(self, t: int, vec: tuple[int, ...]) -> tuple[int, ...]:
        mat, mod = self._m_pows[t % self.modulus], self.modulus
        return tuple(sum(row[s] * vec[s] for s in range(self.c)) % mod
                     for row in mat)

    def pair(self, vec: Sequence[int], t: int) -> "AffinePair":
        return AffinePair(self, tuple(x % self.modulus for x in vec),
                          t % self.modulus)

    def base_generator(self, i: int) -> "AffinePair":
        """The i-th base generator (1-indexed)."""
        vec = tuple(1 if s == i - 1 else 0 for s in range(self.c))
        return self.pair(vec, 0)

    def extension_generator(self) -> "AffinePair":
        return self.pair((0,) * self.c, 1)


class AffinePair:
    """Element (v, t) of the split extension; immutable and hashable."""

    __slots__ = ("ctx", "vec", "t")

    def __init__(self, ctx: AffineContext, vec: tuple[int, ...], t: int):
        self.ctx = ctx
        self.vec = vec
        self.t = t

    def __mul__(self, other: "AffinePair") -> "AffinePair":
        ctx = self.ctx
        moved = ctx.apply_m_power(self.t, other.vec)
        vec = tuple((a + b) % ctx.modulus for a, b in zip(self.vec, moved))
        return AffinePair(ctx, vec, (self.t + other.t) % ctx.modulus)

    def inverse(self) -> "AffinePair":
        ctx = self.ctx
        neg_t = (-self.t) % ctx.modulus
        moved = ctx.apply_m_power(neg_t, self.vec)
        return AffinePair(ctx, tuple((-x) % ctx.modulus for x in moved), neg_t)

    def identity_like(self) -> "AffinePair":
        return AffinePair(self.ctx, (0,) * self.ctx.c, 0)

    def key(self) -> tuple:
        return ("affine", self.ctx.modulus, self.vec, self.t)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AffinePair) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        return {"v": list(self.vec), "t": self.t}

    def __repr__(self) -> str:
        return f"AffinePair(v={self.vec}, t={self.t})"


def basic_group(p: int, c: int, e: int,
                cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Split extension of (C_{p**e})**c by an order-p**e automorphism acting
    as a_i -> a_i * a_{i+1} (last base generator fixed); order p**(e(c+1)).

    The conjugation matrix is validated against those relations and the
    group order is checked after closure.
    """
    ctx = AffineContext(p, c, e)
    a1 = ctx.base_generator(1)
    b = ctx.extension_generator()
    for i in range(1, c + 1):
        a_i = ctx.base_generator(i)
        conj = b.inverse() * a_i * b
        expected = a_i if i == c else a_i * ctx.base_generator(i + 1)
        if conj != expected:
            raise AssertionError(f"conjugation relation fails at generator {i}")
    group = close([a1, b], cap, name=f"B_{p}({c},{e})")
    expected_order = p ** (e * (c + 1))
    if len(group) != expected_order:
        raise AssertionError(
            f"closure has order {len(group)}, expected {expected_order}")
    return group


def all_characters(p: int, c: int, e: int) -> Iterator[tuple[int, ...]]:
    """Exponent tuples (x_1, ..., x_c) over Z_{p**e}: one per character of
    the abelian base, in lexicographic order."""
    yield from itertools.product(range(p ** e), repeat=c)


def induced_rep_generators(p: int, c: int, e: int,
                           character: Sequence[int]) -> list[MonomialMatrix]:
    """Degree-p**e monomial generators of the representation of the basic
    group induced from a base character.

    The character sends the i-th base generator to w**x_i, w the primitive
    p**e-th root.  The extending generator maps to the full cycle; the i-th
    base generator maps to the diagonal whose j-th entry is the character
    value on the j-fold conjugate, which expands over later base generators
    with binomial coefficients.  Returns [image of a_1, ..., a_c, image of b];
    the defining relations are re-verified on the images.
    """
    if len(character) != c:
        raise ValueError(f"character must list {c} exponents")
    m = p ** e
    omega = CyclotomicUnit(1, m)
    x = [int(v) % m for v in character]
    images = []
    for i in range(1, c + 1):
        diag = []
        for j in range(m):
            exp = sum(math.comb(j, u) * x[i - 1 + u] for u in range(c - i + 1))
            diag.append(omega ** exp)
        images.append(MonomialMatrix.diagonal(diag))
    psi_b = big_cycle(p, e)
    b_inv = psi_b.inverse()
    for i in range(c):
        conj = b_inv * images[i] * psi_b
        expected = images[i] if i == c - 1 else images[i] * images[i + 1]
        if conj != expected:
            raise AssertionError(f"induced image breaks relation at generator {i + 1}")
    return images + [psi_b]


# -- declarative family specs and group files -----------------------------------

@dataclass(frozen=True)
class GroupFamilySpec:
    """Recipe (family name + parameters) for reproducible construction."""

    family: str
    params: dict

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; known: {FAMILIES}")
        validator = _VALIDATORS[self.family]
        validator(self.params)

    @property
    def carrier(self) -> str:
        return "affine" if self.family == "basic" else "monomial"

    def to_json(self) -> dict:
        return {"family": self.family, "params": self.params}

    @classmethod
    def from_json(cls, data: dict) -> "GroupFamilySpec":
        return cls(str(data["family"]), dict(data["params"]))


def _require(params: dict, keys: tuple[str, ...]) -> None:
    missing = [k for k in keys if k not in params]
    if missing:
        raise ValueError(f"missing parameters: {missing}")


def _check_prime(params: dict, key: str = "p") -> None:
    if not is_prime(int(params[key])):
        raise ValueError(f"{key} must be prime, got {params[key]}")


def _check_basic(params: dict) -> None:
    _require(params, ("p", "c", "e"))
    _check_prime(params)
    p, c, e = int(params["p"]), int(params["c"]), int(params["e"])
    if c < 1 or e < 1:
        raise ValueError("c and e must be >= 1")
    if c > p:
        raise ValueError(f"need c <= p for an order-p**e extension (c={c}, p={p})")


_VALIDATORS = {
    "cyclic": lambda ps: _require(ps, ("m",)),
    "heisenberg": lambda ps: (_require(ps, ("p",)), _check_prime(ps)),
    "wreath_cp_cp": lambda ps: (_require(ps, ("p",)), _check_prime(ps)),
    "basic": _check_basic,
    "quaternion8": lambda ps: None,
    "dihedral8": lambda ps: None,
    "diagonal_abelian": lambda ps: _require(ps, ("m", "vectors")),
    "direct_product": lambda ps: _require(ps, ("factors",)),
    "induced_rep": lambda ps: (_require(ps, ("p", "c", "e", "character")),
                               _check_prime(ps)),
}


def build_generators(spec: GroupFamilySpec) -> list[MonomialMatrix]:
    """Monomial generators for a spec (all families except ``basic``)."""
    ps = spec.params
    if spec.family == "cyclic":
        return cyclic_generator(int(ps["m"]))
    if spec.family == "heisenberg":
        return heisenberg_generators(int(ps["p"]))
    if spec.family == "wreath_cp_cp":
        return wreath_generators(int(ps["p"]))
    if spec.family == "quaternion8":
        return quaternion_generators()
    if spec.family == "dihedral8":
        return dihedral_generators()
    if spec.family == "diagonal_abelian":
        return diagonal_abelian_generators(int(ps["m"]), ps["vectors"])
    if spec.family == "induced_rep":
        return induced_rep_generators(int(ps["p"]), int(ps["c"]), int(ps["e"]),
                                      ps["character"])
    if spec.family == "direct_product":
        factor_specs = [GroupFamilySpec.from_json(f) for f in ps["factors"]]
        if any(f.carrier != "monomial" for f in factor_specs):
            raise ValueError("direct_product files support monomial factors only")
        blocks = [build_generators(f) for f in factor_specs]
        dims = [g[0].n for g in blocks]
        gens = []
        for t, block in enumerate(blocks):
            for mat in block:
                parts = [MonomialMatrix.identity(dims[s]) if s != t else mat
                         for s in range(len(blocks))]
                combined = parts[0]
                for part in parts[1:]:
                    combined = combined.direct_sum(part)
                gens.append(combined)
        return gens
    raise ValueError(f"family {spec.family} has no monomial generators")


def build_group(spec: GroupFamilySpec,
                cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Closure of a spec into a FiniteGroup (any family)."""
    if spec.family == "basic":
        ps = spec.params
        return basic_group(int(ps["p"]), int(ps["c"]), int(ps["e"]), cap)
    return close(build_generators(spec), cap, name=spec.family)


def group_file_payload(spec: GroupFamilySpec) -> dict:
    if spec.family == "basic":
        ps = spec.params
        ctx = AffineContext(int(ps["p"]), int(ps["c"]), int(ps["e"]))
        gens = [ctx.base_generator(1).to_json(),
                ctx.extension_generator().to_json()]
    else:
        gens = [g.to_json() for g in build_generators(spec)]
    return {"family": spec.family, "params": spec.params,
            "carrier": spec.carrier, "generators": gens}


def write_group_file(spec: GroupFamilySpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(group_file_payload(spec), indent=2) + "\n",
                          encoding="utf-8")


def load_group_file(path: str | Path) -> GroupFamilySpec:
    """Load a recipe and confirm the stored generators match it."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    spec = GroupFamilySpec.from_json(data)
    expected = group_file_payload(spec)["generators"]
    if data.get("generators") != expected:
        raise ValueError(f"{path}: stored generators do not match the recipe")
    return spec
