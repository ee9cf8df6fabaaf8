"""Exterior algebra of H^1 of a closed oriented surface over the rationals.

Basis vectors ``e_1 .. e_2g`` follow the convention ``a_i = e_{2i-1}``,
``b_i = e_{2i}`` with intersection pairing ``<a_i, b_i> = +1``.  A monomial
``e_S`` is stored as a bitmask whose bit ``i - 1`` marks ``e_i``; its
canonical order is ascending index.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True)
class Surface:
    genus: int

    def __post_init__(self) -> None:
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a non-negative integer, got {self.genus!r}")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    @property
    def basis_labels(self) -> tuple[str, ...]:
        labels = []
        for i in range(1, self.genus + 1):
            labels += [f"a{i}", f"b{i}"]
        return tuple(labels)

    @property
    def intersection(self) -> tuple[tuple[int, ...], ...]:
        n = self.dim
        return tuple(tuple(pairing(i, j) for j in range(1, n + 1)) for i in range(1, n + 1))

    @property
    def full_mask(self) -> int:
        return (1 << self.dim) - 1


def new_surface(g: int) -> Surface:
    return Surface(g)


def pairing(i: int, j: int) -> int:
    """Intersection pairing of basis vectors ``e_i`` and ``e_j`` (1-based)."""
    if i % 2 == 1 and j == i + 1:
        return 1
    if j % 2 == 1 and i == j + 1:
        return -1
    return 0


def mask_indices(mask: int) -> list[int]:
    """1-based indices present in ``mask``, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def indices_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"basis index must be >= 1, got {i}")
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"repeated basis index {i}")
        mask |= bit
    return mask


def koszul_sign(left: int, right: int) -> int:
    """Sign of ``e_left ^ e_right`` relative to the sorted monomial.

    Counts pairs (a in left, b in right) with a > b.  Masks must be disjoint.
    """
    inversions = 0
    rest = right
    while rest:
        low = rest & -rest
        # elements of `left` strictly above this bit
        inversions += (left & ~((low << 1) - 1)).bit_count()
        rest ^= low
    return -1 if inversions & 1 else 1


def _clean(terms: Mapping[int, Rational] | Iterable[tuple[int, Rational]]) -> dict[int, Fraction]:
    items = terms.items() if isinstance(terms, Mapping) else terms
    out: dict[int, Fraction] = {}
    for key, coeff in items:
        value = out.get(key, Fraction(0)) + Fraction(coeff)
        if value:
            out[key] = value
        else:
            out.pop(key, None)
    return out


@dataclass(frozen=True)
class MultiVector:
    """Sparse element of the exterior algebra on H^1(surface; Q)."""

    ambient: Surface
    terms: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        terms = _clean(self.terms)
        full = self.ambient.full_mask
        for mask in terms:
            if mask < 0 or mask & ~full:
                raise ValueError(f"monomial {mask_indices(mask)} outside genus {self.ambient.genus}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def monomial(cls, ambient: Surface, indices: Iterable[int] = (), coeff: Rational = 1) -> MultiVector:
        """The sorted monomial on ``indices`` times ``coeff`` (no reordering sign)."""
        return cls(ambient, {indices_mask(indices): Fraction(coeff)})

    @classmethod
    def one(cls, ambient: Surface) -> MultiVector:
        return cls(ambient, {0: Fraction(1)})

    @classmethod
    def basis_vector(cls, ambient: Surface, i: int) -> MultiVector:
        if not 1 <= i <= ambient.dim:
            raise ValueError(f"basis index {i} out of range for genus {ambient.genus}")
        return cls(ambient, {1 << (i - 1): Fraction(1)})

    @classmethod
    def from_vector(cls, ambient: Surface, coords: Iterable[Rational]) -> MultiVector:
        coords = list(coords)
        if len(coords) != ambient.dim:
            raise ValueError(f"expected {ambient.dim} coordinates, got {len(coords)}")
        return cls(ambient, {1 << i: Fraction(c) for i, c in enumerate(coords)})

    def __iter__(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self.terms.items())))

    def _check(self, other: MultiVector) -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: genus {self.ambient.genus} vs {other.ambient.genus}")

    def __add__(self, other: MultiVector) -> MultiVector:
        self._check(other)
        return MultiVector(self.ambient, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> MultiVector:
        return MultiVector(self.ambient, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: MultiVector) -> MultiVector:
        return self + (-other)

    def __mul__(self, scalar: Rational) -> MultiVector:
        return MultiVector(self.ambient, {k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def degrees(self) -> set[int]:
        return {mask.bit_count() for mask in self.terms}

    def is_homogeneous(self, degree: int) -> bool:
        return bool(self.terms) and self.degrees() == {degree}

    def vector(self) -> list[Fraction]:
        """Coordinates of a degree-1 element (zero is allowed)."""
        if self.terms and self.degrees() != {1}:
            raise ValueError("not an element of degree 1")
        out = [Fraction(0)] * self.ambient.dim
        for mask, coeff in self.terms.items():
            out[mask.bit_length() - 1] = coeff
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return f"MultiVector(g={self.ambient.genus}, 0)"
        parts = []
        for mask, coeff in self:
            mono = "^".join(f"e{i}" for i in mask_indices(mask)) or "1"
            parts.append(f"{coeff}*{mono}")
        return f"MultiVector(g={self.ambient.genus}, {' + '.join(parts)})"


def wedge(left: MultiVector, right: MultiVector) -> MultiVector:
    left._check(right)
    out: dict[int, Fraction] = {}
    for lm, lc in left.terms.items():
        for rm, rc in right.terms.items():
            if lm & rm:
                continue
            key = lm | rm
            value = out.get(key, Fraction(0)) + koszul_sign(lm, rm) * lc * rc
            if value:
                out[key] = value
            else:
                out.pop(key, None)
    return MultiVector(left.ambient, out)


def _contract_mask(vec: list[Fraction], mask: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for position, s in enumerate(mask_indices(mask)):
        # <c, e_s> = sum_i c_i Q[i][s]; only the partner of s contributes
        partner = s + 1 if s % 2 == 1 else s - 1
        weight = vec[partner - 1] * pairing(partner, s)
        if not weight:
            continue
        sign = -1 if position % 2 else 1
        key = mask & ~(1 << (s - 1))
        out[key] = out.get(key, Fraction(0)) + sign * weight
    return out


def contract(c: MultiVector, omega: MultiVector) -> MultiVector:
    """Interior product with the degree-1 class ``c`` via the intersection pairing."""
    c._check(omega)
    if not c.is_homogeneous(1):
        raise ValueError("contraction requires a nonzero class of pure degree 1")
    vec = c.vector()
    pieces: list[tuple[int, Fraction]] = []
    for mask, coeff in omega.terms.items():
        pieces += [(k, coeff * v) for k, v in _contract_mask(vec, mask).items()]
    return MultiVector(omega.ambient, pieces)


def monomial_pairing(x: MultiVector, y: MultiVector) -> Fraction:
    x._check(y)
    small, large = (x, y) if len(x.terms) <= len(y.terms) else (y, x)
    return sum((c * large.terms[k] for k, c in small.terms.items() if k in large.terms), Fraction(0))


def standard_form(genus: int) -> tuple[tuple[int, ...], ...]:
    return Surface(genus).intersection


def _matmul(a: tuple[tuple[int, ...], ...], b: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)) for i in range(n))


def _transpose(a: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*a)) if a else ()


class NotSymplecticError(ValueError):
    def __init__(self, row: int, col: int, got: int, want: int):
        self.row, self.col, self.got, self.want = row, col, got, want
        super().__init__(
            f"matrix is not symplectic: (M^T Q M)[{row}][{col}] = {got}, expected {want}"
        )


@dataclass(frozen=True)
class SpMatrix:
    """Integer symplectic matrix acting on H^1 by ``e_j -> sum_i M[i][j] e_i``."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = len(rows)
        if n % 2 or any(len(r) != n for r in rows):
            raise ValueError(f"expected a square matrix of even size, got {n} rows")
        object.__setattr__(self, "entries", rows)
        q = standard_form(n // 2)
        got = _matmul(_matmul(_transpose(rows), q), rows)
        for i in range(n):
            for j in range(n):
                if got[i][j] != q[i][j]:
                    raise NotSymplecticError(i + 1, j + 1, got[i][j], q[i][j])

    @classmethod
    def from_flat(cls, values: Iterable[int], genus: int) -> SpMatrix:
        values = list(values)
        n = 2 * genus
        if len(values) != n * n:
            raise ValueError(f"expected {n * n} matrix entries for genus {genus}, got {len(values)}")
        return cls(tuple(tuple(values[i * n:(i + 1) * n]) for i in range(n)))

    @classmethod
    def identity(cls, genus: int) -> SpMatrix:
        n = 2 * genus
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def transvection(cls, v: Iterable[int], power: int = 1) -> SpMatrix:
        """``x -> x + power * <v, x> v``, i.e. ``I + power * v v^T Q``."""
        v = list(v)
        n = len(v)
        q = standard_form(n // 2)
        vq = [sum(v[t] * q[t][j] for t in range(n)) for j in range(n)]
        return cls(tuple(tuple(int(i == j) + power * v[i] * vq[j] for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def flat(self) -> list[int]:
        return [x for row in self.entries for x in row]

    def __matmul__(self, other: SpMatrix) -> SpMatrix:
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        return SpMatrix(_matmul(self.entries, other.entries))

    @cached_property
    def inverse(self) -> SpMatrix:
        # M^T Q M = Q  =>  M^{-1} = Q^{-1} M^T Q with Q^{-1} = -Q
        q = standard_form(self.genus)
        neg_q = tuple(tuple(-x for x in row) for row in q)
        return SpMatrix(_matmul(_matmul(neg_q, _transpose(self.entries)), q))

    def is_identity(self) -> bool:
        return self == SpMatrix.identity(self.genus)

    def stabilize(self) -> SpMatrix:
        """Block sum with the 2x2 identity on a new last symplectic pair."""
        n = self.size
        rows = [list(r) + [0, 0] for r in self.entries]
        rows += [[0] * n + [1, 0], [0] * n + [0, 1]]
        return SpMatrix(tuple(tuple(r) for r in rows))

    def column(self, j: int) -> list[int]:
        return [row[j - 1] for row in self.entries]


def sp_apply(m: SpMatrix, omega: MultiVector) -> MultiVector:
    if m.size != omega.ambient.dim:
        raise ValueError(f"size mismatch: matrix {m.size} vs surface dimension {omega.ambient.dim}")
    out: list[tuple[int, Fraction]] = []
    for mask, coeff in omega.terms.items():
        out += [(k, coeff * v) for k, v in _apply_monomial(m, mask).items()]
    return MultiVector(omega.ambient, out)


@lru_cache(maxsize=65536)
def _apply_monomial(m: SpMatrix, mask: int) -> dict[int, Fraction]:
    # callers must not mutate the returned dict
    if mask == 0:
        return {0: Fraction(1)}
    surface = Surface(m.genus)
    top = mask.bit_length()
    rest = _apply_monomial(m, mask & ~(1 << (top - 1)))
    image = {1 << (i - 1): Fraction(c) for i, c in enumerate(m.column(top), start=1) if c}
    return wedge(MultiVector(surface, rest), MultiVector(surface, image)).terms


def elementary_generators(genus: int) -> list[SpMatrix]:
    """Symplectic transvections along a_i, b_i, a_i + a_{i+1} and b_i - b_{i+1}."""
    n = 2 * genus
    vecs = []
    for i in range(n):
        vecs.append([int(t == i) for t in range(n)])
    for i in range(genus - 1):
        a = [0] * n
        a[2 * i] = a[2 * i + 2] = 1
        b = [0] * n
        b[2 * i + 1], b[2 * i + 3] = 1, -1
        vecs += [a, b]
    return [SpMatrix.transvection(v) for v in vecs]


def random_symplectic(genus: int, rng: random.Random, steps: int = 8) -> SpMatrix:
    """Random word in the elementary generators and their inverses."""
    out = SpMatrix.identity(genus)
    gens = elementary_generators(genus)
    if not gens:
        return out
    for _ in range(steps):
        g = rng.choice(gens)
        out = out @ (g if rng.random() < 0.5 else g.inverse)
    return out
