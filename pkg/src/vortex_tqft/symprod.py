"""Graded cohomology of the k-fold symmetric product of a surface.

As a graded space H*(Sym^k S) is the degree-k part of
``Lambda(H^1) (x) Sym(H^0 + H^2)``.  A basis key ``(S, j)`` pairs a monomial
bitmask ``S`` of H^1 with the exponent ``j`` of the point class x; the unit's
exponent ``k - |S| - j`` is implicit.  Total degree is ``|S| + 2j``.

k < 0 is the zero space, standing in for an empty moduli space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .surface_algebra import MultiVector, SpMatrix, Surface, sp_apply

Key = tuple[int, int]


@dataclass(frozen=True)
class SymSpace:
    surface: Surface
    k: int

    @classmethod
    def of(cls, genus: int, k: int) -> SymSpace:
        return cls(Surface(genus), k)

    @property
    def genus(self) -> int:
        return self.surface.genus

    @cached_property
    def basis(self) -> tuple[Key, ...]:
        return tuple(enumerate_basis(self))

    @cached_property
    def index(self) -> dict[Key, int]:
        return {key: i for i, key in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, key: Key) -> bool:
        mask, j = key
        if self.k < 0 or mask < 0 or mask & ~self.surface.full_mask:
            return False
        return 0 <= j <= self.k - mask.bit_count()

    def __repr__(self) -> str:
        return f"SymSpace(g={self.genus}, k={self.k})"


def enumerate_basis(space: SymSpace) -> list[Key]:
    """Keys ordered by |S|, then bitmask, then x-exponent."""
    if space.k < 0:
        return []
    n = space.surface.dim
    masks = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    return [(m, j) for m in masks if m.bit_count() <= space.k for j in range(space.k - m.bit_count() + 1)]


def betti(space: SymSpace) -> list[int]:
    if space.k < 0:
        return []
    dims = [0] * (2 * space.k + 1)
    for mask, j in space.basis:
        dims[mask.bit_count() + 2 * j] += 1
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return dims


def euler_char(space: SymSpace) -> int:
    return sum((-1) ** d * b for d, b in enumerate(betti(space)))


@dataclass(frozen=True)
class SymCohClass:
    space: SymSpace
    terms: Mapping[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[Key, Fraction] = {}
        for key, coeff in self.terms.items():
            if not self.space.contains(key):
                raise ValueError(f"key {key} is not a basis element of {self.space}")
            if coeff:
                clean[key] = Fraction(coeff)
        object.__setattr__(self, "terms", clean)

    def degrees(self) -> set[int]:
        return {mask.bit_count() + 2 * j for mask, j in self.terms}


@dataclass(frozen=True, eq=False)
class GradedOperator:
    """Sparse linear map between two SymSpaces, stored column by column.

    ``columns[key]`` is the image of a domain basis key; missing keys map to 0.
    """

    domain: SymSpace
    codomain: SymSpace
    columns: Mapping[Key, Mapping[Key, Fraction]]
    shift: int

    def __post_init__(self) -> None:
        clean: dict[Key, dict[Key, Fraction]] = {}
        for src, col in self.columns.items():
            if not self.domain.contains(src):
                raise ValueError(f"column key {src} outside {self.domain}")
            col = {dst: Fraction(c) for dst, c in col.items() if c}
            for dst in col:
                if not self.codomain.contains(dst):
                    raise ValueError(f"image key {dst} outside {self.codomain}")
                if (dst[0].bit_count() + 2 * dst[1]) - (src[0].bit_count() + 2 * src[1]) != self.shift:
                    raise ValueError(f"column {src} -> {dst} breaks degree shift {self.shift}")
            if col:
                clean[src] = col
        object.__setattr__(self, "columns", clean)

    @classmethod
    def identity(cls, space: SymSpace) -> GradedOperator:
        return cls(space, space, {key: {key: Fraction(1)} for key in space.basis}, 0)

    @classmethod
    def zero(cls, domain: SymSpace, codomain: SymSpace, shift: int = 0) -> GradedOperator:
        return cls(domain, codomain, {}, shift)

    def is_zero(self) -> bool:
        return not self.columns

    def apply(self, vec: SymCohClass) -> SymCohClass:
        if vec.space != self.domain:
            raise ValueError(f"vector lives in {vec.space}, operator domain is {self.domain}")
        out: dict[Key, Fraction] = {}
        for src, coeff in vec.terms.items():
            for dst, c in self.columns.get(src, {}).items():
                out[dst] = out.get(dst, Fraction(0)) + coeff * c
        return SymCohClass(self.codomain, out)

    def __matmul__(self, other: GradedOperator) -> GradedOperator:
        """Composition ``self o other`` (apply ``other`` first)."""
        if other.codomain != self.domain:
            raise ValueError(f"cannot compose: {other.codomain} does not match {self.domain}")
        columns: dict[Key, dict[Key, Fraction]] = {}
        for src, mid in other.columns.items():
            out: dict[Key, Fraction] = {}
            for key, coeff in mid.items():
                for dst, c in self.columns.get(key, {}).items():
                    out[dst] = out.get(dst, Fraction(0)) + coeff * c
            columns[src] = out
        return GradedOperator(other.domain, self.codomain, columns, self.shift + other.shift)

    def entry(self, row: Key, col: Key) -> Fraction:
        return self.columns.get(col, {}).get(row, Fraction(0))

    def matrix(self) -> list[list[Fraction]]:
        """Dense matrix in the deterministic basis order (rows = codomain)."""
        return [[self.entry(r, c) for c in self.domain.basis] for r in self.codomain.basis]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.columns == other.columns
            and (self.shift == other.shift or self.is_zero())
        )

    def __repr__(self) -> str:
        return f"GradedOperator({self.domain} -> {self.codomain}, shift={self.shift}, nnz_cols={len(self.columns)})"


def induced_map(m: SpMatrix, space: SymSpace) -> GradedOperator:
    """Action of a mapping class on H*(Sym^k): Lambda(m) on the H^1 part, trivial on x."""
    if m.size != space.surface.dim:
        raise ValueError(f"size mismatch: matrix {m.size} vs surface dimension {space.surface.dim}")
    if m.is_identity():
        return GradedOperator.identity(space)
    images: dict[int, dict[int, Fraction]] = {}
    columns: dict[Key, dict[Key, Fraction]] = {}
    for mask, j in space.basis:
        if mask not in images:
            images[mask] = sp_apply(m, MultiVector(space.surface, {mask: Fraction(1)})).terms
        columns[(mask, j)] = {(img, j): c for img, c in images[mask].items()}
    return GradedOperator(space, space, columns, 0)


def graded_trace(op: GradedOperator) -> Fraction:
    if op.domain != op.codomain:
        raise ValueError(f"graded trace needs an endomorphism, got {op.domain} -> {op.codomain}")
    total = Fraction(0)
    for key, col in op.columns.items():
        diag = col.get(key)
        if diag:
            total += -diag if key[0].bit_count() % 2 else diag
    return total


def _charpoly(m: SpMatrix) -> list[Fraction]:
    """Coefficients ``c_0..c_n`` of det(lambda I - M) = sum c_i lambda^(n-i) (Faddeev-LeVerrier)."""
    n = m.size
    a = [[Fraction(x) for x in row] for row in m.entries]
    coeffs = [Fraction(1)]
    current = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ;  c_k = -tr(A M_k) / k
        am = [[sum(a[i][t] * current[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        current = [[am[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        a_current = [[sum(a[i][t] * current[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(a_current[i][i] for i in range(n)) / k)
    return coeffs


def det_one_minus_t(m: SpMatrix) -> list[Fraction]:
    """Coefficients of det(I - tM) in ascending powers of t."""
    return _charpoly(m)


def series_mul(a: Iterable[Fraction], b: Iterable[Fraction], k_max: int) -> list[Fraction]:
    a, b = list(a), list(b)
    out = [Fraction(0)] * (k_max + 1)
    for i, x in enumerate(a[: k_max + 1]):
        if x:
            for j, y in enumerate(b[: k_max + 1 - i]):
                out[i + j] += x * y
    return out


def macdonald_series(m: SpMatrix, k_max: int) -> list[Fraction]:
    """Coefficients of det(I - tM) / (1 - t)^2 up to t^k_max."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    inverse_square = [Fraction(i + 1) for i in range(k_max + 1)]
    return series_mul(det_one_minus_t(m), inverse_square, k_max)
