"""Elementary cobordism maps and closed cobordism words.

Handle conventions: a 1-handle on genus g adds the symplectic pair
``(a_{g+1}, b_{g+1}) = (e_{2g+1}, e_{2g+2})`` and wedges with ``b_{g+1}``; a
2-handle on genus g+1 is attached along ``a_{g+1}``, contracts with it and
drops every monomial that still involves the dying pair.  Handles in other
positions are reached by conjugating with twists.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal, Sequence

from .surface_algebra import MultiVector, SpMatrix, Surface, contract, koszul_sign
from .symprod import GradedOperator, Key, SymSpace, induced_map

Chamber = Literal["+", "-"]


class WordError(ValueError):
    """Invalid input: malformed word, bad parameters, inconsistent genus trail."""

    def __init__(self, message: str, line: int | None = None):
        self.message = message
        self.line = line
        super().__init__(f"{message} at line {line}" if line is not None else message)


class MorseBottError(WordError):
    pass


@dataclass(frozen=True)
class SpincParams:
    """Spin^c data on the fibre surface.

    ``d`` is half the pairing of c_1 with the surface, ``eta_bar`` the flux of
    the perturbation; the chamber decides between vortices and anti-vortices.
    """

    d: int
    chamber: Chamber
    eta_bar: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "eta_bar", Fraction(self.eta_bar))
        if self.chamber not in ("+", "-"):
            raise WordError(f"chamber must be '+' or '-', got {self.chamber!r}")
        if self.eta_bar == self.d:
            raise MorseBottError("Morse-Bott violation: eta_bar equals d")
        if self.chamber == "+" and not self.d < self.eta_bar:
            raise WordError(f"chamber + requires d < eta_bar (d={self.d}, eta_bar={self.eta_bar})")
        if self.chamber == "-" and not self.d > self.eta_bar:
            raise WordError(f"chamber - requires d > eta_bar (d={self.d}, eta_bar={self.eta_bar})")

    @classmethod
    def with_default_flux(cls, d: int, chamber: Chamber) -> SpincParams:
        half = Fraction(1, 2)
        return cls(d, chamber, d + half if chamber == "+" else d - half)


def vortex_degree(g: int, params: SpincParams) -> int:
    """Degree of the vortex moduli space on a genus-g fibre; negative means empty."""
    if params.eta_bar == params.d:
        raise MorseBottError("Morse-Bott violation: eta_bar equals d")
    if params.chamber == "+":
        return (g - 1) + params.d
    return (g - 1) - params.d


@dataclass(frozen=True)
class Move:
    kind: Literal["h1", "h2", "twist"]
    matrix: SpMatrix | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("h1", "h2", "twist"):
            raise WordError(f"unknown move {self.kind!r}")
        if (self.kind == "twist") != (self.matrix is not None):
            raise WordError("a twist carries a matrix and handle moves do not")

    @classmethod
    def h1(cls) -> Move:
        return cls("h1")

    @classmethod
    def h2(cls) -> Move:
        return cls("h2")

    @classmethod
    def twist(cls, m: SpMatrix) -> Move:
        return cls("twist", m)

    def target_genus(self, genus: int) -> int:
        if self.kind == "h1":
            return genus + 1
        if self.kind == "h2":
            if genus < 1:
                raise WordError("genus underflow: 2-handle on a sphere")
            return genus - 1
        assert self.matrix is not None
        if self.matrix.genus != genus:
            raise WordError(f"twist matrix has genus {self.matrix.genus}, current genus is {genus}")
        return genus

    def __repr__(self) -> str:
        if self.kind == "twist":
            return f"Move.twist({list(self.matrix.entries)})"
        return f"Move.{self.kind}()"


def genus_trail(start_genus: int, moves: Sequence[Move]) -> list[int]:
    trail = [start_genus]
    for move in moves:
        trail.append(move.target_genus(trail[-1]))
    return trail


@dataclass(frozen=True)
class CobordismWord:
    """A cobordism from the genus-``start_genus`` surface to itself, closed up by ``glue``.

    ``degree`` may be left unset for a template swept over several values.
    """

    start_genus: int
    chamber: Chamber
    moves: tuple[Move, ...] = ()
    glue: SpMatrix | None = None
    degree: int | None = None
    eta_bar: Fraction | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "moves", tuple(self.moves))
        if self.start_genus < 0:
            raise WordError(f"genus must be non-negative, got {self.start_genus}")
        if self.glue is None:
            object.__setattr__(self, "glue", SpMatrix.identity(self.start_genus))
        if self.glue.genus != self.start_genus:
            raise WordError(f"glue matrix has genus {self.glue.genus}, word starts at genus {self.start_genus}")
        if self.eta_bar is not None:
            object.__setattr__(self, "eta_bar", Fraction(self.eta_bar))
        trail = genus_trail(self.start_genus, self.moves)
        if trail[-1] != self.start_genus:
            raise WordError(f"unclosed word: genus trail ends at {trail[-1]}, expected {self.start_genus}")
        if self.degree is not None:
            _ = self.params  # validates chamber and flux

    @property
    def params(self) -> SpincParams:
        if self.degree is None:
            raise WordError("word has no degree")
        if self.eta_bar is None:
            return SpincParams.with_default_flux(self.degree, self.chamber)
        return SpincParams(self.degree, self.chamber, self.eta_bar)

    @property
    def genera(self) -> list[int]:
        return genus_trail(self.start_genus, self.moves)

    def k_trail(self) -> list[tuple[int, int]]:
        params = self.params
        return [(g, vortex_degree(g, params)) for g in self.genera]

    def with_degree(self, d: int, eta_bar: Fraction | None = None) -> CobordismWord:
        return replace(self, degree=d, eta_bar=eta_bar)


def _handle_space(g: int, k: int) -> SymSpace:
    return SymSpace(Surface(g), k)


def rho_one_handle(g: int, k: int) -> GradedOperator:
    """``omega -> b_{g+1} ^ omega`` from (g, k) to (g+1, k+1)."""
    source, target = _handle_space(g, k), _handle_space(g + 1, k + 1)
    new_bit = 1 << (2 * g + 1)
    columns: dict[Key, dict[Key, Fraction]] = {}
    for mask, j in source.basis:
        columns[(mask, j)] = {(mask | new_bit, j): Fraction(koszul_sign(new_bit, mask))}
    return GradedOperator(source, target, columns, 1)


def rho_two_handle(g_plus_1: int, k_plus_1: int) -> GradedOperator:
    """``omega -> iota_{a_{g+1}} omega`` restricted to the genus-g subalgebra."""
    if g_plus_1 < 1:
        raise WordError("genus underflow: 2-handle on a sphere")
    g, k = g_plus_1 - 1, k_plus_1 - 1
    source, target = _handle_space(g_plus_1, k_plus_1), _handle_space(g, k)
    surface = source.surface
    c = MultiVector.basis_vector(surface, 2 * g + 1)
    keep = target.surface.full_mask
    images: dict[int, dict[int, Fraction]] = {}
    columns: dict[Key, dict[Key, Fraction]] = {}
    for mask, j in source.basis:
        if mask not in images:
            image = contract(c, MultiVector(surface, {mask: Fraction(1)})).terms
            images[mask] = {m: v for m, v in image.items() if not m & ~keep}
        columns[(mask, j)] = {(m, j): v for m, v in images[mask].items()}
    return GradedOperator(source, target, columns, -1)


def rho_twist(m: SpMatrix, g: int, k: int) -> GradedOperator:
    if m.genus != g:
        raise ValueError(f"size mismatch: matrix genus {m.genus}, surface genus {g}")
    return induced_map(m, _handle_space(g, k))


def rho_move(move: Move, g: int, k: int) -> GradedOperator:
    if move.kind == "h1":
        return rho_one_handle(g, k)
    if move.kind == "h2":
        return rho_two_handle(g, k)
    assert move.matrix is not None
    return rho_twist(move.matrix, g, k)


def compose_moves(start_genus: int, params: SpincParams, moves: Sequence[Move]) -> GradedOperator:
    """Composite ``rho_n o ... o rho_1`` of an open sequence of moves.

    If any stage has k < 0 the result is the zero map between the end spaces.
    """
    genera = genus_trail(start_genus, moves)
    ks = [vortex_degree(g, params) for g in genera]
    source = _handle_space(genera[0], ks[0])
    target = _handle_space(genera[-1], ks[-1])
    shift = sum(1 if m.kind == "h1" else -1 if m.kind == "h2" else 0 for m in moves)
    if min(ks) < 0:
        return GradedOperator.zero(source, target, shift)
    op = GradedOperator.identity(source)
    for move, g, k in zip(moves, genera, ks):
        op = rho_move(move, g, k) @ op
    return op


def compose_word(word: CobordismWord) -> GradedOperator:
    """``glue_* o rho_n o ... o rho_1`` on the start space."""
    params = word.params
    op = compose_moves(word.start_genus, params, word.moves)
    if op.is_zero():
        return op
    return induced_map(word.glue, op.codomain) @ op


def rotate_word(word: CobordismWord) -> CobordismWord:
    """Move the last move to the front, keeping the graded trace.

    The glue map is folded into a twist placed right after the rotated move,
    and the rotated word is closed by the identity.
    """
    if not word.moves:
        return word
    last = word.moves[-1]
    new_start = word.genera[-2]
    folded = () if word.glue.is_identity() else (Move.twist(word.glue),)
    return replace(
        word,
        start_genus=new_start,
        moves=(last, *folded, *word.moves[:-1]),
        glue=SpMatrix.identity(new_start),
    )


def _lift(n: SpMatrix, genus: int) -> SpMatrix:
    while n.genus < genus:
        n = n.stabilize()
    return n


def conjugate_word(word: CobordismWord, n: SpMatrix) -> CobordismWord:
    """Replace every twist T by N T N^-1 and the glue G by N G N^-1.

    ``n`` must live at (or below) the lowest genus the word visits; it is
    stabilized by the identity on the extra handle pairs, which commutes with
    both handle maps.
    """
    genera = word.genera
    if n.genus > min(genera):
        raise WordError(f"conjugating matrix has genus {n.genus}, word dips to genus {min(genera)}")
    moves = []
    for move, g in zip(word.moves, genera):
        if move.kind == "twist":
            lifted = _lift(n, g)
            moves.append(Move.twist(lifted @ move.matrix @ lifted.inverse))
        else:
            moves.append(move)
    lifted = _lift(n, word.start_genus)
    return replace(word, moves=tuple(moves), glue=lifted @ word.glue @ lifted.inverse)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def check_transverse(u: Sequence[Sequence[Fraction]], v: Sequence[Sequence[Fraction]], dim: int | None = None) -> bool:
    """True iff span(u) + span(v) is the whole space."""
    vectors = [[Fraction(x) for x in vec] for vec in (*u, *v)]
    lengths = {len(vec) for vec in vectors}
    if dim is not None:
        lengths.add(dim)
    if len(lengths) > 1:
        raise WordError(f"vectors of mismatched lengths {sorted(lengths)}")
    if not lengths:
        return True
    (n,) = lengths
    return _rank(vectors) == n if vectors else n == 0
