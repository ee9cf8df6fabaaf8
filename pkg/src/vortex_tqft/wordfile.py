"""Line-oriented text format for cobordism words.

::

    # S^1 x (genus 2 surface)
    genus 2
    degree 0
    chamber +
    eta 1/2
    moves:
    h1
    twist 1 0 0 0 0 0 ...   # 2g x 2g integers, row-major, at the current genus
    h2
    glue 1 0 0 0 0 1 0 0 0 0 1 0 0 0 0 1

Keywords are case-insensitive, ``#`` starts a comment, ``degree``, ``eta``
and ``glue`` are optional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cobordism import CobordismWord, Move, WordError
from .surface_algebra import SpMatrix

MAX_GENUS = 64

_INT = re.compile(r"[+-]?\d+\Z")
_RATIONAL = re.compile(r"([+-]?\d+)(?:/(\d+))?\Z")


def _int(token: str, what: str, line: int) -> int:
    if not _INT.match(token):
        raise WordError(f"malformed integer {token!r} for {what}", line)
    return int(token)


def parse_rational(token: str, line: int | None = None) -> Fraction:
    match = _RATIONAL.match(token)
    if not match:
        raise WordError(f"malformed rational {token!r}", line)
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise WordError(f"malformed rational {token!r}: zero denominator", line)
    return Fraction(int(num), int(den) if den is not None else 1)


def _matrix(tokens: list[str], genus: int, what: str, line: int) -> SpMatrix:
    values = [_int(t, what, line) for t in tokens]
    n = 2 * genus
    if len(values) != n * n:
        raise WordError(f"{what} at genus {genus} needs {n * n} integers, got {len(values)}", line)
    try:
        return SpMatrix.from_flat(values, genus)
    except ValueError as exc:
        raise WordError(f"{what}: {exc}", line) from None


def parse_word_file(text: str) -> CobordismWord:
    genus: int | None = None
    degree: int | None = None
    chamber: str | None = None
    eta: Fraction | None = None
    glue: SpMatrix | None = None
    moves: list[Move] = []
    in_moves = False
    current = None
    seen: dict[str, int] = {}
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        keyword, args = tokens[0].lower(), tokens[1:]

        if keyword in ("h1", "h2", "twist"):
            if not in_moves:
                raise WordError(f"move {keyword!r} before 'moves:'", lineno)
            if keyword == "twist":
                moves.append(Move.twist(_matrix(args, current, "twist", lineno)))
                continue
            if args:
                raise WordError(f"{keyword!r} takes no arguments", lineno)
            if keyword == "h2" and current < 1:
                raise WordError("genus underflow", lineno)
            moves.append(Move(keyword))
            current += 1 if keyword == "h1" else -1
            continue

        if keyword in seen:
            raise WordError(f"duplicate {keyword!r} (first at line {seen[keyword]})", lineno)
        seen[keyword] = lineno

        if keyword == "genus":
            if len(args) != 1:
                raise WordError("'genus' takes one integer", lineno)
            genus = _int(args[0], "genus", lineno)
            if not 0 <= genus <= MAX_GENUS:
                raise WordError(f"genus must lie in 0..{MAX_GENUS}, got {genus}", lineno)
            current = genus
        elif keyword == "degree":
            if len(args) != 1:
                raise WordError("'degree' takes one integer", lineno)
            degree = _int(args[0], "degree", lineno)
        elif keyword == "chamber":
            if len(args) != 1 or args[0] not in ("+", "-"):
                raise WordError("'chamber' must be '+' or '-'", lineno)
            chamber = args[0]
        elif keyword == "eta":
            if len(args) != 1:
                raise WordError("'eta' takes one rational", lineno)
            eta = parse_rational(args[0], lineno)
        elif keyword == "moves:":
            if args:
                raise WordError("'moves:' takes no arguments", lineno)
            if genus is None:
                raise WordError("'genus' must precede 'moves:'", lineno)
            in_moves = True
        elif keyword == "glue":
            if genus is None:
                raise WordError("'genus' must precede 'glue'", lineno)
            glue = _matrix(args, genus, "glue", lineno)
        else:
            raise WordError(f"unknown keyword {tokens[0]!r}", lineno)

    if genus is None:
        raise WordError("missing 'genus'", last_line or 1)
    if chamber is None:
        raise WordError("missing 'chamber'", last_line or 1)
    if current != genus:
        raise WordError(f"unclosed word: genus trail ends at {current}, expected {genus}", last_line)
    flux_line = max(seen.get("eta", 0), seen.get("degree", 0), seen.get("chamber", 0))
    try:
        return CobordismWord(genus, chamber, tuple(moves), glue, degree, eta)
    except WordError as exc:
        raise type(exc)(exc.message, flux_line) from None


def serialize_word(word: CobordismWord) -> str:
    """Canonical text form; ``parse_word_file`` inverts it."""
    lines = [f"genus {word.start_genus}"]
    if word.degree is not None:
        lines.append(f"degree {word.degree}")
    lines.append(f"chamber {word.chamber}")
    if word.eta_bar is not None:
        lines.append(f"eta {word.eta_bar}")
    lines.append("moves:")
    for move in word.moves:
        if move.kind == "twist":
            lines.append("twist " + " ".join(map(str, move.matrix.flat())))
        else:
            lines.append(move.kind)
    if not word.glue.is_identity():
        lines.append("glue " + " ".join(map(str, word.glue.flat())))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class WordFile:
    path: Path
    word: CobordismWord

    @classmethod
    def load(cls, path: str | Path) -> WordFile:
        path = Path(path)
        try:
            text = path.read_bytes().decode("utf-8")
        except OSError as exc:
            raise WordError(f"cannot read {path}: {exc.strerror}") from None
        except UnicodeDecodeError:
            raise WordError(f"{path} is not valid UTF-8") from None
        return cls(path, parse_word_file(text))
