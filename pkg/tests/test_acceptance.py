"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
``python tests/test_acceptance.py`` for the bare summary.
"""

import random
import subprocess
import sys
import time
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from words import random_moves  # noqa: E402
from vortex_tqft.cobordism import (  # noqa: E402
    CobordismWord,
    SpincParams,
    compose_moves,
    compose_word,
    conjugate_word,
    rho_one_handle,
    rho_two_handle,
    rotate_word,
)
from vortex_tqft.engine import mapping_torus_traces, sw_sum  # noqa: E402
from vortex_tqft.surface_algebra import SpMatrix, random_symplectic  # noqa: E402
from vortex_tqft.symprod import (  # noqa: E402
    GradedOperator,
    SymSpace,
    betti,
    graded_trace,
    induced_map,
    macdonald_series,
)
from vortex_tqft.wordfile import WordFile  # noqa: E402

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_paths():
    return sorted(CORPUS.glob("*.word"))


def verdict(name, failures, elapsed=None, limit=None):
    ok = not failures and (limit is None or elapsed < limit)
    timing = f" ({elapsed:.2f}s, limit {limit}s)" if limit is not None else ""
    detail = "" if ok else f": {failures[:3]}" if failures else ": too slow"
    print(f"{'PASS' if ok else 'FAIL'} {name}{timing}{detail}", flush=True)
    return ok


def criterion_1():
    start = time.perf_counter()
    failures = []
    for g in range(1, 6):
        identity = macdonald_series(SpMatrix.identity(g), 2 * g - 2)
        for d in range(-(g - 1), g):
            k = g - 1 - abs(d)
            expected = (-1) ** k * comb(2 * g - 2, k)
            traced = sw_sum(CobordismWord(g, "+" if d >= 0 else "-", degree=d)).value
            if not traced == identity[k] == expected:
                failures.append((g, d, traced, identity[k], expected))
    return verdict("C1 S^1 x surface values by trace and by det(I-tM)", failures, time.perf_counter() - start, 10)


def criterion_2():
    start = time.perf_counter()
    failures = []
    for d in range(-5, 6):
        plus = sw_sum(CobordismWord(0, "+", degree=d)).value
        minus = sw_sum(CobordismWord(0, "-", degree=d)).value
        if plus != max(d, 0):
            failures.append(("+", d, plus))
        if minus != max(-d, 0):
            failures.append(("-", d, minus))
    return verdict("C2 sphere chambered values", failures, time.perf_counter() - start, 1)


def criterion_3():
    failures = []
    # g = 0 has no vanishing range; the chambered values of C2 apply there
    for g in range(1, 5):
        for chamber in "+-":
            for d in range(-g - 4, g + 5):
                if abs(d) > g - 1:
                    value = sw_sum(CobordismWord(g, chamber, degree=d)).value
                    if value != 0:
                        failures.append((g, chamber, d, value))
    return verdict("C3 vanishing for |d| > g-1", failures)


def criterion_4():
    start = time.perf_counter()
    rng = random.Random(20240601)
    failures = []
    count = 0
    for g in (1, 2, 3):
        for _ in range(50):
            m = random_symplectic(g, rng, 10)
            count += 1
            k_max = 2 * g - 2
            # independent side: det(I - tM) by Leibniz expansion, divided by (1 - t)^2
            det = oracles.char_poly_det(m.entries)
            coeffs, running, acc = [], 0, 0
            for k in range(k_max + 1):
                acc += det[k] if k < len(det) else 0
                running += acc
                coeffs.append(running)
            for k in range(k_max + 1):
                trace = graded_trace(induced_map(m, SymSpace.of(g, k)))
                if trace != coeffs[k]:
                    failures.append((g, k, m.flat(), trace, coeffs[k]))
    ok = verdict(f"C4 trace equals det(I-tM)/(1-t)^2 on {count} matrices", failures, time.perf_counter() - start, 30)
    return ok and count >= 50


def criterion_5():
    rng = random.Random(5)
    failures = []
    params = SpincParams.with_default_flux(1, "+")
    for trial in range(40):
        start = rng.choice([0, 1, 2])
        first = random_moves(rng, start, rng.randint(0, 4), max_genus=2, close=False)
        mid = start
        for move in first:
            mid = move.target_genus(mid)
        second = random_moves(rng, mid, rng.randint(0, 4), max_genus=2, close=False)
        whole = compose_moves(start, params, first + second)
        split = compose_moves(mid, params, second) @ compose_moves(start, params, first)
        if whole != split:
            failures.append(("concat", trial))
    for g in range(0, 4):
        for k in range(0, max(2 * g - 2, 0) + 1):
            if rho_two_handle(g + 1, k + 1) @ rho_one_handle(g, k) != GradedOperator.identity(SymSpace.of(g, k)):
                failures.append(("cancel", g, k))
    return verdict("C5 functoriality and handle cancellation", failures)


def criterion_6():
    failures = []
    for g in range(0, 3):
        for k in range(0, 3):
            up = rho_one_handle(g, k).matrix()
            down = rho_two_handle(g + 1, k + 1).matrix()
            if down != [list(col) for col in zip(*up)]:
                failures.append((g, k))
    return verdict("C6 2-handle is the transpose of the 1-handle", failures)


def criterion_7():
    failures = []
    for g in range(0, 5):
        for k in range(0, g + 1):
            dims = betti(SymSpace.of(g, k))
            counted = [0] * (2 * k + 1)
            for subset, j in oracles.basis(g, k):
                counted[len(subset) + 2 * j] += 1
            if dims != counted:
                failures.append(("enum", g, k))
            if dims != dims[::-1]:
                failures.append(("duality", g, k))
            if k >= 1 and dims[1] != 2 * g:
                failures.append(("b1", g, k))
    return verdict("C7 Betti numbers and Poincare duality", failures)


def criterion_8():
    rng = random.Random(88)
    failures = []
    paths = corpus_paths()
    for path in paths:
        word = WordFile.load(path).word
        value = sw_sum(word).value
        for _ in range(3):
            n = random_symplectic(min(word.genera), rng, 6)
            if sw_sum(conjugate_word(word, n)).value != value:
                failures.append(("conj", path.name))
        rotated = word
        for _ in range(len(word.moves)):
            rotated = rotate_word(rotated)
            if sw_sum(rotated).value != value:
                failures.append(("rot", path.name))
    ok = verdict(f"C8 conjugation and rotation invariance on {len(paths)} words", failures)
    return ok and len(paths) >= 10


def criterion_9():
    failures = []
    paths = corpus_paths()
    names = {p.stem for p in paths}
    for path in paths:
        proc = subprocess.run(
            [sys.executable, "-m", "vortex_tqft", "--json", "sw", str(path)], capture_output=True, check=False
        )
        expected = (CORPUS / "expected" / f"{path.stem}.json").read_bytes()
        if proc.returncode != 0 or proc.stdout != expected:
            failures.append(path.name)
    required = {"example_s1xsigma2", "empty_moduli"} <= names
    ok = verdict(f"C9 CLI JSON byte-for-byte on {len(paths)} files", failures)
    return ok and required and len(paths) >= 10


def criterion_10():
    rng = random.Random(10)
    failures = []
    operators = []
    for path in corpus_paths():
        word = WordFile.load(path).word
        if min(k for _, k in word.k_trail()) >= 0:
            operators.append(compose_word(word))
            for _ in range(len(word.moves)):
                word = rotate_word(word)
                operators.append(compose_word(word))
    for _ in range(30):
        g = rng.choice([1, 2, 3])
        m = random_symplectic(g, rng, 8)
        operators.extend(induced_map(m, SymSpace.of(g, k)) for k in range(2 * g + 1))
    for op in operators:
        trace = graded_trace(op)
        if trace.denominator != 1:
            failures.append(trace)
    try:
        mapping_torus_traces(random_symplectic(2, rng, 8), 4)
    except AssertionError as exc:
        failures.append(str(exc))
    return verdict(f"C10 integrality over {len(operators)} traces", failures)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [criterion() for criterion in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
