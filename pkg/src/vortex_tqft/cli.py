"""Command line front end.

Exit codes: 0 on success, 1 for bad input, 2 when an internal invariant
(integrality of a trace) fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .cobordism import WordError, check_transverse
from .engine import InvariantReport, IntegralityError, series_flux, sw_series, sw_sum
from .surface_algebra import SpMatrix
from .symprod import SymSpace, betti, euler_char, graded_trace, induced_map, macdonald_series
from .wordfile import WordFile, parse_rational


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


def _num(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def report_dict(report: InvariantReport) -> dict:
    word = report.word
    return {
        "genus": word.start_genus,
        "degree": word.degree,
        "chamber": word.chamber,
        "eta_bar": str(word.params.eta_bar),
        "k_trail": [[g, k] for g, k in report.k_trail],
        "value": report.value,
        "empty": report.empty,
        "warnings": list(report.warnings),
    }


def emit_json(report: InvariantReport | dict) -> str:
    payload = report_dict(report) if isinstance(report, InvariantReport) else report
    return json.dumps(payload, ensure_ascii=True) + "\n"


def emit_plain(report: InvariantReport) -> str:
    data = report_dict(report)
    lines = [
        f"genus: {data['genus']}",
        f"degree: {data['degree']}",
        f"chamber: {data['chamber']}",
        f"eta_bar: {data['eta_bar']}",
        "k_trail: " + " ".join(f"({g},{k})" for g, k in data["k_trail"]),
        f"empty: {str(data['empty']).lower()}",
        f"value: {data['value']}",
    ]
    lines += [f"warning: {w}" for w in data["warnings"]]
    return "\n".join(lines) + "\n"


def _matrix(values: Sequence[int], genus: int) -> SpMatrix:
    try:
        return SpMatrix.from_flat(values, genus)
    except ValueError as exc:
        raise WordError(str(exc)) from None


def _subspace(text: str) -> list[list[Fraction]]:
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            vectors.append([parse_rational(tok.strip()) for tok in chunk.split(",")])
    return vectors


def _load(path: str):
    return WordFile.load(path).word


def cmd_sw(args) -> str:
    report = sw_sum(_load(args.file))
    return emit_json(report) if args.json else emit_plain(report)


def cmd_series(args) -> str:
    word = _load(args.file)
    values = sw_series(word, args.dmin, args.dmax, workers=args.workers)
    if args.json:
        return emit_json({
            "genus": word.start_genus,
            "chamber": word.chamber,
            "eta_bar": str(series_flux(word.chamber, args.dmin, args.dmax)),
            "series": [[d, v] for d, v in values],
        })
    return "".join(f"{d} {v}\n" for d, v in values)


def cmd_betti(args) -> str:
    space = SymSpace.of(args.genus, args.k)
    dims = betti(space)
    if args.json:
        return emit_json({"genus": args.genus, "k": args.k, "betti": dims, "euler": euler_char(space)})
    return " ".join(map(str, dims)) + "\n"


def cmd_trace(args) -> str:
    m = _matrix(args.matrix, args.genus)
    value = graded_trace(induced_map(m, SymSpace.of(args.genus, args.k)))
    if args.json:
        return emit_json({"genus": args.genus, "k": args.k, "trace": _num(value)})
    return f"trace: {_num(value)}\n"


def cmd_oracle(args) -> str:
    m = _matrix(args.matrix, args.genus)
    coeffs = [_num(c) for c in macdonald_series(m, args.kmax)]
    if args.json:
        return emit_json({"genus": args.genus, "kmax": args.kmax, "coefficients": coeffs})
    return " ".join(map(str, coeffs)) + "\n"


def cmd_check(args) -> str:
    word = _load(args.file)
    out: dict = {
        "valid": True,
        "genus": word.start_genus,
        "moves": len(word.moves),
        "genus_trail": word.genera,
    }
    if word.degree is not None:
        out["k_trail"] = [[g, k] for g, k in word.k_trail()]
    if (args.subspace_u is None) != (args.subspace_v is None):
        raise WordError("--subspace-u and --subspace-v must be given together")
    if args.subspace_u is not None:
        out["transverse"] = check_transverse(
            _subspace(args.subspace_u), _subspace(args.subspace_v), dim=2 * word.start_genus
        )
    if args.json:
        return emit_json(out)
    lines = [f"valid: genus {word.start_genus}, {len(word.moves)} moves, genus trail {' '.join(map(str, word.genera))}"]
    if "k_trail" in out:
        lines.append("k_trail: " + " ".join(f"({g},{k})" for g, k in out["k_trail"]))
    if "transverse" in out:
        lines.append(f"transverse: {str(out['transverse']).lower()}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = _Parser(prog="vortex-tqft", description="Summed Seiberg-Witten invariants from cobordism words.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sw", parents=[common], help="invariant of a closed word")
    p.add_argument("file")
    p.set_defaults(func=cmd_sw)

    p = sub.add_parser("series", parents=[common], help="sweep the invariant over a range of d")
    p.add_argument("file")
    p.add_argument("--dmin", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of Sym^k of a genus-g surface")
    p.add_argument("-g", "--genus", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("trace", parents=[common], help="graded trace of a mapping class on H*(Sym^k)")
    p.add_argument("-g", "--genus", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--matrix", type=int, nargs="+", required=True, help="2g x 2g integers, row-major")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("oracle", parents=[common], help="coefficients of det(I - tM)/(1 - t)^2")
    p.add_argument("-g", "--genus", type=int, required=True)
    p.add_argument("--matrix", type=int, nargs="+", required=True, help="2g x 2g integers, row-major")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("check", parents=[common], help="validate a word file")
    p.add_argument("file")
    p.add_argument("--subspace-u", help="vectors 'x,y,..;x,y,..' spanning U")
    p.add_argument("--subspace-v", help="vectors spanning V")
    p.set_defaults(func=cmd_check)
    return parser


def run_command(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "genus", 0) is not None and getattr(args, "genus", 0) < 0:
            raise WordError("genus must be non-negative")
        stdout.write(args.func(args))
    except IntegralityError as exc:
        stderr.write(f"internal error: {exc}\n")
        return 2
    except (UsageError, WordError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
