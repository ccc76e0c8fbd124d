"""``tpkit`` command line.

Exit codes: 0 when the check holds / the report passes, 1 when it fails,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .compound import CompoundIndexMap, compound
from .condensation import condensation_sequence, condense, sylvester_check
from .errors import TpkitError
from .exact import format_rational, parse_rational
from .hankel import hankel_from_moments, hankel_from_sequence, is_tp_hankel
from .matrix_io import format_matrix, matrix_to_dict, read_json, read_matrix
from .netfact import (
    FactorizationParams,
    assemble,
    factorize,
    lindstrom_minor,
    network_from_params,
    random_params,
)
from .positivity import is_tn_k, is_tp2c, is_tp_k
from .verify import CASES, verify_paper

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rational(text: str):
    try:
        return parse_rational(text)
    except TpkitError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Out:
    def __init__(self, args):
        self.path = args.output
        self.quiet = args.quiet
        self.chunks: list[str] = []

    def write(self, text: str) -> None:
        if not text.endswith("\n"):
            text += "\n"
        self.chunks.append(text)

    def info(self, text: str) -> None:
        if not self.quiet:
            print(text, file=sys.stderr)

    def flush(self) -> None:
        body = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(body)
        else:
            sys.stdout.write(body)


def _verdict_text(name: str, verdict) -> str:
    if verdict.holds:
        return f"{name}: holds"
    w = verdict.witness
    return f"{name}: fails; witness rows {w.rows} cols {w.cols} value {format_rational(w.value)}"


def _emit_verdict(out: _Out, args, name: str, verdict) -> int:
    if args.format == "json":
        out.write(json.dumps({"check": name, **verdict.to_dict()}))
    else:
        out.write(_verdict_text(name, verdict))
    return EXIT_OK if verdict.holds else EXIT_FAIL


def cmd_check(args, out: _Out) -> int:
    A = read_matrix(args.file, args.input_format)
    if args.tp is not None:
        return _emit_verdict(out, args, f"TP_{args.tp}", is_tp_k(A, args.tp))
    if args.tn is not None:
        return _emit_verdict(out, args, f"TN_{args.tn}", is_tn_k(A, args.tn))
    c = args.tp2c
    out.info("TP_2(c) quantifies over adjacent 2x2 blocks, i, j in 1..n-1")
    return _emit_verdict(out, args, f"TP_2({format_rational(c)})", is_tp2c(A, c))


def cmd_compound(args, out: _Out) -> int:
    A = read_matrix(args.file, args.input_format)
    C = compound(A, args.k, allow_large=args.allow_large)
    if args.index_map:
        imap = CompoundIndexMap.build(A.nrows, A.ncols, args.k)
        doc = {
            "matrix": matrix_to_dict(C),
            "row_sets": [list(s) for s in imap.row_sets],
            "col_sets": [list(s) for s in imap.col_sets],
        }
        out.write(json.dumps(doc))
    else:
        out.write(format_matrix(C, args.format))
    return EXIT_OK


def cmd_condense(args, out: _Out) -> int:
    A = read_matrix(args.file, args.input_format)
    if not args.all:
        out.write(format_matrix(condense(A, args.k), args.format))
        return EXIT_OK
    seq = condensation_sequence(A)
    doc = {
        "stages": [matrix_to_dict(D) for D in seq.stages[1:]],
        "determinant": format_rational(seq.determinant),
        "fallbacks": {str(k): sorted(map(list, f)) for k, f in enumerate(seq.fallbacks) if f},
    }
    out.write(json.dumps(doc))
    out.info(f"fallback entries: {seq.fallback_count}")
    return EXIT_OK


def cmd_sylvester(args, out: _Out) -> int:
    A = read_matrix(args.file, args.input_format)
    res = sylvester_check(A, args.alpha, args.delta, args.gamma)
    if args.format == "json":
        out.write(json.dumps({"lhs": format_rational(res.lhs), "rhs": format_rational(res.rhs), "holds": res.holds}))
    else:
        out.write(f"lhs = {format_rational(res.lhs)}\nrhs = {format_rational(res.rhs)}\nholds = {res.holds}")
    return EXIT_OK if res.holds else EXIT_FAIL


def cmd_factorize(args, out: _Out) -> int:
    A = read_matrix(args.file, args.input_format)
    out.write(json.dumps(factorize(A).to_dict()))
    return EXIT_OK


def cmd_generate(args, out: _Out) -> int:
    params = random_params(args.size, args.seed, args.magnitude, tn=args.tn)
    A = assemble(params)
    if not args.tn:
        v = is_tp_k(A, args.size)
        if not v.holds:
            raise TpkitError(f"generated matrix failed certification: {v.witness}")
    out.write(format_matrix(A, args.format))
    params_path = args.params
    if params_path is None and args.output:
        params_path = str(Path(args.output).with_suffix("")) + ".params.json"
    if params_path:
        Path(params_path).write_text(json.dumps(params.to_dict()) + "\n")
        out.info(f"parameters written to {params_path}")
    return EXIT_OK


def cmd_lindstrom(args, out: _Out) -> int:
    params = FactorizationParams.from_dict(read_json(args.file))
    value = lindstrom_minor(network_from_params(params), args.rows, args.cols)
    out.write(format_rational(value))
    return EXIT_OK


def cmd_hankel(args, out: _Out) -> int:
    if args.moments:
        A = hankel_from_moments(args.nodes, args.seed, args.magnitude)
    else:
        A = hankel_from_sequence([parse_rational(x) for x in args.sequence.split(",")])
    if not args.check_tp:
        out.write(format_matrix(A, args.format))
        return EXIT_OK
    return _emit_verdict(out, args, "TP (Hankel criterion)", is_tp_hankel(A))


def cmd_verify_paper(args, out: _Out) -> int:
    report = verify_paper(args.case, args.seed, args.trials)
    if args.format == "json":
        out.write(report.to_json())
    else:
        out.write(report.to_text(verbose=args.verbose))
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None,
                        help="output format (matrices: json|csv; reports: text|json)")
    common.add_argument("--input-format", choices=("json", "csv"), default=None,
                        help="input matrix format (default: by file extension, else json)")
    common.add_argument("--output", "-o", default=None, help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--quiet", "-q", action="store_true")

    parser = argparse.ArgumentParser(prog="tpkit", description="Exact total-positivity toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="TP_k / TN_k / TP_2(c) verdict")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--tp", type=int, metavar="K")
    g.add_argument("--tn", type=int, metavar="K")
    g.add_argument("--tp2c", type=_rational, metavar="C")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compound", parents=[common], help="k-th compound matrix")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--index-map", action="store_true", help="also emit the lexicographic subset lists")
    p.add_argument("--allow-large", action="store_true", help="lift the 16x16 size guard")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_compound)

    p = sub.add_parser("condense", parents=[common], help="Dodgson condensation")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("-k", type=int)
    g.add_argument("--all", action="store_true")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_condense)

    p = sub.add_parser("sylvester", parents=[common], help="both sides of Sylvester's identity")
    p.add_argument("--alpha", type=_int_list, required=True)
    p.add_argument("--delta", type=_int_list, required=True)
    p.add_argument("--gamma", type=_int_list, required=True)
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_sylvester)

    p = sub.add_parser("factorize", parents=[common], help="bidiagonal parameters of a nonsingular TN matrix")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("generate", parents=[common], help="certified TP (or TN) matrix from random parameters")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--magnitude", type=int, default=9)
    p.add_argument("--tn", action="store_true", help="allow zero parameters (TN, not certified TP)")
    p.add_argument("--params", default=None, help="parameter file path (default: next to --output)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("lindstrom", parents=[common], help="minor as a sum over disjoint path families")
    p.add_argument("--rows", type=_int_list, required=True)
    p.add_argument("--cols", type=_int_list, required=True)
    p.add_argument("file", nargs="?", default="-", help="parameter file")
    p.set_defaults(func=cmd_lindstrom)

    p = sub.add_parser("hankel", parents=[common], help="Hankel construction and TP test")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sequence", help="comma-separated a_0,...,a_2n")
    g.add_argument("--moments", action="store_true", help="moment sequence of a random positive measure")
    p.add_argument("--nodes", type=int, default=4, help="matrix order for --moments")
    p.add_argument("--magnitude", type=int, default=9)
    p.add_argument("--check-tp", action="store_true")
    p.set_defaults(func=cmd_hankel)

    p = sub.add_parser("verify-paper", parents=[common], help="reproduce the printed examples and property sweeps")
    p.add_argument("--case", choices=sorted(CASES) + ["all"], default="all")
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "text" if args.command in ("check", "sylvester", "verify-paper", "lindstrom") else "json"
    if args.format == "text" and args.command in ("compound", "condense", "generate", "hankel") and not getattr(args, "check_tp", False):
        args.format = "json"
    out = _Out(args)
    try:
        code = args.func(args, out)
    except TpkitError as exc:
        print(f"tpkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
