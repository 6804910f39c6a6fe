"""Command-line front end.

Exit codes are shared by every command: 0 success, 1 a property violation
or certificate mismatch, 2 an input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .errors import CertificateMismatch, CollinearInput, InvalidConfiguration, InvalidParams, ParseError, TrilinesError
from .generators import FAMILIES, FamilyParams, generate
from .incidence import detect_concurrent_structure, incidence_report
from .witness import find_ordinary_point

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class _InputError(Exception):
    pass


def _load(path):
    try:
        return io.read_config(path)
    except (ParseError, InvalidConfiguration) as e:
        raise _InputError(f"{path}: {e}") from None


def _report(X, path):
    try:
        return incidence_report(X)
    except CollinearInput as e:
        raise _InputError(f"{path}: collinear input, every point lies on the line {io.format_point(e.line)}") from None


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    X = _load(args.input)
    rep = _report(X, args.input)
    if args.json:
        _emit(io.dumps_json(io.report_dict(rep)), args.output)
    else:
        _emit(io.report_text(rep), args.output)
    if args.figure:
        from .plotting import render

        render(X, args.figure, report=rep)
    return EXIT_OK


def cmd_witness(args) -> int:
    X = _load(args.input)
    rep = _report(X, args.input)
    S = detect_concurrent_structure(X)
    if S is None:
        raise _InputError(f"{args.input}: not covered by three concurrent lines")
    try:
        w = find_ordinary_point(X, S)
    except CertificateMismatch as e:
        print(f"certificate mismatch: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    oracle = rep.count_per_point[w.point]
    if oracle != w.count or oracle < rep.threshold:
        print(
            f"certificate mismatch: witness {io.format_point(w.point)} claims {w.count}, "
            f"brute force gives {oracle} (threshold {rep.threshold})",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    if args.json:
        doc = {"structure": io.structure_dict(S), "witness": io.witness_dict(w), "oracle_count": oracle, "t": rep.t}
        _emit(io.dumps_json(doc), args.output)
    else:
        _emit(io.witness_text(S, w) + f"oracle_count\t{oracle}\nt\t{rep.t}\n", args.output)
    return EXIT_OK


def _counts(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated integers, got {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated integers, got {text!r}")
    return parts


def cmd_generate(args) -> int:
    try:
        params = FamilyParams(
            family=args.family, k=args.k, counts=args.counts, include_apex=args.apex,
            n=args.n, bound=args.bound, seed=args.seed,
        )
        X = generate(params)
    except InvalidParams as e:
        raise _InputError(str(e)) from None
    header = {"family": params.family}
    if params.family in ("aikn1", "aikn2"):
        header["k"] = params.k
        for key in ("infinity", "infinity_1", "infinity_2"):
            if key in X.metadata:
                header[key] = X.metadata[key]
    elif params.family == "random-concurrent":
        header["counts"] = ",".join(str(c) for c in params.counts)
        header["apex_included"] = "yes" if params.include_apex else "no"
        header["apex"] = io.format_point(X.metadata["apex"])
        header["seed"] = params.seed
    else:
        header.update(n=params.n, bound=params.bound, seed=params.seed)
    _emit(io.write_config(X, header), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    want = args.expect == "yes"
    status = EXIT_OK
    for path in args.inputs:
        try:
            rep = _report(_load(path), path)
        except _InputError as e:
            print(f"{path}\terror\t{e}")
            status = EXIT_INPUT
            continue
        ok = rep.dirac_holds == want
        verdict = "yes" if rep.dirac_holds else "no"
        print(f"{path}\tn={rep.n}\tt={rep.t}\tthreshold={rep.threshold}\tdirac={verdict}\t{'match' if ok else 'MISMATCH'}")
        if not ok and status == EXIT_OK:
            status = EXIT_VIOLATION
    return status


def cmd_render(args) -> int:
    from .plotting import render

    X = _load(args.input)
    rep = _report(X, args.input)
    try:
        render(X, args.output, report=rep, arrows=args.arrows)
    except OSError as e:
        raise _InputError(f"cannot write {args.output}: {e.strerror}") from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trilines", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="spanned lines, incidence counts and the Dirac verdict")
    p.add_argument("input")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.add_argument("--figure", metavar="SVG", help="also render the configuration to this file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("witness", help="constructive ordinary point for sets on three concurrent lines")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("generate", help="write a configuration file for a named family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--counts", type=_counts, default=(3, 3, 3), help="points per line, e.g. 3,3,3")
    p.add_argument("--apex", action="store_true", help="include the apex (random-concurrent)")
    p.add_argument("--n", type=int, default=10, help="point count (random-general)")
    p.add_argument("--bound", type=int, default=100, help="coordinate bound (random-general)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check t(X) >= ceil(n/2) against an expectation")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--expect", choices=("yes", "no"), default="yes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw the configuration and its spanned lines as SVG")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--arrows", action="store_true", help="keep points at infinity, drawn as margin arrows")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except TrilinesError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
