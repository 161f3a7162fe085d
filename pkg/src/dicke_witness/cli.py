"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .combinatorics import binomial, lemma10_max
from .dicke import DickeSpec
from .errors import WitnessError
from .robustness import (
    figure_data,
    p_crit_generic,
    p_crit_huber,
)
from .verification import (
    DEFAULT_TOL,
    biseparable_sampling_check,
    block_singular_values,
    fully_ppt_check,
)
from .witnesses import FAMILIES, build_witness

TOOL = "dicke-witness"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value)
    if value is None:
        return ""
    return str(value)


def _jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render(rows: list[dict], meta: dict, fmt: str) -> str:
    """Serialize rows with a metadata header; '#' comment lines for CSV, {meta, rows} for JSON."""
    if fmt == "json":
        body = {"meta": meta, "rows": [{k: _jsonable(v) for k, v in r.items()} for r in rows]}
        return json.dumps(body, indent=2, ensure_ascii=False) + "\n"
    out = io.StringIO()
    for key, value in meta.items():
        out.write(f"# {key}: {value}\n")
    if rows:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(rows[0].keys())
        for r in rows:
            writer.writerow(_fmt(v) for v in r.values())
    return out.getvalue()


def _emit(text: str, path: Optional[str]) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(schema: str, argv: Sequence[str], **extra) -> dict:
    meta = {"tool": TOOL, "version": __version__, "schema": schema, "command": shlex.join(argv)}
    meta.update(extra)
    return meta


def _witness_rows(W) -> list[dict]:
    return [
        {
            "i": i,
            "omega": W.omegas[i],
            "omega_exact": W.exact[i],
            "omega_sq_exact": W.exact_squares[i],
            "family": W.family,
            "N": W.spec.n,
            "k": W.spec.k,
        }
        for i in range(W.spec.n + 1)
    ]


def cmd_witness(args, argv) -> int:
    W = build_witness(args.family, args.n, args.k, **_start(args))
    _emit(render(_witness_rows(W), _meta("witness/v1", argv), args.format), args.out)
    return EXIT_OK


def _start(args) -> dict:
    return {"start": args.start} if args.family == "prop9" else {}


def cmd_pcrit(args, argv) -> int:
    if args.family == "huber":
        if args.k is None:
            raise argparse.ArgumentTypeError("huber needs --k")
        exact = p_crit_huber(args.n, args.k)
        row = {"N": args.n, "k": args.k, "family": "huber", "p_crit": float(exact), "exact": exact}
    else:
        rec = p_crit_generic(build_witness(args.family, args.n, args.k, **_start(args)))
        row = {"N": rec.N, "k": rec.k, "family": rec.family, "p_crit": rec.p_crit, "exact": rec.exact}
    _emit(render([row], _meta("pcrit/v1", argv), args.format), args.out)
    return EXIT_OK


def cmd_compare(args, argv) -> int:
    figure = "fig" + args.figure
    rows = figure_data(figure, n_max=args.nmax, n_min=args.nmin)
    _emit(render(rows, _meta(f"{figure}/v1", argv), args.format), args.out)
    return EXIT_OK


def _verify_ppt(args) -> tuple[list[dict], bool]:
    W = build_witness(args.family, args.n, args.k, **_start(args))
    report = fully_ppt_check(W, tol=args.tol, seed=args.seed)
    rows = [
        {
            "family": report.family,
            "N": report.spec.n,
            "k": report.spec.k,
            "m": r.m,
            "min_eigenvalue": r.min_eigenvalue,
            "gershgorin_bound": r.gershgorin_bound,
            "random_subset": list(r.random_subset),
            "random_min_eigenvalue": r.random_min_eigenvalue,
            "pass": r.passed,
        }
        for r in report.rows
    ]
    return rows, report.passed


def _verify_svd(args) -> tuple[list[dict], bool]:
    if args.k is None:
        raise argparse.ArgumentTypeError("svd check needs --k")
    spec = DickeSpec(args.n, args.k)
    deltas = [args.delta] if args.delta is not None else range(1, spec.k + 1)
    xs = [args.x] if args.x is not None else range(1, spec.n // 2 + 1)
    rows, ok = [], True
    for delta in deltas:
        for x in xs:
            computed, predicted = block_singular_values(spec, delta, x)
            err = max((abs(a - b) for a, b in zip(computed, predicted)), default=0.0)
            passed = len(computed) == len(predicted) and err <= args.svd_tol
            ok &= passed
            rows.append(
                {
                    "N": spec.n,
                    "k": spec.k,
                    "delta": delta,
                    "x": x,
                    "computed": computed,
                    "predicted": predicted,
                    "max_abs_error": err,
                    "pass": passed,
                }
            )
    return rows, ok


def _verify_lemma10(args) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for N in range(2, args.nmax + 1):
        for k in range(1, (N - 1) // 2 + 1):
            best, argmax = lemma10_max(N, k)
            target = binomial(N - 1, k)
            passed = best == target and (1, 0) in argmax
            ok &= passed
            rows.append({"N": N, "k": k, "max": best, "binom_N1_k": target, "pass": passed})
    return rows, ok


def _verify_bisep(args) -> tuple[list[dict], bool]:
    W = build_witness(args.family, args.n, args.k, **_start(args))
    worst = biseparable_sampling_check(W, samples=args.samples, seed=args.seed)
    passed = worst >= -args.tol
    row = {
        "family": W.family,
        "N": W.spec.n,
        "k": W.spec.k,
        "samples": args.samples,
        "min_expectation": worst,
        "pass": passed,
    }
    return [row], passed


_CHECKS = {"ppt": _verify_ppt, "svd": _verify_svd, "lemma10": _verify_lemma10, "bisep": _verify_bisep}


def cmd_verify(args, argv) -> int:
    if args.check in ("ppt", "bisep") and (args.family is None or args.n is None):
        raise argparse.ArgumentTypeError(f"{args.check} check needs --family and --n")
    if args.check == "svd" and args.n is None:
        raise argparse.ArgumentTypeError("svd check needs --n")
    rows, ok = _CHECKS[args.check](args)
    extra = {"seed": args.seed} if args.check in ("ppt", "bisep") else {}
    _emit(render(rows, _meta(f"verify-{args.check}/v1", argv, **extra), args.format), args.out)
    print(f"{'PASS' if ok else 'FAIL'}: {args.check} ({len(rows)} rows)", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Entanglement witnesses for Dicke states.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, family_choices=FAMILIES, family_required=True):
        p.add_argument("--family", choices=family_choices, required=family_required)
        p.add_argument("--n", type=int, required=family_required)
        p.add_argument("--k", type=int)
        p.add_argument("--start", choices=("cor8", "optimized"), default="cor8",
                       help="starting coefficients for the prop9 shift")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("witness", help="print witness coefficients")
    common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("pcrit", help="white-noise threshold of one witness")
    common(p, family_choices=FAMILIES + ("huber",))
    p.set_defaults(func=cmd_pcrit)

    p = sub.add_parser("compare", help="figure datasets")
    p.add_argument("--figure", choices=("2", "3a", "3b", "4"), required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--nmin", type=int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="numerical certification checks")
    p.add_argument("--check", choices=tuple(_CHECKS), required=True)
    common(p, family_required=False)
    p.add_argument("--delta", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--nmax", type=int, default=24)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--svd-tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except (WitnessError, argparse.ArgumentTypeError) as exc:
        print(f"{TOOL}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
