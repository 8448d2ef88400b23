"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .linalg import DEFAULT_TOL
from .verify import run_checks


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, metavar="PATH", help="output file (default: stdout)")


def _add_scan(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s-start", type=float, default=1e-2)
    p.add_argument("--s-factor", type=float, default=0.5)
    p.add_argument("--s-steps", type=int, default=20)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--workers", type=int, default=1, help="thread pool size for scan points")
    _add_common(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pbphase",
        description="Finite and infinite phase/angular-momentum commutator checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run every invariant check")
    p.add_argument("--l-max", type=int, default=5)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    _add_common(p)

    p = sub.add_parser("finite-limit", help="shift-to-zero scan of <n|R|k>/(i s) in 2l+1 dimensions")
    p.add_argument("--l", type=int, nargs="+", required=True, dest="l_values")
    _add_scan(p)

    p = sub.add_parser("infinite-limit", help="shift-to-zero scan of (n, R m)/(i s) for the rotor; --k is m")
    _add_scan(p)

    p = sub.add_parser("commutator", help="closed-form [phi_l, L_z] with deviations from the direct product")
    p.add_argument("--l", type=int, required=True)
    _add_common(p)
    return parser


def _scan_config(args: argparse.Namespace, l_values=()) -> report.ScanConfig:
    return report.ScanConfig(
        l_values=tuple(l_values),
        s_start=args.s_start,
        s_factor=args.s_factor,
        s_steps=args.s_steps,
        n=args.n,
        k=args.k,
        tol=args.tol,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            if args.l_max < 0:
                raise ValueError(f"--l-max must be nonnegative, got {args.l_max}")
            outcomes = run_checks(args.l_max, args.tol)
            fmt = report.verify_to_json if args.format == "json" else report.verify_to_csv
            _emit(fmt(outcomes), args.out)
            return 0 if all(o.passed for o in outcomes) else 1

        if args.command == "commutator":
            if args.l < 0:
                raise ValueError(f"--l must be nonnegative, got {args.l}")
            matrix, deviation, degenerate = report.commutator_table(args.l)
            if args.format == "json":
                text = report.commutator_to_json(args.l, matrix, deviation, degenerate)
            else:
                text = report.commutator_to_csv(args.l, matrix, deviation)
            _emit(text, args.out)
            return 0

        if args.workers < 1:
            raise ValueError(f"--workers must be positive, got {args.workers}")
        if args.command == "finite-limit":
            config = _scan_config(args, args.l_values)
            rows, limits = report.finite_limit_scan(config, workers=args.workers)
        else:
            config = _scan_config(args)
            rows, limits = report.infinite_limit_scan(config, workers=args.workers)
        text = report.rows_to_json(rows, limits) if args.format == "json" else report.rows_to_csv(rows)
        _emit(text, args.out)
        return 0
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
