"""``fmcurve`` command line.

Exit codes: 0 success, 1 input error, 2 failed mathematical check.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from .errors import FMCurveError
from .fm import CATALOG, catalog_entry, convolve, left_adjoint, right_adjoint, torelli_report
from .kernelfile import (
    KernelFileError,
    build_report,
    dumps_canonical,
    emit_kernel,
    format_report,
    parse_kernel_file,
)
from .selftest import DEFAULT_SEED, run_all

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_analyze(args) -> int:
    report = build_report(parse_kernel_file(args.kernel))
    sys.stdout.write(dumps_canonical(report) if args.json else format_report(report))
    return EXIT_OK


def cmd_convolve(args) -> int:
    e1, e2 = parse_kernel_file(args.first), parse_kernel_file(args.second)
    _write(emit_kernel(convolve(e1, e2)), args.output)
    return EXIT_OK


def cmd_adjoint(args) -> int:
    e = parse_kernel_file(args.kernel)
    adj = left_adjoint(e) if args.side == "left" else right_adjoint(e)
    _write(emit_kernel(adj), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    report = torelli_report(parse_kernel_file(args.kernel))
    verdict = "equivalence" if report.numerical_equivalence else "not an equivalence"
    polarized = report.jac_is_isomorphism and report.jac_preserves_polarization
    print(f"numerical equivalence: {str(report.numerical_equivalence).lower()}")
    print(f"jacobian map polarized isomorphism: {str(polarized).lower()}")
    if not report.consistent:
        print("verdict: INCONSISTENT (equivalence and Jacobian criterion disagree)")
        return EXIT_CHECK
    print(f"verdict: {verdict} (consistent)")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.list:
        for name in sorted(CATALOG):
            print(name)
        return EXIT_OK
    if args.emit is None:
        raise FMCurveError("catalog needs --emit NAME or --list")
    params = {}
    if args.genus is not None:
        params["genus"] = args.genus
    if args.genus_target is not None:
        params["genus_target"] = args.genus_target
    if args.twist is not None:
        params["d_source"], params["d_target"] = args.twist
    if args.emit != "poincare" and "genus" not in params:
        raise FMCurveError(f"catalog kernel {args.emit!r} needs --genus")
    entry = catalog_entry(args.emit, **params)
    _write(emit_kernel(entry.kernel), args.output)
    return EXIT_OK


def cmd_selftest(args) -> int:
    if args.trials < 1:
        raise FMCurveError("--trials must be positive")
    start = time.perf_counter()
    results = run_all(args.trials, args.seed)
    failed = 0
    for name, failures in results.items():
        status = "ok" if not failures else f"FAILED ({len(failures)})"
        print(f"{name:<16} {status}")
        for msg in failures[:5]:
            print(f"    {msg}")
        failed += len(failures)
    elapsed = time.perf_counter() - start
    print(f"seed={args.seed} trials={args.trials} failures={failed} time={elapsed:.1f}s")
    return EXIT_CHECK if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fmcurve",
                     description="Numerical Fourier-Mukai calculus between curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report the maps induced by a kernel")
    p.add_argument("kernel")
    p.add_argument("--json", action="store_true", help="canonical JSON output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("convolve", help="kernel of the composite transform (A first)")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("adjoint", help="left or right adjoint kernel")
    p.add_argument("side", choices=("left", "right"))
    p.add_argument("kernel")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("check", help="equivalence vs. Jacobian criterion")
    p.add_argument("kernel")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("catalog", help="emit a named kernel")
    p.add_argument("--emit", metavar="NAME", choices=sorted(CATALOG))
    p.add_argument("--list", action="store_true")
    p.add_argument("--genus", type=int)
    p.add_argument("--genus-target", type=int)
    p.add_argument("--twist", nargs=2, type=int, metavar=("D_SOURCE", "D_TARGET"))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("selftest", help="run the randomised invariant suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KernelFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FMCurveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
