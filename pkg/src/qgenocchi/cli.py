"""Command-line front end.

Four subcommands: three compute a single exact value (``genocchi``,
``bernstein``, ``integral``) and print it as a canonical rational, and
``verify`` runs the identity battery and emits a deterministic report.
Exit codes: 0 success, 1 verification failure (per the exit-status
policy), 2 usage/config/IO errors or a vacuous run.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import padic, verify
from .bernstein import bernstein_eval
from .genocchi import VARIANTS, genocchi_poly
from .qnum import PoleError, QPoint, Weights, format_rat, parse_rat


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgenocchi",
        description=(
            "Exact arithmetic for weighted q-Bernstein polynomials, modified "
            "weighted q-Genocchi numbers, and truncated fermionic p-adic "
            "q-integrals, plus an identity verification battery."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser(
        "genocchi", help="evaluate a modified weighted q-Genocchi polynomial"
    )
    gen.add_argument("--n", type=int, required=True, help="index n >= 0")
    gen.add_argument("--x", type=int, default=0, help="integer argument (default 0)")
    gen.add_argument("--alpha", type=int, default=1, help="first weight (default 1)")
    gen.add_argument("--beta", type=int, default=1, help="second weight (default 1)")
    gen.add_argument(
        "--q", type=parse_rat, required=True, help='rational q, e.g. "2" or "1/2"'
    )

    ber = sub.add_parser("bernstein", help="evaluate a weighted q-Bernstein basis value")
    ber.add_argument("--k", type=int, required=True, help="basis index k")
    ber.add_argument("--n", type=int, required=True, help="degree n")
    ber.add_argument("--alpha", type=int, default=1, help="weight (default 1)")
    ber.add_argument("--x", type=int, required=True, help="integer argument")
    ber.add_argument(
        "--q", type=parse_rat, required=True, help='rational q, e.g. "2" or "1/2"'
    )

    integ = sub.add_parser(
        "integral", help="truncated fermionic p-adic q-integral of a battery integrand"
    )
    integ.add_argument(
        "--kind",
        choices=padic.INTEGRAND_KINDS,
        required=True,
        help="integrand shape",
    )
    integ.add_argument("--p", type=int, required=True, help="odd prime")
    integ.add_argument(
        "--bigN",
        dest="big_n",
        type=int,
        required=True,
        help="truncation level N (sum over xi < p^N)",
    )
    integ.add_argument(
        "--q", type=parse_rat, required=True, help="integer q with q = 1 mod p"
    )
    integ.add_argument("--alpha", type=int, default=1, help="first weight (default 1)")
    integ.add_argument("--beta", type=int, default=1, help="second weight (default 1)")
    integ.add_argument("--n", type=int, default=0, help="kernel power (kernel kinds)")
    integ.add_argument("--x", type=int, default=0, help="kernel shift (genocchi_kernel)")
    integ.add_argument("--k", type=int, default=0, help="basis index (bernstein_product)")
    integ.add_argument(
        "--degrees",
        default="",
        help='comma-separated degrees for bernstein_product, e.g. "1,2"',
    )

    ver = sub.add_parser("verify", help="run the identity battery and emit a report")
    ver.add_argument(
        "--identity",
        default=None,
        help="registry id to run (default: the whole registry)",
    )
    ver.add_argument(
        "--variant",
        choices=VARIANTS,
        default=None,
        help="restrict printed/corrected identities to one variant",
    )
    ver.add_argument("--config", default=None, help="key=value grid config file")
    ver.add_argument(
        "--format",
        dest="fmt",
        choices=verify.FORMATS,
        default="json",
        help="report format (default json)",
    )
    ver.add_argument(
        "--out", default=None, help='report destination (default "-" = stdout)'
    )
    ver.add_argument(
        "--strict-printed",
        action="store_true",
        help="count printed-variant failures in the exit status",
    )
    return parser


def _cmd_genocchi(args: argparse.Namespace) -> int:
    value = genocchi_poly(args.n, args.x, Weights(args.alpha, args.beta), QPoint(args.q))
    print(format_rat(value))
    return 0


def _cmd_bernstein(args: argparse.Namespace) -> int:
    value = bernstein_eval(args.k, args.n, args.alpha, args.x, QPoint(args.q))
    print(format_rat(value))
    return 0


def _cmd_integral(args: argparse.Namespace) -> int:
    degrees = tuple(int(part) for part in args.degrees.split(",") if part.strip())
    spec = padic.IntegrandSpec(
        kind=args.kind,
        w=Weights(args.alpha, args.beta),
        n=args.n,
        x=args.x,
        k=args.k,
        degrees=degrees,
    )
    ctx = padic.PadicContext.make(args.p, args.q, n_max=args.big_n)
    value = padic.fermionic_partial_sum(spec, ctx, args.big_n)
    print(format_rat(value))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    grid = verify.GridSpec()
    if args.config is not None:
        grid = verify.parse_config(Path(args.config).read_text(encoding="utf-8"))
    if args.identity is not None:
        reports = verify.run_identity(args.identity, grid, args.variant)
    else:
        reports = verify.run_all(grid, args.variant)
    status = verify.exit_status(reports, strict_printed=args.strict_printed)
    if reports:
        verify.emit(reports, args.fmt, args.out)
    counts = {verify.PASS: 0, verify.FAIL: 0, verify.SKIPPED: 0}
    printed_fails = 0
    for report in reports:
        counts[report.verdict] += 1
        if report.verdict == verify.FAIL and report.variant == verify.VARIANT_PRINTED:
            printed_fails += 1
    print(
        f"summary: {counts[verify.PASS]} PASS, {counts[verify.FAIL]} FAIL "
        f"({printed_fails} in printed variants), {counts[verify.SKIPPED]} SKIPPED "
        f"-> exit {status}",
        file=sys.stderr,
    )
    return status


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {
        "genocchi": _cmd_genocchi,
        "bernstein": _cmd_bernstein,
        "integral": _cmd_integral,
        "verify": _cmd_verify,
    }[args.command]
    try:
        return handler(args)
    except verify.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, PoleError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
