"""``dclinalg`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error (unreadable or invalid
input), 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .array import DCMatrix
from .classical import SOLVERS
from .compression import DEFAULT_KS, compress, format_csv, synthetic_image
from .dcmx import load_dcmx, save_dcmx
from .exceptions import DualAlgebraError
from .pgm import read_pgm, write_pgm
from .reference_cases import CASES, run_case
from .scalar import DualNumber, format_dual
from .svd import lowrank_error, svd, truncate

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _k_list(text: str) -> list[int]:
    try:
        ks = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None
    if not ks or any(k < 0 for k in ks):
        raise argparse.ArgumentTypeError(f"expected non-negative integers, got {text!r}")
    return ks


def _nonneg_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a finite non-negative number, got {text!r}")
    return value


def _add_decomposition_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cluster-tol", type=_nonneg_float, default=None, help="eigenvalue clustering gap (default: relative 1e-8)")
    p.add_argument("--zero-tol", type=_nonneg_float, default=None, help="singular value zero threshold (default: relative)")
    p.add_argument("--solver", choices=SOLVERS, default="auto", help="classical kernel backend")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dclinalg", description="Dual complex matrix decompositions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("svd", help="print the dual singular values, rank and appreciable rank")
    p.add_argument("input", help=".dcmx matrix file")
    _add_decomposition_flags(p)
    p.add_argument("--precision", type=int, default=4, help="decimals in the report (default 4)")
    p.add_argument("--out", help="directory for V.dcmx, U.dcmx and sigma.dcmx")

    p = sub.add_parser("truncate", help="best rank-k approximations")
    p.add_argument("input", help=".dcmx matrix file")
    p.add_argument("--k", type=_k_list, required=True, help="comma separated ranks")
    _add_decomposition_flags(p)
    p.add_argument("--precision", type=int, default=4)
    p.add_argument("--out", help="directory for A_k<k>.dcmx files")

    p = sub.add_parser("verify-examples", help="check the bundled worked examples")
    p.add_argument("--tol", type=_nonneg_float, default=None, help="override every per-example tolerance")
    p.add_argument("--precision", type=int, default=4)

    p = sub.add_parser("image", help="dual SVD compression of a PGM image pair")
    p.add_argument("std_image", help="PGM for the standard part")
    p.add_argument("inf_image", nargs="?", help="PGM for the infinitesimal part (default: same as std_image)")
    p.add_argument("--k", type=_k_list, default=list(DEFAULT_KS), help="comma separated ranks (default 5,15,25,35,45)")
    p.add_argument("--out", required=True, help="output directory for errors.csv and reconstructions")
    p.add_argument("--solver", choices=SOLVERS, default="auto")
    p.add_argument("--workers", type=int, default=None, help="threads for the per-k loop")
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5 images")

    p = sub.add_parser("synth-image", help="write a deterministic synthetic test image")
    p.add_argument("output", help="PGM path")
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--seed", type=int, default=1)
    return parser


def _svd_kwargs(args) -> dict:
    return {"cluster_tol": args.cluster_tol, "zero_tol": args.zero_tol, "solver": args.solver}


def _check_precision(precision: int) -> None:
    if not 0 <= precision <= 17:
        raise UsageError(f"--precision must be in [0, 17], got {precision}")


def _outdir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_svd(args, stdout) -> int:
    _check_precision(args.precision)
    a = load_dcmx(args.input)
    s = svd(a, **_svd_kwargs(args))
    for value in s.sigma:
        print(format_dual(value, args.precision), file=stdout)
    print(f"rank {s.rank_t}", file=stdout)
    print(f"arank {s.arank_r}", file=stdout)
    if args.out:
        out = _outdir(args.out)
        save_dcmx(s.V, out / "V.dcmx")
        save_dcmx(s.U, out / "U.dcmx")
        save_dcmx(DCMatrix([s.sigma_std], [s.sigma_inf]), out / "sigma.dcmx")
    return EXIT_OK


def cmd_truncate(args, stdout) -> int:
    _check_precision(args.precision)
    a = load_dcmx(args.input)
    s = svd(a, **_svd_kwargs(args))
    limit = min(a.shape)
    bad = [k for k in args.k if k > limit]
    if bad:
        raise UsageError(f"--k values {bad} exceed min(m, n) = {limit}")
    out = _outdir(args.out) if args.out else None
    for k in sorted(set(args.k)):
        err = lowrank_error(s, k)
        print(f"k={k} error {format_dual(err, args.precision)}", file=stdout)
        if out is not None:
            save_dcmx(truncate(s, k), out / f"A_k{k}.dcmx")
    return EXIT_OK


def cmd_verify_examples(args, stdout) -> int:
    _check_precision(args.precision)
    failed = 0
    for case in CASES:
        report = run_case(case, tol=args.tol)
        tol = case.tol if args.tol is None else args.tol
        status = "PASS" if report.passed else "FAIL"
        failed += not report.passed
        extra = ""
        if report.rank is not None:
            extra = f" rank={report.rank} arank={report.arank}"
        print(f"{status} {case.name} ({case.kind}) max_err={report.max_error:.3g} tol={tol:g}{extra}", file=stdout)
        for st, inf in zip(report.got_std, report.got_inf):
            print(f"    {format_dual(DualNumber(float(st), float(inf)), args.precision)}", file=stdout)
    print(f"{len(CASES) - failed}/{len(CASES)} examples passed", file=stdout)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_image(args, stdout) -> int:
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers must be positive")
    img_std = read_pgm(args.std_image)
    img_inf = read_pgm(args.inf_image) if args.inf_image else img_std
    limit = min(img_std.pixels.shape)
    bad = [k for k in args.k if k > limit]
    if bad:
        raise UsageError(f"--k values {bad} exceed the image size {limit}")
    run = compress(img_std, img_inf, args.k, solver=args.solver, workers=args.workers)
    out = _outdir(args.out)
    csv = format_csv(run.results)
    with open(out / "errors.csv", "w", encoding="ascii", newline="\n") as fh:
        fh.write(csv)
    for r in run.results:
        write_pgm(r.image_std, out / f"recon_std_k{r.k}.pgm", binary=not args.ascii)
        write_pgm(r.image_inf, out / f"recon_inf_k{r.k}.pgm", binary=not args.ascii)
        print(f"k={r.k} relative error {format_dual(r.error)}", file=stdout)
    print(f"wrote {out / 'errors.csv'}", file=stdout)
    return EXIT_OK


def cmd_synth_image(args, stdout) -> int:
    if args.size < 1:
        raise UsageError("--size must be positive")
    write_pgm(synthetic_image(args.size, args.seed), args.output)
    print(f"wrote {args.output}", file=stdout)
    return EXIT_OK


COMMANDS = {
    "svd": cmd_svd,
    "truncate": cmd_truncate,
    "verify-examples": cmd_verify_examples,
    "image": cmd_image,
    "synth-image": cmd_synth_image,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        print(f"dclinalg: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (DualAlgebraError, OSError, ValueError) as exc:
        name = type(exc).__name__
        print(f"dclinalg: {name}: {exc}", file=stderr)
        return EXIT_DATA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
