"""Command-line interface: ``qcoh <command> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 dimension mismatch, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import entropy, io, verify
from .coherence import chain_split, computational_basis, fourier_basis, theorem1_split
from .correlations import BellDiagonalParams, bd_report, bell_diagonal, bell_spectrum, discord_oracle
from .duality import duality_budget
from .errors import DimensionMismatch, QCohError
from .figures import FIGURES, figure_csv, fmt
from .qstate import Basis

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_MALFORMED = 2
EXIT_DIMENSION = 3
EXIT_IO = 4

SEED_ENV = "QCOH_SEED"


class _IOFailure(Exception):
    pass


def resolve_basis(choice: str, dim: int) -> Basis:
    """``computational``, ``fourier`` or a path to a basis JSON file."""
    if choice == "computational":
        return computational_basis(dim)
    if choice == "fourier":
        return fourier_basis(dim)
    try:
        b = io.load_basis(choice)
    except OSError as exc:
        raise _IOFailure(f"cannot read basis file {choice!r}: {exc.strerror or exc}") from None
    if b.dim != dim:
        raise DimensionMismatch(f"basis {choice!r} has dim {b.dim}, state has dim {dim}")
    return b


def _load_state(path: str):
    try:
        return io.load_state(path)
    except OSError as exc:
        raise _IOFailure(f"cannot read state file {path!r}: {exc.strerror or exc}") from None


def _emit(doc: dict, args) -> None:
    if getattr(args, "format", "json") == "csv":
        flat = {k: v for k, v in doc.items() if not isinstance(v, (list, dict))}
        text = ",".join(flat) + "\n" + ",".join(
            str(v).lower() if isinstance(v, bool) else fmt(v) if isinstance(v, float) else str(v)
            for v in flat.values()
        ) + "\n"
    else:
        text = json.dumps(doc, indent=2) + "\n"
    _write(text, args.out)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {out!r}: {exc.strerror or exc}") from None


def cmd_compute(args) -> int:
    rho = _load_state(args.state)
    b = resolve_basis(args.basis, rho.dim)
    split = theorem1_split(rho, b)
    _emit(
        {
            "dim": rho.dim,
            "entropy": entropy.von_neumann(rho),
            "bi_coherence": split.total,
            "basis_coherence": split.basis_part,
            "residual": split.residual,
        },
        args,
    )
    return EXIT_OK


def cmd_decompose(args) -> int:
    rho = _load_state(args.state)
    bases = [resolve_basis(s, rho.dim) for s in args.bases]
    rep = chain_split(rho, bases)
    doc = {"dim": rho.dim, "bases": list(args.bases), **rep.as_dict()}
    doc["sum_error"] = abs(rep.total - sum(rep.contributions) - rep.residual)
    if args.format == "csv":
        lines = ["step,basis,contribution,residual"]
        for k, (s, c, r) in enumerate(zip(args.bases, rep.contributions, rep.residuals), 1):
            lines.append(f"{k},{s},{fmt(c)},{fmt(r)}")
        _write("\n".join(lines) + "\n", args.out)
    else:
        _emit(doc, args)
    return EXIT_OK


def cmd_duality(args) -> int:
    rho = _load_state(args.state)
    b = resolve_basis(args.basis, rho.dim)
    _emit({"dim": rho.dim, **duality_budget(rho, b).as_dict()}, args)
    return EXIT_OK


def _parse_c(tokens: list[str]) -> BellDiagonalParams:
    parts = [t for tok in tokens for t in tok.split(",") if t.strip()]
    if len(parts) != 3:
        raise QCohError(f"--c needs exactly three correlations c1 c2 c3, got {len(parts)}")
    try:
        vals = [float(t) for t in parts]
    except ValueError:
        raise QCohError(f"--c values must be real numbers, got {parts}") from None
    return BellDiagonalParams(*vals)


def cmd_bell_diagonal(args) -> int:
    params = _parse_c(args.c)
    rep = bd_report(params)
    doc = {"c": list(params.as_tuple()), "spectrum": [float(x) for x in bell_spectrum(params)], **rep.as_dict()}
    if args.grid:
        doc["discord_oracle"] = discord_oracle(bell_diagonal(params), args.grid)
    _emit(doc, args)
    return EXIT_OK


def cmd_figure(args) -> int:
    _write(figure_csv(args.which), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    summary = verify.run(seed=args.seed, trials=args.trials, grid=args.grid or verify.DEFAULT_GRID)
    _write(json.dumps(summary, indent=2) + "\n", args.out)
    return EXIT_OK if summary["passed"] else EXIT_VERIFY_FAILED


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text) if text.lstrip("-").isdigit() else None
    if v is None or v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return verify.DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise QCohError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choice: bool = True):
        p.add_argument("--out", help="write output here instead of stdout")
        if fmt_choice:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("compute", help="coherence split of a state in one basis")
    p.add_argument("--state", required=True)
    p.add_argument("--basis", default="computational")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("decompose", help="telescoping split along several bases")
    p.add_argument("--state", required=True)
    p.add_argument("--bases", nargs="+", required=True)
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("duality", help="wave / particle / entanglement budget")
    p.add_argument("--state", required=True)
    p.add_argument("--basis", default="computational")
    common(p)
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("bell-diagonal", help="closed-form report for a Bell-diagonal state")
    p.add_argument("--c", nargs="+", required=True, metavar="C", help="c1 c2 c3 (or c1,c2,c3)")
    p.add_argument("--grid", type=_nonneg_int, default=0, help="also run the discord oracle on this grid")
    common(p)
    p.set_defaults(func=cmd_bell_diagonal)

    p = sub.add_parser("figure", help="write figure data as CSV")
    p.add_argument("which", choices=sorted(FIGURES))
    p.add_argument("--out")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run every property suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=_positive_int, default=verify.DEFAULT_TRIALS)
    p.add_argument("--grid", type=_positive_int, default=verify.DEFAULT_GRID)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_MALFORMED
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except _IOFailure as exc:
        print(f"qcoh: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except DimensionMismatch as exc:
        print(f"qcoh: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except QCohError as exc:
        print(f"qcoh: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
