"""Command-line front end.

Subcommands
    wdf      evaluate one Wigner grid to CSV
    table1   uncertainty products over an l-grid to CSV
    verify   run the self-verification suites
    figure   build one canonical figure (CSV + SVG)

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 numerical failure (the message names the violated invariant). Every file
output gets an adjacent .manifest.txt and is written atomically; identical
commands at identical precision produce byte-identical CSV.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .errors import DomainError, PdemWignerError
from .eigenstates import Case, QuantumState
from .massmodel import Branch, MassProfile
from .moments import (UncertaintyResult, default_working_digits, moment_set)
from .output import RunManifest, atomic_write_text, grid_csv, table_csv
from .reference import REFERENCE_L_GRID
from .wigner import evaluate_grid

_TABLE_ALPHA = 1.0  # products in the canonical pair do not depend on alpha


def _threads_default() -> int:
    env = os.environ.get("PDEM_WIGNER_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _parse_range(text: str, flag: str):
    parts = text.split(":")
    if len(parts) != 2:
        raise DomainError(f"{flag} expects lo:hi, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise DomainError(f"{flag} expects numbers, got {text!r}")
    if not lo < hi:
        raise DomainError(f"{flag} needs lo < hi, got {text!r}")
    return lo, hi


def _parse_l_list(text: str):
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"--l expects a comma-separated number list, got {text!r}")
    if not values:
        raise DomainError("--l list is empty")
    return values


def _cmd_wdf(args) -> int:
    state = QuantumState(Case(args.case), args.n, args.l,
                         MassProfile(args.alpha, Branch.MONOTONE))
    x_range = _parse_range(args.x, "--x")
    p_range = _parse_range(args.p, "--p")
    manifest = RunManifest(
        command="wdf",
        parameters={"case": args.case, "n": args.n, "l": args.l,
                    "alpha": args.alpha, "x": args.x, "p": args.p,
                    "nx": args.nx, "np": args.np, "threads": args.threads},
        version=__version__, working_digits="16 (double)")
    grid = evaluate_grid(state, x_range, p_range, args.nx, args.np)
    atomic_write_text(args.out, grid_csv(state, grid))
    manifest.add_output(args.out)
    manifest.write_adjacent(args.out)
    print(f"wrote {args.out} ({args.nx * args.np} rows)")
    return 0


def _table_states(l_values, n_max):
    states = []
    for l in l_values:
        for case in (Case.LI, Case.LIII):
            for n in range(n_max + 1):
                states.append(QuantumState(case, n, l,
                                           MassProfile(_TABLE_ALPHA,
                                                       Branch.MONOTONE)))
    return states


def _table_cell(job):
    state, digits = job
    ms = moment_set(state, prec_digits=digits)
    return UncertaintyResult(state.case, state.n, state.l,
                             ms.coord_spread, ms.momentum_spread, ms.product)


def _cmd_table1(args) -> int:
    l_values = (_parse_l_list(args.l) if args.l else list(REFERENCE_L_GRID))
    if args.n_max < 0:
        raise DomainError("--n-max must be >= 0")
    digits = args.digits
    if digits is not None and digits < 16:
        raise DomainError("--digits must be at least 16")
    states = _table_states(l_values, args.n_max)
    jobs = [(s, digits) for s in states]
    manifest = RunManifest(
        command="table1",
        parameters={"l": ",".join(repr(v) for v in l_values),
                    "n_max": args.n_max,
                    "digits": "auto" if digits is None else digits,
                    "threads": args.threads},
        version=__version__,
        working_digits=("auto (per state)" if digits is None else str(digits)))
    # mpmath precision state is per process, so cells fan out to processes
    if args.threads > 1 and len(jobs) > 8:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_table_cell, jobs, chunksize=8))
    else:
        results = [_table_cell(j) for j in jobs]
    label = "auto" if digits is None else str(digits)
    atomic_write_text(args.out, table_csv(results, label, l_values))
    manifest.add_output(args.out)
    peak = max(default_working_digits(s) for s in states)
    manifest.add_note(f"peak working digits {peak if digits is None else digits}")
    manifest.write_adjacent(args.out)
    print(f"wrote {args.out} ({len(results)} rows)")
    return 0


def _cmd_verify(args) -> int:
    from .suites import run_suites
    rows = run_suites(args.suite, threads=args.threads)
    width = max(len(f"{r.suite}: {r.name}") for r in rows)
    for r in rows:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark}  {f'{r.suite}: {r.name}':<{width}}  {r.detail}")
    failed = sum(not r.passed for r in rows)
    print(json.dumps({"suite": args.suite, "checks": len(rows),
                      "failed": failed}))
    return 1 if failed else 0


def _cmd_figure(args) -> int:
    from .figures import render_figure
    manifest = RunManifest(
        command="figure",
        parameters={"id": args.id, "out_dir": args.out_dir,
                    "threads": args.threads},
        version=__version__, working_digits="16 (double)")
    paths, notes = render_figure(args.id, args.out_dir)
    for note in notes:
        manifest.add_note(note)
    for path in paths:
        manifest.add_output(path)
    manifest.write_adjacent(paths[0])
    print("wrote " + " ".join(paths))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdem-wigner",
        description="Phase-space toolkit for the generalized-Laguerre "
                    "families of the exponential-mass problem.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--threads", type=int, default=None,
                        help="worker count (default: PDEM_WIGNER_THREADS "
                             "or the hardware count)")
    sub = parser.add_subparsers(dest="command", required=True)

    wdf = sub.add_parser("wdf", help="evaluate one Wigner grid to CSV")
    wdf.add_argument("--case", required=True, choices=["I", "III"])
    wdf.add_argument("--n", required=True, type=int)
    wdf.add_argument("--l", required=True, type=float)
    wdf.add_argument("--alpha", required=True, type=float)
    wdf.add_argument("--x", required=True, help="x window as lo:hi")
    wdf.add_argument("--p", required=True, help="p window as lo:hi")
    wdf.add_argument("--nx", required=True, type=int)
    wdf.add_argument("--np", required=True, type=int)
    wdf.add_argument("--out", default="wdf.csv")
    wdf.set_defaults(func=_cmd_wdf)

    table = sub.add_parser("table1", help="uncertainty products to CSV")
    table.add_argument("--l", default=None,
                       help="comma-separated l values (default: the "
                            "published grid)")
    table.add_argument("--n-max", dest="n_max", type=int, default=8)
    table.add_argument("--digits", type=int, default=None,
                       help="fixed working precision (default: per state)")
    table.add_argument("--out", default="table1.csv")
    table.set_defaults(func=_cmd_table1)

    verify = sub.add_parser("verify", help="run self-verification suites")
    verify.add_argument("--suite", default="all",
                        choices=["wigner", "moments", "weyl", "b1",
                                 "se-residual", "all"])
    verify.set_defaults(func=_cmd_verify)

    figure = sub.add_parser("figure", help="build one canonical figure")
    figure.add_argument("id", type=int, choices=[1, 2, 3, 4])
    figure.add_argument("--out-dir", dest="out_dir", default=".")
    figure.set_defaults(func=_cmd_figure)
    return parser


def _merge_window_flags(argv):
    """Join --x/--p with their values so windows like -2:6 survive argparse."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--x", "--p"):
            value = next(it, None)
            out.append(tok if value is None else f"{tok}={value}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = parser.parse_args(_merge_window_flags(argv))
    if args.threads is None:
        args.threads = _threads_default()
    args.threads = max(1, args.threads)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except (PdemWignerError, ValueError) as exc:
        print(f"error: numerical failure ({type(exc).__name__}): {exc}",
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
