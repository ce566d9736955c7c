"""Command line interface.

Exit codes: 0 success, 1 domain-negative result (kernel witness,
disconnected graph), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .adapted import BudgetExceededError, adapt_to_fiber, power_moves
from .expansion import SubsetLimitError, edge_expansion_exact
from .fiber import enumerate_fiber, fiber_size_upper_bound, fit_growth_degree, ray_growth
from .formats import FormatError, parse_matrix, parse_moves, parse_vector
from .graph import DisconnectedGraphError, build_fiber_graph, diameter, is_connected, transition_matrix
from .linalg import KernelMeetsOrthantError, certify_kernel_positivity
from .models import KernelViolationError, build_model, unit_ray
from .spectral import loop_removed, slem
from .walks import MODES, WalkConfig, run_walk

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

CURVE_COLUMNS = ["i", "fiber_size", "slem_conventional", "slem_adapted", "adapted_basis_size", "diameter"]


class UsageError(Exception):
    pass


def fmt_float(x: float) -> str:
    return f"{x:.12g}"


def fmt_frac(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# model resolution
# ---------------------------------------------------------------------------

def _parse_rhs(text: str) -> tuple[int, ...]:
    if os.path.exists(text):
        return parse_vector(text)
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"cannot read right-hand side {text!r}") from None


def _resolve(args):
    """Return (matrix, moves, rhs) from either --model or file arguments."""
    if args.model:
        model = build_model(args.model, args.params or [])
        A, M = model.matrix, model.markov_basis
        if args.rhs is not None:
            b = _parse_rhs(args.rhs)
        elif args.ray is not None:
            b = tuple(args.ray * x for x in unit_ray(model))
        else:
            raise UsageError("give --rhs or --ray")
    else:
        if not args.matrix:
            raise UsageError("give --model or --matrix")
        A = parse_matrix(args.matrix).certified()
        M = parse_moves(args.moves, A) if getattr(args, "moves", None) else None
        if args.rhs is None:
            raise UsageError("give --rhs")
        b = _parse_rhs(args.rhs)
    if len(b) != A.m:
        raise UsageError(f"right-hand side has {len(b)} entries, matrix has {A.m} rows")
    return A, M, b


def _add_model_args(p, moves=True):
    p.add_argument("--model", choices=["a_d", "independence", "hemmecke"])
    p.add_argument("--params", type=int, nargs="*", help="model parameters")
    p.add_argument("--matrix", help="matrix file")
    if moves:
        p.add_argument("--moves", help="move file")
    p.add_argument("--rhs", help="right-hand side: vector file or comma separated integers")
    p.add_argument("--ray", type=int, help="use i times the model's standard right-hand side")


def _require_moves(M):
    if M is None:
        raise UsageError("give --moves or --model")
    return M


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args, out) -> int:
    A = parse_matrix(args.matrix)
    try:
        lam = certify_kernel_positivity(A)
    except KernelMeetsOrthantError as exc:
        print("witness: " + " ".join(str(x) for x in exc.witness), file=out)
        return EXIT_NEGATIVE
    print("certificate: " + " ".join(fmt_frac(x) for x in lam), file=out)
    return EXIT_OK


def cmd_fiber(args, out) -> int:
    A, _, b = _resolve(args)
    F = enumerate_fiber(A, b)
    print(f"fiber_size = {len(F)}", file=out)
    if args.list:
        for p in F.points:
            print(" ".join(str(x) for x in p), file=out)
    if args.bound:
        print(f"size_bound = {fmt_frac(fiber_size_upper_bound(A, b))}", file=out)
    if args.growth:
        counts = ray_growth(A, b, args.growth)
        print("ray_growth = " + " ".join(str(c) for c in counts), file=out)
        if len(counts) >= 5:
            fit = fit_growth_degree(counts[1:])
            print(f"growth_degree = {fit.degree if fit.conclusive else 'inconclusive'}", file=out)
    return EXIT_OK


def cmd_graph(args, out) -> int:
    A, M, b = _resolve(args)
    M = _require_moves(M)
    F = enumerate_fiber(A, b)
    G = build_fiber_graph(F, M)
    connected = is_connected(G)
    print(f"nodes = {G.n}", file=out)
    print(f"degree = {G.degree}", file=out)
    print(f"connected = {'yes' if connected else 'no'}", file=out)
    status = EXIT_OK
    lam = None
    if args.slem or args.bounds:
        lam = slem(transition_matrix(G))
        print(f"slem = {fmt_float(lam)}", file=out)
    if args.diam:
        try:
            print(f"diam = {diameter(G)}", file=out)
        except DisconnectedGraphError as exc:
            print(f"diam = undefined ({exc})", file=out)
            status = EXIT_NEGATIVE
    h = None
    if args.expansion or args.bounds:
        try:
            h = edge_expansion_exact(G).value
            print(f"h = {fmt_frac(h)}", file=out)
        except SubsetLimitError as exc:
            print(f"h = skipped ({exc})", file=out)
    if args.bounds and connected:
        if h is not None:
            low = 1 - Fraction(2, G.degree) * h
            ok = lam >= float(low) - 1e-9
            print(f"expansion_bound: slem {fmt_float(lam)} >= 1 - (2/{G.degree}) h = {fmt_frac(low)}"
                  f" [{'ok' if ok else 'VIOLATED'}]", file=out)
        rep = loop_removed(G)
        print(f"loopless_slem = {fmt_float(rep.slem_loopless)} (bipartite: {'yes' if rep.bipartite else 'no'})",
              file=out)
        print(f"loop_removal_bound: 1 - slem' = {fmt_float(rep.gap_loopless)} <= "
              f"{G.degree} (1 - slem) = {fmt_float(G.degree * rep.gap)}"
              f" [{'ok' if rep.inequality_holds() else 'VIOLATED'}]", file=out)
    return status


def cmd_adapt(args, out) -> int:
    A, M, b = _resolve(args)
    M = _require_moves(M)
    try:
        res = adapt_to_fiber(A, b, M, budget=args.budget)
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=out)
        return EXIT_NEGATIVE
    print(f"fiber_size = {len(res.fiber)}", file=out)
    print(f"diameter = {res.diameter}", file=out)
    print(f"adapted_basis_size = {len(res.adapted)}", file=out)
    print("complete = yes", file=out)
    print(f"slem_closed_form = {fmt_frac(res.closed_form_slem)}", file=out)
    print(f"slem = {fmt_float(slem(transition_matrix(res.graph)))}", file=out)
    return EXIT_OK


def cmd_walk(args, out) -> int:
    A, M, b = _resolve(args)
    M = _require_moves(M)
    F = enumerate_fiber(A, b)
    if args.adapted:
        G = adapt_to_fiber(A, b, M, budget=args.budget).graph
    else:
        G = build_fiber_graph(F, M)
    cfg = WalkConfig(mode=args.mode, steps=args.steps, seed=args.seed,
                     record_every=args.record_every, start=args.start)
    trace = run_walk(G, cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(trace.to_csv())
    print(f"seed = {trace.seed}", file=out)
    print(f"steps = {trace.steps}", file=out)
    print(f"rejection_rate = {fmt_float(trace.rejection_rate)}", file=out)
    print(f"final_tv = {fmt_float(trace.final_tv)}", file=out)
    return EXIT_OK


def slem_curve_row(model_name: str, params: Sequence[int], i: int, budget: int) -> dict:
    """One row of the conventional-versus-adapted SLEM table."""
    model = build_model(model_name, params)
    b = tuple(i * x for x in unit_ray(model))
    F = enumerate_fiber(model.matrix, b)
    G = build_fiber_graph(F, model.markov_basis)
    row = {
        "i": i,
        "fiber_size": len(F),
        "slem_conventional": fmt_float(slem(transition_matrix(G))),
    }
    diam = diameter(G)
    row["diameter"] = diam
    try:
        adapted = power_moves(model.markov_basis, diam, budget)
    except BudgetExceededError:
        row["slem_adapted"] = "error"
        row["adapted_basis_size"] = "error"
        return row
    H = build_fiber_graph(F, adapted.moves)
    row["slem_adapted"] = fmt_float(slem(transition_matrix(H)))
    row["adapted_basis_size"] = len(adapted)
    return row


def cmd_experiment(args, out) -> int:
    if args.experiment != "slem-curve":
        raise UsageError(f"unknown experiment {args.experiment}")
    if args.imax < 1 or args.imin < 1 or args.imin > args.imax:
        raise UsageError("need 1 <= imin <= imax")
    params = args.params or ([3] if args.model == "a_d" else [2] if args.model == "independence" else [1])
    build_model(args.model, params)  # validate before spawning work
    i_values = range(args.imin, args.imax + 1)
    jobs = [(args.model, params, i, args.budget) for i in i_values]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(job) for job in jobs]
    target = open(args.out, "w", encoding="utf-8", newline="") if args.out else out
    try:
        writer = csv.DictWriter(target, fieldnames=CURVE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            target.close()
    return EXIT_OK


def _row_job(job):
    return slem_curve_row(*job)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fiberwalk", description="Random walks on fibers with Markov bases.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="certify ker(A) meets N^d only in 0")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fiber", help="enumerate a fiber")
    _add_model_args(p, moves=False)
    p.add_argument("--list", action="store_true", help="print the points")
    p.add_argument("--bound", action="store_true", help="print the certificate size bound")
    p.add_argument("--growth", type=int, metavar="IMAX", help="fiber sizes along the ray i*b")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("graph", help="fiber graph quantities")
    _add_model_args(p)
    p.add_argument("--slem", action="store_true")
    p.add_argument("--diam", action="store_true")
    p.add_argument("--expansion", action="store_true")
    p.add_argument("--bounds", action="store_true", help="check the expansion and loop-removal inequalities")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("adapt", help="adapt the move set to the fiber diameter")
    _add_model_args(p)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.set_defaults(func=cmd_adapt)

    p = sub.add_parser("walk", help="simulate a walk and write its TV trace")
    _add_model_args(p)
    p.add_argument("--mode", choices=MODES, default="simple")
    p.add_argument("--steps", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--record-every", type=int, default=100)
    p.add_argument("--adapted", action="store_true", help="walk with the adapted move set")
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--out", help="CSV path for the trace")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("experiment", help="reproducible experiments")
    p.add_argument("experiment", choices=["slem-curve"])
    p.add_argument("--model", choices=["a_d", "independence", "hemmecke"], default="a_d")
    p.add_argument("--params", type=int, nargs="*")
    p.add_argument("--imin", type=int, default=1)
    p.add_argument("--imax", type=int, default=15)
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (FormatError, UsageError, KernelViolationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KernelMeetsOrthantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
