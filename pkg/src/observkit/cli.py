"""Command-line interface.

Subcommands:
    analyze      observability certificate for a model file
    simulate     free or forced trajectory, written as CSV traces
    reconstruct  initial state from an output trace
    cardio       build and certify the mass-spring table model

Machine-readable documents go to stdout (or --out); status and verdict
lines go to stderr.  Exit codes: 0 success/observable, 2 negative
domain verdict (not observable, singular Gramian), 1 usage or I/O
error.  Set OBSERVKIT_NO_COLOR to disable styled stderr output.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from observkit.cardio import CardioParams, build_cardio_model
from observkit.fileio import (
    ParseError,
    dump_report,
    dump_vector_doc,
    load_model,
    load_trace,
    save_model,
    save_trace,
)
from observkit.linalg import SingularMatrixError
from observkit.lti import StateSpaceModel, simulate_forced, simulate_free
from observkit.observability import (
    ObservabilityReport,
    SingularGramianError,
    analyze,
    reconstruct_initial_state,
    reconstruction_normal_equations,
)

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; this CLI reserves 2 for
    domain verdicts, so usage problems are rerouted to exit 1."""

    def error(self, message):
        raise _UsageError(message)


def _style(text: str, color: str) -> str:
    if os.environ.get("OBSERVKIT_NO_COLOR") or not sys.stderr.isatty():
        return text
    codes = {"green": "32", "red": "31", "yellow": "33"}
    return f"\x1b[{codes[color]}m{text}\x1b[0m"


def _status(text: str) -> None:
    print(text, file=sys.stderr)


def _emit_doc(doc_text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(doc_text)
    else:
        sys.stdout.write(doc_text)


def _parse_x0(text: str) -> np.ndarray:
    try:
        return np.array([float(f) for f in text.split(",")])
    except ValueError:
        raise _UsageError(f"--x0 must be a comma-separated number list, got {text!r}") from None


def _report_verdict(report: ObservabilityReport, name: str) -> int:
    """Print the human verdict to stderr; return the exit code."""
    observable = report.kalman_observable and report.gramian_observable
    if not report.consistent:
        _status(_style(
            "warning: Kalman rank and Gramian verdicts disagree; "
            "re-run with tighter tolerances or a longer horizon", "yellow"))
    label = name or "model"
    horizon = report.gramian.horizon
    if observable:
        _status(_style(
            f"{label}: completely observable over [0, {horizon:g}] "
            f"(rank {report.kalman_rank}/{report.rank_required}, "
            f"min Gramian eigenvalue {report.gramian.min_pivot_or_eig:.3e})", "green"))
        return 0
    _status(_style(
        f"{label}: NOT completely observable over [0, {horizon:g}] "
        f"(rank {report.kalman_rank}/{report.rank_required})", "red"))
    return 2


def _cmd_analyze(args) -> int:
    model = load_model(args.model)
    report = analyze(model, args.horizon, rank_tol=args.rank_tol,
                     pd_tol=args.pd_tol, intervals=args.intervals)
    _emit_doc(dump_report(report, model.name), args.out)
    return _report_verdict(report, model.name)


def _load_input_trace(args, model: StateSpaceModel):
    if args.input is None:
        return None
    u = load_trace(args.input)
    if u.width != model.p:
        raise ParseError(f"{args.input}: input trace has width {u.width}, "
                         f"model expects {model.p}")
    return u


def _cmd_simulate(args) -> int:
    model = load_model(args.model)
    x0 = _parse_x0(args.x0)
    u = _load_input_trace(args, model)
    if u is not None:
        if args.dt is not None or args.steps is not None or args.t0 is not None:
            raise _UsageError("--dt/--steps/--t0 conflict with --input; "
                              "the input trace fixes the grid")
        xs, ys = simulate_forced(model, x0, u)
    else:
        if args.dt is None or args.steps is None:
            raise _UsageError("--dt and --steps are required without --input")
        t0 = 0.0 if args.t0 is None else args.t0
        xs, ys = simulate_free(model, x0, t0=t0, dt=args.dt, steps=args.steps)
    x_path = f"{args.out}_x.csv"
    y_path = f"{args.out}_y.csv"
    save_trace(xs, x_path)
    save_trace(ys, y_path)
    _status(f"wrote {x_path} ({xs.samples.shape[0]} samples, width {xs.width})")
    _status(f"wrote {y_path} ({ys.samples.shape[0]} samples, width {ys.width})")
    return 0


def _cmd_reconstruct(args) -> int:
    model = load_model(args.model)
    y = load_trace(args.trace)
    u = _load_input_trace(args, model)
    x0 = reconstruct_initial_state(model, y, u, horizon=args.horizon)
    gram, _ = reconstruction_normal_equations(model, y, u)
    condition = float(np.linalg.cond(gram))
    doc = dump_vector_doc("x0", x0, {
        "horizon": y.duration,
        "gramian_condition": condition,
    })
    _emit_doc(doc, args.out)
    _status(_style(
        f"reconstructed x0 over [0, {y.duration:g}] "
        f"(Gramian condition {condition:.3e})", "green"))
    return 0


def _cmd_cardio(args) -> int:
    try:
        params = CardioParams(mass=args.mass, damping=args.damping,
                              stiffness=args.stiffness)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    model = build_cardio_model(params)
    if args.out:
        save_model(model, args.out)
        _status(f"wrote {args.out}")
    report = analyze(model, args.horizon, rank_tol=args.rank_tol,
                     pd_tol=args.pd_tol, intervals=args.intervals)
    sys.stdout.write(dump_report(report, model.name))
    return _report_verdict(report, model.name)


def _add_tolerance_flags(sub) -> None:
    sub.add_argument("--rank-tol", type=float, default=None,
                     help="relative rank tolerance (default: eps * max dimension)")
    sub.add_argument("--pd-tol", type=float, default=1e-10,
                     help="relative eigenvalue threshold for positive definiteness")
    sub.add_argument("--intervals", type=int, default=200,
                     help="Simpson intervals for the Gramian quadrature (even)")


def build_parser() -> _Parser:
    parser = _Parser(prog="observkit",
                     description="Observability certificates, simulation, and "
                                 "initial-state reconstruction for LTI models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="certify observability of a model file")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--horizon", type=float, default=1.0,
                   help="Gramian window length T (default 1)")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("simulate", help="simulate a trajectory to CSV traces")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--x0", required=True, help="initial state, comma-separated")
    p.add_argument("--input", default=None,
                   help="input trace CSV (zero-order hold); fixes the time grid")
    p.add_argument("--t0", type=float, default=None, help="start time (default 0)")
    p.add_argument("--dt", type=float, default=None, help="time step")
    p.add_argument("--steps", type=int, default=None, help="number of steps")
    p.add_argument("--out", required=True,
                   help="output prefix; writes PREFIX_x.csv and PREFIX_y.csv")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("reconstruct",
                       help="recover the initial state from an output trace")
    p.add_argument("trace", help="output trace CSV")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--input", default=None,
                   help="input trace CSV if the response was forced")
    p.add_argument("--horizon", type=float, default=None,
                   help="expected window length, checked against the trace")
    p.add_argument("--out", default=None, help="write the result here instead of stdout")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("cardio",
                       help="build and certify the mass-spring table model")
    p.add_argument("--mass", type=float, required=True, help="combined mass M, kg")
    p.add_argument("--damping", type=float, default=0.0, help="damping beta, N s/m")
    p.add_argument("--stiffness", type=float, required=True, help="stiffness gamma, N/m")
    p.add_argument("--horizon", type=float, default=1.0,
                   help="Gramian window length T (default 1)")
    p.add_argument("--out", default=None, help="also write the model JSON here")
    _add_tolerance_flags(p)
    p.set_defaults(func=_cmd_cardio)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SingularGramianError as exc:
        print(_style("system unobservable at this horizon", "red"), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
