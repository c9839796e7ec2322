"""Command-line front end: parameter sweeps, iteration traces, verification.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error.
CSV output is UTF-8 with \\n line endings and shortest round-trip decimal
numbers, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from .cloners import apply_local_cloning, apply_nonlocal_cloning
from .entanglement import input_state, measures
from .iteration import IterationTrace, iterate
from .linalg import fidelity_pure

DEFAULT_POINTS = 201
DEFAULT_STEPS = 6
DEFAULT_ALPHA = math.pi / 4.0
DEFAULT_SEED = 12345

SWEEP_COLUMNS = (
    "cos_alpha",
    "e3_input",
    "e3_local",
    "e3_nonlocal",
    "e2_input",
    "e2_local",
    "e2_nonlocal",
    "f_local",
    "f_nonlocal",
)


@dataclass
class RunConfig:
    command: str
    points: int = DEFAULT_POINTS
    steps: int = DEFAULT_STEPS
    alpha: float = DEFAULT_ALPHA
    output_path: str | None = None
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.command not in ("sweep", "iterate", "verify"):
            raise ValueError(f"unknown command {self.command!r}")
        if self.points < 2:
            raise ValueError(f"points must be at least 2, got {self.points}")
        if self.steps < 1:
            raise ValueError(f"steps must be at least 1, got {self.steps}")


@dataclass
class SweepRow:
    cos_alpha: float
    e3_input: float
    e3_local: float
    e3_nonlocal: float
    e2_input: float
    e2_local: float
    e2_nonlocal: float
    f_local: float
    f_nonlocal: float


def _fmt(value: float) -> str:
    # repr of a Python float is the shortest decimal that round-trips.
    return repr(float(value))


def compute_sweep_rows(points: int) -> list[SweepRow]:
    """One row per cos(alpha) grid point, everything via the simulated channels."""
    rows = []
    for x in np.linspace(0.0, 1.0, points):
        alpha = math.acos(float(x))
        psi = input_state(alpha)
        rho_in = psi.density_matrix()
        local = apply_local_cloning(rho_in).copies
        nonlocal_ = apply_nonlocal_cloning(rho_in).copies
        rep_in = measures(rho_in)
        rep_l = measures(local)
        rep_n = measures(nonlocal_)
        rows.append(
            SweepRow(
                cos_alpha=float(x),
                e3_input=rep_in.e3,
                e3_local=rep_l.e3,
                e3_nonlocal=rep_n.e3,
                e2_input=rep_in.e2[(1, 2)],
                e2_local=rep_l.e2[(1, 2)],
                e2_nonlocal=rep_n.e2[(1, 2)],
                f_local=fidelity_pure(psi, local),
                f_nonlocal=fidelity_pure(psi, nonlocal_),
            )
        )
    return rows


def format_sweep_csv(rows: list[SweepRow]) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, col)) for col in SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"


def format_iteration_table(trace: IterationTrace) -> str:
    """Human-readable decay table, four decimals per entry."""
    header = ["step"] + [str(s.step) for s in trace.steps]
    row_e3 = ["E3"] + [f"{s.e3:.4f}" for s in trace.steps]
    row_e2 = ["E2"] + [f"{s.e2:.4f}" for s in trace.steps]
    lines = []
    for cells in (header, row_e3, row_e2):
        lines.append(cells[0].ljust(4) + " ".join(c.rjust(6) for c in cells[1:]))
    return "\n".join(lines) + "\n"


def format_iteration_csv(trace: IterationTrace) -> str:
    lines = ["step,e3,e2"]
    for s in trace.steps:
        lines.append(f"{s.step},{_fmt(s.e3)},{_fmt(s.e2)}")
    return "\n".join(lines) + "\n"


def _write_or_print(text: str, path: str | None) -> int:
    if path is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 2
    return 0


def run_sweep(cfg: RunConfig) -> int:
    rows = compute_sweep_rows(cfg.points)
    return _write_or_print(format_sweep_csv(rows), cfg.output_path)


def run_iterate(cfg: RunConfig) -> int:
    trace = iterate(cfg.alpha, cfg.steps)
    sys.stdout.write(format_iteration_table(trace))
    if cfg.output_path is not None:
        return _write_or_print(format_iteration_csv(trace), cfg.output_path)
    return 0


def run_verify(cfg: RunConfig) -> int:
    from .verification import informational_notes, run_all

    results = run_all(seed=cfg.seed)
    total = len(results)
    for i, result in enumerate(results, start=1):
        status = "PASS" if result.passed else "FAIL"
        print(f"[{i:2d}/{total}] {status}  {result.name}: {result.detail}")
    for note in informational_notes():
        print(note)
    n_passed = sum(r.passed for r in results)
    print(f"{n_passed}/{total} checks passed")
    return 0 if n_passed == total else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triclone",
        description=(
            "Three-qubit entanglement under local and non-local universal "
            "quantum cloning: sweeps, iterated-cloning traces, verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser(
        "sweep", help="CSV of measures and fidelities over a cos(alpha) grid"
    )
    p_sweep.add_argument(
        "--points", type=int, default=DEFAULT_POINTS, help="grid size (default 201)"
    )
    p_sweep.add_argument(
        "--output", default=None, help="CSV path (default: stdout)"
    )

    p_iter = sub.add_parser(
        "iterate", help="entanglement decay under repeated non-local cloning"
    )
    p_iter.add_argument(
        "--alpha",
        type=float,
        default=DEFAULT_ALPHA,
        help="input-state angle in radians (default pi/4)",
    )
    p_iter.add_argument(
        "--steps", type=int, default=DEFAULT_STEPS, help="cloning steps (default 6)"
    )
    p_iter.add_argument(
        "--output", default=None, help="also write a full-precision CSV here"
    )

    p_verify = sub.add_parser("verify", help="run the verification suite")
    p_verify.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed for the randomized property checks (default 12345)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        if ns.command == "sweep":
            cfg = RunConfig(
                command="sweep", points=ns.points, output_path=ns.output
            )
            return run_sweep(cfg)
        if ns.command == "iterate":
            cfg = RunConfig(
                command="iterate",
                alpha=ns.alpha,
                steps=ns.steps,
                output_path=ns.output,
            )
            return run_iterate(cfg)
        cfg = RunConfig(command="verify", seed=ns.seed)
        return run_verify(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
