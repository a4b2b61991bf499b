"""Command-line interface: ``verify``, ``sweep`` and ``infer``.

Exit codes: 0 success, 1 a check/validation failed (or, with --strict, the
solver did not converge), 2 bad usage or unreadable/invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bell, entanglement, linalg, solver, verification

CSV_COLUMNS = (
    "b",
    "x",
    "f_j1",
    "f_j2",
    "e1_j1",
    "e1_j2",
    "e2_j1",
    "e2_j2",
    "variance",
    "sep_j1",
    "sep_j2",
    "entropy_j1",
    "entropy_j2",
)

ROW_TOL = 1e-12


@dataclass(frozen=True)
class SweepRow:
    b: float
    x: float
    f_j1: float
    f_j2: float
    e1_j1: float
    e1_j2: float
    e2_j1: float
    e2_j2: float
    variance: float
    sep_j1: bool
    sep_j2: bool
    entropy_j1: float
    entropy_j2: float


def _fmt(value: float) -> str:
    return format(float(value) + 0.0, ".12g")  # +0.0 normalizes negative zero


def _fmt_bool(value: bool) -> str:
    return "true" if value else "false"


def compute_row(b: float, x: float) -> SweepRow:
    rho_one = bell.to_density_matrix(bell.jaynes_b(b))
    rho_two = bell.to_density_matrix(bell.jaynes_bx(b, x))
    f_one = bell.largest_eigenvalue_j1(b)
    f_two = bell.largest_eigenvalue_j2(b, x)
    return SweepRow(
        b=b,
        x=x,
        f_j1=f_one,
        f_j2=f_two,
        e1_j1=entanglement.eof_bell_diagonal(f_one),
        e1_j2=entanglement.eof_bell_diagonal(f_two),
        e2_j1=entanglement.ree_bell_diagonal(f_one),
        e2_j2=entanglement.ree_bell_diagonal(f_two),
        variance=bell.variance_x(x),
        sep_j1=entanglement.is_ppt_separable(rho_one),
        sep_j2=entanglement.is_ppt_separable(rho_two),
        entropy_j1=linalg.von_neumann_entropy(rho_one),
        entropy_j2=linalg.von_neumann_entropy(rho_two),
    )


def sweep_rows(
    b_min: float, b_max: float, b_steps: int, x_steps: int
) -> list[SweepRow]:
    """Closed-form rows over b in [b_min, b_max] and x in [2b-1, 1]."""
    if not 0.5 <= b_min <= b_max <= 1.0:
        raise ValueError(
            f"need 0.5 <= b-min <= b-max <= 1, got b-min={b_min!r}, b-max={b_max!r}"
        )
    if b_steps < 1 or x_steps < 1:
        raise ValueError(
            f"step counts must be positive, got b-steps={b_steps!r}, x-steps={x_steps!r}"
        )
    rows = []
    for b in np.linspace(b_min, b_max, b_steps):
        b = float(b)
        for x in np.linspace(2.0 * b - 1.0, 1.0, x_steps):
            x = float(x)
            if not bell.admissible(b, x):
                continue  # guard against float drift at the interval edge
            rows.append(compute_row(b, x))
    return rows


def render_sweep(rows: list[SweepRow]) -> bytes:
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(
            ",".join(
                (
                    _fmt(row.b),
                    _fmt(row.x),
                    _fmt(row.f_j1),
                    _fmt(row.f_j2),
                    _fmt(row.e1_j1),
                    _fmt(row.e1_j2),
                    _fmt(row.e2_j1),
                    _fmt(row.e2_j2),
                    _fmt(row.variance),
                    _fmt_bool(row.sep_j1),
                    _fmt_bool(row.sep_j2),
                    _fmt(row.entropy_j1),
                    _fmt(row.entropy_j2),
                )
            )
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def validate_sweep_file(path: str | Path) -> int:
    """Re-read a sweep CSV and re-check the row invariants on the printed
    values; returns the row count or raises ValueError."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines or lines[0] != ",".join(CSV_COLUMNS):
        raise ValueError("missing or wrong header row")
    for number, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ValueError(
                f"row {number}: expected {len(CSV_COLUMNS)} fields, got {len(parts)}"
            )
        values: dict[str, float | bool] = {}
        for key, part in zip(CSV_COLUMNS, parts):
            if key in ("sep_j1", "sep_j2"):
                if part not in ("true", "false"):
                    raise ValueError(
                        f"row {number}: {key} must be true/false, got {part!r}"
                    )
                values[key] = part == "true"
            else:
                try:
                    values[key] = float(part)
                except ValueError as exc:
                    raise ValueError(
                        f"row {number}: {key} is not a number: {part!r}"
                    ) from exc
        if values["f_j1"] < values["f_j2"] - ROW_TOL:
            raise ValueError(f"row {number}: f_j1 >= f_j2 violated")
        if values["e1_j1"] < values["e1_j2"] - ROW_TOL:
            raise ValueError(f"row {number}: e1_j1 >= e1_j2 violated")
        if values["e2_j1"] < values["e2_j2"] - ROW_TOL:
            raise ValueError(f"row {number}: e2_j1 >= e2_j2 violated")
        if values["entropy_j2"] > values["entropy_j1"] + ROW_TOL:
            raise ValueError(f"row {number}: entropy_j1 >= entropy_j2 violated")
    return len(lines) - 1


def cmd_sweep(
    b_min: float, b_max: float, b_steps: int, x_steps: int, out_path: str | Path
) -> int:
    try:
        rows = sweep_rows(b_min, b_max, b_steps, x_steps)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data = render_sweep(rows)
    try:
        Path(out_path).write_bytes(data)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return 2
    try:
        count = validate_sweep_file(out_path)
    except ValueError as exc:
        print(f"error: written file failed row validation: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {count} rows to {out_path}")
    return 0


class ConstraintFileError(ValueError):
    """A constraint file failed to parse or validate."""


def parse_constraint_file(
    text: str, source: str = "<string>"
) -> tuple[solver.ConstraintSet, tuple[str, ...]]:
    """Parse the JSON constraint format into a ConstraintSet plus names.

    Expected shape::

        {
          "dimension": 4,
          "observables": [{"name": "B", "matrix": [[re, im], ... 16 pairs]}],
          "targets": [0.75]
        }

    Matrices are row-major lists of [re, im] pairs and must be Hermitian.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConstraintFileError(
            f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConstraintFileError(f"{source}: top level must be a JSON object")
    missing = {"dimension", "observables", "targets"} - raw.keys()
    if missing:
        raise ConstraintFileError(
            f"{source}: missing field(s): {', '.join(sorted(missing))}"
        )
    dimension = raw["dimension"]
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise ConstraintFileError(
            f"{source}: 'dimension' must be a positive integer, got {dimension!r}"
        )
    observables = raw["observables"]
    targets = raw["targets"]
    if not isinstance(observables, list):
        raise ConstraintFileError(f"{source}: 'observables' must be a list")
    if not isinstance(targets, list) or not all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in targets
    ):
        raise ConstraintFileError(f"{source}: 'targets' must be a list of numbers")
    if len(observables) != len(targets):
        raise ConstraintFileError(
            f"{source}: {len(observables)} observables but {len(targets)} targets"
        )
    names: list[str] = []
    matrices: list[np.ndarray] = []
    for index, entry in enumerate(observables):
        where = f"{source}: observables[{index}]"
        if not isinstance(entry, dict) or set(entry) != {"name", "matrix"}:
            raise ConstraintFileError(
                f"{where}: must be an object with exactly 'name' and 'matrix'"
            )
        observable_name = entry["name"]
        if not isinstance(observable_name, str) or not observable_name:
            raise ConstraintFileError(f"{where}: 'name' must be a nonempty string")
        matrix = entry["matrix"]
        expected = dimension * dimension
        if not isinstance(matrix, list) or len(matrix) != expected:
            got = len(matrix) if isinstance(matrix, list) else type(matrix).__name__
            raise ConstraintFileError(
                f"{where}: 'matrix' must be {expected} [re, im] pairs "
                f"(row-major {dimension}x{dimension}), got {got}"
            )
        flat = []
        for position, pair in enumerate(matrix):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(
                    isinstance(v, (int, float)) and not isinstance(v, bool)
                    for v in pair
                )
            ):
                raise ConstraintFileError(
                    f"{where}: matrix entry {position} must be a [re, im] number pair"
                )
            flat.append(complex(pair[0], pair[1]))
        mat = np.array(flat, dtype=complex).reshape(dimension, dimension)
        defect = linalg.hermiticity_defect(mat)
        if defect > 1e-12:
            raise ConstraintFileError(
                f"{where} ({observable_name}): not Hermitian (deviation {defect:.3e})"
            )
        names.append(observable_name)
        matrices.append(mat)
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise ConstraintFileError(
            f"{source}: duplicate observable name(s): {', '.join(duplicates)}"
        )
    try:
        constraints = solver.ConstraintSet(
            tuple(matrices), tuple(float(t) for t in targets), dim=dimension
        )
    except ValueError as exc:
        raise ConstraintFileError(f"{source}: {exc}") from exc
    return constraints, tuple(names)


def cmd_infer(path: str | Path, strict: bool = False, precision: int = 6) -> int:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return 2
    try:
        constraints, names = parse_constraint_file(text, source=str(path))
    except ConstraintFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    outcome = solver.solve(constraints)
    print(f"status: {outcome.status}")
    print(f"iterations: {outcome.iterations}")
    if len(constraints):
        print("constraints:")
        rows = zip(
            names, constraints.targets, outcome.multipliers, outcome.residuals
        )
        for observable_name, target, multiplier, residual in rows:
            print(
                f"  {observable_name}: target {_fmt(target)}"
                f"  multiplier {multiplier:+.{precision}f}"
                f"  residual {residual:+.3e}"
            )
    else:
        print("constraints: (none)")
    print(f"entropy: {linalg.von_neumann_entropy(outcome.state):.{precision}f} nats")
    print(f"state ({constraints.dim}x{constraints.dim}):")
    for row in outcome.state:
        cells = "  ".join(
            f"{z.real:+.{precision}f}{z.imag:+.{precision}f}j" for z in row
        )
        print(f"  [{cells}]")
    if constraints.dim == 4:
        measures = entanglement.report(outcome.state)
        print("entanglement:")
        print(f"  concurrence: {measures.concurrence:.{precision}f}")
        print(f"  e1: {measures.e1:.{precision}f} nats")
        e2 = "n/a" if measures.e2 is None else f"{measures.e2:.{precision}f} nats"
        print(f"  e2: {e2}")
        f = "n/a" if measures.f is None else f"{measures.f:.{precision}f}"
        print(f"  f: {f}")
        print(f"  ppt_separable: {_fmt_bool(measures.ppt_separable)}")
    if outcome.status != solver.CONVERGED:
        worst = (
            float(np.max(np.abs(outcome.residuals))) if len(constraints) else 0.0
        )
        print(
            f"warning: solver stopped with status {outcome.status} "
            f"(max residual {worst:.3e})",
            file=sys.stderr,
        )
        return 1 if strict else 0
    return 0


def cmd_verify() -> int:
    results = verification.run_all()
    failures = 0
    for index, result in enumerate(results, start=1):
        tag = "PASS" if result.passed else "FAIL"
        if not result.passed:
            failures += 1
        print(f"[{index:2d}/{len(results)}] {tag}  {result.name}: {result.detail}")
    if failures:
        print(f"{failures} of {len(results)} reproduction checks FAILED")
        return 1
    print(f"all {len(results)} reproduction checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmaxent",
        description=(
            "Maximum-entropy state inference under expectation-value "
            "constraints, with a two-qubit CHSH case study."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser(
        "verify", help="run every reproduction check; exit 0 iff all pass"
    )
    sweep = sub.add_parser("sweep", help="write the closed-form (b, x) sweep as CSV")
    sweep.add_argument("--b-min", type=float, required=True, help="lowest <B> (>= 0.5)")
    sweep.add_argument("--b-max", type=float, required=True, help="highest <B> (<= 1)")
    sweep.add_argument(
        "--b-steps", type=int, required=True, help="number of <B> grid points"
    )
    sweep.add_argument(
        "--x-steps", type=int, required=True, help="number of <X> points per <B>"
    )
    sweep.add_argument("--out", required=True, help="output CSV path")
    infer = sub.add_parser(
        "infer", help="run the maximum-entropy solver on a JSON constraint file"
    )
    infer.add_argument(
        "--constraints", required=True, help="path to the JSON constraint file"
    )
    infer.add_argument(
        "--strict",
        action="store_true",
        help="exit 1 when the solver does not converge",
    )
    infer.add_argument(
        "--precision", type=int, default=6, help="printed digits (default 6)"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify()
    if args.command == "sweep":
        return cmd_sweep(args.b_min, args.b_max, args.b_steps, args.x_steps, args.out)
    return cmd_infer(args.constraints, strict=args.strict, precision=args.precision)
