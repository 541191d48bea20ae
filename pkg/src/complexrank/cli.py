"""Command line interface: rank, encode, cluster, experiment.

Exit codes: 0 on success, 1 for usage errors (bad flags or arguments),
2 for data or validation errors (malformed input, schema mismatches).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cluster import kmeans, purity_accuracy, run_experiment
from .coding import (
    CodedMatrix,
    EncodeMode,
    coded_matrix_to_json_dict,
    encode_dataset,
)
from .dataset import (
    AttributeSchema,
    Column,
    DataError,
    Dataset,
    Role,
    cars_csv_path,
    cars_schema_path,
    parse_csv,
)
from .ranking import ranks


class UsageError(Exception):
    """A runtime condition that is really a misuse of the command line."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags by default; this tool reserves 2
    # for data errors, so usage problems exit 1 instead.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {value}")
    return value


def _mode(text: str) -> EncodeMode:
    try:
        return EncodeMode(text)
    except ValueError:
        valid = ", ".join(m.value for m in EncodeMode)
        raise argparse.ArgumentTypeError(f"unknown mode {text!r} (choose from: {valid})") from None


def _conditions(text: str) -> list[EncodeMode]:
    modes = []
    for token in text.split(","):
        token = token.strip()
        if token:
            modes.append(_mode(token))
    if not modes:
        raise argparse.ArgumentTypeError("at least one condition is required")
    return modes


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="complexrank",
        description="Complex-number frequency ranks for nominal data.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_io(p, *, input_required=True, schema_required=False):
        p.add_argument("--input", type=Path, required=input_required, help="CSV input path")
        p.add_argument(
            "--schema",
            type=Path,
            required=schema_required,
            help="JSON schema path ({'columns': [{'name', 'role'}]})",
        )
        p.add_argument(
            "--missing-as-category",
            metavar="TOKEN",
            help="treat empty nominal cells as this token instead of failing",
        )
        p.add_argument("--output", type=Path, help="also write the JSON result to this file")

    p_rank = sub.add_parser("rank", parents=[], help="tied ranks of one numeric column")
    add_io(p_rank)
    p_rank.add_argument("--column", required=True, help="numeric column to rank")
    p_rank.add_argument("--json", action="store_true", help="print a JSON array of ranks")

    p_encode = sub.add_parser("encode", help="code a dataset into a complex matrix")
    add_io(p_encode, schema_required=True)
    p_encode.add_argument("--mode", type=_mode, default=EncodeMode.COMBINED,
                          help="combined|complex|numeric|nominal|adhoc|onehot")
    fmt = p_encode.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print the JSON document (default)")
    fmt.add_argument("--table", action="store_true", help="print a readable table instead")

    p_cluster = sub.add_parser("cluster", help="k-means over an encoded dataset")
    add_io(p_cluster, schema_required=True)
    p_cluster.add_argument("--mode", type=_mode, default=EncodeMode.COMBINED)
    p_cluster.add_argument("--k", type=_positive_int,
                           help="cluster count (default: number of decision labels)")
    p_cluster.add_argument("--seed", type=_seed, default=0)
    p_cluster.add_argument("--json", action="store_true", help="print JSON instead of text")

    p_exp = sub.add_parser("experiment", help="repeated clustering across encodings")
    add_io(p_exp, input_required=False)
    p_exp.add_argument("--mode", type=_mode, help=argparse.SUPPRESS)  # ignored; kept for symmetry
    p_exp.add_argument("--repeats", type=_positive_int, default=20)
    p_exp.add_argument("--seed", type=_seed, default=0, help="master seed")
    p_exp.add_argument(
        "--conditions",
        type=_conditions,
        default=list(EncodeMode(m) for m in ("adhoc", "numeric", "nominal", "combined")),
        help="comma-separated encode modes (default: adhoc,numeric,nominal,combined)",
    )
    p_exp.add_argument("--json", action="store_true", help="print the JSON report instead of the table")

    return parser


def _load_dataset(args, schema: AttributeSchema) -> Dataset:
    text = _read_text(args.input)
    return parse_csv(text, schema, missing_as_category=args.missing_as_category)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_schema(path: Path) -> AttributeSchema:
    return AttributeSchema.from_json(_read_text(path))


def _emit(args, text: str, json_text: str | None) -> None:
    sys.stdout.write(text)
    if getattr(args, "output", None) and json_text is not None:
        args.output.write_text(json_text, encoding="utf-8")


def _format_real(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def format_complex(z: complex) -> str:
    """Render a complex cell the way the tables do: 2.5, -2, -1+1.73i."""
    if z.imag == 0:
        return _format_real(z.real)
    sign = "+" if z.imag > 0 else "-"
    return f"{_format_real(z.real)}{sign}{_format_real(abs(z.imag))}i"


def cmd_rank(args) -> int:
    if args.schema is not None:
        schema = _load_schema(args.schema)
    else:
        # No schema given: everything but the target column is treated as
        # free text so the file still parses.
        text = _read_text(args.input)
        header = [h.strip() for h in text.splitlines()[0].split(",")] if text else []
        if args.column not in header:
            raise DataError(f"unknown column: {args.column!r}")
        schema = AttributeSchema(
            tuple(
                Column(name, Role.NUMERIC if name == args.column else Role.NOMINAL)
                for name in header
            )
        )
    dataset = _load_dataset(args, schema)
    if schema.column(args.column).role is not Role.NUMERIC:
        raise DataError(f"column {args.column!r} is not numeric")
    values = [float(v) for v in dataset.column(args.column)]
    ranked = ranks(values)
    json_text = json.dumps(ranked) + "\n"
    if args.json:
        _emit(args, json_text, json_text)
    else:
        lines = [f"{_format_real(v)}\t{_format_real(r)}" for v, r in zip(values, ranked)]
        _emit(args, "\n".join(lines) + "\n", json_text)
    return 0


def _encode_table(matrix: CodedMatrix) -> str:
    headers = [c.name for c in matrix.columns]
    rows = [[format_complex(z) for z in row] for row in matrix.data.tolist()]
    if matrix.decision is not None:
        headers.append("(decision)")
        for row, label in zip(rows, matrix.decision):
            row.append(label)
    widths = [
        max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)
    ]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for r in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def cmd_encode(args) -> int:
    dataset = _load_dataset(args, _load_schema(args.schema))
    matrix = encode_dataset(dataset, args.mode)
    doc = {"mode": args.mode.value, **coded_matrix_to_json_dict(matrix)}
    json_text = json.dumps(doc, indent=2) + "\n"
    if args.table:
        _emit(args, _encode_table(matrix), json_text)
    else:
        _emit(args, json_text, json_text)
    return 0


def cmd_cluster(args) -> int:
    dataset = _load_dataset(args, _load_schema(args.schema))
    from .space import standardize

    matrix = standardize(encode_dataset(dataset, args.mode))
    labels = dataset.decision_labels()
    k = args.k
    if k is None:
        if labels is None:
            raise UsageError("--k is required when the schema has no decision column")
        k = len(set(labels))
    result = kmeans(matrix, k, seed=args.seed)
    assignments = result.assignments.tolist()
    doc = {
        "mode": args.mode.value,
        "k": k,
        "seed": args.seed,
        "assignments": assignments,
        "inertia": result.inertia,
        "iterations": result.iterations,
    }
    # injective purity needs at least as many clusters as labels; with a
    # forced smaller k the score is undefined, so it is simply omitted
    score_labels = labels if labels is not None and k >= len(set(labels)) else None
    if score_labels is not None:
        doc["accuracy"] = purity_accuracy(assignments, score_labels)
    json_text = json.dumps(doc, indent=2) + "\n"
    if args.json:
        _emit(args, json_text, json_text)
        return 0
    lines = [f"assignments: {' '.join(str(a) for a in assignments)}"]
    for c in range(k):
        members = [str(i + 1) for i, a in enumerate(assignments) if a == c]
        lines.append(f"cluster {c} ({len(members)} rows): {' '.join(members)}")
    lines.append(f"inertia: {result.inertia:.6f}")
    lines.append(f"iterations: {result.iterations}")
    if score_labels is not None:
        lines.append(f"accuracy: {doc['accuracy']:.2f}")
    _emit(args, "\n".join(lines) + "\n", json_text)
    return 0


def cmd_experiment(args) -> int:
    input_path = args.input if args.input is not None else cars_csv_path()
    schema_path = args.schema if args.schema is not None else cars_schema_path()
    schema = _load_schema(schema_path)
    dataset = parse_csv(
        _read_text(input_path), schema, missing_as_category=args.missing_as_category
    )
    report = run_experiment(
        dataset,
        conditions=args.conditions,
        repeats=args.repeats,
        master_seed=args.seed,
    )
    json_text = report.to_json()
    if args.json:
        _emit(args, json_text, json_text)
    else:
        _emit(args, report.render_table(), json_text)
    return 0


_COMMANDS = {
    "rank": cmd_rank,
    "encode": cmd_encode,
    "cluster": cmd_cluster,
    "experiment": cmd_experiment,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"complexrank: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, ValueError) as exc:
        print(f"complexrank: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
