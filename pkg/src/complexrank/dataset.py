"""Tabular mixed data: column schemas, validated datasets, CSV ingestion.

Each column is a numeric feature, a nominal (categorical) feature, or the
single decision column that carries class labels. Ingestion is strict by
design: the schema is always explicit, numbers use a '.' decimal separator
with no exponent forms, nominal tokens are compared byte-for-byte after
trimming, and every error names the 1-based row and column it came from.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

Cell = float | str

# Integer or plain decimal, optional sign. No exponents, no inf/nan.
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)")


class DataError(ValueError):
    """Input data violates its schema or the expected file format."""


class Role(Enum):
    NUMERIC = "numeric"
    NOMINAL = "nominal"
    DECISION = "decision"


@dataclass(frozen=True)
class Column:
    name: str
    role: Role


@dataclass(frozen=True)
class AttributeSchema:
    """Ordered column declarations for one table."""

    columns: tuple[Column, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", tuple(self.columns))
        names = [c.name for c in self.columns]
        for n in names:
            if not n or n.strip() != n:
                raise DataError(f"bad column name: {n!r}")
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise DataError(f"duplicate column name: {dup!r}")
        if sum(c.role is Role.DECISION for c in self.columns) > 1:
            raise DataError("at most one decision column is allowed")
        if not any(c.role in (Role.NUMERIC, Role.NOMINAL) for c in self.columns):
            raise DataError("schema needs at least one feature column")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[str, Role | str]]) -> "AttributeSchema":
        cols = tuple(Column(n, r if isinstance(r, Role) else Role(r)) for n, r in pairs)
        return cls(cols)

    @classmethod
    def from_json(cls, text: str) -> "AttributeSchema":
        """Load a schema from its JSON form: {"columns": [{"name", "role"}, ...]}."""
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataError(f"schema is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict) or not isinstance(doc.get("columns"), list):
            raise DataError('schema JSON must be an object with a "columns" list')
        pairs = []
        for i, entry in enumerate(doc["columns"]):
            if not isinstance(entry, dict) or "name" not in entry or "role" not in entry:
                raise DataError(f'schema column {i} needs "name" and "role"')
            try:
                role = Role(entry["role"])
            except ValueError:
                raise DataError(
                    f"schema column {i}: unknown role {entry['role']!r} "
                    f"(expected one of: numeric, nominal, decision)"
                ) from None
            pairs.append((str(entry["name"]), role))
        return cls.from_pairs(pairs)

    def to_json(self) -> str:
        doc = {"columns": [{"name": c.name, "role": c.role.value} for c in self.columns]}
        return json.dumps(doc, indent=2) + "\n"

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    @property
    def feature_columns(self) -> tuple[Column, ...]:
        return tuple(c for c in self.columns if c.role is not Role.DECISION)

    @property
    def decision_column(self) -> Column | None:
        for c in self.columns:
            if c.role is Role.DECISION:
                return c
        return None

    def index(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise DataError(f"unknown column: {name!r}")

    def column(self, name: str) -> Column:
        return self.columns[self.index(name)]


def _check_cell(value: Cell, role: Role, row: int, col: int, name: str) -> Cell:
    where = f"row {row}, column {col} ({name!r})"
    if role is Role.NUMERIC:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DataError(f"{where}: expected a number, got {value!r}")
        value = float(value)
        if not math.isfinite(value):
            raise DataError(f"{where}: number must be finite")
        return value
    if not isinstance(value, str) or not value:
        raise DataError(f"{where}: expected a non-empty token, got {value!r}")
    return value


@dataclass(frozen=True)
class Dataset:
    """An immutable table whose cells have been validated against a schema."""

    schema: AttributeSchema
    rows: tuple[tuple[Cell, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise DataError("dataset has no rows")
        width = len(self.schema.columns)
        checked = []
        for r, row in enumerate(self.rows, start=1):
            if len(row) != width:
                raise DataError(f"row {r}: expected {width} cells, found {len(row)}")
            cells = tuple(
                _check_cell(v, c.role, r, j, c.name)
                for j, (v, c) in enumerate(zip(row, self.schema.columns), start=1)
            )
            checked.append(cells)
        object.__setattr__(self, "rows", tuple(checked))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list[Cell]:
        """All cells of one column, in row order."""
        i = self.schema.index(name)
        return [row[i] for row in self.rows]

    def decision_labels(self) -> list[str] | None:
        col = self.schema.decision_column
        if col is None:
            return None
        return [str(v) for v in self.column(col.name)]

    def to_csv(self) -> str:
        """Serialize back to the strict CSV dialect parse_csv() accepts."""
        lines = [",".join(self.schema.names)]
        for r, row in enumerate(self.rows, start=1):
            parts = []
            for j, (v, c) in enumerate(zip(row, self.schema.columns), start=1):
                if c.role is Role.NUMERIC:
                    parts.append(_format_number(float(v), r, j, c.name))
                else:
                    s = str(v)
                    if "," in s or "\n" in s or "\r" in s:
                        raise DataError(
                            f"row {r}, column {j} ({c.name!r}): token {s!r} "
                            f"cannot be written without quoting"
                        )
                    parts.append(s)
            lines.append(",".join(parts))
        return "\n".join(lines) + "\n"


def _format_number(v: float, row: int, col: int, name: str) -> str:
    s = repr(v)
    if _NUMBER.fullmatch(s):
        return s
    # repr fell back to exponent form; spell the value out. The decimal
    # expansion of a binary double is finite, so this stays exact.
    s = f"{v:.1074f}".rstrip("0")
    if s.endswith("."):
        s += "0"
    if not _NUMBER.fullmatch(s):
        raise DataError(f"row {row}, column {col} ({name!r}): cannot serialize {v!r}")
    return s


def parse_csv(
    text: str,
    schema: AttributeSchema,
    *,
    missing_as_category: str | None = None,
) -> Dataset:
    """Parse strict comma-separated text against a schema.

    The first line must repeat the schema's column names in order. Cells
    are trimmed of surrounding whitespace; numeric cells must be plain
    integer or decimal literals. Empty nominal cells are rejected unless
    missing_as_category supplies a replacement token.
    """
    if text.startswith("﻿"):
        text = text[1:]
    lines = text.splitlines()
    if not lines:
        raise DataError("input is empty")
    header = [h.strip() for h in lines[0].split(",")]
    expected = list(schema.names)
    if header != expected:
        raise DataError(f"header mismatch: expected {expected}, found {header}")
    rows: list[tuple[Cell, ...]] = []
    width = len(schema.columns)
    for r, line in enumerate(lines[1:], start=1):
        parts = line.split(",")
        if len(parts) != width:
            raise DataError(
                f"row {r}: expected {width} cells, found {len(parts)} "
                f"(embedded commas are not supported)"
            )
        cells: list[Cell] = []
        for j, (raw, col) in enumerate(zip(parts, schema.columns), start=1):
            cell = raw.strip()
            where = f"row {r}, column {j} ({col.name!r})"
            if col.role is Role.NUMERIC:
                if not _NUMBER.fullmatch(cell):
                    raise DataError(f"{where}: {cell!r} is not a plain decimal number")
                cells.append(float(cell))
            else:
                if not cell:
                    if missing_as_category is None:
                        raise DataError(f"{where}: empty value")
                    cell = missing_as_category
                cells.append(cell)
        rows.append(tuple(cells))
    if not rows:
        raise DataError("no data rows")
    return Dataset(schema, tuple(rows))


_FIXTURES = Path(__file__).parent / "fixtures"


def cars_csv_path() -> Path:
    """Path of the bundled 10-car demo table."""
    return _FIXTURES / "cars.csv"


def cars_schema_path() -> Path:
    return _FIXTURES / "cars.schema.json"


def load_cars() -> Dataset:
    """The bundled car-lot table: 2 numeric, 4 nominal, 1 decision column."""
    schema = AttributeSchema.from_json(cars_schema_path().read_text(encoding="utf-8"))
    return parse_csv(cars_csv_path().read_text(encoding="utf-8"), schema)
