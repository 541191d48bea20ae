"""Complex-rank coding of nominal values, plus integer and one-hot baselines.

A nominal column is grouped into classes of identical tokens. A class seen
n times gets the real rank (n + 1) / 2, the average of the positions 1..n
its occurrences would take in a sorted list, so frequency alone fixes the
modulus. Classes that tie on frequency would collide on that axis, so the
k tied classes keep the shared modulus and are spread over the k-th roots
of unity: the class at tie-group position j (first occurrence order) is
rotated by exp(2*pi*i*j/k). Both ingredients stay recoverable: frequency
from the modulus (n = 2R - 1) and the tie-group size from the phase step.

Coded matrices hold every feature as a complex number. Plain numbers and
the baseline integer and one-hot codes simply have a zero imaginary part.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np

from .dataset import DataError, Dataset, Role


def base_rank(n: int) -> float:
    """Real rank of a class with n occurrences: the mean of positions 1..n."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"frequency must be an integer, got {n!r}")
    if n < 1:
        raise ValueError(f"frequency must be positive, got {n}")
    return (n + 1) / 2


def root_of_unity(j: int, k: int) -> complex:
    """exp(2*pi*i*j/k), exact on the four axis-aligned directions.

    Keeping the quarter-turn cases exact means codes with phase 0 or pi
    are exactly real in float arithmetic, not real plus a tiny epsilon.
    """
    if k < 1:
        raise ValueError(f"group size must be positive, got {k}")
    j %= k
    if (4 * j) % k == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[(4 * j) // k]
    angle = 2.0 * math.pi * j / k
    return complex(math.cos(angle), math.sin(angle))


@dataclass(frozen=True)
class ComplexRank:
    """One coded nominal class: modulus from frequency, phase from ties."""

    modulus: float
    phase: float
    group_index: int
    group_size: int
    value: complex


@dataclass(frozen=True)
class CodebookEntry:
    frequency: int
    rank: ComplexRank


@dataclass(frozen=True)
class NominalCodebook:
    """Token to complex rank mapping for one nominal attribute.

    Entries keep first-occurrence order, which is also the order that
    fixed each entry's position inside its frequency tie group.
    """

    attribute: str
    entries: Mapping[str, CodebookEntry]
    total: int

    def code(self, token: str) -> complex:
        try:
            return self.entries[token].rank.value
        except KeyError:
            raise DataError(
                f"token {token!r} is not in the codebook for {self.attribute!r}"
            ) from None

    def encode(self, values: Iterable[str]) -> list[complex]:
        return [self.code(v) for v in values]

    def to_json_dict(self) -> dict:
        entries = {}
        for token, e in self.entries.items():
            r = e.rank
            entries[token] = {
                "n": e.frequency,
                "modulus": r.modulus,
                "phase": r.phase,
                "j": r.group_index,
                "k": r.group_size,
                "re": r.value.real,
                "im": r.value.imag,
            }
        return {"attribute": self.attribute, "entries": entries}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "NominalCodebook":
        entries = {}
        total = 0
        for token, e in doc["entries"].items():
            rank = ComplexRank(
                modulus=float(e["modulus"]),
                phase=float(e["phase"]),
                group_index=int(e["j"]),
                group_size=int(e["k"]),
                value=complex(float(e["re"]), float(e["im"])),
            )
            entries[token] = CodebookEntry(int(e["n"]), rank)
            total += int(e["n"])
        return cls(str(doc["attribute"]), entries, total)


def build_codebook(values: Sequence[str], attribute: str = "") -> NominalCodebook:
    """Derive the complex rank of every distinct token in a column.

    Tokens are counted, classes sharing a frequency form a tie group, and
    within each group the phase index j follows first occurrence in the
    column. The input order therefore matters exactly as much as it does
    for the codes themselves and for nothing else.
    """
    tokens = list(values)
    if not tokens:
        raise ValueError("cannot build a codebook from an empty column")
    counts: dict[str, int] = {}
    for t in tokens:
        counts[t] = counts.get(t, 0) + 1
    groups: dict[int, list[str]] = {}
    for t, n in counts.items():
        groups.setdefault(n, []).append(t)
    placement = {}
    for group in groups.values():
        k = len(group)
        for j, t in enumerate(group):
            placement[t] = (j, k)
    entries = {}
    for t, n in counts.items():
        j, k = placement[t]
        modulus = base_rank(n)
        phase = 0.0 if k == 1 else 2.0 * math.pi * j / k
        value = modulus * root_of_unity(j, k)
        entries[t] = CodebookEntry(n, ComplexRank(modulus, phase, j, k, value))
    return NominalCodebook(attribute, entries, len(tokens))


def encode_column(values: Iterable[str], codebook: NominalCodebook) -> list[complex]:
    """Apply a codebook to a column; unknown tokens are an error."""
    return codebook.encode(values)


def _first_occurrence(values: Sequence[str]) -> list[str]:
    return list(dict.fromkeys(values))


def adhoc_codebook(values: Sequence[str]) -> dict[str, float]:
    """Baseline coding: consecutive integers 1, 2, ... by first occurrence."""
    distinct = _first_occurrence(values)
    if not distinct:
        raise ValueError("cannot build an ad hoc codebook from an empty column")
    return {t: float(i + 1) for i, t in enumerate(distinct)}


def onehot_encode(values: Sequence[str]) -> np.ndarray:
    """Baseline coding: standard basis vectors, one axis per distinct token.

    Returns an (N, m) float matrix where m is the number of distinct
    tokens in first-occurrence order. Any two different tokens end up at
    Euclidean distance sqrt(2).
    """
    distinct = _first_occurrence(values)
    if not distinct:
        raise ValueError("cannot one-hot encode an empty column")
    index = {t: i for i, t in enumerate(distinct)}
    out = np.zeros((len(values), len(distinct)))
    for r, t in enumerate(values):
        out[r, index[t]] = 1.0
    return out


class EncodeMode(Enum):
    """Feature selection and nominal coding scheme for a dataset.

    combined: numeric features plus complex-coded nominal features.
    complex: alias of combined.
    numeric: numeric features only.
    nominal: complex-coded nominal features only.
    adhoc: numeric features plus integer-coded nominal features.
    onehot: numeric features plus one-hot indicator blocks.
    """

    COMBINED = "combined"
    COMPLEX = "complex"
    NUMERIC = "numeric"
    NOMINAL = "nominal"
    ADHOC = "adhoc"
    ONEHOT = "onehot"


class ColumnSource(Enum):
    NUMERIC = "numeric"
    COMPLEX_CODED = "complex"
    ADHOC_CODED = "adhoc"
    ONE_HOT = "onehot"


@dataclass(frozen=True)
class CodedColumn:
    name: str
    source: ColumnSource


@dataclass(frozen=True)
class ColumnScaling:
    """Standardization parameters applied to one coded column."""

    name: str
    mean: complex
    sigma_re: float
    sigma_im: float


@dataclass(frozen=True, eq=False)
class CodedMatrix:
    """A fully numeric view of a dataset, one complex value per cell.

    The decision column never becomes a feature; its labels ride along
    for scoring. Codebooks and integer code maps record how each nominal
    column was turned into numbers.
    """

    columns: tuple[CodedColumn, ...]
    data: np.ndarray
    decision: tuple[str, ...] | None = None
    codebooks: tuple[NominalCodebook, ...] = ()
    adhoc_codes: dict[str, dict[str, float]] = field(default_factory=dict)
    scaling: tuple[ColumnScaling, ...] | None = None

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=np.complex128)
        if data.ndim != 2:
            raise ValueError(f"coded data must be 2-dimensional, got shape {data.shape}")
        if data.shape[1] != len(self.columns):
            raise ValueError(
                f"{len(self.columns)} column descriptors for {data.shape[1]} data columns"
            )
        if self.decision is not None and len(self.decision) != data.shape[0]:
            raise ValueError("decision labels must match the number of rows")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "columns", tuple(self.columns))
        if self.decision is not None:
            object.__setattr__(self, "decision", tuple(self.decision))

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    @property
    def n_columns(self) -> int:
        return self.data.shape[1]

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def column(self, name: str) -> np.ndarray:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return self.data[:, i]
        raise DataError(f"unknown coded column: {name!r}")


def encode_dataset(dataset: Dataset, mode: EncodeMode) -> CodedMatrix:
    """Turn a dataset into a coded matrix under the given mode.

    Columns keep their schema order; a one-hot block sits where its
    source column was. Modes that exist to exercise nominal coding
    (nominal, adhoc, onehot) require at least one nominal column, and
    numeric requires at least one numeric column.
    """
    if mode is EncodeMode.COMPLEX:
        mode = EncodeMode.COMBINED
    schema = dataset.schema
    numeric_cols = [c for c in schema.feature_columns if c.role is Role.NUMERIC]
    nominal_cols = [c for c in schema.feature_columns if c.role is Role.NOMINAL]
    if mode is EncodeMode.NUMERIC and not numeric_cols:
        raise DataError("mode 'numeric' needs at least one numeric column")
    if mode in (EncodeMode.NOMINAL, EncodeMode.ADHOC, EncodeMode.ONEHOT) and not nominal_cols:
        raise DataError(f"mode {mode.value!r} needs at least one nominal column")

    columns: list[CodedColumn] = []
    arrays: list[np.ndarray] = []
    codebooks: list[NominalCodebook] = []
    adhoc_codes: dict[str, dict[str, float]] = {}

    for col in schema.columns:
        if col.role is Role.DECISION:
            continue
        if col.role is Role.NUMERIC:
            if mode is EncodeMode.NOMINAL:
                continue
            cells = np.array([float(v) for v in dataset.column(col.name)])
            columns.append(CodedColumn(col.name, ColumnSource.NUMERIC))
            arrays.append(cells.astype(np.complex128))
            continue
        # nominal feature
        if mode is EncodeMode.NUMERIC:
            continue
        tokens = [str(v) for v in dataset.column(col.name)]
        if mode in (EncodeMode.COMBINED, EncodeMode.NOMINAL):
            cb = build_codebook(tokens, attribute=col.name)
            codebooks.append(cb)
            columns.append(CodedColumn(col.name, ColumnSource.COMPLEX_CODED))
            arrays.append(np.array(cb.encode(tokens), dtype=np.complex128))
        elif mode is EncodeMode.ADHOC:
            codes = adhoc_codebook(tokens)
            adhoc_codes[col.name] = codes
            columns.append(CodedColumn(col.name, ColumnSource.ADHOC_CODED))
            arrays.append(np.array([codes[t] for t in tokens], dtype=np.complex128))
        elif mode is EncodeMode.ONEHOT:
            block = onehot_encode(tokens)
            for i, token in enumerate(_first_occurrence(tokens)):
                columns.append(CodedColumn(f"{col.name}={token}", ColumnSource.ONE_HOT))
                arrays.append(block[:, i].astype(np.complex128))
        else:  # pragma: no cover - modes are exhausted above
            raise ValueError(f"unhandled mode: {mode}")

    data = np.column_stack(arrays)
    labels = dataset.decision_labels()
    return CodedMatrix(
        columns=tuple(columns),
        data=data,
        decision=tuple(labels) if labels is not None else None,
        codebooks=tuple(codebooks),
        adhoc_codes=adhoc_codes,
    )


def coded_matrix_to_json_dict(matrix: CodedMatrix) -> dict:
    """JSON form of a coded matrix; complex cells become re/im pairs."""
    doc: dict = {
        "columns": [{"name": c.name, "source": c.source.value} for c in matrix.columns],
        "rows": [
            [{"re": z.real, "im": z.imag} for z in row] for row in matrix.data.tolist()
        ],
        "decision": list(matrix.decision) if matrix.decision is not None else None,
        "codebooks": [cb.to_json_dict() for cb in matrix.codebooks],
        "adhoc_codes": matrix.adhoc_codes,
        "scaling": None,
    }
    if matrix.scaling is not None:
        doc["scaling"] = [
            {
                "name": s.name,
                "mean": {"re": s.mean.real, "im": s.mean.imag},
                "sigma": {"re": s.sigma_re, "im": s.sigma_im},
            }
            for s in matrix.scaling
        ]
    return doc


def coded_matrix_from_json_dict(doc: dict) -> CodedMatrix:
    """Rebuild a coded matrix from its JSON form."""
    columns = tuple(
        CodedColumn(str(c["name"]), ColumnSource(c["source"])) for c in doc["columns"]
    )
    data = np.array(
        [[complex(cell["re"], cell["im"]) for cell in row] for row in doc["rows"]],
        dtype=np.complex128,
    )
    decision = tuple(doc["decision"]) if doc.get("decision") is not None else None
    codebooks = tuple(NominalCodebook.from_json_dict(cb) for cb in doc.get("codebooks", []))
    adhoc_codes = {
        name: {t: float(v) for t, v in codes.items()}
        for name, codes in doc.get("adhoc_codes", {}).items()
    }
    scaling = None
    if doc.get("scaling") is not None:
        scaling = tuple(
            ColumnScaling(
                name=str(s["name"]),
                mean=complex(s["mean"]["re"], s["mean"]["im"]),
                sigma_re=float(s["sigma"]["re"]),
                sigma_im=float(s["sigma"]["im"]),
            )
            for s in doc["scaling"]
        )
    return CodedMatrix(
        columns=columns,
        data=data,
        decision=decision,
        codebooks=codebooks,
        adhoc_codes=adhoc_codes,
        scaling=scaling,
    )


def codebook_to_json(codebook: NominalCodebook) -> str:
    return json.dumps(codebook.to_json_dict(), indent=2) + "\n"
