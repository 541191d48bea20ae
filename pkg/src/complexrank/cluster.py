"""Lloyd k-means over complex coordinates, purity scoring, experiments.

Complex matrices are clustered through their interleaved real view, so a
D-dimensional complex problem is literally the 2D-dimensional real one;
assignments, centroids, and inertia come out identical either way. The
experiment harness re-runs clustering under several encodings of the same
dataset and buckets purity accuracy into a compact summary table.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coding import CodedMatrix, EncodeMode, encode_dataset
from .dataset import DataError, Dataset
from .space import standardize

RNG_NOTE = "numpy.random.default_rng (PCG64)"
SEED_NOTE = "splitmix64 chain over (master_seed, condition_index, run_index)"

_M64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One step of the splitmix64 mixing function (public domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _M64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def derive_run_seed(master_seed: int, condition_index: int, run_index: int) -> int:
    """Deterministic per-run seed, decorrelated across conditions and runs."""
    s = splitmix64(master_seed & _M64)
    s = splitmix64(s ^ (condition_index & _M64))
    s = splitmix64(s ^ (run_index & _M64))
    return s


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    iterations: int
    seed: int | None


def _working_view(data: np.ndarray) -> tuple[np.ndarray, bool]:
    """Real matrix the algorithm actually runs on, plus a complex flag."""
    a = np.asarray(data)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-dimensional matrix, got shape {a.shape}")
    if np.iscomplexobj(a):
        a = np.ascontiguousarray(a, dtype=np.complex128)
        return a.view(np.float64), True
    return np.ascontiguousarray(a, dtype=np.float64), False


def kmeans(
    data: np.ndarray | CodedMatrix,
    k: int,
    seed: int = 0,
    max_iterations: int = 100,
    *,
    initial_centroids: np.ndarray | None = None,
    verify_monotone: bool = False,
) -> ClusteringResult:
    """Lloyd's algorithm with k distinct random rows as starting centroids.

    Points go to the nearest centroid, ties to the lowest cluster index,
    and centroids move to the arithmetic mean of their members. A cluster
    that empties is restarted on the point currently farthest from its
    own centroid. The loop stops when assignments repeat or after
    max_iterations passes. Everything is deterministic in (data, k, seed).

    initial_centroids bypasses the random start, e.g. to resume from a
    previous result. verify_monotone asserts that inertia never increases
    from one pass to the next, which is a property of the update rule and
    is exposed for tests.
    """
    if isinstance(data, CodedMatrix):
        data = data.data
    work, was_complex = _working_view(data)
    n = work.shape[0]
    if not isinstance(k, int) or isinstance(k, bool):
        raise ValueError(f"k must be an integer, got {k!r}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of rows ({n})")
    if max_iterations < 1:
        raise ValueError(f"max_iterations must be positive, got {max_iterations}")

    if initial_centroids is None:
        rng = np.random.default_rng(seed)
        start_rows = rng.choice(n, size=k, replace=False)
        centroids = work[start_rows].copy()
    else:
        init, init_complex = _working_view(initial_centroids)
        if init_complex != was_complex or init.shape != (k, work.shape[1]):
            raise ValueError("initial_centroids must be k rows matching the data layout")
        centroids = init.copy()

    assignments: np.ndarray | None = None
    previous_inertia = np.inf
    iterations = 0
    for _ in range(max_iterations):
        iterations += 1
        # squared Euclidean distance to every centroid, ties -> lowest index
        diff = work[:, None, :] - centroids[None, :, :]
        d2 = np.einsum("nkd,nkd->nk", diff, diff)
        new_assignments = np.argmin(d2, axis=1)

        point_d2 = d2[np.arange(n), new_assignments]
        for c in range(k):
            if np.any(new_assignments == c):
                continue
            # restart the empty cluster on the farthest point whose own
            # cluster can spare it
            sizes = np.bincount(new_assignments, minlength=k)
            eligible = sizes[new_assignments] > 1
            candidates = np.where(eligible, point_d2, -np.inf)
            p = int(np.argmax(candidates))
            new_assignments[p] = c
            centroids[c] = work[p]
            point_d2[p] = 0.0

        if verify_monotone:
            inertia_now = float(point_d2.sum())
            assert inertia_now <= previous_inertia * (1 + 1e-12) + 1e-12, (
                f"inertia increased: {previous_inertia} -> {inertia_now}"
            )
            previous_inertia = inertia_now

        if assignments is not None and np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
        for c in range(k):
            centroids[c] = work[assignments == c].mean(axis=0)

    assert assignments is not None
    diff = work - centroids[assignments]
    inertia = float(np.einsum("nd,nd->", diff, diff))
    if was_complex:
        centroids = centroids.view(np.complex128)
    centroids = centroids.copy()
    centroids.flags.writeable = False
    assignments = assignments.copy()
    assignments.flags.writeable = False
    return ClusteringResult(assignments, centroids, inertia, iterations, seed)


def purity_accuracy(
    assignments: Sequence[int],
    labels: Sequence[str],
    *,
    method: str = "injective",
) -> float:
    """Fraction of points whose cluster maps to their true label.

    The default method maximizes the matched fraction over injective
    cluster-to-label mappings, so two clusters never claim the same
    label. method="majority" instead lets every cluster vote its own
    majority label, which can exceed the injective score when clusters
    collapse onto one class.
    """
    assign = list(assignments)
    labs = list(labels)
    if len(assign) != len(labs):
        raise ValueError(f"length mismatch: {len(assign)} assignments, {len(labs)} labels")
    if not assign:
        raise ValueError("purity_accuracy() needs at least one point")
    clusters = sorted(set(assign))
    distinct = list(dict.fromkeys(labs))
    counts: dict[tuple[int, str], int] = {}
    for a, l in zip(assign, labs):
        counts[(a, l)] = counts.get((a, l), 0) + 1
    if method == "majority":
        best = sum(
            max(counts.get((c, l), 0) for l in distinct) for c in clusters
        )
        return best / len(assign)
    if method != "injective":
        raise ValueError(f"unknown method {method!r}, expected 'injective' or 'majority'")
    if len(distinct) > len(clusters):
        raise ValueError(
            f"{len(distinct)} labels cannot be matched injectively to {len(clusters)} clusters"
        )
    if len(clusters) > 10:
        raise ValueError("injective matching is brute force; use at most 10 clusters")
    best = 0
    for chosen in itertools.permutations(clusters, len(distinct)):
        matched = sum(counts.get((c, l), 0) for c, l in zip(chosen, distinct))
        best = max(best, matched)
    return best / len(assign)


ACCURACY_EDGES = (0.9, 0.8, 0.7, 0.6, 0.5)
BUCKET_KEYS = ("90", "80", "70", "60", "50", "below")


def bucket_accuracies(accuracies: Sequence[float]) -> dict[str, int]:
    """Count runs by the highest accuracy threshold they reach."""
    buckets = {key: 0 for key in BUCKET_KEYS}
    for a in accuracies:
        for edge, key in zip(ACCURACY_EDGES, BUCKET_KEYS):
            if a >= edge:
                buckets[key] += 1
                break
        else:
            buckets["below"] += 1
    return buckets


@dataclass(frozen=True)
class RunRecord:
    seed: int
    accuracy: float
    inertia: float
    iterations: int


@dataclass(frozen=True)
class ConditionResult:
    name: str
    runs: tuple[RunRecord, ...]
    buckets: dict[str, int]

    @property
    def accuracies(self) -> list[float]:
        return [r.accuracy for r in self.runs]


_CONDITION_LABELS = {
    "adhoc": "Numeric + ad hoc integer codes",
    "numeric": "Numeric only",
    "nominal": "Coded nominal only",
    "combined": "Numeric + coded nominal",
    "complex": "Numeric + coded nominal",
    "onehot": "Numeric + one-hot indicators",
}


@dataclass(frozen=True)
class ExperimentReport:
    master_seed: int
    repeats: int
    k: int
    conditions: tuple[ConditionResult, ...]

    def to_json_dict(self) -> dict:
        return {
            "master_seed": self.master_seed,
            "repeats": self.repeats,
            "k": self.k,
            "rng": {"generator": RNG_NOTE, "seed_derivation": SEED_NOTE},
            "conditions": [
                {
                    "name": c.name,
                    "runs": [
                        {
                            "seed": r.seed,
                            "accuracy": r.accuracy,
                            "inertia": r.inertia,
                            "iterations": r.iterations,
                        }
                        for r in c.runs
                    ],
                    "buckets": dict(c.buckets),
                }
                for c in self.conditions
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def render_table(self) -> str:
        """Accuracy bucket counts per condition, zeros shown as '-'."""
        headers = [">=90%", ">=80%", ">=70%", ">=60%", ">=50%", "<50%"]
        rows = []
        for c in self.conditions:
            label = _CONDITION_LABELS.get(c.name, c.name)
            cells = [str(c.buckets[key]) if c.buckets[key] else "-" for key in BUCKET_KEYS]
            rows.append([label] + cells)
        name_width = max(len("Condition"), *(len(r[0]) for r in rows))
        widths = [max(len(h), 5) for h in headers]
        lines = [
            f"Accuracy of {self.repeats} clustering runs per condition "
            f"(count of runs by highest threshold reached)"
        ]
        header = "Condition".ljust(name_width) + "  " + "  ".join(
            h.rjust(w) for h, w in zip(headers, widths)
        )
        lines.append(header)
        lines.append("-" * len(header))
        for r in rows:
            lines.append(
                r[0].ljust(name_width)
                + "  "
                + "  ".join(cell.rjust(w) for cell, w in zip(r[1:], widths))
            )
        return "\n".join(lines) + "\n"


DEFAULT_CONDITIONS = (
    EncodeMode.ADHOC,
    EncodeMode.NUMERIC,
    EncodeMode.NOMINAL,
    EncodeMode.COMBINED,
)


def run_experiment(
    dataset: Dataset,
    conditions: Sequence[EncodeMode] = DEFAULT_CONDITIONS,
    repeats: int = 20,
    master_seed: int = 0,
    max_iterations: int = 100,
) -> ExperimentReport:
    """Cluster one dataset repeatedly under several encodings and score purity.

    k is the number of distinct decision labels. Every condition is
    encoded, standardized per column, and clustered `repeats` times from
    seeds derived deterministically from (master_seed, condition index,
    run index), so a report is reproducible byte for byte.
    """
    labels = dataset.decision_labels()
    if labels is None:
        raise DataError("the experiment needs a decision column to score against")
    if repeats < 1:
        raise ValueError(f"repeats must be positive, got {repeats}")
    if not conditions:
        raise ValueError("at least one condition is required")
    k = len(set(labels))
    results = []
    for ci, mode in enumerate(conditions):
        matrix = standardize(encode_dataset(dataset, mode))
        runs = []
        for ri in range(repeats):
            seed = derive_run_seed(master_seed, ci, ri)
            result = kmeans(matrix, k, seed=seed, max_iterations=max_iterations)
            accuracy = purity_accuracy(result.assignments.tolist(), labels)
            runs.append(
                RunRecord(
                    seed=seed,
                    accuracy=accuracy,
                    inertia=result.inertia,
                    iterations=result.iterations,
                )
            )
        results.append(
            ConditionResult(
                name=mode.value,
                runs=tuple(runs),
                buckets=bucket_accuracies([r.accuracy for r in runs]),
            )
        )
    return ExperimentReport(
        master_seed=master_seed,
        repeats=repeats,
        k=k,
        conditions=tuple(results),
    )
