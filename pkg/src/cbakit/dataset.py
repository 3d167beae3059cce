"""Categorical datasets: CSV parsing, discretization, class stats, fold assignment."""

from __future__ import annotations

from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InputError

__all__ = [
    "Schema",
    "Row",
    "Dataset",
    "FoldAssignment",
    "parse_csv",
    "load_csv",
    "dump_csv",
    "write_csv",
    "read_plain_csv",
    "discretize",
    "majority_class",
    "stratified_shuffle_partition",
]


@dataclass(frozen=True)
class Schema:
    """Column layout: attribute names in file order, the class column, and the
    ordered dictionary of distinct values seen in each column."""

    attributes: tuple[str, ...]
    class_attribute: str
    value_dicts: tuple[tuple[str, ...], ...]
    class_labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "_attr_ids", {a: i for i, a in enumerate(self.attributes)})
        object.__setattr__(
            self, "_value_ids", tuple({v: i for i, v in enumerate(vals)} for vals in self.value_dicts)
        )
        object.__setattr__(self, "_class_ids", {c: i for i, c in enumerate(self.class_labels)})

    def attr_index(self, attribute: str) -> int:
        try:
            return self._attr_ids[attribute]
        except KeyError:
            raise InputError(f"unknown attribute {attribute!r}") from None

    def value_index(self, attribute: str, value: str) -> int:
        ids = self._value_ids[self.attr_index(attribute)]
        try:
            return ids[value]
        except KeyError:
            raise InputError(f"unknown value {value!r} for attribute {attribute!r}") from None

    def class_index(self, label: str) -> int:
        try:
            return self._class_ids[label]
        except KeyError:
            raise InputError(f"unknown class label {label!r}") from None

    def values_of(self, attribute: str) -> tuple[str, ...]:
        return self.value_dicts[self.attr_index(attribute)]


@dataclass(frozen=True)
class Row:
    values: dict[str, str]
    class_label: str


@dataclass(frozen=True)
class Dataset:
    """Immutable table of categorical rows plus its schema.

    Rows keep their file order; every cell is a member of the schema's value
    dictionaries. Instances are safe to share across threads.
    """

    schema: Schema
    rows: tuple[Row, ...]

    def __post_init__(self):
        for row in self.rows:
            for attr in self.schema.attributes:
                self.schema.value_index(attr, row.values[attr])
            self.schema.class_index(row.class_label)

    @property
    def n(self) -> int:
        return len(self.rows)

    def subset(self, indices: Iterable[int]) -> "Dataset":
        """Rows at `indices` (in the given order) under the same schema."""
        return Dataset(self.schema, tuple(self.rows[i] for i in indices))

    def class_counts(self) -> Counter:
        return Counter(r.class_label for r in self.rows)


def _build_dataset(attributes: Sequence[str], class_attribute: str, records) -> Dataset:
    value_seen: dict[str, dict[str, None]] = {a: {} for a in attributes}
    class_seen: dict[str, None] = {}
    for values, label in records:
        for a in attributes:
            value_seen[a].setdefault(values[a])
        class_seen.setdefault(label)
    schema = Schema(
        attributes=tuple(attributes),
        class_attribute=class_attribute,
        value_dicts=tuple(tuple(value_seen[a]) for a in attributes),
        class_labels=tuple(class_seen),
    )
    return Dataset(schema, tuple(Row(values=dict(v), class_label=c) for v, c in records))


def _split_header(line: str, source: str) -> list[str]:
    header = [c.strip() for c in line.split(",")]
    if any(not h for h in header):
        raise InputError(f"{source}: empty column name in header")
    if len(set(header)) != len(header):
        raise InputError(f"{source}: duplicate column names in header")
    return header


def read_plain_csv(text: str, source: str = "<csv>") -> tuple[list[str], list[list[str]]]:
    """Header and stripped cell rows of a bare-token CSV; rejects ragged rows
    and empty cells. Quoting and embedded commas are unsupported."""
    lines = text.splitlines()
    if not text.strip():
        raise InputError(f"{source}: empty CSV")
    header = _split_header(lines[0], source)
    rows = []
    for i, line in enumerate(lines[1:], start=1):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != len(header):
            raise InputError(
                f"{source}: ragged row {i}: expected {len(header)} cells, got {len(cells)}"
            )
        if any(c == "" for c in cells):
            raise InputError(f"{source}: empty cell in row {i}")
        rows.append(cells)
    return header, rows


def parse_csv(text: str, class_column: str | None = None, source: str = "<csv>") -> Dataset:
    """Parse CSV text (first line header) into a Dataset.

    Every cell is treated as a categorical string. The class column defaults
    to the last header column.
    """
    header, cell_rows = read_plain_csv(text, source)
    if len(header) < 2:
        raise InputError(f"{source}: need at least one attribute column plus the class column")
    class_col = header[-1] if class_column is None else class_column
    if class_col not in header:
        raise InputError(f"{source}: class column {class_col!r} not in header {header}")
    if not cell_rows:
        raise InputError(f"{source}: no data rows")
    attributes = [h for h in header if h != class_col]
    class_pos = header.index(class_col)
    records = []
    for cells in cell_rows:
        values = {h: c for h, c in zip(header, cells) if h != class_col}
        records.append((values, cells[class_pos]))
    return _build_dataset(attributes, class_col, records)


def load_csv(path: str | Path, class_column: str | None = None) -> Dataset:
    path = Path(path)
    if not path.is_file():
        raise InputError(f"dataset file not found: {path}")
    return parse_csv(path.read_text(encoding="utf-8"), class_column, source=str(path))


def dump_csv(dataset: Dataset) -> str:
    """CSV text with the class column last; reloading yields an equal Dataset."""
    schema = dataset.schema
    header = ",".join((*schema.attributes, schema.class_attribute))
    lines = [header]
    for row in dataset.rows:
        lines.append(",".join([*(row.values[a] for a in schema.attributes), row.class_label]))
    return "\n".join(lines) + "\n"


def write_csv(dataset: Dataset, path: str | Path) -> None:
    Path(path).write_text(dump_csv(dataset), encoding="utf-8")


def _numeric_column(dataset: Dataset, attribute: str) -> list[float]:
    out = []
    for i, row in enumerate(dataset.rows, start=1):
        cell = row.values[attribute]
        try:
            out.append(float(cell))
        except ValueError:
            raise InputError(
                f"non-numeric cell {cell!r} in column {attribute!r} at row {i}"
            ) from None
    return out


def _dedup_ascending(edges: list[float]) -> list[float]:
    out = [edges[0]]
    for e in edges[1:]:
        if e > out[-1]:
            out.append(e)
    return out


def _equal_width_edges(values: list[float], bins: int) -> list[float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        return [lo, hi]
    width = (hi - lo) / bins
    return _dedup_ascending([lo + i * width for i in range(bins)] + [hi])


def _equal_frequency_edges(values: list[float], bins: int) -> list[float]:
    ordered = sorted(values)
    lo, hi = ordered[0], ordered[-1]
    if lo == hi:
        return [lo, hi]
    cuts = [ordered[(i * len(ordered)) // bins] for i in range(1, bins)]
    return _dedup_ascending([lo] + cuts + [hi])


def _bin_label(lo: float, hi: float) -> str:
    return f"[{lo!r},{hi!r})"


def _assign_bin(edges: list[float], value: float) -> int:
    # half-open bins; the final bin also contains the maximum
    idx = bisect_right(edges, value) - 1
    return min(max(idx, 0), len(edges) - 2)


def discretize(
    dataset: Dataset,
    columns: Iterable[str],
    strategy: str = "equal-frequency",
    bins: int = 4,
) -> Dataset:
    """Replace numeric columns with interval labels of the form "[lo,hi)".

    Interval bounds use Python's shortest round-trip float rendering; the last
    interval also contains the column maximum. Duplicate quantile edges
    collapse, so equal-frequency may yield fewer bins than requested.
    """
    columns = list(columns)
    if not columns:
        return dataset
    if bins < 1:
        raise InputError(f"bins must be >= 1, got {bins}")
    if strategy not in ("equal-width", "equal-frequency"):
        raise InputError(f"unknown strategy {strategy!r}; use equal-width or equal-frequency")
    schema = dataset.schema
    for col in columns:
        schema.attr_index(col)
    named = [a for a in schema.attributes if a in set(columns)]
    labels: dict[str, list[str]] = {}
    for col in named:
        values = _numeric_column(dataset, col)
        edges = (
            _equal_width_edges(values, bins)
            if strategy == "equal-width"
            else _equal_frequency_edges(values, bins)
        )
        if edges[0] == edges[-1]:
            labels[col] = [_bin_label(edges[0], edges[-1])] * dataset.n
        else:
            labels[col] = [
                _bin_label(edges[i], edges[i + 1]) for i in (_assign_bin(edges, v) for v in values)
            ]
    records = []
    for i, row in enumerate(dataset.rows):
        values = dict(row.values)
        for col in named:
            values[col] = labels[col][i]
        records.append((values, row.class_label))
    return _build_dataset(schema.attributes, schema.class_attribute, records)


def majority_class(dataset: Dataset) -> str:
    """Most frequent class label; ties go to the lexicographically smallest."""
    if dataset.n == 0:
        raise InputError("empty dataset has no majority class")
    counts = dataset.class_counts()
    top = max(counts.values())
    return min(label for label, c in counts.items() if c == top)


_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1


class _Lcg:
    """64-bit linear congruential generator, fixed so fold assignments are
    reproducible across platforms and reimplementations.

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2**64,
    seeded with state = seed mod 2**64; each draw advances once and keeps the
    top 32 bits.
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def below(self, bound: int) -> int:
        self._state = (_LCG_MULT * self._state + _LCG_INC) & _MASK64
        return (self._state >> 32) % bound


def _shuffled(indices: Sequence[int], rng: _Lcg) -> list[int]:
    out = list(indices)
    for i in range(len(out) - 1, 0, -1):
        j = rng.below(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


@dataclass(frozen=True)
class FoldAssignment:
    """Per-row fold indices in [0, nfolds), balanced globally and per class."""

    nfolds: int
    assignment: tuple[int, ...]
    seed: int

    def fold_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignment) if f == fold]

    def complement_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignment) if f != fold]


def stratified_shuffle_partition(
    dataset: Dataset, nfolds: int, seed: int, stratify: bool = True
) -> FoldAssignment:
    """Deal rows into `nfolds` folds after a seeded shuffle.

    Rows are grouped by class (class-dictionary order), each group is shuffled
    with one shared generator stream, groups are concatenated, and the row at
    position p of that order lands in fold p mod nfolds. Fold sizes therefore
    differ by at most one, overall and within every class. With
    stratify=False the class grouping is skipped and a single shuffled list is
    dealt the same way.
    """
    n = dataset.n
    if nfolds < 1:
        raise InputError(f"nfolds must be >= 1, got {nfolds}")
    if nfolds > n:
        raise InputError(f"nfolds ({nfolds}) exceeds the number of rows ({n})")
    rng = _Lcg(seed)
    if stratify:
        order: list[int] = []
        for label in dataset.schema.class_labels:
            group = [i for i, r in enumerate(dataset.rows) if r.class_label == label]
            order.extend(_shuffled(group, rng))
    else:
        order = _shuffled(range(n), rng)
    assignment = [0] * n
    for pos, row_idx in enumerate(order):
        assignment[row_idx] = pos % nfolds
    return FoldAssignment(nfolds=nfolds, assignment=tuple(assignment), seed=seed)
