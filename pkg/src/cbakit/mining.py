"""Level-wise mining of frequent class ruleitems and class association rules.

A ruleitem pairs a condition set (attribute=value items, at most one per
attribute) with a class label and carries two counts: how many rows match the
condition set (condsup) and how many of those also carry the class (rulesup).
All support and confidence arithmetic is exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .dataset import Dataset, Schema
from .errors import InputError

__all__ = [
    "Item",
    "RuleItem",
    "MiningConfig",
    "ClassAssociationRule",
    "FrequentSets",
    "count_ruleitem",
    "candidate_gen",
    "generate_frequent_ruleitems",
    "extract_cars",
    "rule_line",
    "format_rule",
]


class Item(NamedTuple):
    """One attribute=value condition."""

    attribute: str
    value: str


@dataclass(frozen=True)
class RuleItem:
    """Condition set + class label with both occurrence counts.

    `level` is the generation pass (condset size) and `ordinal` the 1-based
    position within that pass in canonical order.
    """

    condset: tuple[Item, ...]
    condsup_count: int
    class_label: str
    rulesup_count: int
    level: int = 0
    ordinal: int = 0


def as_threshold(value, name: str) -> Fraction:
    """Normalize a threshold to an exact fraction in [0, 1].

    Floats are taken at their printed decimal value (0.15 means 3/20), so
    thresholds compare exactly against integer counts.
    """
    if isinstance(value, Fraction):
        frac = value
    elif isinstance(value, bool):
        raise InputError(f"{name} must be a number in [0, 1]")
    elif isinstance(value, int):
        frac = Fraction(value)
    elif isinstance(value, float):
        frac = Fraction(str(value))
    elif isinstance(value, str):
        try:
            frac = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{name} is not a number: {value!r}") from None
    else:
        raise InputError(f"{name} must be a number in [0, 1]")
    if not 0 <= frac <= 1:
        raise InputError(f"{name} must lie in [0, 1], got {frac}")
    return frac


@dataclass(frozen=True)
class MiningConfig:
    """Minimum support and confidence, held as exact fractions."""

    minsup: Fraction = Fraction(3, 20)
    minconf: Fraction = Fraction(3, 5)

    def __post_init__(self):
        object.__setattr__(self, "minsup", as_threshold(self.minsup, "minsup"))
        object.__setattr__(self, "minconf", as_threshold(self.minconf, "minconf"))


@dataclass(frozen=True)
class ClassAssociationRule:
    """condset -> class rule with exact support and confidence."""

    condset: tuple[Item, ...]
    class_label: str
    rulesup_count: int
    condsup_count: int
    n: int
    level: int
    ordinal: int

    @property
    def support(self) -> Fraction:
        return Fraction(self.rulesup_count, self.n)

    @property
    def confidence(self) -> Fraction:
        return Fraction(self.rulesup_count, self.condsup_count)


@dataclass
class FrequentSets:
    """Per-pass frequent ruleitems; levels[k-1] holds the size-k condsets."""

    levels: list[list[RuleItem]]
    n: int

    def all_items(self) -> list[RuleItem]:
        return [item for level in self.levels for item in level]


def _validate_condset(schema: Schema, condset: Sequence[Item]) -> None:
    attrs = set()
    for item in condset:
        schema.value_index(item.attribute, item.value)
        if item.attribute in attrs:
            raise InputError(f"condset repeats attribute {item.attribute!r}")
        attrs.add(item.attribute)


def count_ruleitem(
    dataset: Dataset, condset: Iterable[tuple[str, str]], class_label: str
) -> tuple[int, int]:
    """(condsupCount, rulesupCount) of condset -> class_label.

    An empty condset matches every row.
    """
    items = tuple(Item(a, v) for a, v in condset)
    _validate_condset(dataset.schema, items)
    dataset.schema.class_index(class_label)
    condsup = rulesup = 0
    for row in dataset.rows:
        if all(row.values[it.attribute] == it.value for it in items):
            condsup += 1
            if row.class_label == class_label:
                rulesup += 1
    return condsup, rulesup


def _canonical_key(schema: Schema, condset: Sequence[Item], class_label: str):
    ids = sorted((schema.attr_index(a), schema.value_index(a, v)) for a, v in condset)
    return (
        tuple(a for a, _ in ids),
        tuple(v for _, v in ids),
        schema.class_index(class_label),
    )


def _sorted_condset(schema: Schema, items: Iterable[Item]) -> tuple[Item, ...]:
    return tuple(sorted(items, key=lambda it: schema.attr_index(it.attribute)))


def candidate_gen(ruleitems: Sequence[RuleItem], schema: Schema) -> list[RuleItem]:
    """Join pairs of same-class size-k ruleitems agreeing on k-1 items into
    size-(k+1) candidates.

    A merged condset must keep one item per attribute, and every one-smaller
    sub-ruleitem (same class) must be present in the input. Output is
    deduplicated and sorted by (attribute ids, value ids, class); counts are
    zeroed for the caller to fill.
    """
    if not ruleitems:
        return []
    k = len(ruleitems[0].condset)
    members = {(frozenset(r.condset), r.class_label) for r in ruleitems}
    seen: set = set()
    out = []
    for r1, r2 in combinations(ruleitems, 2):
        if r1.class_label != r2.class_label:
            continue
        merged = frozenset(r1.condset) | frozenset(r2.condset)
        if len(merged) != k + 1:
            continue
        if len({it.attribute for it in merged}) != k + 1:
            continue
        key = (merged, r1.class_label)
        if key in seen:
            continue
        seen.add(key)
        if any((merged - {it}, r1.class_label) not in members for it in merged):
            continue
        out.append(
            RuleItem(
                condset=_sorted_condset(schema, merged),
                condsup_count=0,
                class_label=r1.class_label,
                rulesup_count=0,
                level=k + 1,
            )
        )
    out.sort(key=lambda r: _canonical_key(schema, r.condset, r.class_label))
    return out


def _column_masks(dataset: Dataset):
    """Row bitmask per (attribute, value) and per class label."""
    schema = dataset.schema
    item_masks: dict[Item, int] = {
        Item(attr, v): 0 for attr, values in zip(schema.attributes, schema.value_dicts) for v in values
    }
    class_masks: dict[str, int] = {label: 0 for label in schema.class_labels}
    for i, row in enumerate(dataset.rows):
        bit = 1 << i
        for attr in schema.attributes:
            item_masks[Item(attr, row.values[attr])] |= bit
        class_masks[row.class_label] |= bit
    return item_masks, class_masks


def _with_ordinals(items: list[RuleItem]) -> list[RuleItem]:
    return [
        RuleItem(r.condset, r.condsup_count, r.class_label, r.rulesup_count, r.level, i + 1)
        for i, r in enumerate(items)
    ]


def generate_frequent_ruleitems(dataset: Dataset, config: MiningConfig) -> FrequentSets:
    """Mine frequent ruleitems level by level.

    Pass 1 enumerates every (attribute=value, class) pair in dictionary order
    and keeps those whose class-conditioned count reaches the support
    threshold (count >= minsup * n, compared exactly). Each later pass joins
    the previous one via `candidate_gen` and keeps a candidate when its
    condition set's own count reaches the threshold. Kept ruleitems record
    their pass and 1-based ordinal in canonical order; mining stops at the
    first empty pass.

    Counting uses per-column bitmasks; the counts are identical to a literal
    row scan.
    """
    schema = dataset.schema
    n = dataset.n
    threshold = config.minsup * n
    item_masks, class_masks = _column_masks(dataset)

    first = []
    for attr, values in zip(schema.attributes, schema.value_dicts):
        for value in values:
            mask = item_masks[Item(attr, value)]
            condsup = mask.bit_count()
            for label in schema.class_labels:
                rulesup = (mask & class_masks[label]).bit_count()
                if rulesup >= threshold:
                    first.append(RuleItem((Item(attr, value),), condsup, label, rulesup, level=1))
    if not first:
        return FrequentSets(levels=[], n=n)

    levels = [_with_ordinals(first)]  # enumeration order above is already canonical
    while True:
        candidates = candidate_gen(levels[-1], schema)
        survivors = []
        for cand in candidates:
            mask = -1
            for it in cand.condset:
                mask &= item_masks[it]
                if not mask:
                    break
            mask &= (1 << n) - 1
            condsup = mask.bit_count()
            if condsup >= threshold:
                rulesup = (mask & class_masks[cand.class_label]).bit_count()
                survivors.append(
                    RuleItem(cand.condset, condsup, cand.class_label, rulesup, cand.level)
                )
        if not survivors:
            break
        levels.append(_with_ordinals(survivors))
    return FrequentSets(levels=levels, n=n)


def extract_cars(
    frequent: FrequentSets, config: MiningConfig, n: int | None = None
) -> list[ClassAssociationRule]:
    """Promote frequent ruleitems meeting minconf to rules, preserving each
    ruleitem's (pass, ordinal); output keeps (pass, ordinal) order."""
    total = frequent.n if n is None else n
    cars = []
    for level in frequent.levels:
        for item in level:
            if item.condsup_count == 0:
                continue
            if Fraction(item.rulesup_count, item.condsup_count) >= config.minconf:
                cars.append(
                    ClassAssociationRule(
                        condset=item.condset,
                        class_label=item.class_label,
                        rulesup_count=item.rulesup_count,
                        condsup_count=item.condsup_count,
                        n=total,
                        level=item.level,
                        ordinal=item.ordinal,
                    )
                )
    return cars


def format_rule(
    condset: Sequence[Item],
    class_attribute: str,
    class_label: str,
    sup_counts: tuple[int, int],
    conf_counts: tuple[int, int],
    level: int | None = None,
    ordinal: int | None = None,
) -> str:
    """Shared one-line rule text; counts are printed unreduced."""
    cond = " AND ".join(f"{a}={v}" for a, v in condset) or "TRUE"
    line = (
        f"IF {cond} THEN {class_attribute}={class_label}"
        f"  sup={sup_counts[0]}/{sup_counts[1]} conf={conf_counts[0]}/{conf_counts[1]}"
    )
    if level is not None:
        line += f" pass={level} ord={ordinal}"
    return line


def rule_line(rule: ClassAssociationRule, class_attribute: str) -> str:
    return format_rule(
        rule.condset,
        class_attribute,
        rule.class_label,
        (rule.rulesup_count, rule.n),
        (rule.rulesup_count, rule.condsup_count),
        rule.level,
        rule.ordinal,
    )
