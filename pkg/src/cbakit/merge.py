"""Confidence arbitration between ranked rules and decision-tree rules."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .classifier import Classifier
from .dataset import Dataset, majority_class
from .errors import InputError
from .mining import ClassAssociationRule, rule_line
from .tree import TreeRule, tree_rule_line

__all__ = ["MergedPair", "MergeReport", "merge", "match_fraction", "merge_report_text"]


@dataclass(frozen=True)
class MergedPair:
    car: ClassAssociationRule
    tree_rule: TreeRule
    chosen: str  # "tree" only when the tree rule's confidence is strictly higher


@dataclass
class MergeReport:
    matched_pairs: list[MergedPair]
    pruned_cars: list[ClassAssociationRule]
    fallback_used: bool
    match_fraction: Fraction


def _is_degenerate(tree_rules: Sequence[TreeRule]) -> bool:
    # no rules at all, or a single no-split leaf
    return not tree_rules or (len(tree_rules) == 1 and not tree_rules[0].condset)


def _best_match(car: ClassAssociationRule, tree_rules: Sequence[TreeRule]) -> TreeRule | None:
    car_items = set(car.condset)
    best = None
    for tr in tree_rules:
        if car_items & set(tr.condset):
            if best is None or tr.confidence > best.confidence:
                best = tr
    return best


def _check_schemas(ranked, tree_rules, training: Dataset) -> None:
    known = set(training.schema.attributes)
    for rule in (*ranked, *tree_rules):
        missing = {a for a, _ in rule.condset} - known
        if missing:
            raise InputError(
                f"rule attribute(s) {sorted(missing)} not in the training schema"
            )


def merge(
    ranked: Sequence[ClassAssociationRule],
    tree_rules: Sequence[TreeRule],
    training: Dataset,
) -> tuple[Classifier, MergeReport]:
    """Arbitrate each ranked rule against the tree rules.

    With a degenerate tree (no rules, or one rule with an empty condset) the
    ranked rules are kept verbatim and no pruning happens. Otherwise a ranked
    rule survives only when it shares at least one attribute=value item with
    some tree rule; it is paired with the highest-confidence such tree rule
    (first-listed on ties) and keeps its own consequent unless the tree rule's
    confidence is strictly higher, in which case the tree consequent replaces
    it. Support/confidence bookkeeping of the rule is never touched, and
    survivors keep their ranked order.
    """
    _check_schemas(ranked, tree_rules, training)
    if _is_degenerate(tree_rules):
        merged = list(ranked)
        report = MergeReport(
            matched_pairs=[], pruned_cars=[], fallback_used=True, match_fraction=Fraction(0)
        )
    else:
        merged = []
        pairs: list[MergedPair] = []
        pruned: list[ClassAssociationRule] = []
        agree = 0
        for car in ranked:
            best = _best_match(car, tree_rules)
            if best is None:
                pruned.append(car)
                continue
            chosen = "tree" if best.confidence > car.confidence else "car"
            label = best.class_label if chosen == "tree" else car.class_label
            merged.append(replace(car, class_label=label))
            pairs.append(MergedPair(car=car, tree_rule=best, chosen=chosen))
            if car.class_label == best.class_label:
                agree += 1
        fraction = Fraction(agree, len(pairs)) if pairs else Fraction(0)
        report = MergeReport(
            matched_pairs=pairs, pruned_cars=pruned, fallback_used=False, match_fraction=fraction
        )
    clf = Classifier(
        rules=tuple(merged),
        default_class=majority_class(training),
        class_attribute=training.schema.class_attribute,
        attributes=training.schema.attributes,
        provenance="cba-odm2",
    )
    return clf, report


def match_fraction(
    ranked: Sequence[ClassAssociationRule], tree_rules: Sequence[TreeRule]
) -> Fraction:
    """Among ranked rules with at least one matching tree rule, the fraction
    whose class equals their highest-confidence match's class; 0 if none match."""
    matched = agree = 0
    for car in ranked:
        best = _best_match(car, tree_rules)
        if best is None:
            continue
        matched += 1
        if car.class_label == best.class_label:
            agree += 1
    return Fraction(agree, matched) if matched else Fraction(0)


def merge_report_text(report: MergeReport, class_attribute: str) -> str:
    """Structured text: header flags, then one line per pair and per pruned rule."""
    lines = [
        f"FALLBACK {'true' if report.fallback_used else 'false'}",
        f"MATCH_FRACTION {report.match_fraction.numerator}/{report.match_fraction.denominator}",
    ]
    for pair in report.matched_pairs:
        car, tr = pair.car, pair.tree_rule
        lines.append(
            f"PAIR car=[{rule_line(car, class_attribute)}]"
            f" tree=[{tree_rule_line(tr, class_attribute)}]"
            f" car_conf={car.rulesup_count}/{car.condsup_count}"
            f" tree_conf={tr.majority_count}/{tr.total_count}"
            f" chosen={pair.chosen}"
        )
    for car in report.pruned_cars:
        lines.append(f"PRUNED car=[{rule_line(car, class_attribute)}]")
    return "\n".join(lines) + "\n"
