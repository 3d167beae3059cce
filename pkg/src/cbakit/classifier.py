"""Rule ranking, generalization pruning, coverage building, and prediction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .dataset import Dataset, majority_class
from .errors import InputError
from .mining import ClassAssociationRule

__all__ = [
    "Classifier",
    "rank_rules",
    "prune_general",
    "build_classifier",
    "predict",
    "error_rate",
]


def rank_rules(cars: Sequence[ClassAssociationRule]) -> list[ClassAssociationRule]:
    """Total precedence order: higher confidence first, then higher support,
    then earlier generation (pass, then ordinal within the pass)."""
    return sorted(cars, key=lambda r: (-r.confidence, -r.support, r.level, r.ordinal))


def prune_general(cars: Sequence[ClassAssociationRule]) -> list[ClassAssociationRule]:
    """Drop every rule that has a same-class strict generalization (a proper
    condset subset) of at least equal confidence; survivors keep their order."""
    indexed = [(frozenset(r.condset), r) for r in cars]
    out = []
    for rset, rule in indexed:
        dominated = any(
            other.class_label == rule.class_label
            and oset < rset
            and other.confidence >= rule.confidence
            for oset, other in indexed
        )
        if not dominated:
            out.append(rule)
    return out


def _matches(rule, values: Mapping[str, str]) -> bool:
    return all(values.get(a) == v for a, v in rule.condset)


@dataclass
class Classifier:
    """Ordered rule list plus a default class; the first matching rule wins."""

    rules: tuple[ClassAssociationRule, ...]
    default_class: str
    class_attribute: str
    attributes: tuple[str, ...]
    provenance: str = "cba-odm1"

    def predict(self, values: Mapping[str, str]) -> str:
        for rule in self.rules:
            if _matches(rule, values):
                return rule.class_label
        return self.default_class


def build_classifier(
    ranked: Sequence[ClassAssociationRule], training: Dataset, provenance: str = "cba-odm1"
) -> Classifier:
    """Coverage pass over the training rows.

    Each row scans the ranked rules in order and marks the first rule whose
    whole condset matches the row AND whose class equals the row's class; a
    condset match with the wrong class does not stop the scan. Rows never get
    removed and there is no error cutoff. The classifier is the marked rules
    in rank order with the training majority class as default.
    """
    marked: set[int] = set()
    for row in training.rows:
        for idx, rule in enumerate(ranked):
            if _matches(rule, row.values) and rule.class_label == row.class_label:
                marked.add(idx)
                break
    return Classifier(
        rules=tuple(ranked[i] for i in sorted(marked)),
        default_class=majority_class(training),
        class_attribute=training.schema.class_attribute,
        attributes=training.schema.attributes,
        provenance=provenance,
    )


def predict(classifier: Classifier, values: Mapping[str, str]) -> str:
    """Class of the first rule whose condset fully matches; default otherwise.
    Values the training never saw simply match nothing."""
    return classifier.predict(values)


def error_rate(model, test: Dataset) -> Fraction:
    """Exact misclassified fraction of `test` under any model with .predict."""
    if test.n == 0:
        raise InputError("empty test set")
    wrong = sum(1 for row in test.rows if model.predict(row.values) != row.class_label)
    return Fraction(wrong, test.n)
