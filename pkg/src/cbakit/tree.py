"""Information-gain decision trees over categorical attributes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .dataset import Dataset
from .errors import InputError, ModelFormatError
from .mining import Item, format_rule

__all__ = [
    "TreeSettings",
    "TreeNode",
    "DecisionTree",
    "TreeRule",
    "entropy",
    "info_gain",
    "build_tree",
    "tree_to_rules",
    "tree_rule_line",
    "dump_tree",
    "parse_tree",
]


@dataclass(frozen=True)
class TreeSettings:
    max_depth: int = 7
    min_rows_per_node: int = 2
    min_gain: float = 0.0

    def __post_init__(self):
        if self.max_depth < 1:
            raise InputError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.min_rows_per_node < 1:
            raise InputError(f"min_rows_per_node must be >= 1, got {self.min_rows_per_node}")
        if self.min_gain < 0:
            raise InputError(f"min_gain must be >= 0, got {self.min_gain}")


def entropy(class_counts: Sequence[int]) -> float:
    """Shannon entropy -sum(p * log2 p) of a count vector."""
    if any(c < 0 for c in class_counts):
        raise InputError("negative class count")
    total = sum(class_counts)
    if total == 0:
        raise InputError("entropy needs at least one positive count")
    h = 0.0
    for c in class_counts:
        if c:
            p = c / total
            h -= p * math.log2(p)
    return h


def _counts_at(dataset: Dataset, indices) -> dict[str, int]:
    counts = {label: 0 for label in dataset.schema.class_labels}
    for i in indices:
        counts[dataset.rows[i].class_label] += 1
    return counts


def _gain(dataset: Dataset, indices: Sequence[int], attribute: str) -> float:
    parent = entropy([c for c in _counts_at(dataset, indices).values() if c])
    groups: dict[str, list[int]] = {}
    for i in indices:
        groups.setdefault(dataset.rows[i].values[attribute], []).append(i)
    total = len(indices)
    children = 0.0
    for sub in groups.values():
        children += len(sub) / total * entropy([c for c in _counts_at(dataset, sub).values() if c])
    return parent - children


def info_gain(dataset: Dataset, attribute: str) -> float:
    """Entropy reduction from partitioning all rows by `attribute`."""
    dataset.schema.attr_index(attribute)
    if dataset.n == 0:
        raise InputError("empty dataset")
    return _gain(dataset, range(dataset.n), attribute)


def _majority(counts: Mapping[str, int]) -> str:
    top = max(counts.values())
    return min(label for label, c in counts.items() if c == top)


@dataclass
class TreeNode:
    counts: dict[str, int]
    label: str
    split_attribute: str | None = None
    children: dict[str, "TreeNode"] = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return self.split_attribute is None

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass
class DecisionTree:
    """Multiway categorical tree. Prediction walks from the root; a value the
    split never saw stops at that node's majority class."""

    root: TreeNode
    class_attribute: str
    attributes: tuple[str, ...]
    class_labels: tuple[str, ...]
    n_training: int
    provenance: str = "tree"

    def predict(self, values: Mapping[str, str]) -> str:
        node = self.root
        while not node.is_leaf:
            child = node.children.get(values.get(node.split_attribute, ""))
            if child is None:
                return node.label
            node = child
        return node.label

    def leaf_count(self) -> int:
        def count(node: TreeNode) -> int:
            if node.is_leaf:
                return 1
            return sum(count(c) for c in node.children.values())

        return count(self.root)


def build_tree(training: Dataset, settings: TreeSettings = TreeSettings()) -> DecisionTree:
    """Greedy top-down induction, no post-pruning.

    Each node splits on the unused attribute of maximum information gain
    (ties fall to schema attribute order) with one child per observed value,
    and becomes a leaf on purity, max_depth, fewer than min_rows_per_node
    rows, gain <= min_gain, or attribute exhaustion.
    """
    if training.n == 0:
        raise InputError("cannot build a tree from an empty dataset")
    schema = training.schema

    def grow(indices: list[int], used: frozenset[str], depth: int) -> TreeNode:
        counts = _counts_at(training, indices)
        node = TreeNode(counts=counts, label=_majority(counts))
        if sum(1 for c in counts.values() if c) == 1:
            return node
        if depth >= settings.max_depth or len(indices) < settings.min_rows_per_node:
            return node
        unused = [a for a in schema.attributes if a not in used]
        if not unused:
            return node
        best_attr, best_gain = unused[0], _gain(training, indices, unused[0])
        for attr in unused[1:]:
            g = _gain(training, indices, attr)
            if g > best_gain:
                best_attr, best_gain = attr, g
        if best_gain <= settings.min_gain:
            return node
        groups: dict[str, list[int]] = {}
        for i in indices:
            groups.setdefault(training.rows[i].values[best_attr], []).append(i)
        node.split_attribute = best_attr
        for value in schema.values_of(best_attr):
            if value in groups:
                node.children[value] = grow(groups[value], used | {best_attr}, depth + 1)
        return node

    root = grow(list(range(training.n)), frozenset(), 0)
    return DecisionTree(
        root=root,
        class_attribute=schema.class_attribute,
        attributes=schema.attributes,
        class_labels=schema.class_labels,
        n_training=training.n,
    )


@dataclass(frozen=True)
class TreeRule:
    """Root-to-leaf path as a rule: conditions, leaf majority class, counts."""

    condset: tuple[Item, ...]
    class_label: str
    majority_count: int
    total_count: int
    n: int

    @property
    def confidence(self) -> Fraction:
        return Fraction(self.majority_count, self.total_count)

    @property
    def support(self) -> Fraction:
        return Fraction(self.total_count, self.n)


def tree_to_rules(tree: DecisionTree) -> list[TreeRule]:
    """One rule per leaf, depth-first with children in dictionary order; a
    single-leaf tree yields one rule with an empty condset."""
    rules: list[TreeRule] = []

    def walk(node: TreeNode, path: list[Item]) -> None:
        if node.is_leaf:
            rules.append(
                TreeRule(
                    condset=tuple(path),
                    class_label=node.label,
                    majority_count=node.counts[node.label],
                    total_count=node.total,
                    n=tree.n_training,
                )
            )
            return
        for value, child in node.children.items():
            walk(child, path + [Item(node.split_attribute, value)])

    walk(tree.root, [])
    return rules


def tree_rule_line(rule: TreeRule, class_attribute: str) -> str:
    return format_rule(
        rule.condset,
        class_attribute,
        rule.class_label,
        (rule.total_count, rule.n),
        (rule.majority_count, rule.total_count),
    )


def dump_tree(tree: DecisionTree) -> str:
    """Indented text, one node per line: edge, role (split=attr | leaf=label),
    and the node's class counts in class-dictionary order."""

    def fmt_counts(counts: Mapping[str, int]) -> str:
        return ",".join(f"{label}:{counts[label]}" for label in tree.class_labels)

    lines: list[str] = []

    def walk(node: TreeNode, edge: str, depth: int) -> None:
        role = f"leaf={node.label}" if node.is_leaf else f"split={node.split_attribute}"
        lines.append("  " * depth + f"{edge} {role} counts={fmt_counts(node.counts)}")
        for value, child in node.children.items():
            walk(child, f"{node.split_attribute}={value}", depth + 1)

    walk(tree.root, "*", 0)
    return "\n".join(lines) + "\n"


def parse_tree(text: str, class_attribute: str, attributes: Sequence[str]) -> DecisionTree:
    """Rebuild a DecisionTree from its `dump_tree` text."""
    entries = []
    for raw in text.splitlines():
        if not raw.strip():
            continue
        indent = len(raw) - len(raw.lstrip(" "))
        if indent % 2:
            raise ModelFormatError(f"bad tree indentation: {raw!r}")
        parts = raw.strip().split(" ")
        if len(parts) != 3 or not parts[2].startswith("counts="):
            raise ModelFormatError(f"bad tree node line: {raw!r}")
        edge, role, counts_part = parts
        counts: dict[str, int] = {}
        for chunk in counts_part[len("counts="):].split(","):
            label, _, num = chunk.rpartition(":")
            if not label or not num.isdigit():
                raise ModelFormatError(f"bad tree counts: {raw!r}")
            counts[label] = int(num)
        entries.append((indent // 2, edge, role, counts))
    if not entries or entries[0][1] != "*":
        raise ModelFormatError("tree dump must start with the root line")

    def make_node(role: str, counts: dict[str, int]) -> TreeNode:
        node = TreeNode(counts=counts, label=_majority(counts))
        if role.startswith("split="):
            node.split_attribute = role[len("split="):]
        elif role.startswith("leaf="):
            if role[len("leaf="):] != node.label:
                raise ModelFormatError("leaf label does not match its counts")
        else:
            raise ModelFormatError(f"bad tree node role: {role!r}")
        return node

    root = make_node(entries[0][2], entries[0][3])
    stack: list[TreeNode] = [root]
    for depth, edge, role, counts in entries[1:]:
        if depth < 1 or depth > len(stack):
            raise ModelFormatError("inconsistent tree indentation")
        del stack[depth:]
        parent = stack[-1]
        _, _, value = edge.partition("=")
        node = make_node(role, counts)
        parent.children[value] = node
        stack.append(node)
    class_labels = tuple(entries[0][3])
    return DecisionTree(
        root=root,
        class_attribute=class_attribute,
        attributes=tuple(attributes),
        class_labels=class_labels,
        n_training=sum(entries[0][3].values()),
    )
