"""Independent brute-force oracles used by the property and acceptance suites.

These deliberately avoid the library's level-wise join, bitmask counting, and
coverage scan: frequent sets come from direct enumeration over attribute
subsets, and predictions from a plain double loop, so agreement is meaningful.
"""

from fractions import Fraction
from itertools import combinations, product


def brute_force_frequent(dataset, minsup):
    """All frequent ruleitems as {(frozenset(items), class): (condsup, rulesup)}.

    Mirrors the mining semantics by direct enumeration: a single-item
    ruleitem is frequent when its class-conditioned count reaches
    minsup * n; a larger one when every one-smaller sub-ruleitem (same
    class) is frequent and its condition-set count reaches the threshold.
    """
    schema = dataset.schema
    n = dataset.n
    threshold = Fraction(minsup) if not isinstance(minsup, float) else Fraction(str(minsup))
    threshold = threshold * n
    row_items = [
        (frozenset((a, row.values[a]) for a in schema.attributes), row.class_label)
        for row in dataset.rows
    ]

    def counts(condset):
        condsup = 0
        per_class = {label: 0 for label in schema.class_labels}
        for items, label in row_items:
            if condset <= items:
                condsup += 1
                per_class[label] += 1
        return condsup, per_class

    frequent = {}
    previous = set()
    current = set()
    for attr, values in zip(schema.attributes, schema.value_dicts):
        for v in values:
            condset = frozenset([(attr, v)])
            condsup, per_class = counts(condset)
            for label in schema.class_labels:
                if per_class[label] >= threshold:
                    frequent[(condset, label)] = (condsup, per_class[label])
                    current.add((condset, label))
    size = 1
    while current:
        previous, current = current, set()
        size += 1
        for attrs in combinations(schema.attributes, size):
            dict_values = [schema.values_of(a) for a in attrs]
            for chosen in product(*dict_values):
                condset = frozenset(zip(attrs, chosen))
                computed = None
                for label in schema.class_labels:
                    if any(
                        (condset - {item}, label) not in previous for item in condset
                    ):
                        continue
                    if computed is None:
                        computed = counts(condset)
                    condsup, per_class = computed
                    if condsup >= threshold:
                        frequent[(condset, label)] = (condsup, per_class[label])
                        current.add((condset, label))
    return frequent


def naive_predictions(ranked_rules, training_rows, test_rows, default_class):
    """Coverage + first-match prediction written as plain loops.

    ranked_rules: [(items dict, class_label)] in rank order;
    rows: (values dict, class_label) pairs. Returns test predictions.
    """
    kept = []
    for values, label in training_rows:
        for idx, (items, rule_class) in enumerate(ranked_rules):
            if all(values.get(a) == v for a, v in items.items()) and rule_class == label:
                if idx not in kept:
                    kept.append(idx)
                break
    kept.sort()
    predictions = []
    for values, _ in test_rows:
        hit = default_class
        for idx in kept:
            items, rule_class = ranked_rules[idx]
            if all(values.get(a) == v for a, v in items.items()):
                hit = rule_class
                break
        predictions.append(hit)
    return predictions
