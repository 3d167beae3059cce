import random
from fractions import Fraction

import pytest

from cbakit import (
    ClassAssociationRule,
    InputError,
    Item,
    MiningConfig,
    build_classifier,
    error_rate,
    extract_cars,
    generate_frequent_ruleitems,
    parse_csv,
    prune_general,
    rank_rules,
)
from cbakit.classifier import Classifier, predict
from conftest import random_dataset
from oracles import naive_predictions


def car(items, label, rulesup, condsup, n=10, level=1, ordinal=1):
    return ClassAssociationRule(
        condset=tuple(Item(a, v) for a, v in items),
        class_label=label,
        rulesup_count=rulesup,
        condsup_count=condsup,
        n=n,
        level=level,
        ordinal=ordinal,
    )


@pytest.fixture
def toy_cars(toy):
    cfg = MiningConfig(minsup=0.15, minconf=0.6)
    return extract_cars(generate_frequent_ruleitems(toy, cfg), cfg)


def signature(rule):
    return (tuple(rule.condset), rule.class_label)


class TestRankRules:
    def test_toy_order(self, toy_cars):
        ranked = rank_rules(prune_general(toy_cars))
        assert [signature(r) for r in ranked] == [
            ((Item("B", "w"),), "n"),
            ((Item("A", "e"),), "y"),
            ((Item("B", "p"),), "y"),
            ((Item("A", "g"), Item("B", "q")), "y"),
            ((Item("A", "g"),), "n"),
            ((Item("B", "q"),), "y"),
        ]

    def test_higher_support_first_on_conf_tie(self):
        low = car([("A", "e")], "y", 1, 10, n=100, ordinal=1)   # conf .1? no: 1/10
        high = car([("B", "p")], "y", 3, 30, n=100, ordinal=2)  # same conf 1/10, higher support
        assert rank_rules([low, high])[0] is high

    def test_earlier_pass_first_on_full_tie(self):
        late = car([("A", "e"), ("B", "p")], "y", 2, 4, level=2, ordinal=1)
        early = car([("B", "p")], "y", 2, 4, level=1, ordinal=5)
        assert rank_rules([late, early])[0] is early

    def test_permutation_and_idempotence(self, toy_cars):
        ranked = rank_rules(toy_cars)
        assert sorted(map(signature, ranked)) == sorted(map(signature, toy_cars))
        assert rank_rules(ranked) == ranked


class TestPruneGeneral:
    def test_toy_table(self, toy_cars):
        pruned = prune_general(toy_cars)
        kept = {signature(r) for r in pruned}
        assert len(pruned) == 6
        assert ((Item("A", "e"), Item("B", "p")), "y") not in kept
        assert ((Item("A", "g"), Item("B", "w")), "n") not in kept
        assert ((Item("A", "g"), Item("B", "q")), "y") in kept

    def test_no_subset_relations_unchanged(self):
        rules = [car([("A", "e")], "y", 3, 4), car([("B", "p")], "n", 2, 3)]
        assert prune_general(rules) == rules

    def test_singleton_condsets_unchanged(self, toy_cars):
        singles = [r for r in toy_cars if len(r.condset) == 1]
        assert prune_general(singles) == singles

    def test_equal_confidence_generalization_wins(self):
        general = car([("A", "e")], "y", 2, 3)
        specific = car([("A", "e"), ("B", "p")], "y", 2, 3, level=2)
        assert prune_general([general, specific]) == [general]

    def test_lower_confidence_generalization_keeps_both(self):
        general = car([("A", "e")], "y", 1, 3)
        specific = car([("A", "e"), ("B", "p")], "y", 2, 3, level=2)
        assert prune_general([general, specific]) == [general, specific]

    def test_output_subset_of_input(self, toy_cars):
        pruned = prune_general(toy_cars)
        pool = {signature(r) for r in toy_cars}
        assert all(signature(r) in pool for r in pruned)


class TestBuildClassifier:
    def test_toy_coverage_trace(self, toy, toy_cars):
        ranked = rank_rules(prune_general(toy_cars))
        clf = build_classifier(ranked, toy)
        assert [signature(r) for r in clf.rules] == [
            ((Item("B", "w"),), "n"),
            ((Item("A", "e"),), "y"),
            ((Item("A", "g"), Item("B", "q")), "y"),
            ((Item("A", "g"),), "n"),
        ]
        assert clf.default_class == "n"

    def test_empty_rule_list(self, toy):
        clf = build_classifier([], toy)
        assert clf.rules == ()
        assert clf.default_class == "n"
        assert clf.predict({"A": "e", "B": "p"}) == "n"

    def test_single_matching_rule(self, toy):
        rule = car([("A", "e")], "y", 3, 4)
        clf = build_classifier([rule], toy)
        assert [signature(r) for r in clf.rules] == [signature(rule)]

    def test_rule_matching_no_row_correctly_unmarked(self, toy):
        rule = car([("A", "f")], "y", 0, 1)  # the only A=f row is class n
        clf = build_classifier([rule], toy)
        assert clf.rules == ()

    def test_every_kept_rule_claims_some_row(self):
        # replaying the scan, each classifier rule must be the first
        # correct match for at least one training row
        rng = random.Random(31)
        cfg = MiningConfig(minsup=0.1, minconf=0.5)
        for _ in range(15):
            ds = random_dataset(rng, max_attrs=4, max_values=3, max_rows=40)
            cars = extract_cars(generate_frequent_ruleitems(ds, cfg), cfg)
            ranked = rank_rules(prune_general(cars))
            clf = build_classifier(ranked, ds)
            kept = {id(r) for r in clf.rules}
            claimed = set()
            for row in ds.rows:
                for rule in ranked:
                    if (
                        all(row.values.get(a) == v for a, v in rule.condset)
                        and rule.class_label == row.class_label
                    ):
                        claimed.add(id(rule))
                        break
            assert kept <= claimed


class TestPredict:
    def test_traced_predictions(self, toy, toy_cars):
        clf = build_classifier(rank_rules(prune_general(toy_cars)), toy)
        assert predict(clf, {"A": "e", "B": "p"}) == "y"
        assert predict(clf, {"A": "g", "B": "w"}) == "n"
        assert predict(clf, {"A": "f", "B": "z"}) == "n"  # unseen value -> default

    def test_total_and_deterministic(self, toy, toy_cars):
        clf = build_classifier(rank_rules(prune_general(toy_cars)), toy)
        labels = set(toy.schema.class_labels)
        for row in toy.rows:
            first = clf.predict(row.values)
            assert first in labels
            assert clf.predict(row.values) == first

    def test_matches_naive_reimplementation(self):
        rng = random.Random(99)
        cfg = MiningConfig(minsup=0.1, minconf=0.5)
        for _ in range(25):
            ds = random_dataset(rng, max_attrs=4, max_values=3, max_rows=40)
            cars = extract_cars(generate_frequent_ruleitems(ds, cfg), cfg)
            ranked = rank_rules(prune_general(cars))
            clf = build_classifier(ranked, ds)
            plain_rules = [(dict(r.condset), r.class_label) for r in ranked]
            rows = [(r.values, r.class_label) for r in ds.rows]
            expected = naive_predictions(plain_rules, rows, rows, clf.default_class)
            got = [clf.predict(r.values) for r in ds.rows]
            assert got == expected


class TestErrorRate:
    def test_all_correct(self, toy, toy_cars):
        clf = build_classifier(rank_rules(prune_general(toy_cars)), toy)
        correct = toy.subset([6, 7])  # two B=w rows, both class n
        assert error_rate(clf, correct) == 0

    def test_default_only_on_toy(self, toy):
        clf = build_classifier([], toy)
        assert error_rate(clf, toy) == Fraction(1, 2)

    def test_all_wrong(self, toy):
        clf = Classifier(
            rules=(),
            default_class="y",
            class_attribute="C",
            attributes=("A", "B"),
        )
        all_n = toy.subset([5, 6, 7, 8, 9])
        assert error_rate(clf, all_n) == 1

    def test_empty_test_set(self, toy):
        clf = build_classifier([], toy)
        with pytest.raises(InputError, match="empty"):
            error_rate(clf, toy.subset([]))
