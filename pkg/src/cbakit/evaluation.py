"""Cross-validation and scenario benchmarking over the model families."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .classifier import Classifier, build_classifier, error_rate, prune_general, rank_rules
from .dataset import Dataset, stratified_shuffle_partition
from .errors import InputError
from .merge import MergeReport, merge
from .mining import MiningConfig, extract_cars, generate_frequent_ruleitems
from .tree import DecisionTree, TreeSettings, build_tree, tree_to_rules

__all__ = [
    "FAMILIES",
    "DEFAULT_SCENARIOS",
    "ModelConfig",
    "FittedModel",
    "CVReport",
    "ScenarioReport",
    "DatasetMeta",
    "train_model",
    "cross_validate",
    "run_scenarios",
    "group_report",
]

FAMILIES = ("cba-odm1", "cba-odm2", "tree")

DEFAULT_SCENARIOS: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction("0.35"), Fraction("0.50")),
    (Fraction("0.15"), Fraction("0.50")),
    (Fraction("0.10"), Fraction("0.50")),
    (Fraction("0.05"), Fraction("0.50")),
)


@dataclass(frozen=True)
class ModelConfig:
    family: str = "cba-odm1"
    mining: MiningConfig = MiningConfig(minsup=Fraction(3, 20), minconf=Fraction(1, 2))
    tree: TreeSettings = TreeSettings()
    prune_general: bool = True
    nfolds: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown model family {self.family!r}; expected one of {FAMILIES}")


@dataclass
class FittedModel:
    model: Classifier | DecisionTree
    n_cars: int  # rules mined before generalization pruning (0 for the tree family)
    n_rules: int
    merge_report: MergeReport | None = None


def train_model(training: Dataset, config: ModelConfig) -> FittedModel:
    """Fit one model family on `training`.

    cba-odm1: mine rules, optionally prune generalized-away rules, rank, then
    run the coverage builder. cba-odm2: same ranked rules, arbitrated against
    the decision-tree rules instead of coverage-built. tree: the decision tree
    alone.
    """
    if config.family == "tree":
        tree = build_tree(training, config.tree)
        return FittedModel(model=tree, n_cars=0, n_rules=tree.leaf_count())
    frequent = generate_frequent_ruleitems(training, config.mining)
    cars = extract_cars(frequent, config.mining)
    n_cars = len(cars)
    if config.prune_general:
        cars = prune_general(cars)
    ranked = rank_rules(cars)
    if config.family == "cba-odm1":
        clf = build_classifier(ranked, training, provenance="cba-odm1")
        return FittedModel(model=clf, n_cars=n_cars, n_rules=len(clf.rules))
    tree = build_tree(training, config.tree)
    clf, report = merge(ranked, tree_to_rules(tree), training)
    return FittedModel(model=clf, n_cars=n_cars, n_rules=len(clf.rules), merge_report=report)


@dataclass
class CVReport:
    nfolds: int
    seed: int
    fold_errors: list[Fraction]
    fold_rule_counts: list[int]
    fold_car_counts: list[int]
    fold_test_sizes: list[int]
    fold_seconds: list[float]
    average_error: Fraction
    average_accuracy: Fraction


def _run_fold(dataset: Dataset, config: ModelConfig, assignment, fold: int):
    started = time.perf_counter()
    train_idx = assignment.complement_indices(fold)
    test_idx = assignment.fold_indices(fold)
    if not train_idx:
        raise InputError(f"fold {fold} leaves an empty training partition")
    fitted = train_model(dataset.subset(train_idx), config)
    err = error_rate(fitted.model, dataset.subset(test_idx))
    return fold, err, fitted.n_rules, fitted.n_cars, len(test_idx), time.perf_counter() - started


def _fold_task(args):
    return _run_fold(*args)


def cross_validate(dataset: Dataset, config: ModelConfig, jobs: int = 1) -> CVReport:
    """k-fold protocol: one stratified shuffled assignment for the whole run,
    one model trained per fold on the other folds, tested on the held-out
    fold. The average error is the exact arithmetic mean of the fold errors.
    Folds are independent; jobs > 1 trains them in worker processes without
    changing any reported value except the per-fold wall clock.
    """
    if config.nfolds < 2:
        raise InputError(f"cross-validation needs nfolds >= 2, got {config.nfolds}")
    assignment = stratified_shuffle_partition(dataset, config.nfolds, config.seed)
    folds = range(config.nfolds)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_fold_task, [(dataset, config, assignment, f) for f in folds]))
    else:
        results = [_run_fold(dataset, config, assignment, f) for f in folds]
    results.sort(key=lambda r: r[0])
    errors = [r[1] for r in results]
    average = sum(errors, Fraction(0)) / config.nfolds
    return CVReport(
        nfolds=config.nfolds,
        seed=config.seed,
        fold_errors=errors,
        fold_rule_counts=[r[2] for r in results],
        fold_car_counts=[r[3] for r in results],
        fold_test_sizes=[r[4] for r in results],
        fold_seconds=[r[5] for r in results],
        average_error=average,
        average_accuracy=1 - average,
    )


@dataclass
class ScenarioReport:
    scenarios: list[tuple[Fraction, Fraction, CVReport]]


def run_scenarios(
    dataset: Dataset,
    base: ModelConfig,
    scenarios: Sequence[tuple] | None = None,
    jobs: int = 1,
) -> ScenarioReport:
    """One cross-validation per (minsup, minconf) pair, same seed throughout."""
    pairs = DEFAULT_SCENARIOS if scenarios is None else tuple(scenarios)
    if not pairs:
        raise InputError("scenario list is empty")
    out = []
    for minsup, minconf in pairs:
        mining = MiningConfig(minsup=minsup, minconf=minconf)
        config = replace(base, mining=mining)
        out.append((mining.minsup, mining.minconf, cross_validate(dataset, config, jobs=jobs)))
    return ScenarioReport(scenarios=out)


@dataclass(frozen=True)
class DatasetMeta:
    name: str
    n_rows: int
    n_attributes: int
    n_classes: int


_ROW_BUCKETS = ("<1000", "1000-5000", ">5000")
_ATTR_BUCKETS = ("<=10", "11-20", "21-29", "30-50", ">50")


def _row_bucket(rows: int) -> str:
    if rows < 1000:
        return "<1000"
    if rows <= 5000:
        return "1000-5000"
    return ">5000"


def _attr_bucket(attrs: int) -> str:
    if attrs <= 10:
        return "<=10"
    if attrs <= 20:
        return "11-20"
    if attrs <= 29:
        return "21-29"
    if attrs <= 50:
        return "30-50"
    return ">50"


def group_report(
    entries: Sequence[tuple[DatasetMeta, CVReport]], grouping: str
) -> list[dict]:
    """Mean accuracy per bucket of dataset size, attribute count, or class
    count; buckets appear in their canonical order and only when non-empty."""
    if grouping == "by-row-count":
        key, order = (lambda m: _row_bucket(m.n_rows)), _ROW_BUCKETS
    elif grouping == "by-attribute-count":
        key, order = (lambda m: _attr_bucket(m.n_attributes)), _ATTR_BUCKETS
    elif grouping == "by-class-count":
        key, order = (lambda m: str(m.n_classes)), None
    else:
        raise InputError(f"unknown grouping {grouping!r}")
    buckets: dict[str, list[Fraction]] = {}
    for meta, report in entries:
        buckets.setdefault(key(meta), []).append(report.average_accuracy)
    names = list(order) if order else sorted(buckets, key=lambda s: (len(s), s))
    out = []
    for name in names:
        if name not in buckets:
            continue
        values = buckets[name]
        out.append(
            {
                "group": name,
                "mean_accuracy": sum(values, Fraction(0)) / len(values),
                "count": len(values),
            }
        )
    return out
