"""Run manifests and machine-readable report documents.

Reports are JSON with sorted keys. Exact values carry both an "a/b" fraction
string and a decimal. The keys "timestamp" and "seconds" are the only
volatile fields; stripping them makes reruns byte-identical.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .evaluation import CVReport, ModelConfig, ScenarioReport

__all__ = [
    "VOLATILE_KEYS",
    "make_manifest",
    "frac",
    "config_params",
    "scenario_key",
    "cv_report_doc",
    "scenario_report_doc",
    "render_report",
    "strip_volatile",
    "canonical_text",
]

VOLATILE_KEYS = frozenset({"timestamp", "seconds"})


def frac(value: Fraction) -> dict:
    return {"fraction": f"{value.numerator}/{value.denominator}", "decimal": float(value)}


def make_manifest(command: str, dataset: str, params: dict, seed: int | None) -> dict:
    return {
        "command": command,
        "dataset": dataset,
        "params": params,
        "seed": seed,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def config_params(config: ModelConfig) -> dict:
    return {
        "family": config.family,
        "minsup": frac(config.mining.minsup),
        "minconf": frac(config.mining.minconf),
        "prune_general": config.prune_general,
        "max_depth": config.tree.max_depth,
        "min_rows_per_node": config.tree.min_rows_per_node,
        "min_gain": config.tree.min_gain,
        "nfolds": config.nfolds,
        "seed": config.seed,
    }


def scenario_key(minsup: Fraction, minconf: Fraction) -> str:
    return f"{format(float(minsup), 'g')}/{format(float(minconf), 'g')}"


def cv_report_doc(report: CVReport, manifest: dict | None = None) -> dict:
    doc = {
        "folds": [
            {
                "fold": i,
                "error": frac(err),
                "n_rules": rules,
                "n_cars": cars,
                "test_rows": size,
                "seconds": secs,
            }
            for i, (err, rules, cars, size, secs) in enumerate(
                zip(
                    report.fold_errors,
                    report.fold_rule_counts,
                    report.fold_car_counts,
                    report.fold_test_sizes,
                    report.fold_seconds,
                )
            )
        ],
        "average_error": frac(report.average_error),
        "average_accuracy": frac(report.average_accuracy),
        "rules_per_fold": list(report.fold_rule_counts),
        "nfolds": report.nfolds,
        "seed": report.seed,
    }
    if manifest is not None:
        doc["manifest"] = manifest
    return doc


def scenario_report_doc(report: ScenarioReport, manifest: dict | None = None) -> dict:
    doc = {
        "scenarios": {
            scenario_key(minsup, minconf): cv_report_doc(cv)
            for minsup, minconf, cv in report.scenarios
        }
    }
    if manifest is not None:
        doc["manifest"] = manifest
    return doc


def render_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def strip_volatile(doc):
    """Recursively drop the volatile keys (timestamp, per-fold seconds)."""
    if isinstance(doc, dict):
        return {k: strip_volatile(v) for k, v in doc.items() if k not in VOLATILE_KEYS}
    if isinstance(doc, list):
        return [strip_volatile(v) for v in doc]
    return doc


def canonical_text(report_text: str) -> str:
    """Rerun-stable rendering of a report document (volatile fields removed)."""
    return render_report(strip_volatile(json.loads(report_text)))
