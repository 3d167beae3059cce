"""Endpoint logic shared by the HTTP app and the CLI client."""

from __future__ import annotations

import json

from ..classifier import Classifier
from ..dataset import Dataset, load_csv, parse_csv, read_plain_csv
from ..errors import InputError
from ..evaluation import (
    DatasetMeta,
    ModelConfig,
    cross_validate,
    group_report,
    run_scenarios,
    train_model,
)
from ..merge import merge_report_text
from ..mining import MiningConfig, extract_cars, generate_frequent_ruleitems, rule_line
from ..model_io import dump_model, load_model
from ..reporting import (
    config_params,
    cv_report_doc,
    frac,
    make_manifest,
    render_report,
    scenario_report_doc,
)
from ..tree import TreeSettings
from . import schemas

GROUPINGS = ("by-attribute-count", "by-row-count", "by-class-count")


def _load_dataset(din: schemas.DatasetIn) -> tuple[Dataset, str]:
    if din.path is not None:
        return load_csv(din.path, din.class_column), din.label or din.path
    return (
        parse_csv(din.csv_text, din.class_column, source=din.label or "<inline>"),
        din.label or "<inline>",
    )


def _model_config(params: schemas.ModelParams, folds: int, seed: int) -> ModelConfig:
    return ModelConfig(
        family=params.family,
        mining=MiningConfig(minsup=params.minsup, minconf=params.minconf),
        tree=TreeSettings(
            max_depth=params.max_depth,
            min_rows_per_node=params.min_rows,
            min_gain=params.min_gain,
        ),
        prune_general=params.prune,
        nfolds=folds,
        seed=seed,
    )


def _rule_out(rule, class_attribute: str) -> schemas.RuleOut:
    return schemas.RuleOut(
        text=rule_line(rule, class_attribute),
        items=[schemas.ItemOut(attribute=a, value=v) for a, v in rule.condset],
        class_label=rule.class_label,
        support=schemas.FracOut(**frac(rule.support)),
        confidence=schemas.FracOut(**frac(rule.confidence)),
        level=rule.level,
        ordinal=rule.ordinal,
    )


def do_mine(req: schemas.MineRequest) -> schemas.MineResponse:
    dataset, label = _load_dataset(req.dataset)
    config = MiningConfig(minsup=req.minsup, minconf=req.minconf)
    manifest = make_manifest(
        "mine",
        label,
        {"minsup": frac(config.minsup), "minconf": frac(config.minconf)},
        seed=None,
    )
    cars = extract_cars(generate_frequent_ruleitems(dataset, config), config)
    class_attr = dataset.schema.class_attribute
    lines = ["# cbakit rule listing", "# manifest: " + json.dumps(manifest, sort_keys=True)]
    lines += [rule_line(car, class_attr) for car in cars]
    return schemas.MineResponse(
        manifest=manifest,
        rules=[_rule_out(car, class_attr) for car in cars],
        listing="\n".join(lines) + "\n",
    )


def do_inspect(req: schemas.InspectRequest) -> schemas.InspectResponse:
    dataset, label = _load_dataset(req.dataset)
    schema = dataset.schema
    manifest = make_manifest("inspect", label, {}, seed=None)
    return schemas.InspectResponse(
        manifest=manifest,
        n_rows=dataset.n,
        class_attribute=schema.class_attribute,
        class_counts=dict(dataset.class_counts()),
        attributes=[
            schemas.AttributeSummary(name=a, n_values=len(vals), values=list(vals))
            for a, vals in zip(schema.attributes, schema.value_dicts)
        ],
    )


def do_train(req: schemas.TrainRequest) -> schemas.TrainResponse:
    dataset, label = _load_dataset(req.dataset)
    config = _model_config(req.model, folds=10, seed=req.seed)
    manifest = make_manifest("train", label, config_params(config), seed=req.seed)
    fitted = train_model(dataset, config)
    merge_text = None
    if fitted.merge_report is not None:
        merge_text = merge_report_text(fitted.merge_report, dataset.schema.class_attribute)
    default = fitted.model.default_class if isinstance(fitted.model, Classifier) else None
    return schemas.TrainResponse(
        manifest=manifest,
        model_text=dump_model(fitted.model, manifest),
        provenance=fitted.model.provenance,
        n_rules=fitted.n_rules,
        n_cars=fitted.n_cars,
        default_class=default,
        merge_report=merge_text,
    )


def do_predict(req: schemas.PredictRequest) -> schemas.PredictResponse:
    model = load_model(req.model_text)
    header, rows = read_plain_csv(req.csv_text, source="<predict input>")
    missing = [a for a in model.attributes if a not in header]
    if missing:
        raise InputError(f"input CSV is missing model attribute column(s): {missing}")
    if "predicted" in header:
        raise InputError("input CSV already has a 'predicted' column")
    predictions = []
    out_lines = [",".join(header + ["predicted"])]
    for cells in rows:
        values = dict(zip(header, cells))
        label = model.predict(values)
        predictions.append(label)
        out_lines.append(",".join(cells + [label]))
    return schemas.PredictResponse(predictions=predictions, csv_text="\n".join(out_lines) + "\n")


def do_eval(req: schemas.EvalRequest) -> schemas.EvalResponse:
    dataset, label = _load_dataset(req.dataset)
    config = _model_config(req.model, folds=req.folds, seed=req.seed)
    manifest = make_manifest("eval", label, config_params(config), seed=req.seed)
    report = cross_validate(dataset, config, jobs=req.jobs)
    doc = cv_report_doc(report, manifest)
    return schemas.EvalResponse(
        manifest=manifest,
        folds=[schemas.FoldOut(**fold) for fold in doc["folds"]],
        average_error=schemas.FracOut(**doc["average_error"]),
        average_accuracy=schemas.FracOut(**doc["average_accuracy"]),
        rules_per_fold=doc["rules_per_fold"],
        report_text=render_report(doc),
    )


def do_bench(req: schemas.BenchRequest) -> schemas.BenchResponse:
    if not req.datasets:
        raise InputError("bench needs at least one dataset")
    config = _model_config(req.model, folds=req.folds, seed=req.seed)
    scenarios = None
    if req.scenarios is not None:
        scenarios = [(s, c) for s, c in req.scenarios]
    manifest = make_manifest(
        "bench",
        ",".join(d.name for d in req.datasets),
        config_params(config),
        seed=req.seed,
    )
    results: dict[str, dict] = {}
    entries = []
    for named in req.datasets:
        dataset = parse_csv(named.csv_text, named.class_column, source=named.name)
        scenario_report = run_scenarios(dataset, config, scenarios, jobs=req.jobs)
        results[named.name] = scenario_report_doc(scenario_report)
        meta = DatasetMeta(
            name=named.name,
            n_rows=dataset.n,
            n_attributes=len(dataset.schema.attributes),
            n_classes=len(dataset.schema.class_labels),
        )
        entries.extend((meta, cv) for _, _, cv in scenario_report.scenarios)
    groups = {
        grouping: [
            schemas.GroupRow(
                group=row["group"],
                mean_accuracy=schemas.FracOut(**frac(row["mean_accuracy"])),
                count=row["count"],
            )
            for row in group_report(entries, grouping)
        ]
        for grouping in GROUPINGS
    }
    doc = {
        "manifest": manifest,
        "results": results,
        "groups": {
            grouping: [row.model_dump() for row in rows] for grouping, rows in groups.items()
        },
    }
    return schemas.BenchResponse(
        manifest=manifest, results=results, groups=groups, report_text=render_report(doc)
    )
