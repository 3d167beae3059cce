"""Command-line client for the service layer.

Every subcommand builds the same request model the HTTP endpoints accept and
either calls the endpoint logic in process (default) or POSTs it to a running
service given via --server. The CLI owns all file I/O; computation happens in
the service layer.

Exit codes: 0 success, 2 bad input (paths, flags, data, model format),
1 internal failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import CbakitError, InputError
from .service import core, schemas

_ENDPOINTS = {
    "mine": ("/mine", schemas.MineResponse, core.do_mine),
    "inspect": ("/inspect", schemas.InspectResponse, core.do_inspect),
    "train": ("/train", schemas.TrainResponse, core.do_train),
    "predict": ("/predict", schemas.PredictResponse, core.do_predict),
    "eval": ("/eval", schemas.EvalResponse, core.do_eval),
    "bench": ("/bench", schemas.BenchResponse, core.do_bench),
}


def _call(command: str, request, server: str | None):
    path, response_model, local = _ENDPOINTS[command]
    if server is None:
        return local(request)
    import httpx

    reply = httpx.post(
        server.rstrip("/") + path, json=request.model_dump(mode="json"), timeout=600.0
    )
    if reply.status_code in (400, 422):
        raise InputError(f"server rejected the request: {reply.text}")
    reply.raise_for_status()
    return response_model.model_validate(reply.json())


def _read_text(path: str, what: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"{what} not found: {path}")
    return p.read_text(encoding="utf-8")


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _dataset_in(args) -> schemas.DatasetIn:
    return schemas.DatasetIn(
        csv_text=_read_text(args.dataset, "dataset file"),
        class_column=args.class_col,
        label=args.dataset,
    )


def _model_params(args) -> schemas.ModelParams:
    return schemas.ModelParams(
        family=args.model,
        minsup=args.minsup,
        minconf=args.minconf,
        prune=not args.no_prune,
        max_depth=args.max_depth,
        min_rows=args.min_rows,
        min_gain=args.min_gain,
    )


def _cmd_mine(args) -> int:
    req = schemas.MineRequest(dataset=_dataset_in(args), minsup=args.minsup, minconf=args.minconf)
    resp = _call("mine", req, args.server)
    _emit(resp.listing, args.output)
    return 0


def _cmd_inspect(args) -> int:
    resp = _call("inspect", schemas.InspectRequest(dataset=_dataset_in(args)), args.server)
    _emit(resp.model_dump_json(indent=2) + "\n", args.output)
    return 0


def _cmd_train(args) -> int:
    req = schemas.TrainRequest(dataset=_dataset_in(args), model=_model_params(args), seed=args.seed)
    resp = _call("train", req, args.server)
    _emit(resp.model_text, args.output)
    if args.merge_report:
        if resp.merge_report is None:
            raise InputError("--merge-report is only produced by the cba-odm2 family")
        Path(args.merge_report).write_text(resp.merge_report, encoding="utf-8")
    return 0


def _cmd_predict(args) -> int:
    req = schemas.PredictRequest(
        model_text=_read_text(args.model_file, "model file"),
        csv_text=_read_text(args.input, "input CSV"),
    )
    resp = _call("predict", req, args.server)
    _emit(resp.csv_text, args.output)
    return 0


def _cmd_eval(args) -> int:
    req = schemas.EvalRequest(
        dataset=_dataset_in(args),
        model=_model_params(args),
        folds=args.folds,
        seed=args.seed,
        jobs=args.jobs,
    )
    resp = _call("eval", req, args.server)
    _emit(resp.report_text, args.output)
    return 0


def _parse_scenarios(text: str) -> list[tuple[str, str]]:
    out = []
    for chunk in text.split(","):
        minsup, sep, minconf = chunk.partition(":")
        if not sep:
            raise InputError(f"bad scenario {chunk!r}; expected minsup:minconf")
        out.append((minsup.strip(), minconf.strip()))
    return out


def _cmd_bench(args) -> int:
    directory = Path(args.datadir)
    if not directory.is_dir():
        raise InputError(f"dataset directory not found: {args.datadir}")
    files = sorted(directory.glob("*.csv"))
    if not files:
        raise InputError(f"no .csv files in {args.datadir}")
    datasets = [
        schemas.NamedDataset(
            name=f.name, csv_text=f.read_text(encoding="utf-8"), class_column=args.class_col
        )
        for f in files
    ]
    req = schemas.BenchRequest(
        datasets=datasets,
        model=_model_params(args),
        folds=args.folds,
        seed=args.seed,
        jobs=args.jobs,
        scenarios=_parse_scenarios(args.scenarios) if args.scenarios else None,
    )
    resp = _call("bench", req, args.server)
    _emit(resp.report_text, args.output)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("cbakit.service.app:app", host=args.host, port=args.port)
    return 0


def _add_dataset_arg(parser) -> None:
    parser.add_argument("dataset", help="path to a CSV dataset (header line, class column last by default)")
    parser.add_argument("--class-col", default=None, help="class column name (default: last column)")


def _add_model_flags(parser, minconf_default: float) -> None:
    parser.add_argument("--model", default="cba-odm1", choices=["cba-odm1", "cba-odm2", "tree"])
    parser.add_argument("--minsup", default="0.15", help="minimum support fraction")
    parser.add_argument("--minconf", default=str(minconf_default), help="minimum confidence fraction")
    parser.add_argument("--no-prune", action="store_true", help="skip generalization pruning")
    parser.add_argument("--max-depth", type=int, default=7)
    parser.add_argument("--min-rows", type=int, default=2)
    parser.add_argument("--min-gain", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbakit", description="Associative classification benchmark client."
    )
    parser.add_argument("--server", default=None, help="base URL of a running service; default runs in process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine class association rules to a listing file")
    _add_dataset_arg(p)
    p.add_argument("--minsup", default="0.15")
    p.add_argument("--minconf", default="0.6")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("inspect", help="summarize a dataset")
    _add_dataset_arg(p)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_inspect)

    p = sub.add_parser("train", help="train a model and write its serialized form")
    _add_dataset_arg(p)
    _add_model_flags(p, minconf_default=0.5)
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--merge-report", default=None, help="also write the rule/tree arbitration report (cba-odm2)")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="apply a trained model to a CSV of rows")
    p.add_argument("model_file")
    p.add_argument("input", help="CSV with the model's attribute columns")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("eval", help="cross-validate a model family on one dataset")
    _add_dataset_arg(p)
    _add_model_flags(p, minconf_default=0.5)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", help="run the scenario protocol over every CSV in a directory")
    p.add_argument("datadir")
    p.add_argument("--class-col", default=None)
    _add_model_flags(p, minconf_default=0.5)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--scenarios", default=None, help="comma-separated minsup:minconf pairs (default: the four standard scenarios)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:  # pydantic validation of request models
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CbakitError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
