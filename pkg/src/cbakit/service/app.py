"""FastAPI application wrapping the core package."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import InputError
from . import core, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="cbakit",
        version=__version__,
        description=(
            "Associative classification service: rule mining, rule/tree model "
            "training, prediction, cross-validation, and scenario benchmarks "
            "over categorical CSV data."
        ),
    )

    @app.exception_handler(InputError)
    async def _input_error(_, exc: InputError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health() -> schemas.HealthResponse:
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/inspect", response_model=schemas.InspectResponse)
    def inspect(req: schemas.InspectRequest) -> schemas.InspectResponse:
        return core.do_inspect(req)

    @app.post("/mine", response_model=schemas.MineResponse)
    def mine(req: schemas.MineRequest) -> schemas.MineResponse:
        return core.do_mine(req)

    @app.post("/train", response_model=schemas.TrainResponse)
    def train(req: schemas.TrainRequest) -> schemas.TrainResponse:
        return core.do_train(req)

    @app.post("/predict", response_model=schemas.PredictResponse)
    def predict(req: schemas.PredictRequest) -> schemas.PredictResponse:
        return core.do_predict(req)

    @app.post("/eval", response_model=schemas.EvalResponse)
    def evaluate(req: schemas.EvalRequest) -> schemas.EvalResponse:
        return core.do_eval(req)

    @app.post("/bench", response_model=schemas.BenchResponse)
    def bench(req: schemas.BenchRequest) -> schemas.BenchResponse:
        return core.do_bench(req)

    return app


app = create_app()
