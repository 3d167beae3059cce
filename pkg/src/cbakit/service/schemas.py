"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

Number = Union[float, str]


class DatasetIn(BaseModel):
    """A dataset given either inline as CSV text or as a server-side path."""

    csv_text: Optional[str] = None
    path: Optional[str] = None
    class_column: Optional[str] = None
    label: Optional[str] = None  # name used in manifests; defaults to path or "<inline>"

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.csv_text is None) == (self.path is None):
            raise ValueError("provide exactly one of csv_text or path")
        return self


class ModelParams(BaseModel):
    family: Literal["cba-odm1", "cba-odm2", "tree"] = "cba-odm1"
    minsup: Number = 0.15
    minconf: Number = 0.5
    prune: bool = True
    max_depth: int = 7
    min_rows: int = 2
    min_gain: float = 0.0


class FracOut(BaseModel):
    fraction: str
    decimal: float


class ItemOut(BaseModel):
    attribute: str
    value: str


class RuleOut(BaseModel):
    text: str
    items: list[ItemOut]
    class_label: str
    support: FracOut
    confidence: FracOut
    level: int
    ordinal: int


class MineRequest(BaseModel):
    dataset: DatasetIn
    minsup: Number = 0.15
    minconf: Number = 0.6


class MineResponse(BaseModel):
    manifest: dict
    rules: list[RuleOut]
    listing: str


class InspectRequest(BaseModel):
    dataset: DatasetIn


class AttributeSummary(BaseModel):
    name: str
    n_values: int
    values: list[str]


class InspectResponse(BaseModel):
    manifest: dict
    n_rows: int
    class_attribute: str
    class_counts: dict[str, int]
    attributes: list[AttributeSummary]


class TrainRequest(BaseModel):
    dataset: DatasetIn
    model: ModelParams = Field(default_factory=ModelParams)
    seed: int = 0


class TrainResponse(BaseModel):
    manifest: dict
    model_text: str
    provenance: str
    n_rules: int
    n_cars: int
    default_class: Optional[str] = None
    merge_report: Optional[str] = None


class PredictRequest(BaseModel):
    model_text: str
    csv_text: str


class PredictResponse(BaseModel):
    predictions: list[str]
    csv_text: str


class EvalRequest(BaseModel):
    dataset: DatasetIn
    model: ModelParams = Field(default_factory=ModelParams)
    folds: int = 10
    seed: int = 0
    jobs: int = 1


class FoldOut(BaseModel):
    fold: int
    error: FracOut
    n_rules: int
    n_cars: int
    test_rows: int
    seconds: float


class EvalResponse(BaseModel):
    manifest: dict
    folds: list[FoldOut]
    average_error: FracOut
    average_accuracy: FracOut
    rules_per_fold: list[int]
    report_text: str


class NamedDataset(BaseModel):
    name: str
    csv_text: str
    class_column: Optional[str] = None


class BenchRequest(BaseModel):
    datasets: list[NamedDataset]
    model: ModelParams = Field(default_factory=ModelParams)
    folds: int = 10
    seed: int = 0
    jobs: int = 1
    scenarios: Optional[list[tuple[Number, Number]]] = None  # None = the four defaults


class GroupRow(BaseModel):
    group: str
    mean_accuracy: FracOut
    count: int


class BenchResponse(BaseModel):
    manifest: dict
    results: dict[str, dict]  # dataset name -> {"scenarios": {key: cv doc}}
    groups: dict[str, list[GroupRow]]
    report_text: str


class HealthResponse(BaseModel):
    status: str
    version: str
