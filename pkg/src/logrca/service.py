"""HTTP service exposing the analysis pipeline.

Stateless: every request carries a full configuration and references an
input file readable by the service process. The CLI calls the same handler
functions in-process, so local runs and served runs share one code path.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .config import RunConfig
from .errors import AnalysisError, ConfigError
from .pipeline import benchmark, run_analysis, sweep
from .report import ReportDocument
from .synth import GeneratorSpec, generate_log, to_csv


class SweepRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: RunConfig
    axis: Literal["min_support", "min_lift"]
    values: list[float]


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    count: int


class SweepResponse(BaseModel):
    model_config = ConfigDict(frozen=True)

    axis: str
    points: list[SweepPoint]


class BenchmarkRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: RunConfig
    algorithms: list[Literal["apriori", "fpgrowth"]] = Field(
        default_factory=lambda: ["apriori", "fpgrowth"]
    )
    thread_counts: list[int] = Field(default_factory=lambda: [1])
    min_groups: int = 2


class BenchmarkRunModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    algorithm: str
    threads: int
    mine_ms: float
    item_set_count: int


class BenchmarkResponse(BaseModel):
    model_config = ConfigDict(frozen=True)

    groups: int
    positives: int
    negatives: int
    prepare_ms: dict[str, float]
    runs: list[BenchmarkRunModel]


class GenerateRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: int = 50_000
    seed: int = 7
    positive_fraction: float = 0.1
    planted_lengths: list[int] = Field(default_factory=lambda: [5, 2])
    rule_cardinality: int = 4
    noise_columns: int = 3
    noise_cardinality: int = 3
    negative_match_rate: float = 0.5
    noise_rate: float = 0.02
    id_column: bool = False
    duplicates: int = 1


def handle_analyze(config: RunConfig) -> ReportDocument:
    return run_analysis(config)


def handle_sweep(request: SweepRequest) -> SweepResponse:
    points = sweep(request.config, request.axis, request.values)
    return SweepResponse(
        axis=request.axis,
        points=[SweepPoint(value=v, count=c) for v, c in points],
    )


def handle_benchmark(request: BenchmarkRequest) -> BenchmarkResponse:
    result = benchmark(
        request.config,
        request.algorithms,
        request.thread_counts,
        min_groups=request.min_groups,
    )
    return BenchmarkResponse(
        groups=result.groups,
        positives=result.positives,
        negatives=result.negatives,
        prepare_ms=result.prepare_ms,
        runs=[
            BenchmarkRunModel(
                algorithm=r.algorithm,
                threads=r.threads,
                mine_ms=r.mine_ms,
                item_set_count=r.item_set_count,
            )
            for r in result.rows
        ],
    )


def handle_generate(request: GenerateRequest) -> str:
    spec = GeneratorSpec(
        rows=request.rows,
        seed=request.seed,
        positive_fraction=request.positive_fraction,
        planted_lengths=tuple(request.planted_lengths),
        rule_cardinality=request.rule_cardinality,
        noise_columns=request.noise_columns,
        noise_cardinality=request.noise_cardinality,
        negative_match_rate=request.negative_match_rate,
        noise_rate=request.noise_rate,
        id_column=request.id_column,
        duplicates=request.duplicates,
    )
    return to_csv(generate_log(spec).log)


def create_app() -> FastAPI:
    app = FastAPI(title="logrca", version=__version__)

    @app.exception_handler(ConfigError)
    async def _config_error(request: Request, exc: ConfigError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(AnalysisError)
    async def _analysis_error(request: Request, exc: AnalysisError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(OSError)
    async def _io_error(request: Request, exc: OSError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/analyze", response_model=ReportDocument, response_model_exclude_none=True)
    def analyze(config: RunConfig):
        return handle_analyze(config)

    @app.post("/sweep", response_model=SweepResponse)
    def run_sweep(request: SweepRequest):
        return handle_sweep(request)

    @app.post("/benchmark", response_model=BenchmarkResponse)
    def run_benchmark(request: BenchmarkRequest):
        return handle_benchmark(request)

    @app.post("/generate", response_class=PlainTextResponse)
    def generate(request: GenerateRequest):
        return PlainTextResponse(handle_generate(request), media_type="text/csv")

    return app


app = create_app()
