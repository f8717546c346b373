"""Command-line client for the analysis service.

Each subcommand builds the same request models the HTTP service accepts and
dispatches them either in-process (default) or to a running server
(``--server URL``), then writes the response. All analysis logic lives in
the core package; this module only parses flags and moves bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from pydantic import ValidationError

from . import __version__, service
from .config import BucketSpec, RunConfig, config_error_from_validation
from .errors import AnalysisError, ConfigError
from .report import (
    ReportDocument,
    curve_to_csv,
    report_to_csv,
    report_to_json,
)

USAGE_EXIT = 2
DATA_EXIT = 1


def _split_csv(text: str) -> list[str]:
    return [part for part in text.split(",") if part != ""]


def add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="path to the structured log")
    parser.add_argument("--format", default="csv", help="csv or jsonl")
    parser.add_argument("--label-column", required=True)
    parser.add_argument("--target-value", required=True)
    parser.add_argument(
        "--exclude-columns",
        default="",
        help="comma-separated feature columns to drop before aggregation",
    )
    parser.add_argument("--distinct-ratio-threshold", type=float, default=0.02)
    parser.add_argument(
        "--bucketize",
        action="append",
        default=[],
        metavar="COL:t1,t2,...:l1,l2,...",
        help="replace a numeric column by interval labels; repeatable",
    )
    parser.add_argument("--min-support", type=float, default=0.4)
    parser.add_argument("--max-length", type=int, default=5)
    parser.add_argument("--min-lift", type=float, default=1.0)
    parser.add_argument("--h-lift", type=float, default=1.0)
    parser.add_argument("--h-supp", type=float, default=1.0)
    parser.add_argument("--algorithm", default="auto", help="apriori, fpgrowth, or auto")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--null-as-item", action="store_true")
    parser.add_argument(
        "--no-pre-aggregate",
        action="store_true",
        help="keep one unit-weight record per row (benchmarking only)",
    )
    parser.add_argument(
        "--no-timings", action="store_true", help="omit timings for reproducible bytes"
    )
    parser.add_argument("--output", default=None, help="output path (default stdout)")
    parser.add_argument("--output-format", default="json", help="json or csv")


def build_config(args: argparse.Namespace) -> RunConfig:
    buckets = [BucketSpec.parse(d) for d in args.bucketize]
    try:
        return RunConfig(
            input=args.input,
            format=args.format,
            label_column=args.label_column,
            target_value=args.target_value,
            exclude_columns=_split_csv(args.exclude_columns),
            distinct_ratio_threshold=args.distinct_ratio_threshold,
            bucketize=buckets,
            min_support=args.min_support,
            max_length=args.max_length,
            min_lift=args.min_lift,
            h_lift=args.h_lift,
            h_supp=args.h_supp,
            algorithm=args.algorithm,
            threads=args.threads,
            null_as_item=args.null_as_item,
            aggregate=not args.no_pre_aggregate,
            include_timings=not args.no_timings,
            output=args.output,
            output_format=args.output_format,
        )
    except ValidationError as exc:
        raise config_error_from_validation(exc) from None


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _post(server: str, route: str, payload: dict):
    import httpx

    response = httpx.post(f"{server.rstrip('/')}{route}", json=payload, timeout=600.0)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise ConfigError(detail) if response.status_code == 422 else AnalysisError(detail)
    return response


def cmd_analyze(args: argparse.Namespace) -> int:
    config = build_config(args)
    if args.server:
        response = _post(args.server, "/analyze", config.model_dump())
        document = ReportDocument.model_validate(response.json())
    else:
        document = service.handle_analyze(config)
    if config.output_format == "csv":
        _write(report_to_csv(document), config.output)
    else:
        _write(report_to_json(document), config.output)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    config = build_config(args)
    try:
        values = [float(v) for v in _split_csv(args.values)]
    except ValueError:
        raise ConfigError("values must be numbers", flag="--values") from None
    request = service.SweepRequest(config=config, axis=args.axis, values=values)
    if args.server:
        response = _post(args.server, "/sweep", request.model_dump())
        result = service.SweepResponse.model_validate(response.json())
    else:
        result = service.handle_sweep(request)
    points = [(p.value, p.count) for p in result.points]
    if config.output_format == "json":
        _write(result.model_dump_json(indent=2) + "\n", config.output)
    else:
        _write(curve_to_csv(points), config.output)
    return 0


def cmd_benchmark(args: argparse.Namespace) -> int:
    config = build_config(args)
    try:
        thread_counts = [int(v) for v in _split_csv(args.thread_counts)]
    except ValueError:
        raise ConfigError("thread counts must be integers", flag="--thread-counts") from None
    request = service.BenchmarkRequest(
        config=config,
        algorithms=_split_csv(args.algorithms),
        thread_counts=thread_counts,
        min_groups=args.min_groups,
    )
    if args.server:
        response = _post(args.server, "/benchmark", request.model_dump())
        result = service.BenchmarkResponse.model_validate(response.json())
    else:
        result = service.handle_benchmark(request)
    if config.output_format == "json":
        _write(result.model_dump_json(indent=2) + "\n", config.output)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["algorithm", "threads", "mine_ms", "item_set_count"])
        for run in result.runs:
            writer.writerow([run.algorithm, run.threads, run.mine_ms, run.item_set_count])
        _write(buf.getvalue(), config.output)
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        request = service.GenerateRequest(
            rows=args.rows,
            seed=args.seed,
            positive_fraction=args.positive_fraction,
            planted_lengths=[int(v) for v in _split_csv(args.planted_lengths)],
            rule_cardinality=args.rule_cardinality,
            noise_columns=args.noise_columns,
            noise_cardinality=args.noise_cardinality,
            negative_match_rate=args.negative_match_rate,
            noise_rate=args.noise_rate,
            id_column=args.id_column,
            duplicates=args.duplicates,
        )
    except (ValidationError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise config_error_from_validation(exc) from None
        raise ConfigError("planted lengths must be integers", flag="--planted-lengths") from None
    if args.server:
        response = _post(args.server, "/generate", request.model_dump())
        text = response.text
    else:
        text = service.handle_generate(request)
    _write(text, args.output)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logrca",
        description="Mine structured logs for column=value combinations "
        "correlated with a failure label.",
    )
    parser.add_argument("--version", action="version", version=f"logrca {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="run the full analysis pipeline")
    add_config_arguments(p_analyze)
    p_analyze.add_argument("--server", default=None, help="dispatch to a running service")
    p_analyze.set_defaults(func=cmd_analyze)

    p_sweep = sub.add_parser("sweep", help="mined/reported counts across a parameter range")
    add_config_arguments(p_sweep)
    p_sweep.add_argument("--axis", required=True, choices=["min_support", "min_lift"])
    p_sweep.add_argument("--values", required=True, help="ascending comma-separated values")
    p_sweep.add_argument("--server", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_bench = sub.add_parser("benchmark", help="time algorithms on one dataset")
    add_config_arguments(p_bench)
    p_bench.add_argument("--algorithms", default="apriori,fpgrowth")
    p_bench.add_argument("--thread-counts", default="1")
    p_bench.add_argument("--min-groups", type=int, default=2)
    p_bench.add_argument("--server", default=None)
    p_bench.set_defaults(func=cmd_benchmark)

    p_gen = sub.add_parser("generate", help="write a seeded synthetic dataset")
    p_gen.add_argument("--rows", type=int, default=50_000)
    p_gen.add_argument("--seed", type=int, default=7)
    p_gen.add_argument("--positive-fraction", type=float, default=0.1)
    p_gen.add_argument("--planted-lengths", default="5,2")
    p_gen.add_argument("--rule-cardinality", type=int, default=4)
    p_gen.add_argument("--noise-columns", type=int, default=3)
    p_gen.add_argument("--noise-cardinality", type=int, default=3)
    p_gen.add_argument("--negative-match-rate", type=float, default=0.5)
    p_gen.add_argument("--noise-rate", type=float, default=0.02)
    p_gen.add_argument("--id-column", action="store_true")
    p_gen.add_argument("--duplicates", type=int, default=1)
    p_gen.add_argument("--output", default=None)
    p_gen.add_argument("--server", default=None)
    p_gen.set_defaults(func=cmd_generate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
