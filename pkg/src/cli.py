"""
Command-line interface: run, verify, lemma and serve
"""

import argparse
import os
import sys
from typing import Dict, List, Optional, get_origin

from pydantic import ValidationError

from src import __version__
from src.core.config import settings
from src.core.exceptions import ConfigError, KrylovError
from src.core.logging import configure_logging, get_logger
from src.models.experiment import ExperimentConfig

log = get_logger("cli")

EXIT_OK = 0
EXIT_FAILURE = 1


def _is_list_field(name: str) -> bool:
    return get_origin(ExperimentConfig.model_fields[name].annotation) is list


def parse_config_text(text: str, path: Optional[str] = None) -> ExperimentConfig:
    """Parse ``key = value`` lines; lists are comma-separated, ``#`` starts a comment"""
    raw: Dict[str, object] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number} is not 'key = value'", path=path)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in ExperimentConfig.model_fields:
            raise ConfigError("unknown key", path=path, key=key)
        if key in raw:
            raise ConfigError("duplicate key", path=path, key=key)
        if _is_list_field(key):
            raw[key] = [item.strip() for item in value.strip("[]").split(",") if item.strip()]
        else:
            raw[key] = value

    try:
        return ExperimentConfig(**raw)
    except ValidationError as exc:
        error = exc.errors()[0]
        key = str(error["loc"][0]) if error["loc"] else None
        raise ConfigError(error["msg"], path=path, key=key) from exc


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise ConfigError(f"cannot read ({exc.strerror})", path=path) from exc
    return parse_config_text(text, path=path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krylov-spread",
        description="Krylov and spread complexity of the open SYK model",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="loguru level (default from settings)")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run an experiment and write result tables")
    run.add_argument("--config", required=True, help="key = value configuration file")
    run.add_argument("--seed", type=int, default=None, help="override the configured seed")
    run.add_argument("--workers", type=int, default=None, help="worker processes")
    run.add_argument("--out", default=None, help="override the outputs directory")

    commands.add_parser("verify", help="run the oracle and invariant suite")

    lemma = commands.add_parser("lemma", help="run the small-time lemma sweeps")
    lemma.add_argument("--config", required=True)
    lemma.add_argument("--out", default=None)

    serve = commands.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _run(args: argparse.Namespace) -> int:
    from src.services.experiment_service import experiment_service

    config = load_config(args.config)
    if args.seed is not None:
        config = ExperimentConfig(**{**config.model_dump(), "seed": args.seed})
    manifest = experiment_service.run_and_emit(config, workers=args.workers, outputs=args.out)
    for name, holds in manifest.trends.items():
        log.info("{}: {}", name, holds)
    return EXIT_OK


def _verify(_: argparse.Namespace) -> int:
    from src.services.verification_service import verification_service

    report = verification_service.run()
    return EXIT_OK if report.passed else EXIT_FAILURE


def _lemma(args: argparse.Namespace) -> int:
    from src.services.lemma_service import lemma_service

    reports = lemma_service.run_and_save(load_config(args.config), outputs=args.out)
    failed = [r for r in reports if not r.passed]
    log.info("{} of {} lemma reports passed", len(reports) - len(failed), len(reports))
    return EXIT_OK if not failed else EXIT_FAILURE


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("src.api.main:app", host=args.host, port=args.port)
    return EXIT_OK


COMMANDS = {"run": _run, "verify": _verify, "lemma": _lemma, "serve": _serve}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or os.environ.get("KRYLOV_LOG_LEVEL") or settings.log_level)
    try:
        return COMMANDS[args.command](args)
    except KrylovError as exc:
        log.error("{}: {}", type(exc).__name__, exc)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
