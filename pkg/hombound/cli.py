"""Command-line front end: parse flags into a RunConfig, dispatch to the
command routers and emit a JSON report plus a text summary on stderr."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from hombound import __version__
from hombound.commands import bound, graph, hom, topology
from hombound.config import Caps, settings
from hombound.errors import HomboundError, InvalidArgumentError
from hombound.rendering import render_summary
from hombound.router import CommandRouter, RunConfig, RunContext
from hombound.schemas import ErrorSchema, ReportSchema

logger = logging.getLogger(__name__)

dispatcher = CommandRouter()
dispatcher.include_router(graph.router)
dispatcher.include_router(hom.router)
dispatcher.include_router(topology.router)
dispatcher.include_router(bound.router)


def _execute(config: RunConfig) -> tuple:
    ctx = RunContext(config)
    report = ReportSchema(command=config.command, version=__version__)
    try:
        report.payload = dispatcher.resolve(config.command)(ctx)
    except HomboundError as exc:
        logger.error("%s failed: [%s] %s", config.command, exc.category, exc.detail)
        report.error = ErrorSchema(**exc.to_dict())
        report.exit_code = int(exc.exit_code)
        ctx.summary.pop("template", None)
    report.timings_ms = dict(ctx.timer.timings)
    report.warnings = list(dict.fromkeys(ctx.warnings))
    return report, ctx.summary


def run(config: RunConfig) -> ReportSchema:
    report, _ = _execute(config)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hombound", description="Certified chromatic lower bounds from Hom posets")
    parser.add_argument("command", choices=sorted(dispatcher.handlers))
    parser.add_argument("--T", help="test graph: a file or K<r>, C<m>, petersen, kneser:n:k")
    parser.add_argument("--H", help="target graph: a file or a named instance")
    parser.add_argument("--input", help="graph for chi")
    parser.add_argument("--poset", help="G-poset JSON file or eng:<r>:<n>")
    parser.add_argument("--complex", help="simplicial complex JSON file")
    parser.add_argument("--coloring", help="coloring JSON file for the lambda map")
    parser.add_argument("--format", choices=["dimacs-col", "json"], default="json", help="graph output format")
    parser.add_argument("--caps", help='JSON object overriding caps, e.g. {"max_elements": 5000}')
    parser.add_argument("--primes", help="comma-separated primes for homology")
    parser.add_argument("--dim-cap", type=int)
    parser.add_argument("--out", help="write the JSON report here instead of stdout")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("-q", "--quiet", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {
        key: getattr(args, key)
        for key in ("command", "T", "H", "input", "poset", "complex", "coloring", "format", "out")
        if getattr(args, key) is not None
    }
    values["verbosity"] = -1 if args.quiet else args.verbose
    if args.dim_cap is not None:
        values["dim_cap"] = args.dim_cap
    if args.primes:
        try:
            values["primes"] = [int(p) for p in args.primes.split(",")]
        except ValueError:
            raise InvalidArgumentError(f"--primes must be comma-separated integers, got {args.primes!r}")
    if args.caps:
        try:
            overrides = json.loads(args.caps)
            values["caps"] = Caps(**{**settings.caps.model_dump(), **overrides})
        except (json.JSONDecodeError, TypeError, ValidationError) as exc:
            raise InvalidArgumentError(f"--caps: {exc}")
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        error = exc.errors()[0]
        raise InvalidArgumentError(f"{'.'.join(map(str, error['loc']))}: {error['msg']}")


def configure_logging(verbosity: int):
    if verbosity < 0:
        level = logging.ERROR
    elif verbosity == 0:
        level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    else:
        level = logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except InvalidArgumentError as exc:
        configure_logging(0)
        report = ReportSchema(command=args.command, version=__version__, exit_code=int(exc.exit_code),
                              error=ErrorSchema(**exc.to_dict()))
        print(report.model_dump_json(indent=2))
        return report.exit_code
    configure_logging(config.verbosity)

    report, summary = _execute(config)
    text = report.model_dump_json(indent=2)
    if config.out:
        Path(config.out).write_text(text + "\n")
    else:
        print(text)
    if config.verbosity >= 0:
        sys.stderr.write(render_summary(report, summary))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
