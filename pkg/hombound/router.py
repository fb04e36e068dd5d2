"""Command registry, run configuration and per-run context shared by the
command modules."""
import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from hombound.config import Caps, Primes, settings
from hombound.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

Command = Literal["build-hom", "compat", "homology", "bound", "verify-lambda", "chi", "test-graph"]


class RunConfig(BaseModel):
    command: Command
    T: Optional[str] = None
    H: Optional[str] = None
    input: Optional[str] = None
    poset: Optional[str] = None
    complex: Optional[Path] = None
    coloring: Optional[Path] = None
    format: Literal["dimacs-col", "json"] = "json"
    caps: Caps = Field(default_factory=lambda: settings.caps.model_copy())
    primes: Primes = Field(default_factory=lambda: list(settings.primes))
    dim_cap: int = Field(default_factory=lambda: settings.dim_cap, ge=1)
    out: Optional[Path] = None
    verbosity: int = 0


class StageTimer:
    """Wall-clock milliseconds per named stage, in the order the stages ran."""

    def __init__(self):
        self.timings: Dict[str, int] = {}

    @contextmanager
    def stage(self, name: str):
        logger.info("stage %s started", name)
        start = time.perf_counter_ns()
        try:
            yield
        finally:
            elapsed = (time.perf_counter_ns() - start) // 1_000_000
            self.timings[name] = self.timings.get(name, 0) + elapsed
            logger.info("stage %s finished in %d ms", name, elapsed)


class RunContext:
    def __init__(self, config: RunConfig):
        self.config = config
        self.timer = StageTimer()
        self.warnings: List[str] = []
        self.summary: dict = {}

    def stage(self, name: str):
        return self.timer.stage(name)

    def warn(self, message: str):
        logger.warning(message)
        self.warnings.append(message)

    def require(self, *fields: str):
        missing = [f for f in fields if getattr(self.config, f) in (None, "")]
        if missing:
            flags = ", ".join(f"--{f}" for f in missing)
            raise InvalidArgumentError(f"{self.config.command} needs {flags}")


Handler = Callable[[RunContext], dict]


class CommandRouter:
    def __init__(self):
        self.handlers: Dict[str, Handler] = {}

    def command(self, name: str):
        def register(handler: Handler) -> Handler:
            if name in self.handlers:
                raise ValueError(f"command {name!r} registered twice")
            self.handlers[name] = handler
            return handler

        return register

    def include_router(self, other: "CommandRouter"):
        for name, handler in other.handlers.items():
            self.command(name)(handler)

    def resolve(self, name: str) -> Handler:
        try:
            return self.handlers[name]
        except KeyError:
            raise InvalidArgumentError(f"unknown command {name!r}")
