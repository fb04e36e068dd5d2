"""Command handlers, one module per command group, each exposing `router`."""
from hombound.algebra import GPoset
from hombound.errors import InvalidArgumentError
from hombound.graph_core import Graph
from hombound.graph_io import load_document, named_eng, resolve_graph
from hombound.hom_builder import hom_gposet
from hombound.router import RunContext
from hombound.schemas import GPosetSchema


def load_graph(ctx: RunContext, spec: str) -> Graph:
    with ctx.stage("parse"):
        return resolve_graph(spec, warnings=ctx.warnings)


def load_gposet(ctx: RunContext) -> GPoset:
    """The G-poset named by --poset (a JSON file or eng:r:n), else Hom(T, H) with its action."""
    config = ctx.config
    if config.poset:
        with ctx.stage("parse"):
            p = named_eng(config.poset)
            if p is None:
                p = load_document(config.poset, GPosetSchema).to_domain()
        ctx.summary["instance"] = config.poset
        return p
    if not (config.T and config.H):
        raise InvalidArgumentError(f"{config.command} needs --poset or both --T and --H")
    T, H = load_graph(ctx, config.T), load_graph(ctx, config.H)
    with ctx.stage("build-hom"):
        p = hom_gposet(T, H, config.caps)
    ctx.summary["instance"] = f"Hom({config.T}, {config.H})"
    return p
