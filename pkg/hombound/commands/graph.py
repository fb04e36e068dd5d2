from hombound.commands import load_graph
from hombound.graph_core import clique_lower_bound, chromatic_number
from hombound.router import CommandRouter, RunContext
from hombound.schemas import ColoringSchema

router = CommandRouter()


@router.command("chi")
def chi(ctx: RunContext) -> dict:
    spec = ctx.config.input or ctx.config.H
    if not spec:
        ctx.require("input")
    g = load_graph(ctx, spec)
    with ctx.stage("color"):
        value, coloring = chromatic_number(g, ctx.config.caps.max_backtrack_nodes)
    ctx.summary.update(instance=spec, chi=value)
    payload = ColoringSchema.from_domain(coloring).model_dump()
    payload.update(n=g.vertex_count, m=g.edge_count, clique_bound=clique_lower_bound(g))
    return payload
