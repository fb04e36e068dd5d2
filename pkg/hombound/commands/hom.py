from hombound.algebra import orbits
from hombound.commands import load_gposet, load_graph
from hombound.errors import WrongShapeError
from hombound.graph_core import is_complete_graph
from hombound.graph_io import dumps_dimacs
from hombound.hom_builder import (
    attach_cyclic_action,
    attach_reflection_action,
    build_compat_graph,
    build_hom_poset,
    check_loops,
)
from hombound.router import CommandRouter, RunContext
from hombound.schemas import GraphSchema, HomPosetSchema

router = CommandRouter()


@router.command("build-hom")
def build_hom(ctx: RunContext) -> dict:
    ctx.require("T", "H")
    config = ctx.config
    F, H = load_graph(ctx, config.T), load_graph(ctx, config.H)
    with ctx.stage("build-hom"):
        hp = build_hom_poset(F, H, config.caps)
    payload = HomPosetSchema.from_domain(hp).model_dump()
    payload["count"] = len(hp)
    payload["comparable_pairs"] = len(hp.order.strict_pairs)
    try:
        p = attach_cyclic_action(hp) if is_complete_graph(F) else attach_reflection_action(hp)
    except WrongShapeError:
        payload["action"] = None
    else:
        payload["action"] = {"group_order": p.group.order, "free": p.is_free, "orbits": len(orbits(p))}
    ctx.summary.update(instance=f"Hom({config.T}, {config.H})", elements=len(hp))
    return payload


@router.command("compat")
def compat(ctx: RunContext) -> dict:
    p = load_gposet(ctx)
    with ctx.stage("compat"):
        c = build_compat_graph(p)
        loops = check_loops(c)
    if not loops.loop_free:
        ctx.warn(f"C_P has {len(loops.loop_vertices)} loops; the action is not free")
    payload = {
        "free": p.is_free,
        "loop_free": loops.loop_free,
        "loops": list(loops.loop_vertices),
    }
    if ctx.config.format == "dimacs-col":
        payload["dimacs"] = dumps_dimacs(c)
    else:
        payload["graph"] = GraphSchema.from_domain(c).model_dump(exclude_none=True)
    ctx.summary.update(elements=c.vertex_count, edges=c.edge_count, loop_free=loops.loop_free)
    return payload
