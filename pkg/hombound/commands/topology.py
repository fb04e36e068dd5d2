from hombound.commands import load_gposet
from hombound.errors import TheoremViolationError, TruncationError
from hombound.graph_io import load_document
from hombound.router import CommandRouter, RunContext
from hombound.schemas import ComplexSchema, ConnectivitySchema, IndexIntervalSchema
from hombound.topology import (
    action_is_simplicial,
    euler_characteristic,
    euler_matches_betti,
    homological_connectivity,
    index_interval,
    order_complex,
)

router = CommandRouter()


@router.command("homology")
def homology(ctx: RunContext) -> dict:
    """Reduced Betti numbers and homological connectivity of a complex, or of
    the order complex of a G-poset together with its index interval."""
    config = ctx.config
    p = None
    if config.complex:
        with ctx.stage("parse"):
            k = load_document(config.complex, ComplexSchema).to_domain(config.dim_cap)
        ctx.summary["instance"] = str(config.complex)
    else:
        p = load_gposet(ctx)
        with ctx.stage("order-complex"):
            k = order_complex(p, config.dim_cap, config.caps.max_chains)
            if not action_is_simplicial(p, k):
                raise TheoremViolationError("the group action does not map chains to chains")
    with ctx.stage("homology"):
        connectivity = homological_connectivity(k, config.primes)
    for message in connectivity.warnings:
        ctx.warnings.append(message)
    if k.is_truncated:
        ctx.warn(f"order complex truncated at dimension {k.dim_cap}; higher homology is not computed")

    payload = {
        "f_vector": k.f_vector,
        "dimension": k.dimension,
        "truncated": k.is_truncated,
        "connectivity": ConnectivitySchema.from_domain(connectivity).model_dump(),
    }
    if not k.is_truncated:
        payload["euler_characteristic"] = euler_characteristic(k)
        first = connectivity.betti[connectivity.primes[0]]
        try:
            payload["euler_consistent"] = euler_matches_betti(k, first)
        except TruncationError:
            payload["euler_consistent"] = None
    if p is not None and p.is_free:
        with ctx.stage("index"):
            interval = index_interval(p, connectivity=connectivity)
        payload["index"] = IndexIntervalSchema.from_domain(interval).model_dump()
    ctx.summary.update(f_vector=k.f_vector, connectivity=connectivity.value, capped=connectivity.capped)
    return payload
