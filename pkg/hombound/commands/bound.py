import logging

from hombound.commands import load_gposet, load_graph
from hombound.errors import TheoremViolationError
from hombound.graph_core import chromatic_number
from hombound.graph_io import load_document
from hombound.hom_builder import HomPoset, build_compat_graph
from hombound.router import CommandRouter, RunContext
from hombound.schemas import (
    ColoringSchema,
    CertificateSchema,
    LambdaSchema,
    TestGraphSchema,
    VerificationSchema,
)
from hombound.theorem_engine import bound_certificate, construct_lambda, test_graph_check, verify_lambda

logger = logging.getLogger(__name__)

router = CommandRouter()


def _supplied_coloring(ctx: RunContext):
    if not ctx.config.coloring:
        return None
    with ctx.stage("parse"):
        return load_document(ctx.config.coloring, ColoringSchema).to_domain()


@router.command("bound")
def bound(ctx: RunContext) -> dict:
    config = ctx.config
    p = load_gposet(ctx)
    h = p.source.H if isinstance(p.source, HomPoset) else None
    coloring = _supplied_coloring(ctx)
    with ctx.stage("certificate"):
        cert = bound_certificate(p, h, coloring, config.dim_cap, config.primes, caps=config.caps)
    ctx.warnings.extend(cert.warnings)
    payload = CertificateSchema.from_domain(cert).model_dump()
    ctx.summary.update(
        template="certificate",
        lower_bound=cert.lower_bound,
        chi_cp=cert.chi_cp,
        chi_h=cert.chi_h,
        conn_h=cert.conn_h,
        group_order=cert.group_order,
        links=payload["chain"],
        vacuous=cert.vacuous,
    )
    return payload


@router.command("verify-lambda")
def verify(ctx: RunContext) -> dict:
    """Build the lambda map from --coloring, or an optimal coloring of C_P,
    and report every equivariance, simpliciality and range violation."""
    config = ctx.config
    p = load_gposet(ctx)
    with ctx.stage("compat"):
        compat = build_compat_graph(p)
    supplied = _supplied_coloring(ctx)
    with ctx.stage("lambda"):
        if supplied is None:
            _, coloring = chromatic_number(compat, config.caps.max_backtrack_nodes)
            proper = True
        else:
            coloring = supplied
            proper = len(coloring) == p.element_count and coloring.is_proper(compat)
            if not proper:
                ctx.warn("supplied coloring is not a proper coloring of C_P; checks run on the raw construction")
        m = construct_lambda(p, coloring, compat, validate=proper)
        report = verify_lambda(m)
    if proper and not report.ok:
        raise TheoremViolationError(f"lambda map from a proper coloring has {report.violation_count} violations")
    ctx.summary.update(ok=report.ok, violations=report.violation_count, colors=coloring.color_count)
    return {
        "proper": proper,
        "lambda": LambdaSchema.from_domain(m).model_dump(),
        "verification": VerificationSchema.from_domain(report).model_dump(),
    }


@router.command("test-graph")
def test_graph(ctx: RunContext) -> dict:
    ctx.require("T", "H")
    config = ctx.config
    T, H = load_graph(ctx, config.T), load_graph(ctx, config.H)
    with ctx.stage("test-graph"):
        report = test_graph_check(T, H, config.dim_cap, config.primes, caps=config.caps)
    ctx.warnings.extend(report.connectivity.warnings)
    payload = TestGraphSchema.from_domain(report).model_dump()
    shown = ("test_graph", "k", "chi_t", "chi_h", "required", "slack", "holds", "vacuous")
    ctx.summary.update({key: payload[key] for key in shown})
    ctx.summary.update(template="test_graph", instance=f"Hom({config.T}, {config.H})")
    return payload


test_graph.__test__ = False
