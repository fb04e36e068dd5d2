"""The equivariant map built from a proper coloring of C_P, its verification,
and end-to-end bound certificates.

For a free G-poset P and a proper coloring c of C_P with C colors, each x is
sent to (g_x^-1, c(g_x.x)) where g_x.x carries the smallest color on the
orbit of x. The target is the free poset G x {1..C-|G|+1}, whose order
complex is an E_nG space with n = C - |G|; this yields
conn_H(P) + 1 + |G| <= chi(C_P).
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from hombound.algebra import GPoset
from hombound.config import Caps, settings
from hombound.errors import (
    ImpossibleStateError,
    PreconditionError,
    TheoremViolationError,
    WrongShapeError,
)
from hombound.graph_core import (
    Coloring,
    Graph,
    chromatic_number,
    is_complete_graph,
    is_even_cycle,
)
from hombound.hom_builder import (
    HomPoset,
    build_compat_graph,
    check_loops,
    hom_gposet,
    projection_hom,
)
from hombound.topology import (
    ConnectivityResult,
    IndexInterval,
    SimplicialComplex,
    build_EnG,
    chain_height,
    homological_connectivity,
    order_complex,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LambdaMap:
    source: GPoset
    target: GPoset
    assignment: tuple  # per element: (g_x^-1, color)
    coloring: Coloring

    @property
    def color_count(self) -> int:
        return self.coloring.color_count

    def target_index(self, x: int) -> int:
        g, color = self.assignment[x]
        return (color - 1) * self.source.group.order + g


@dataclass(frozen=True)
class LambdaVerification:
    equivariance_violations: tuple = ()
    simpliciality_violations: tuple = ()
    range_violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not (self.equivariance_violations or self.simpliciality_violations or self.range_violations)

    @property
    def violation_count(self) -> int:
        return len(self.equivariance_violations) + len(self.simpliciality_violations) + len(self.range_violations)


@dataclass(frozen=True)
class InequalityLink:
    name: str
    lhs: int
    rhs: int
    status: str  # "pass", "fail" or "vacuous"

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def _link(name: str, lhs: int, rhs: int, vacuous: bool = False) -> InequalityLink:
    status = "vacuous" if vacuous else ("pass" if lhs <= rhs else "fail")
    return InequalityLink(name, lhs, rhs, status)


@dataclass(frozen=True, eq=False)
class BoundCertificate:
    instance: dict
    connectivity: ConnectivityResult
    group_order: int
    chi_cp: int
    coloring: Coloring
    lambda_map: Optional[LambdaMap]
    verification: Optional[LambdaVerification]
    links: tuple
    index: IndexInterval
    chi_h: Optional[int] = None
    h_coloring: Optional[Coloring] = None
    vacuous: bool = False
    warnings: tuple = field(default=())

    @property
    def conn_h(self) -> int:
        return self.connectivity.value

    @property
    def lower_bound(self) -> int:
        return self.conn_h + 1 + self.group_order

    @property
    def holds(self) -> bool:
        return not any(link.failed for link in self.links)


@dataclass(frozen=True)
class TestGraphReport:
    __test__ = False

    test_graph: str
    k: int
    chi_t: int
    chi_h: int
    connectivity: ConnectivityResult
    element_count: int
    vacuous: bool = False

    @property
    def required(self) -> int:
        return self.k + 1 + self.chi_t

    @property
    def slack(self) -> int:
        return self.chi_h - self.required

    @property
    def holds(self) -> bool:
        return self.vacuous or self.slack >= 0


def _lambda_assignment(p: GPoset, colors: tuple, strict: bool) -> tuple:
    group = p.group
    assignment = []
    for x in range(p.element_count):
        orbit_colors = [colors[p.action[g, x]] for g in range(group.order)]
        lowest = min(orbit_colors)
        minimizers = [g for g, c in enumerate(orbit_colors) if c == lowest]
        if strict and len(minimizers) > 1:
            raise ImpossibleStateError(f"orbit of {p.label(x)} repeats its minimum color {lowest}; it is not a clique of C_P")
        g_x = minimizers[0]
        assignment.append((int(group.inverse[g_x]), lowest))
    return tuple(assignment)


def construct_lambda(p: GPoset, c: Coloring, compat: Optional[Graph] = None, *, validate: bool = True) -> LambdaMap:
    """x -> (g_x^-1, c(g_x.x)). validate=False skips the freeness and properness
    checks; orbit ties then go to the lowest group element."""
    if len(c) != p.element_count:
        raise PreconditionError(f"coloring covers {len(c)} elements, poset has {p.element_count}")
    if validate:
        if not p.is_free:
            raise PreconditionError("the lambda map needs a free action")
        compat = compat if compat is not None else build_compat_graph(p)
        conflicts = c.conflicts(compat)
        if conflicts:
            x, y = conflicts[0]
            raise PreconditionError(f"coloring is not proper on C_P: {p.label(x)} and {p.label(y)} share color {c[x]}")
    assignment = _lambda_assignment(p, c.assignment, strict=validate)
    levels = max(c.color_count - p.group.order, 0)
    if validate:
        too_high = [x for x, (_, color) in enumerate(assignment) if color > c.color_count - p.group.order + 1]
        if too_high:
            raise ImpossibleStateError(f"minimum orbit color of {p.label(too_high[0])} exceeds C - |G| + 1")
    target = build_EnG(p.group, levels)
    return LambdaMap(p, target, assignment, c)


def verify_lambda(m: LambdaMap) -> LambdaVerification:
    p = m.source
    group = p.group
    assignment = m.assignment
    equivariance = []
    for g in range(group.order):
        for x in range(p.element_count):
            h, color = assignment[x]
            if assignment[p.action[g, x]] != (int(group.mult[g, h]), color):
                equivariance.append((g, x))
    simpliciality = []
    for x, y in p.order.strict_pairs.tolist():
        (gx, cx), (gy, cy) = assignment[x], assignment[y]
        if cx == cy and gx != gy:
            simpliciality.append((x, y))
    ceiling = m.color_count - group.order + 1
    out_of_range = [x for x, (_, color) in enumerate(assignment) if not 1 <= color <= ceiling]
    report = LambdaVerification(tuple(equivariance), tuple(simpliciality), tuple(out_of_range))
    if not report.ok:
        logger.warning("lambda map has %d violations", report.violation_count)
    return report


def lambda_maps_chains_to_chains(m: LambdaMap, k: SimplicialComplex) -> bool:
    target = m.target.order
    image = [m.target_index(x) for x in range(m.source.element_count)]
    for d in range(1, k.dim_cap + 1):
        for simplex in k.simplices(d):
            points = sorted({image[v] for v in simplex})
            for a, b in zip(points, points[1:]):
                if not target.comparable(a, b):
                    return False
    return True


def describe_instance(p: GPoset) -> dict:
    hp = p.source
    if isinstance(hp, HomPoset):
        return {
            "kind": "hom",
            "F": {"n": hp.F.vertex_count, "edges": [list(e) for e in hp.F.sorted_edges()]},
            "H": {"n": hp.H.vertex_count, "edges": [list(e) for e in hp.H.sorted_edges()]},
            "elements": p.element_count,
            "group_order": p.group.order,
        }
    return {"kind": "gposet", "elements": p.element_count, "group_order": p.group.order}


def bound_certificate(p: GPoset, h: Optional[Graph] = None, coloring: Optional[Coloring] = None,
                      dim_cap: Optional[int] = None, primes: Optional[list] = None,
                      instance: Optional[dict] = None, caps: Optional[Caps] = None) -> BoundCertificate:
    """conn_H + 1 + |G| <= chi(C_P) <= chi(H), every link audited."""
    if not p.is_free:
        raise PreconditionError("bound certificates need a free action")
    group_order = p.group.order
    compat = build_compat_graph(p)
    loops = check_loops(compat)
    if not loops.loop_free:
        raise TheoremViolationError(f"C_P of a free G-poset has loops at {list(loops.loop_vertices)[:5]}")

    caps = caps or settings.caps
    complex_ = order_complex(p, dim_cap, caps.max_chains)
    connectivity = homological_connectivity(complex_, primes)
    chi_cp, optimal = chromatic_number(compat, caps.max_backtrack_nodes)
    upper = chain_height(p) - 1
    index = IndexInterval(connectivity.value + 1, upper, group_order, connectivity)
    vacuous = p.element_count == 0
    lower_bound = connectivity.value + 1 + group_order

    chi_h = h_coloring = None
    if h is not None:
        chi_h, h_coloring = chromatic_number(h, caps.max_backtrack_nodes)

    lambda_map = verification = None
    links = []
    if vacuous:
        logger.info("empty G-poset: the certificate is vacuous")
        links.append(_link("conn_H + 1 + |G| <= chi(C_P)", lower_bound, chi_cp, vacuous=True))
    else:
        used = coloring if coloring is not None else optimal
        lambda_map = construct_lambda(p, used, compat)
        verification = verify_lambda(lambda_map)
        if not verification.ok:
            raise TheoremViolationError(f"lambda map fails verification with {verification.violation_count} violations")
        if not lambda_maps_chains_to_chains(lambda_map, complex_):
            raise TheoremViolationError("lambda map sends a chain of P to a non-chain")
        colors_used = used.color_count
        links.append(_link("|G| <= chi(C_P)", group_order, chi_cp))
        links.append(_link("conn_H + 1 <= dim", index.lower, index.upper))
        links.append(_link("conn_H + 1 <= C - |G|", connectivity.value + 1, colors_used - group_order))
        links.append(_link("conn_H + 1 + |G| <= chi(C_P)", lower_bound, chi_cp))
    if h is not None:
        if isinstance(p.source, HomPoset) and not vacuous:
            projection_hom(p, compat)
        links.append(_link("chi(C_P) <= chi(H)", chi_cp, chi_h, vacuous=not isinstance(p.source, HomPoset)))

    certificate = BoundCertificate(
        instance=instance or describe_instance(p),
        connectivity=connectivity,
        group_order=group_order,
        chi_cp=chi_cp,
        coloring=optimal,
        lambda_map=lambda_map,
        verification=verification,
        links=tuple(links),
        index=index,
        chi_h=chi_h,
        h_coloring=h_coloring,
        vacuous=vacuous,
        warnings=connectivity.warnings,
    )
    failed = [link for link in links if link.failed]
    if failed:
        link = failed[0]
        raise TheoremViolationError(f"certificate link fails: {link.name}: {link.lhs} > {link.rhs}")
    logger.info("certified chi(C_P) >= %d (chi(C_P) = %d)", lower_bound, chi_cp)
    return certificate


def test_graph_check(T: Graph, H: Graph, dim_cap: Optional[int] = None, primes: Optional[list] = None,
                     caps: Optional[Caps] = None) -> TestGraphReport:
    """Check chi(H) >= k + 1 + chi(T) with k the homological connectivity of Hom(T, H)."""
    if H.has_loops:
        raise PreconditionError("the target graph must be loop-free")
    if is_complete_graph(T) and T.vertex_count >= 2:
        name, chi_t = f"K{T.vertex_count}", T.vertex_count
    elif is_even_cycle(T):
        name, chi_t = f"C{T.vertex_count}", 2
    else:
        raise WrongShapeError("test graph must be K_r with r >= 2 or an even cycle")
    caps = caps or settings.caps
    p = hom_gposet(T, H, caps)
    connectivity = homological_connectivity(order_complex(p, dim_cap, caps.max_chains), primes)
    chi_h, _ = chromatic_number(H, caps.max_backtrack_nodes)
    report = TestGraphReport(name, connectivity.value, chi_t, chi_h, connectivity, p.element_count,
                             vacuous=p.element_count == 0)
    if not report.holds:
        raise TheoremViolationError(f"{name} test-graph inequality fails: chi(H)={chi_h} < {report.required}")
    return report


test_graph_check.__test__ = False
