from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from hombound.algebra import FiniteGroup, GPoset, make_gposet
from hombound.graph_core import Coloring, Graph
from hombound.hom_builder import HomPoset
from hombound.topology import BettiVector, ConnectivityResult, IndexInterval, SimplicialComplex


class GraphSchema(BaseModel):
    n: int = Field(ge=0)
    edges: List[Tuple[int, int]] = []
    labels: Optional[List[str]] = None

    @classmethod
    def from_domain(cls, g: Graph) -> "GraphSchema":
        return cls(n=g.vertex_count, edges=g.sorted_edges(), labels=list(g.labels) if g.labels else None)

    def to_domain(self) -> Graph:
        return Graph.from_edges(self.n, self.edges, self.labels)


class ColoringSchema(BaseModel):
    chi: int
    colors: List[int]

    @classmethod
    def from_domain(cls, c: Coloring) -> "ColoringSchema":
        return cls(chi=c.color_count, colors=list(c.assignment))

    def to_domain(self) -> Coloring:
        return Coloring.normalized(self.colors)


class GroupSchema(BaseModel):
    order: int = Field(ge=1)
    mult: List[List[int]]
    labels: Optional[List[str]] = None

    @model_validator(mode="after")
    def square_table(self) -> "GroupSchema":
        if len(self.mult) != self.order or any(len(row) != self.order for row in self.mult):
            raise ValueError(f"mult must be an {self.order} x {self.order} table")
        return self

    @classmethod
    def from_domain(cls, group: FiniteGroup) -> "GroupSchema":
        return cls(order=group.order, mult=group.mult.tolist(), labels=list(group.labels) or None)

    def to_domain(self) -> FiniteGroup:
        return FiniteGroup.from_table(self.mult, self.labels or ())


class GPosetSchema(BaseModel):
    n: int = Field(ge=0)
    leq: List[Tuple[int, int]] = []
    group: GroupSchema
    action: List[List[int]]
    labels: Optional[List[str]] = None

    @model_validator(mode="after")
    def action_shape(self) -> "GPosetSchema":
        if self.n and (len(self.action) != self.group.order or any(len(row) != self.n for row in self.action)):
            raise ValueError(f"action must have {self.group.order} rows of {self.n} entries")
        return self

    @classmethod
    def from_domain(cls, p: GPoset) -> "GPosetSchema":
        return cls(
            n=p.element_count,
            leq=[tuple(pair) for pair in p.order.strict_pairs.tolist()],
            group=GroupSchema.from_domain(p.group),
            action=p.action.tolist(),
            labels=list(p.labels) if p.labels else None,
        )

    def to_domain(self) -> GPoset:
        group = self.group.to_domain()
        action = self.action if self.n else [[] for _ in range(group.order)]
        return make_gposet(self.n, self.leq, group, action, self.labels)


class HomPosetSchema(BaseModel):
    F: GraphSchema
    H: GraphSchema
    elements: List[List[List[int]]]

    @classmethod
    def from_domain(cls, hp: HomPoset) -> "HomPosetSchema":
        return cls(
            F=GraphSchema.from_domain(hp.F),
            H=GraphSchema.from_domain(hp.H),
            elements=[[e.members(i) for i in range(len(e.cells))] for e in hp.elements],
        )


class ComplexSchema(BaseModel):
    vertex_count: int = Field(ge=0)
    facets: List[List[int]]
    dim_cap: Optional[int] = None
    f_vector: Optional[List[int]] = None
    truncated: bool = False

    @classmethod
    def from_domain(cls, k: SimplicialComplex) -> "ComplexSchema":
        return cls(
            vertex_count=k.vertex_count,
            facets=[list(s) for s in k.facets()],
            dim_cap=k.dim_cap,
            f_vector=k.f_vector,
            truncated=k.is_truncated,
        )

    def to_domain(self, dim_cap: Optional[int] = None) -> SimplicialComplex:
        return SimplicialComplex.from_facets(self.vertex_count, self.facets, dim_cap if dim_cap is not None else self.dim_cap)


class BettiSchema(BaseModel):
    p: int
    betti: List[int]
    truncated: bool = False
    empty: bool = False

    @classmethod
    def from_domain(cls, b: BettiVector) -> "BettiSchema":
        return cls(p=b.field_prime, betti=list(b.reduced_betti), truncated=b.truncated, empty=b.is_empty)


class ConnectivitySchema(BaseModel):
    value: int
    qualifier: str
    primes: List[int]
    betti: List[BettiSchema]
    capped: bool
    truncated: bool
    acyclic: bool
    notes: List[str] = []
    warnings: List[str] = []

    @classmethod
    def from_domain(cls, c: ConnectivityResult) -> "ConnectivitySchema":
        return cls(
            value=c.value,
            qualifier=c.qualifier,
            primes=list(c.primes),
            betti=[BettiSchema.from_domain(c.betti[p]) for p in c.primes],
            capped=c.capped,
            truncated=c.truncated,
            acyclic=c.acyclic,
            notes=list(c.notes),
            warnings=list(c.warnings),
        )


class IndexIntervalSchema(BaseModel):
    lower: int
    upper: int
    group_order: int

    @classmethod
    def from_domain(cls, interval: IndexInterval) -> "IndexIntervalSchema":
        return cls(lower=interval.lower, upper=interval.upper, group_order=interval.group_order)


class LambdaEntry(BaseModel):
    element: int
    label: str
    group_element: str
    color: int


class LambdaSchema(BaseModel):
    colors: int
    group_order: int
    target_levels: int
    target_index: int
    table: List[LambdaEntry]

    @classmethod
    def from_domain(cls, m) -> "LambdaSchema":
        group = m.source.group
        return cls(
            colors=m.color_count,
            group_order=group.order,
            target_levels=m.color_count - group.order + 1,
            target_index=m.color_count - group.order,
            table=[
                LambdaEntry(element=x, label=m.source.label(x), group_element=group.label(g), color=color)
                for x, (g, color) in enumerate(m.assignment)
            ],
        )


class VerificationSchema(BaseModel):
    ok: bool
    equivariance: List[Tuple[int, int]] = []
    simpliciality: List[Tuple[int, int]] = []
    out_of_range: List[int] = []

    @classmethod
    def from_domain(cls, v) -> "VerificationSchema":
        return cls(
            ok=v.ok,
            equivariance=list(v.equivariance_violations),
            simpliciality=list(v.simpliciality_violations),
            out_of_range=list(v.range_violations),
        )


class LinkSchema(BaseModel):
    name: str
    lhs: int
    rhs: int
    status: str


class CertificateSchema(BaseModel):
    instance: Dict[str, Any]
    qualifier: str = "homological"
    primes: List[int]
    conn_h: int
    group_order: int
    lower_bound: int
    chi_cp: int
    coloring: ColoringSchema
    chi_h: Optional[int] = None
    h_coloring: Optional[ColoringSchema] = None
    lambda_map: Optional[LambdaSchema] = None
    verification: Optional[VerificationSchema] = None
    index: IndexIntervalSchema
    connectivity: ConnectivitySchema
    chain: List[LinkSchema]
    vacuous: bool
    holds: bool
    warnings: List[str] = []

    @classmethod
    def from_domain(cls, cert) -> "CertificateSchema":
        return cls(
            instance=cert.instance,
            primes=list(cert.connectivity.primes),
            conn_h=cert.conn_h,
            group_order=cert.group_order,
            lower_bound=cert.lower_bound,
            chi_cp=cert.chi_cp,
            coloring=ColoringSchema.from_domain(cert.coloring),
            chi_h=cert.chi_h,
            h_coloring=ColoringSchema.from_domain(cert.h_coloring) if cert.h_coloring else None,
            lambda_map=LambdaSchema.from_domain(cert.lambda_map) if cert.lambda_map else None,
            verification=VerificationSchema.from_domain(cert.verification) if cert.verification else None,
            index=IndexIntervalSchema.from_domain(cert.index),
            connectivity=ConnectivitySchema.from_domain(cert.connectivity),
            chain=[LinkSchema(name=l.name, lhs=l.lhs, rhs=l.rhs, status=l.status) for l in cert.links],
            vacuous=cert.vacuous,
            holds=cert.holds,
            warnings=list(cert.warnings),
        )


class TestGraphSchema(BaseModel):
    __test__ = False

    test_graph: str
    k: int
    chi_t: int
    chi_h: int
    required: int
    slack: int
    holds: bool
    vacuous: bool
    elements: int
    connectivity: ConnectivitySchema

    @classmethod
    def from_domain(cls, report) -> "TestGraphSchema":
        return cls(
            test_graph=report.test_graph,
            k=report.k,
            chi_t=report.chi_t,
            chi_h=report.chi_h,
            required=report.required,
            slack=report.slack,
            holds=report.holds,
            vacuous=report.vacuous,
            elements=report.element_count,
            connectivity=ConnectivitySchema.from_domain(report.connectivity),
        )


class ErrorSchema(BaseModel):
    category: str
    detail: str


class ReportSchema(BaseModel):
    command: str
    version: str
    exit_code: int = 0
    timings_ms: Dict[str, int] = {}
    payload: Dict[str, Any] = {}
    warnings: List[str] = []
    error: Optional[ErrorSchema] = None
