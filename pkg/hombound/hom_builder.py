"""Hom posets, the cyclic and reflection actions, compatibility graphs and
the projection homomorphism onto the target graph."""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from hombound.algebra import GPoset, OrderRelation, cyclic_group, make_gposet
from hombound.config import Caps, settings
from hombound.errors import (
    DegenerateGroupError,
    ImpossibleStateError,
    InstanceTooLargeError,
    InvalidArgumentError,
    TheoremViolationError,
    WrongShapeError,
)
from hombound.graph_core import (
    Graph,
    VertexMap,
    is_complete_graph,
    is_even_cycle,
    is_homomorphism,
    iter_bits,
)

logger = logging.getLogger(__name__)

_BLOCK_CELLS = 4_000_000


@dataclass(frozen=True)
class HomElement:
    """A tuple (A_1, ..., A_n) of non-empty vertex sets, each a bitset over V(H)."""

    cells: tuple

    def members(self, i: int) -> list:
        return list(iter_bits(self.cells[i]))

    def is_valid(self, F: Graph, H: Graph) -> bool:
        # pair by pair, no bitset shortcut
        if len(self.cells) != F.vertex_count or any(cell == 0 for cell in self.cells):
            return False
        for i, j in F.edges:
            for a in self.members(i):
                for b in self.members(j):
                    if not H.has_edge(a, b):
                        return False
        return True

    def label(self) -> str:
        return "(" + ",".join("{" + ",".join(str(v + 1) for v in self.members(i)) + "}" for i in range(len(self.cells))) + ")"


@dataclass(frozen=True, eq=False)
class HomPoset:
    F: Graph
    H: Graph
    elements: tuple
    cells: np.ndarray
    order: OrderRelation
    index: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, cells: tuple) -> Optional[int]:
        return self.index.get(cells)


def _common_neighborhood(H: Graph, mask: int) -> int:
    common = (1 << H.vertex_count) - 1
    for v in iter_bits(mask):
        common &= H.adjacency_mask(v)
    return common


def _containment_pairs(cells: np.ndarray) -> np.ndarray:
    n = len(cells)
    rows = max(1, _BLOCK_CELLS // max(n, 1))
    chunks = []
    for start in range(0, n, rows):
        block = cells[start:start + rows]
        inside = np.ones((len(block), n), dtype=bool)
        for i in range(cells.shape[1]):
            inside &= (block[:, None, i] & ~cells[None, :, i]) == 0
        xs, ys = np.nonzero(inside)
        chunks.append(np.stack([xs + start, ys], axis=1))
    return np.concatenate(chunks) if chunks else np.zeros((0, 2), dtype=np.int64)


def build_hom_poset(F: Graph, H: Graph, caps: Optional[Caps] = None) -> HomPoset:
    """Hom_p(F, H), elements sorted by their cell bitsets."""
    caps = caps or settings.caps
    if F.has_loops or H.has_loops:
        raise InvalidArgumentError("Hom posets are built for loop-free F and H")
    if H.vertex_count > settings.max_target_vertices:
        raise InstanceTooLargeError("max_target_vertices", settings.max_target_vertices, "building a Hom poset")
    n = F.vertex_count
    full = (1 << H.vertex_count) - 1
    earlier_neighbors = [[j for j in F.neighbors(i) if j < i] for i in range(n)]
    common = {}
    found = []
    nodes = 0

    def allowed(i, tuple_so_far):
        mask = full
        for j in earlier_neighbors[i]:
            cell = tuple_so_far[j]
            if cell not in common:
                common[cell] = _common_neighborhood(H, cell)
            mask &= common[cell]
        return mask

    def extend(tuple_so_far):
        nonlocal nodes
        i = len(tuple_so_far)
        if i == n:
            if len(found) >= caps.max_elements:
                raise InstanceTooLargeError("max_elements", caps.max_elements, "enumerating a Hom poset")
            found.append(tuple(tuple_so_far))
            return
        mask = allowed(i, tuple_so_far)
        sub = mask
        while sub:
            nodes += 1
            if nodes > caps.max_backtrack_nodes:
                raise InstanceTooLargeError("max_backtrack_nodes", caps.max_backtrack_nodes, "enumerating a Hom poset")
            tuple_so_far.append(sub)
            extend(tuple_so_far)
            tuple_so_far.pop()
            sub = (sub - 1) & mask

    if n:
        extend([])
    found.sort()
    elements = tuple(HomElement(cells) for cells in found)
    bad = [e for e in elements if not e.is_valid(F, H)]
    if bad:
        raise ImpossibleStateError(f"enumerator produced {len(bad)} invalid tuples, first {bad[0].label()}")
    cells = np.array(found, dtype=np.int64).reshape(len(found), n)
    order = OrderRelation(len(found), _containment_pairs(cells))
    logger.info("Hom poset on %d x %d vertices: %d elements, %d nodes", n, H.vertex_count, len(found), nodes)
    index = {element.cells: i for i, element in enumerate(elements)}
    return HomPoset(F, H, elements, cells, order, index)


def _attach(hp: HomPoset, group, shifted) -> GPoset:
    action = np.zeros((group.order, len(hp)), dtype=np.int64)
    for g in range(group.order):
        for x, element in enumerate(hp.elements):
            y = hp.index_of(shifted(g, element.cells))
            if y is None:
                raise ImpossibleStateError(f"action of {group.label(g)} moves {element.label()} outside the poset")
            action[g, x] = y
    labels = [element.label() for element in hp.elements]
    return make_gposet(len(hp), hp.order, group, action, labels, source=hp)


def attach_cyclic_action(hp: HomPoset) -> GPoset:
    """Z_r acting on Hom_p(K_r, H) by cyclically shifting the coordinates."""
    r = hp.F.vertex_count
    if r < 2 or not is_complete_graph(hp.F):
        raise WrongShapeError("cyclic shift needs F = K_r with r >= 2")
    p = _attach(hp, cyclic_group(r), lambda i, cells: cells[i:] + cells[:i])
    logger.info("cyclic action of Z_%d attached, free=%s", r, p.is_free)
    return p


def attach_reflection_action(hp: HomPoset) -> GPoset:
    if not is_even_cycle(hp.F):
        raise WrongShapeError("reflection needs F to be an even cycle in its standard vertex order")
    p = _attach(hp, cyclic_group(2), lambda i, cells: cells[::-1] if i else cells)
    logger.info("reflection action attached on C_%d, free=%s", hp.F.vertex_count, p.is_free)
    return p


def hom_gposet(T: Graph, H: Graph, caps: Optional[Caps] = None) -> GPoset:
    if is_complete_graph(T) and T.vertex_count >= 2:
        return attach_cyclic_action(build_hom_poset(T, H, caps))
    if is_even_cycle(T):
        return attach_reflection_action(build_hom_poset(T, H, caps))
    raise WrongShapeError("test graph must be K_r with r >= 2 or an even cycle")


def build_compat_graph(p: GPoset) -> Graph:
    """x ~ y iff x and g.y are comparable for some g != e; loops are kept."""
    group = p.group
    if group.is_trivial:
        raise DegenerateGroupError("compatibility graph needs a non-trivial group")
    n = p.element_count
    if n == 0:
        return Graph(0, frozenset(), p.labels)
    comparable = p.order.comparable_pairs()
    directed = []
    for g in group.non_identity():
        # g.y = z  <=>  y = g^-1.z
        ys = p.action[group.inverse[g], comparable[:, 1]]
        directed.append(comparable[:, 0] * n + ys)
    codes = np.unique(np.concatenate(directed))
    if not np.isin((codes % n) * n + codes // n, codes).all():
        raise ImpossibleStateError("compatibility relation is not symmetric")
    xs, ys = (codes // n).tolist(), (codes % n).tolist()
    edges = {(x, y) for x, y in zip(xs, ys) if x <= y}
    c = Graph(n, frozenset(edges), p.labels)
    logger.info("compatibility graph: %d vertices, %d edges, loops=%s", n, c.edge_count, c.has_loops)
    return c


@dataclass(frozen=True)
class LoopReport:
    loop_vertices: tuple

    @property
    def loop_free(self) -> bool:
        return not self.loop_vertices


def check_loops(c: Graph) -> LoopReport:
    return LoopReport(tuple(c.loop_vertices()))


def projection_hom(p: GPoset, compat: Optional[Graph] = None) -> VertexMap:
    """Send each element of C_P to the smallest vertex of its first cell."""
    hp = p.source
    if not isinstance(hp, HomPoset):
        raise InvalidArgumentError("projection needs a G-poset built from a Hom poset")
    compat = compat if compat is not None else build_compat_graph(p)
    assignment = tuple((cell & -cell).bit_length() - 1 for cell in hp.cells[:, 0].tolist()) if len(hp) else ()
    f = VertexMap(compat, hp.H, assignment)
    if not is_homomorphism(f):
        raise TheoremViolationError("projection C_P -> H is not a graph homomorphism")
    return f
