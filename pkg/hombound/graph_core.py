"""Finite graphs, standard generators, homomorphisms and exact coloring.

Vertices are dense 0-based indices; labels are cosmetic. Adjacency is kept as
one Python int bitmask per vertex, which is what the coloring search and the
Hom-poset enumerator work on.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import z3

from hombound.config import settings
from hombound.errors import (
    InstanceTooLargeError,
    InvalidArgumentError,
    UncolorableError,
)

logger = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset
    labels: Optional[tuple] = None
    has_loops: bool = field(init=False)
    _adjacency: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidArgumentError("vertex_count must be non-negative")
        adjacency = [0] * self.vertex_count
        loops = False
        for edge in self.edges:
            u, v = edge
            if not (0 <= u <= v < self.vertex_count):
                raise InvalidArgumentError(f"edge {edge} is not a normalized pair below {self.vertex_count}")
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
            loops = loops or u == v
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise InvalidArgumentError("labels must name every vertex")
        object.__setattr__(self, "has_loops", loops)
        object.__setattr__(self, "_adjacency", tuple(adjacency))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Sequence[int]], labels: Optional[Sequence[str]] = None) -> "Graph":
        normalized = set()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            normalized.add((min(u, v), max(u, v)))
        return cls(vertex_count, frozenset(normalized), tuple(labels) if labels is not None else None)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def adjacency_mask(self, v: int) -> int:
        return self._adjacency[v]

    def neighbors(self, v: int) -> list:
        return list(iter_bits(self._adjacency[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return (self._adjacency[v] & ~(1 << v)).bit_count()

    def loop_vertices(self) -> list:
        return [v for v in range(self.vertex_count) if self.has_edge(v, v)]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


@dataclass(frozen=True)
class Coloring:
    assignment: tuple
    color_count: int

    def __post_init__(self):
        used = set(self.assignment)
        if used != set(range(1, self.color_count + 1)):
            raise InvalidArgumentError(
                f"colors {sorted(used)} are not exactly 1..{self.color_count}"
            )

    @classmethod
    def normalized(cls, raw: Iterable[int]) -> "Coloring":
        raw = list(raw)
        rank = {value: i + 1 for i, value in enumerate(sorted(set(raw)))}
        return cls(tuple(rank[value] for value in raw), len(rank))

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def conflicts(self, g: Graph) -> list:
        return [(u, v) for u, v in g.sorted_edges() if self.assignment[u] == self.assignment[v]]

    def is_proper(self, g: Graph) -> bool:
        return len(self.assignment) == g.vertex_count and not self.conflicts(g)


@dataclass(frozen=True)
class VertexMap:
    source: Graph
    target: Graph
    assignment: tuple

    def __post_init__(self):
        if len(self.assignment) != self.source.vertex_count:
            raise InvalidArgumentError("vertex map must be total on the source")
        if any(not 0 <= w < self.target.vertex_count for w in self.assignment):
            raise InvalidArgumentError("vertex map image outside the target")


def complete_graph(r: int) -> Graph:
    if r < 1:
        raise InvalidArgumentError(f"complete graph needs r >= 1, got {r}")
    return Graph.from_edges(r, combinations(range(r), 2))


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise InvalidArgumentError(f"cycle needs m >= 3, got {m}")
    return Graph.from_edges(m, ((i, (i + 1) % m) for i in range(m)))


def kneser_graph(n: int, k: int) -> Graph:
    if k < 1 or n < 2 * k:
        raise InvalidArgumentError(f"Kneser graph needs n >= 2k >= 2, got n={n}, k={k}")
    subsets = list(combinations(range(1, n + 1), k))
    masks = [sum(1 << x for x in s) for s in subsets]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if not masks[i] & masks[j]
    ]
    labels = ["{" + ",".join(map(str, s)) + "}" for s in subsets]
    return Graph.from_edges(len(subsets), edges, labels)


def petersen_graph() -> Graph:
    return kneser_graph(5, 2)


def kneser_chromatic_number(n: int, k: int) -> int:
    if k < 1 or n < 2 * k:
        raise InvalidArgumentError(f"Kneser graph needs n >= 2k >= 2, got n={n}, k={k}")
    return n - 2 * k + 2


def is_complete_graph(g: Graph) -> bool:
    n = g.vertex_count
    return not g.has_loops and g.edge_count == n * (n - 1) // 2


def is_even_cycle(g: Graph) -> bool:
    """True iff g is the cycle 0-1-...-(m-1)-0 on an even m, in that vertex order."""
    m = g.vertex_count
    if m < 4 or m % 2:
        return False
    return g.edges == cycle_graph(m).edges


def is_homomorphism(f: VertexMap) -> bool:
    return all(f.target.has_edge(f.assignment[u], f.assignment[v]) for u, v in f.source.edges)


def greedy_clique(g: Graph) -> list:
    n = g.vertex_count
    adjacency = [g.adjacency_mask(v) & ~(1 << v) for v in range(n)]
    best: list = []
    for seed in sorted(range(n), key=lambda v: (-adjacency[v].bit_count(), v)):
        if adjacency[seed].bit_count() < len(best):
            break
        clique = [seed]
        candidates = adjacency[seed]
        while candidates:
            pick = max(iter_bits(candidates), key=lambda u: ((adjacency[u] & candidates).bit_count(), -u))
            clique.append(pick)
            candidates &= adjacency[pick]
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def clique_lower_bound(g: Graph) -> int:
    return len(greedy_clique(g))


def dsatur_coloring(g: Graph) -> list:
    if g.has_loops:
        raise UncolorableError(f"graph has loops at {g.loop_vertices()} and cannot be colored")
    n = g.vertex_count
    adjacency = [g.adjacency_mask(v) for v in range(n)]
    colors = [-1] * n
    saturation = [0] * n
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda u: (saturation[u].bit_count(), adjacency[u].bit_count(), -u))
        used = saturation[v]
        c = (~used & (used + 1)).bit_length() - 1
        colors[v] = c
        uncolored.discard(v)
        for u in iter_bits(adjacency[v]):
            saturation[u] |= 1 << c
    return colors


def greedy_upper_bound(g: Graph) -> int:
    colors = dsatur_coloring(g)
    return max(colors) + 1 if colors else 0


def _k_coloring(g: Graph, k: int, order: list, max_conflicts: int) -> Optional[list]:
    n = g.vertex_count
    x = [[z3.Bool(f"x{v}_{c}") for c in range(k)] for v in range(n)]
    solver = z3.SolverFor("QF_FD")
    solver.set("max_conflicts", max_conflicts)
    for v in range(n):
        solver.add(z3.Or(x[v]))
    for u, v in g.sorted_edges():
        for c in range(k):
            solver.add(z3.Or(z3.Not(x[u][c]), z3.Not(x[v][c])))
    # colors open in `order`, so a leading clique is pinned to 0..len(clique)-1
    for i, v in enumerate(order[:k]):
        for c in range(i + 1, k):
            solver.add(z3.Not(x[v][c]))

    verdict = solver.check()
    if verdict == z3.unknown:
        logger.info("%d-coloring undecided: %s", k, solver.reason_unknown())
        raise InstanceTooLargeError("max_backtrack_nodes", max_conflicts, f"deciding a {k}-coloring of a {n}-vertex graph")
    if verdict == z3.unsat:
        return None
    model = solver.model()
    return [
        next(c for c in range(k) if z3.is_true(model.eval(x[v][c], model_completion=True)))
        for v in range(n)
    ]


def chromatic_number(g: Graph, max_nodes: Optional[int] = None) -> tuple:
    """Exact chromatic number and a witness; max_nodes caps solver conflicts per decision."""
    if g.has_loops:
        raise UncolorableError(f"graph has loops at {g.loop_vertices()} and cannot be colored")
    n = g.vertex_count
    if n == 0:
        return 0, Coloring((), 0)
    limit = max_nodes if max_nodes is not None else settings.caps.max_backtrack_nodes

    clique = greedy_clique(g)
    best = dsatur_coloring(g)
    best_k = max(best) + 1
    logger.info("coloring %d vertices: clique bound %d, DSATUR bound %d", n, len(clique), best_k)
    in_clique = set(clique)
    order = clique + sorted((v for v in range(n) if v not in in_clique), key=lambda v: (-g.degree(v), v))
    while best_k > len(clique):
        found = _k_coloring(g, best_k - 1, order, limit)
        if found is None:
            break
        best = found
        best_k = max(found) + 1
    logger.info("chromatic number %d", best_k)
    coloring = Coloring.normalized(best)
    return coloring.color_count, coloring
