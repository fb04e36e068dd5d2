"""Brute-force oracles, kept independent of the enumerator and the solver."""
from itertools import product

from hombound.errors import UncolorableError
from hombound.graph_core import Graph


def _nonempty_subsets(m: int) -> list:
    return [frozenset(v for v in range(m) if mask >> v & 1) for mask in range(1, 1 << m)]


def brute_force_hom_count(F: Graph, H: Graph) -> int:
    """Count tuples of non-empty vertex subsets of H with every F-edge mapped into E(H)."""
    subsets = _nonempty_subsets(H.vertex_count)
    edges = F.sorted_edges()
    count = 0
    for cells in product(subsets, repeat=F.vertex_count):
        if all(H.has_edge(a, b) for i, j in edges for a in cells[i] for b in cells[j]):
            count += 1
    return count


def _colorings(n: int, k: int):
    # up to renaming the colors
    assignment = [0] * n

    def fill(v, used):
        if v == n:
            yield tuple(assignment)
            return
        for c in range(min(used + 1, k)):
            assignment[v] = c
            yield from fill(v + 1, max(used, c + 1))

    if n == 0:
        yield ()
    else:
        yield from fill(0, 0)


def brute_force_chromatic_number(g: Graph) -> int:
    if g.has_loops:
        raise UncolorableError("graph has loops")
    edges = g.sorted_edges()
    for k in range(g.vertex_count + 1):
        for colors in _colorings(g.vertex_count, k):
            if all(colors[u] != colors[v] for u, v in edges):
                return k
    return g.vertex_count
