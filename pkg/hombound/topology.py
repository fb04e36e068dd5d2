"""Order complexes, reduced homology over prime fields, homological
connectivity, the E_nG model and the index interval.

Connectivity here is homological: the largest k with vanishing reduced Betti
numbers in degrees <= k over every configured prime. It agrees with
topological connectivity on simply connected spaces, which covers spheres and
wedges of spheres; the fundamental group is never computed.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np

from hombound.algebra import FiniteGroup, GPoset, OrderRelation, make_gposet
from hombound.config import settings
from hombound.errors import (
    DegenerateGroupError,
    InstanceTooLargeError,
    InvalidArgumentError,
    PreconditionError,
    TheoremViolationError,
    TruncationError,
)

logger = logging.getLogger(__name__)

PosetLike = Union[GPoset, OrderRelation, "HomPoset"]  # noqa: F821


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    simplices_by_dim: tuple
    dim_cap: int
    is_truncated: bool = False
    labels: Optional[tuple] = None
    # set when the complex is the order complex of a poset with a maximum or minimum
    cone_apex: Optional[int] = None

    def __post_init__(self):
        if len(self.simplices_by_dim) != self.dim_cap + 1:
            raise InvalidArgumentError("one simplex list per dimension up to dim_cap is required")

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Sequence[Sequence[int]], dim_cap: Optional[int] = None,
                    labels: Optional[Sequence[str]] = None) -> "SimplicialComplex":
        dim_cap = settings.dim_cap if dim_cap is None else dim_cap
        faces = [set() for _ in range(dim_cap + 1)]
        truncated = False
        for facet in facets:
            simplex = tuple(sorted(set(int(v) for v in facet)))
            if not simplex:
                continue
            if simplex[0] < 0 or simplex[-1] >= vertex_count:
                raise InvalidArgumentError(f"facet {list(facet)} has a vertex outside 0..{vertex_count - 1}")
            truncated = truncated or len(simplex) > dim_cap + 1
            for size in range(1, min(len(simplex), dim_cap + 1) + 1):
                faces[size - 1].update(combinations(simplex, size))
        by_dim = tuple(tuple(sorted(level)) for level in faces)
        return cls(vertex_count, by_dim, dim_cap, truncated, tuple(labels) if labels is not None else None)

    def simplices(self, d: int) -> tuple:
        if d < 0 or d > self.dim_cap:
            return ()
        return self.simplices_by_dim[d]

    @property
    def f_vector(self) -> list:
        return [len(level) for level in self.simplices_by_dim]

    @property
    def dimension(self) -> int:
        """Highest stored dimension; -1 for the empty complex."""
        for d in range(self.dim_cap, -1, -1):
            if self.simplices_by_dim[d]:
                return d
        return -1

    @property
    def is_empty(self) -> bool:
        return not self.simplices_by_dim[0]

    def facets(self) -> list:
        result = []
        for d in range(self.dim_cap + 1):
            covered = set()
            for simplex in self.simplices(d + 1):
                covered.update(combinations(simplex, d + 1))
            result.extend(s for s in self.simplices(d) if s not in covered)
        return result


@dataclass(frozen=True)
class BettiVector:
    field_prime: int
    reduced_betti: tuple
    computed_up_to: int
    is_empty: bool = False
    truncated: bool = False


@dataclass(frozen=True)
class ConnectivityResult:
    value: int
    betti: dict
    primes: tuple
    capped: bool = False
    truncated: bool = False
    acyclic: bool = False
    notes: tuple = ()
    warnings: tuple = ()
    qualifier: str = "homological"


@dataclass(frozen=True)
class IndexInterval:
    lower: int
    upper: int
    group_order: int
    connectivity: Optional[ConnectivityResult] = field(default=None, compare=False)


def _relation(p: PosetLike) -> tuple:
    if isinstance(p, OrderRelation):
        return p, None
    return p.order, getattr(p, "labels", None)


def _cone_apex(order: OrderRelation) -> Optional[int]:
    n = order.n
    if n == 0:
        return None
    below = np.bincount(order.pairs[:, 1], minlength=n)
    above = np.bincount(order.pairs[:, 0], minlength=n)
    for counts in (below, above):
        hits = np.flatnonzero(counts == n)
        if len(hits):
            return int(hits[0])
    return None


def order_complex(p: PosetLike, dim_cap: Optional[int] = None, max_chains: Optional[int] = None) -> SimplicialComplex:
    order, labels = _relation(p)
    if labels is None and hasattr(p, "elements"):
        labels = tuple(element.label() for element in p.elements)
    dim_cap = settings.dim_cap if dim_cap is None else dim_cap
    if dim_cap < 0:
        raise InvalidArgumentError("dim_cap must be non-negative")
    limit = settings.caps.max_chains if max_chains is None else max_chains
    by_dim = [[] for _ in range(dim_cap + 1)]
    up = [ys.tolist() for ys in order.up]
    truncated = False
    count = 0
    for x in range(order.n):
        stack = [(x,)]
        while stack:
            chain = stack.pop()
            count += 1
            if count > limit:
                raise InstanceTooLargeError("max_chains", limit, "enumerating chains of the order complex")
            by_dim[len(chain) - 1].append(tuple(sorted(chain)))
            successors = up[chain[-1]]
            if len(chain) == dim_cap + 1:
                truncated = truncated or bool(successors)
                continue
            stack.extend(chain + (y,) for y in successors)
    complex_ = SimplicialComplex(
        order.n, tuple(tuple(sorted(level)) for level in by_dim), dim_cap, truncated, labels, _cone_apex(order)
    )
    logger.info("order complex: f-vector %s%s", complex_.f_vector, " (truncated)" if truncated else "")
    return complex_


def chain_height(p: PosetLike) -> int:
    order, _ = _relation(p)
    n = order.n
    if n == 0:
        return 0
    below = np.bincount(order.pairs[:, 1], minlength=n)
    height = [1] * n
    for x in sorted(range(n), key=lambda v: -below[v]):
        above = order.up[x]
        if len(above):
            height[x] = 1 + max(height[y] for y in above.tolist())
    return max(height)


class _BoundaryRanks:
    # low-pivot column reduction; over GF(2) a column is an int bitset

    def __init__(self, complex_: SimplicialComplex, prime: int):
        self.complex = complex_
        self.prime = prime
        self._ranks: dict = {}

    def rank(self, d: int) -> int:
        if d not in self._ranks:
            self._ranks[d] = self._compute(d)
        return self._ranks[d]

    def _compute(self, d: int) -> int:
        complex_ = self.complex
        if d == 0:
            # augmentation C_0 -> k of reduced homology
            return 1 if complex_.simplices(0) else 0
        if d > complex_.dim_cap:
            raise TruncationError(f"boundary in dimension {d} lies above dim_cap={complex_.dim_cap}")
        columns = complex_.simplices(d)
        if not columns:
            return 0
        index = {face: i for i, face in enumerate(complex_.simplices(d - 1))}
        if self.prime == 2:
            return self._rank_gf2(columns, index)
        return self._rank_gfp(columns, index)

    @staticmethod
    def _rank_gf2(columns, index) -> int:
        pivots: dict = {}
        for simplex in columns:
            col = 0
            for j in range(len(simplex)):
                col ^= 1 << index[simplex[:j] + simplex[j + 1:]]
            while col:
                low = col.bit_length() - 1
                pivot = pivots.get(low)
                if pivot is None:
                    pivots[low] = col
                    break
                col ^= pivot
        return len(pivots)

    def _rank_gfp(self, columns, index) -> int:
        p = self.prime
        pivots: dict = {}
        for simplex in columns:
            col = {index[simplex[:j] + simplex[j + 1:]]: (1 if j % 2 == 0 else p - 1) for j in range(len(simplex))}
            while col:
                low = max(col)
                pivot = pivots.get(low)
                if pivot is None:
                    scale = pow(col[low], -1, p)
                    pivots[low] = {row: value * scale % p for row, value in col.items()}
                    break
                factor = col[low]
                for row, value in pivot.items():
                    updated = (col.get(row, 0) - factor * value) % p
                    if updated:
                        col[row] = updated
                    else:
                        col.pop(row, None)
        return len(pivots)


def _default_top(complex_: SimplicialComplex) -> int:
    if complex_.is_truncated:
        return complex_.dim_cap - 1
    return min(complex_.dim_cap - 1, max(complex_.dimension, 0))


def homology_ranks(k: SimplicialComplex, p: int, up_to: Optional[int] = None) -> BettiVector:
    up_to = _default_top(k) if up_to is None else up_to
    if up_to >= k.dim_cap:
        raise TruncationError(f"degree {up_to} needs simplices above dim_cap={k.dim_cap}")
    if k.is_empty:
        return BettiVector(p, (0,) * (up_to + 1), up_to, is_empty=True, truncated=k.is_truncated)
    ranks = _BoundaryRanks(k, p)
    betti = tuple(len(k.simplices(i)) - ranks.rank(i) - ranks.rank(i + 1) for i in range(up_to + 1))
    return BettiVector(p, betti, up_to, truncated=k.is_truncated)


def homological_connectivity(k: SimplicialComplex, primes: Optional[Sequence[int]] = None) -> ConnectivityResult:
    """Largest k with vanishing reduced homology in degrees <= k over every prime.

    Empty is -2, disconnected -1; all-vanishing is reported as dim_cap - 2, capped.
    """
    primes = tuple(primes or settings.primes)
    cap = k.dim_cap - 2
    if k.is_empty:
        betti = {p: BettiVector(p, (), -1, is_empty=True) for p in primes}
        return ConnectivityResult(-2, betti, primes, notes=("empty complex",))

    top = _default_top(k)
    ranks = {p: _BoundaryRanks(k, p) for p in primes}
    computed = {p: [] for p in primes}
    warnings = []
    value = None
    for i in range(top + 1):
        for p in primes:
            computed[p].append(len(k.simplices(i)) - ranks[p].rank(i) - ranks[p].rank(i + 1))
        values = {p: computed[p][i] for p in primes}
        if len(set(values.values())) > 1:
            warnings.append(f"torsion: reduced Betti numbers in degree {i} differ across primes {values}")
        if any(values.values()):
            value = i - 1
            break
    for message in warnings:
        logger.warning(message)
    betti = {p: BettiVector(p, tuple(computed[p]), len(computed[p]) - 1, truncated=k.is_truncated) for p in primes}

    notes = []
    capped = acyclic = False
    if value is None:
        capped = True
        acyclic = not k.is_truncated and top >= k.dimension
        if k.cone_apex is not None:
            notes.append("contractible-detected: the poset has a maximum or minimum")
        notes.append(f"no reduced homology through degree {top}; reported at dim_cap - 2 = {cap}")
        value = cap
    elif value > cap:
        capped = True
        value = cap
    if k.is_truncated:
        notes.append(f"complex truncated at dimension {k.dim_cap}")
    return ConnectivityResult(value, betti, primes, capped, k.is_truncated, acyclic, tuple(notes), tuple(warnings))


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** d * f for d, f in enumerate(k.f_vector))


def euler_matches_betti(k: SimplicialComplex, betti: BettiVector) -> bool:
    if k.is_truncated or betti.computed_up_to < k.dimension:
        raise TruncationError("Euler check needs the full complex and every degree")
    if k.is_empty:
        return True
    reduced = sum((-1) ** i * b for i, b in enumerate(betti.reduced_betti))
    return euler_characteristic(k) - 1 == reduced


def action_is_simplicial(p: GPoset, k: SimplicialComplex) -> bool:
    """Every group element maps every stored chain onto a stored chain."""
    for d in range(k.dim_cap + 1):
        level = k.simplices(d)
        if not level:
            continue
        stored = set(level)
        vertices = np.array(level, dtype=np.int64)
        for g in range(p.group.order):
            images = np.sort(p.action[g][vertices], axis=1)
            if any(tuple(row) not in stored for row in images.tolist()):
                return False
    return True


def build_EnG(group: FiniteGroup, n: int) -> GPoset:
    """The free G-poset G x {1..n+1}: (h, i) < (g, j) iff i < j, acted on from the left."""
    if group.is_trivial:
        raise DegenerateGroupError("E_nG needs a non-trivial group")
    if n < 0:
        raise InvalidArgumentError(f"E_nG needs n >= 0, got {n}")
    size = group.order
    count = size * (n + 1)
    level = np.arange(count) // size
    member = np.arange(count) % size
    xs, ys = np.nonzero(level[:, None] < level[None, :])
    action = level[None, :] * size + group.mult[:, member]
    labels = [f"({group.label(h)},{i + 1})" for i, h in zip(level.tolist(), member.tolist())]
    return make_gposet(count, np.stack([xs, ys], axis=1), group, action, labels)


def index_interval(p: GPoset, dim_cap: Optional[int] = None, primes: Optional[Sequence[int]] = None,
                   connectivity: Optional[ConnectivityResult] = None) -> IndexInterval:
    """[conn_H + 1, dim] around the G-index of a free G-poset."""
    if not p.is_free:
        raise PreconditionError("index interval needs a free action")
    if connectivity is None:
        connectivity = homological_connectivity(order_complex(p, dim_cap), primes)
    lower = connectivity.value + 1
    upper = chain_height(p) - 1
    if p.element_count and lower > upper:
        raise TheoremViolationError(f"connectivity bound {lower} exceeds dimension {upper} of a free complex")
    return IndexInterval(lower, upper, p.group.order, connectivity)
