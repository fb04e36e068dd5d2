"""Finite groups, order relations, G-posets, orbits and freeness."""
import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numpy as np

from hombound.config import settings
from hombound.errors import (
    ActionAxiomError,
    EquivarianceError,
    InvalidArgumentError,
    OrderAxiomError,
)

logger = logging.getLogger(__name__)


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    return np.unique(rows, axis=0) if len(rows) else rows.reshape(0, 2)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mult: np.ndarray
    identity: int
    inverse: np.ndarray
    labels: tuple = ()

    @classmethod
    def from_table(cls, mult: Sequence[Sequence[int]], labels: Sequence[str] = ()) -> "FiniteGroup":
        # associativity is checked exhaustively, hence max_group_order
        try:
            table = np.asarray(mult, dtype=np.int64)
        except ValueError:
            raise InvalidArgumentError("multiplication table rows differ in length")
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidArgumentError("multiplication table must be a non-empty square")
        n = table.shape[0]
        if n > settings.max_group_order:
            raise InvalidArgumentError(f"group order {n} exceeds max_group_order={settings.max_group_order}")
        if table.min() < 0 or table.max() >= n:
            raise InvalidArgumentError("multiplication table entries out of range")
        expected = np.arange(n)
        if any((np.sort(table[i]) != expected).any() for i in range(n)) or any(
            (np.sort(table[:, j]) != expected).any() for j in range(n)
        ):
            raise InvalidArgumentError("multiplication table is not a Latin square")
        identities = [e for e in range(n) if (table[e] == expected).all() and (table[:, e] == expected).all()]
        if not identities:
            raise InvalidArgumentError("multiplication table has no identity element")
        identity = identities[0]
        left = table[table[:, :, None], expected[None, None, :]]
        right = table[expected[:, None, None], table[None, :, :]]
        if (left != right).any():
            raise InvalidArgumentError("multiplication table is not associative")
        inverse = np.argmax(table == identity, axis=1)
        if labels and len(labels) != n:
            raise InvalidArgumentError("group labels must name every element")
        return cls(n, _frozen(table), identity, _frozen(inverse), tuple(labels))

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def non_identity(self) -> list:
        return [g for g in range(self.order) if g != self.identity]

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)


def cyclic_group(r: int) -> FiniteGroup:
    if r < 1:
        raise InvalidArgumentError(f"cyclic group needs r >= 1, got {r}")
    idx = np.arange(r)
    labels = ["e"] + ["w" if i == 1 else f"w^{i}" for i in range(1, r)]
    return FiniteGroup.from_table((idx[:, None] + idx[None, :]) % r, labels)


class OrderRelation:
    # (x, y) pairs with x <= y, reflexive ones included, kept sorted; a bool
    # matrix up to dense_limit elements, a pair set above it

    def __init__(self, n: int, pairs: np.ndarray, dense_limit: Optional[int] = None):
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if len(pairs) and (pairs.min() < 0 or pairs.max() >= n):
            raise OrderAxiomError("order relation mentions an element out of range")
        diagonal = np.stack([np.arange(n), np.arange(n)], axis=1)
        pairs = _unique_rows(np.concatenate([pairs, diagonal]))
        self.n = n
        self.pairs = _frozen(pairs)
        limit = settings.dense_order_limit if dense_limit is None else dense_limit
        self.matrix: Optional[np.ndarray] = None
        self._pair_set: Optional[set] = None
        if n <= limit:
            matrix = np.zeros((n, n), dtype=bool)
            matrix[pairs[:, 0], pairs[:, 1]] = True
            self.matrix = _frozen(matrix)
        else:
            self._pair_set = set(map(tuple, pairs.tolist()))
        strict = pairs[pairs[:, 0] != pairs[:, 1]]
        self.strict_pairs = _frozen(strict)
        splits = np.searchsorted(strict[:, 0], np.arange(n + 1))
        self.up = tuple(_frozen(strict[splits[x]:splits[x + 1], 1]) for x in range(n))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, dense_limit: Optional[int] = None) -> "OrderRelation":
        matrix = np.asarray(matrix, dtype=bool)
        return cls(matrix.shape[0], np.argwhere(matrix), dense_limit)

    def leq(self, x: int, y: int) -> bool:
        if self.matrix is not None:
            return bool(self.matrix[x, y])
        return (x, y) in self._pair_set

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def comparable_pairs(self) -> np.ndarray:
        return _unique_rows(np.concatenate([self.pairs, self.pairs[:, ::-1]]))

    def validate(self):
        strict = self.strict_pairs
        if len(strict):
            if self.matrix is not None:
                symmetric = self.matrix[strict[:, 1], strict[:, 0]]
            else:
                symmetric = np.array([(y, x) in self._pair_set for x, y in strict.tolist()])
            if symmetric.any():
                x, y = strict[np.argmax(symmetric)]
                raise OrderAxiomError(f"antisymmetry fails: {x} <= {y} and {y} <= {x}")
        for x in range(self.n):
            above = self.up[x]
            if not len(above):
                continue
            if self.matrix is not None:
                reach = self.matrix[above].any(axis=0)
                missing = reach & ~self.matrix[x]
                if missing.any():
                    raise OrderAxiomError(f"transitivity fails above {x}: reaches {int(np.argmax(missing))}")
            else:
                own = set(above.tolist())
                for y in above.tolist():
                    extra = set(self.up[y].tolist()) - own
                    if extra:
                        raise OrderAxiomError(f"transitivity fails: {x} <= {y} <= {min(extra)}")


@dataclass(frozen=True, eq=False)
class GPoset:
    element_count: int
    order: OrderRelation
    group: FiniteGroup
    action: np.ndarray
    labels: Optional[tuple] = None
    source: Any = None
    is_free: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "is_free", _has_no_fixed_points(self.group, self.action))

    def act(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)


def _has_no_fixed_points(group: FiniteGroup, action: np.ndarray) -> bool:
    idx = np.arange(action.shape[1])
    return not any((action[g] == idx).any() for g in group.non_identity())


def make_gposet(
    element_count: int,
    leq: Any,
    group: FiniteGroup,
    action: Any,
    labels: Optional[Sequence[str]] = None,
    source: Any = None,
) -> GPoset:
    """Validate a raw order and action table and assemble a GPoset.

    `leq` is an OrderRelation, a boolean matrix or a list of (x, y) pairs with
    x <= y; reflexive pairs are implied.
    """
    n = element_count
    if isinstance(leq, OrderRelation):
        order = leq
    else:
        raw = np.asarray(leq)
        if raw.dtype == bool and raw.shape == (n, n):
            order = OrderRelation.from_matrix(raw)
        else:
            order = OrderRelation(n, raw.reshape(-1, 2) if raw.size else np.zeros((0, 2), dtype=np.int64))
    if order.n != n:
        raise OrderAxiomError(f"order relation is on {order.n} elements, expected {n}")
    order.validate()

    try:
        table = np.asarray(action, dtype=np.int64)
    except ValueError:
        raise ActionAxiomError("action table rows differ in length")
    if n == 0:
        table = np.zeros((group.order, 0), dtype=np.int64)
    if table.shape != (group.order, n):
        raise ActionAxiomError(f"action table has shape {table.shape}, expected {(group.order, n)}")
    if table.size and (table.min() < 0 or table.max() >= n):
        raise ActionAxiomError("action table lands outside the element set")
    idx = np.arange(n)
    for g in range(group.order):
        if (np.sort(table[g]) != idx).any():
            raise ActionAxiomError(f"group element {group.label(g)} does not act as a bijection")
    if (table[group.identity] != idx).any():
        raise ActionAxiomError("identity does not act trivially")
    composed = table[group.mult]
    sequential = table[np.arange(group.order)[:, None, None], table[None, :, :]]
    if (composed != sequential).any():
        g, h, x = np.argwhere(composed != sequential)[0]
        raise ActionAxiomError(f"(gh).x != g.(h.x) for g={group.label(g)}, h={group.label(h)}, x={x}")

    strict = order.strict_pairs
    for g in range(group.order):
        mapped = table[g][strict]
        if order.matrix is not None:
            kept = order.matrix[mapped[:, 0], mapped[:, 1]] if len(mapped) else np.ones(0, dtype=bool)
        else:
            kept = np.array([order.leq(a, b) for a, b in mapped.tolist()], dtype=bool)
        if not kept.all():
            x, y = strict[np.argmin(kept)]
            raise EquivarianceError(f"{group.label(g)} does not preserve {x} < {y}")

    poset = GPoset(n, order, group, _frozen(table), tuple(labels) if labels is not None else None, source)
    logger.debug("G-poset on %d elements under a group of order %d, free=%s", n, group.order, poset.is_free)
    return poset


def is_free_action(p: GPoset) -> bool:
    return p.is_free


def orbit(p: GPoset, x: int) -> list:
    return sorted(set(p.action[:, x].tolist()))


def stabilizer(p: GPoset, x: int) -> list:
    return [g for g in range(p.group.order) if p.action[g, x] == x]


def orbits(p: GPoset) -> list:
    seen = np.zeros(p.element_count, dtype=bool)
    result = []
    for x in range(p.element_count):
        if not seen[x]:
            members = orbit(p, x)
            seen[members] = True
            result.append(members)
    return result
