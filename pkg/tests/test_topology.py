from itertools import product

import numpy as np
import pytest

from hombound.algebra import FiniteGroup, OrderRelation, cyclic_group
from hombound.errors import DegenerateGroupError, InstanceTooLargeError, TruncationError
from hombound.graph_core import complete_graph
from hombound.hom_builder import build_hom_poset, hom_gposet
from hombound.topology import (
    SimplicialComplex,
    action_is_simplicial,
    build_EnG,
    chain_height,
    euler_characteristic,
    euler_matches_betti,
    homological_connectivity,
    homology_ranks,
    index_interval,
    order_complex,
)

PRIMES = (2, 32003)

# boundary of the octahedron, antipodal pairs (0,1), (2,3), (4,5)
OCTAHEDRON = [list(f) for f in product((0, 1), (2, 3), (4, 5))]

# six-vertex real projective plane
RP2 = [
    [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
    [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
]


def chain(n: int) -> OrderRelation:
    return OrderRelation(n, np.array([[x, y] for x in range(n) for y in range(x + 1, n)]))


class TestComplexes:
    def test_from_facets_generates_faces(self):
        k = SimplicialComplex.from_facets(4, [[0, 1, 2], [2, 3]], dim_cap=3)
        assert k.f_vector == [4, 4, 1, 0]
        assert k.dimension == 2
        assert sorted(k.facets()) == [(0, 1, 2), (2, 3)]

    def test_from_facets_truncates(self):
        k = SimplicialComplex.from_facets(4, [[0, 1, 2, 3]], dim_cap=1)
        assert k.is_truncated
        assert k.f_vector == [4, 6]

    def test_order_complex_of_a_chain(self):
        k = order_complex(chain(3), dim_cap=4)
        assert k.f_vector == [3, 3, 1, 0, 0]
        assert k.cone_apex is not None
        assert not k.is_truncated
        assert chain_height(chain(3)) == 3

    def test_order_complex_truncation(self):
        k = order_complex(chain(7), dim_cap=2)
        assert k.is_truncated
        assert k.f_vector == [7, 21, 35]
        assert chain_height(chain(7)) == 7

    def test_chain_cap(self):
        with pytest.raises(InstanceTooLargeError) as info:
            order_complex(chain(5), max_chains=3)
        assert info.value.cap == "max_chains"

    def test_hom_labels_are_kept(self, k2, k3):
        k = order_complex(build_hom_poset(k2, k3))
        assert k.labels[0] == "({1},{2})"

    def test_action_is_simplicial(self, hom_k2_k3):
        assert action_is_simplicial(hom_k2_k3, order_complex(hom_k2_k3))


class TestHomology:
    @pytest.mark.parametrize("p", PRIMES)
    def test_circle(self, p):
        k = SimplicialComplex.from_facets(3, [[0, 1], [1, 2], [0, 2]])
        assert homology_ranks(k, p).reduced_betti == (0, 1)

    @pytest.mark.parametrize("p", PRIMES)
    def test_octahedron(self, p):
        k = SimplicialComplex.from_facets(6, OCTAHEDRON)
        betti = homology_ranks(k, p)
        assert betti.reduced_betti == (0, 0, 1)
        assert euler_characteristic(k) == 2
        assert euler_matches_betti(k, betti)

    def test_two_points(self):
        k = SimplicialComplex.from_facets(2, [[0], [1]])
        assert homology_ranks(k, 2).reduced_betti == (1,)
        assert homological_connectivity(k).value == -1

    def test_empty_complex(self):
        k = SimplicialComplex.from_facets(0, [])
        assert k.is_empty and k.dimension == -1
        assert homological_connectivity(k).value == -2
        assert homology_ranks(k, 2).is_empty

    def test_degree_above_cap(self):
        k = SimplicialComplex.from_facets(6, OCTAHEDRON, dim_cap=4)
        with pytest.raises(TruncationError):
            homology_ranks(k, 2, up_to=4)

    def test_projective_plane_torsion(self):
        k = SimplicialComplex.from_facets(6, RP2)
        assert euler_characteristic(k) == 1
        assert homology_ranks(k, 2).reduced_betti == (0, 1, 1)
        assert homology_ranks(k, 32003).reduced_betti == (0, 0, 0)
        result = homological_connectivity(k, PRIMES)
        assert result.value == 0
        assert any("torsion" in w for w in result.warnings)

    def test_simplex_is_acyclic_and_capped(self):
        k = SimplicialComplex.from_facets(4, [[0, 1, 2, 3]], dim_cap=4)
        result = homological_connectivity(k, PRIMES)
        assert result.value == 2
        assert result.capped and result.acyclic

    def test_cone_is_noted(self):
        result = homological_connectivity(order_complex(chain(4), dim_cap=4))
        assert result.capped
        assert any("contractible" in note for note in result.notes)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("p", PRIMES)
    def test_hom_k2_kn_is_a_sphere(self, n, p):
        k = order_complex(build_hom_poset(complete_graph(2), complete_graph(n)))
        expected = tuple(1 if d == n - 2 else 0 for d in range(n - 1))
        assert homology_ranks(k, p).reduced_betti == expected
        assert homological_connectivity(k, [p]).value == n - 3


class TestEnG:
    @pytest.mark.parametrize("r, n", [(2, 0), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
    def test_model(self, r, n):
        p = build_EnG(cyclic_group(r), n)
        assert p.is_free
        assert p.element_count == r * (n + 1)
        k = order_complex(p, dim_cap=4)
        assert k.dimension == n
        assert homological_connectivity(k, PRIMES).value == n - 1
        interval = index_interval(p, dim_cap=4)
        assert (interval.lower, interval.upper) == (n, n)

    def test_z2_level_two_is_the_octahedron(self):
        k = order_complex(build_EnG(cyclic_group(2), 2))
        assert k.f_vector[:3] == [6, 12, 8]
        assert homology_ranks(k, 2).reduced_betti == (0, 0, 1)

    def test_z3_level_two(self):
        k = order_complex(build_EnG(cyclic_group(3), 2))
        assert homology_ranks(k, 32003).reduced_betti == (0, 0, 8)

    def test_labels(self):
        p = build_EnG(cyclic_group(2), 1)
        assert p.labels == ("(e,1)", "(w,1)", "(e,2)", "(w,2)")
        assert p.order.leq(0, 3) and not p.order.leq(0, 1)

    def test_trivial_group(self):
        with pytest.raises(DegenerateGroupError):
            build_EnG(FiniteGroup.from_table([[0]]), 1)

    def test_hom_interval(self, hom_k2_k3):
        interval = index_interval(hom_k2_k3)
        assert (interval.lower, interval.upper) == (1, 1)
