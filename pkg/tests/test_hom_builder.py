import math

import pytest

from hombound.config import Caps
from hombound.errors import DegenerateGroupError, InstanceTooLargeError, InvalidArgumentError, WrongShapeError
from hombound.algebra import FiniteGroup, make_gposet, orbits
from hombound.graph_core import Graph, complete_graph, cycle_graph, is_homomorphism, petersen_graph
from hombound.hom_builder import (
    HomElement,
    attach_cyclic_action,
    build_compat_graph,
    build_hom_poset,
    check_loops,
    hom_gposet,
    projection_hom,
)
from hombound.oracle import brute_force_hom_count

from conftest import edge_set


def compat_by_definition(p) -> set:
    edges = set()
    for x in range(p.element_count):
        for y in range(x, p.element_count):
            if any(p.order.comparable(x, p.act(g, y)) for g in p.group.non_identity()):
                edges.add((x, y))
    return edges


class TestBuildHomPoset:
    @pytest.mark.parametrize(
        "r, n, expected",
        [(2, 2, 2), (2, 3, 12), (2, 4, 50), (3, 4, 60), (3, 2, 0), (3, 5, 390)],
    )
    def test_cardinalities(self, r, n, expected):
        hp = build_hom_poset(complete_graph(r), complete_graph(n))
        assert len(hp) == expected

    @pytest.mark.parametrize(
        "F, H",
        [(cycle_graph(4), complete_graph(3)), (complete_graph(2), cycle_graph(5)), (cycle_graph(5), complete_graph(3))],
    )
    def test_matches_oracle(self, F, H):
        assert len(build_hom_poset(F, H)) == brute_force_hom_count(F, H)

    def test_c4_k3(self):
        assert len(build_hom_poset(cycle_graph(4), complete_graph(3))) == 48

    def test_elements_are_sorted_and_valid(self, k2, k3):
        hp = build_hom_poset(k2, k3)
        cells = [e.cells for e in hp.elements]
        assert cells == sorted(cells)
        assert all(e.is_valid(k2, k3) for e in hp.elements)
        assert hp.elements[0].label() == "({1},{2})"

    def test_order_is_containment(self, k2, k3):
        hp = build_hom_poset(k2, k3)
        small = hp.index_of((0b001, 0b010))
        large = hp.index_of((0b001, 0b110))
        assert hp.order.leq(small, large)
        assert not hp.order.leq(large, small)
        for x, y in hp.order.strict_pairs.tolist():
            for a, b in zip(hp.elements[x].cells, hp.elements[y].cells):
                assert a & ~b == 0

    def test_independent_validity_check(self, k2, k3):
        assert HomElement((0b011, 0b100)).is_valid(k2, k3)
        assert not HomElement((0b011, 0b010)).is_valid(k2, k3)
        assert not HomElement((0b001, 0)).is_valid(k2, k3)
        assert not HomElement((0b001,)).is_valid(k2, k3)

    def test_element_cap(self, k2, k3):
        with pytest.raises(InstanceTooLargeError) as info:
            build_hom_poset(k2, k3, Caps(max_elements=5))
        assert info.value.cap == "max_elements"

    def test_rejects_looped_target(self, k2):
        with pytest.raises(InvalidArgumentError):
            build_hom_poset(k2, Graph.from_edges(2, [(0, 0), (0, 1)]))

    @pytest.mark.parametrize("r", range(1, 6))
    @pytest.mark.parametrize("n", range(1, 6))
    def test_singleton_tuples_are_injective_maps(self, r, n):
        hp = build_hom_poset(complete_graph(r), complete_graph(n))
        singletons = [e for e in hp.elements if all(cell.bit_count() == 1 for cell in e.cells)]
        assert len(singletons) == math.perm(n, r)

    @pytest.mark.parametrize("F", [complete_graph(2), complete_graph(3), cycle_graph(4)])
    @pytest.mark.parametrize("H", [complete_graph(4), cycle_graph(5), petersen_graph()])
    def test_count_ignores_target_labels(self, rng, F, H):
        perm = rng.permutation(H.vertex_count).tolist()
        relabeled = Graph.from_edges(H.vertex_count, [(perm[u], perm[v]) for u, v in H.sorted_edges()])
        assert len(build_hom_poset(F, relabeled)) == len(build_hom_poset(F, H))


class TestActions:
    def test_cyclic_shift(self, k3):
        p = hom_gposet(k3, complete_graph(4))
        assert p.group.order == 3 and p.is_free
        for x, element in enumerate(p.source.elements):
            a, b, c = element.cells
            assert p.source.elements[p.act(1, x)].cells == (b, c, a)

    def test_reflection(self, c4, k3):
        p = hom_gposet(c4, k3)
        assert p.group.order == 2 and p.is_free
        for x, element in enumerate(p.source.elements):
            assert p.source.elements[p.act(1, x)].cells == element.cells[::-1]

    def test_odd_cycle_is_not_a_test_graph(self, k3):
        with pytest.raises(WrongShapeError):
            hom_gposet(cycle_graph(5), k3)

    def test_cyclic_needs_complete_source(self, c4, k3):
        with pytest.raises(WrongShapeError):
            attach_cyclic_action(build_hom_poset(c4, k3))

    def test_empty_hom_poset(self, k3):
        p = hom_gposet(k3, complete_graph(2))
        assert p.element_count == 0
        assert build_compat_graph(p).vertex_count == 0

    @pytest.mark.parametrize("T, H, orbit_size, orbit_count", [
        (complete_graph(2), complete_graph(3), 2, 6),
        (complete_graph(3), complete_graph(3), 3, 2),
        (complete_graph(3), complete_graph(4), 3, 20),
    ])
    def test_orbit_sizes(self, T, H, orbit_size, orbit_count):
        found = orbits(hom_gposet(T, H))
        assert len(found) == orbit_count
        assert all(len(o) == orbit_size for o in found)


class TestCompatGraph:
    @pytest.mark.parametrize("T, H", [(complete_graph(2), complete_graph(3)), (complete_graph(3), complete_graph(4)),
                                      (cycle_graph(4), complete_graph(3))])
    def test_matches_definition(self, T, H):
        p = hom_gposet(T, H)
        c = build_compat_graph(p)
        assert edge_set(c) == compat_by_definition(p)
        assert check_loops(c).loop_free

    def test_orbits_are_cliques(self, hom_k2_k3):
        c = build_compat_graph(hom_k2_k3)
        for x in range(hom_k2_k3.element_count):
            assert c.has_edge(x, hom_k2_k3.act(1, x))
    @pytest.mark.parametrize("T, H", [(complete_graph(2), complete_graph(4)), (complete_graph(3), complete_graph(4)),
                                      (cycle_graph(4), complete_graph(3))])
    def test_action_is_an_automorphism(self, T, H):
        p = hom_gposet(T, H)
        c = build_compat_graph(p)
        for g in range(p.group.order):
            for x, y in c.sorted_edges():
                assert c.has_edge(p.act(g, x), p.act(g, y))


    def test_trivial_group_is_rejected(self):
        trivial = FiniteGroup.from_table([[0]])
        p = make_gposet(2, [(0, 1)], trivial, [[0, 1]])
        with pytest.raises(DegenerateGroupError):
            build_compat_graph(p)

    def test_fixed_point_gives_a_loop(self):
        p = make_gposet(2, [(0, 1)], FiniteGroup.from_table([[0, 1], [1, 0]]), [[0, 1], [0, 1]])
        report = check_loops(build_compat_graph(p))
        assert not report.loop_free
        assert report.loop_vertices == (0, 1)


class TestProjection:
    @pytest.mark.parametrize("T, H", [(complete_graph(2), complete_graph(3)), (complete_graph(3), complete_graph(4)),
                                      (cycle_graph(4), complete_graph(3)), (complete_graph(2), cycle_graph(5))])
    def test_is_a_homomorphism(self, T, H):
        p = hom_gposet(T, H)
        f = projection_hom(p)
        assert is_homomorphism(f)
        assert f.target is H

    def test_needs_hom_provenance(self):
        p = make_gposet(2, [], FiniteGroup.from_table([[0, 1], [1, 0]]), [[0, 1], [1, 0]])
        with pytest.raises(InvalidArgumentError):
            projection_hom(p)
