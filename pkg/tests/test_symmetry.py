from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homlp.errors import DomainError
from homlp.graphs import Graph, circular_complete, complete, cube_scale, cycle
from homlp.symmetry import (
    OrbitDecomposition,
    automorphism_generators,
    circular_orbits,
    edge_orbits,
    is_vertex_transitive,
    vertex_orbits,
)


def brute_automorphisms(G: Graph):
    edges = set(G.edges)
    for perm in itertools.permutations(range(G.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in edges for u, v in G.edges):
            yield perm


def brute_edge_orbit_partition(G: Graph) -> set[frozenset]:
    idx = G.edge_index
    blocks = {}
    for e, (u, v) in enumerate(G.edges):
        blocks.setdefault(e, set())
    auts = list(brute_automorphisms(G))
    out = set()
    for e, (u, v) in enumerate(G.edges):
        orb = frozenset(idx[tuple(sorted((g[u], g[v])))] for g in auts)
        out.add(orb)
    return out


def partition_of(dec: OrbitDecomposition) -> set[frozenset]:
    return {frozenset(o) for o in dec.orbits()}


def random_graph(n: int, data) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, tuple(data.draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1))))


def test_five_cycle_has_one_orbit():
    dec = edge_orbits(cycle(5))
    assert dec.sizes == (5,)


def test_circular_11_4_has_two_orbits_of_eleven():
    assert edge_orbits(circular_complete(11, 4)).sizes == (11, 11)


def test_circular_8_3_has_antipodal_half_orbit():
    dec = edge_orbits(circular_complete(8, 3))
    assert dec.sizes == (8, 4)
    assert dec.representatives == ((0, 3), (0, 4))


@pytest.mark.parametrize("G", [cycle(4), cycle(7), complete(3), complete(5)])
def test_edge_transitive_families(G):
    assert edge_orbits(G).r == 1
    assert is_vertex_transitive(G)


def test_cube_orbits_split_by_hamming_distance():
    Q = cube_scale(3, 2)
    dec = edge_orbits(Q)
    assert dec.sizes == (12, 4)
    for (u, v), c in zip(Q.edges, dec.orbit_of_edge):
        assert c == (0 if bin(u ^ v).count("1") == 2 else 1)
    assert is_vertex_transitive(Q)


def test_path_is_not_vertex_transitive():
    P = Graph(3, ((0, 1), (1, 2)))
    assert not is_vertex_transitive(P)
    assert vertex_orbits(P) == [[0, 2], [1]]
    assert edge_orbits(P).r == 1


def test_orbits_are_numbered_by_smallest_edge():
    G = Graph(4, ((0, 1), (1, 2), (2, 3), (1, 3)))
    dec = edge_orbits(G)
    assert dec.orbit_of_edge[0] == 0
    firsts = [min(o) for o in dec.orbits()]
    assert firsts == sorted(firsts)


def test_edgeless_graph_has_no_edge_orbits():
    with pytest.raises(DomainError):
        edge_orbits(Graph(3, ()))


@pytest.mark.parametrize("p,q", [(p, q) for p in range(5, 34) for q in range(2, p // 2 + 1) if math.gcd(p, q) == 1])
def test_circular_orbits_match_automorphism_orbits(p, q):
    dec = circular_orbits(p, q)
    assert dec.same_partition(edge_orbits(circular_complete(p, q)))
    assert dec.r == math.ceil((p - 2 * q + 1) / 2)
    assert sorted(dec.sizes) == sorted([p] * (dec.r - 1) + [p // 2 if p % 2 == 0 else p])


@pytest.mark.parametrize("p", range(2, 12))
def test_distance_classes_refine_the_single_orbit_of_complete_graphs(p):
    # K_p is edge-transitive, so its distance classes are a finer (still valid) split
    assert edge_orbits(complete(p)).r == 1
    assert circular_orbits(p, 1).r == math.ceil((p - 1) / 2)


def test_circular_orbits_domain():
    with pytest.raises(DomainError):
        circular_orbits(6, 2)
    with pytest.raises(DomainError):
        circular_orbits(5, 3)


@given(st.integers(2, 6), st.data())
def test_edge_orbits_match_brute_force(n, data):
    G = random_graph(n, data)
    assert partition_of(edge_orbits(G)) == brute_edge_orbit_partition(G)


@given(st.integers(2, 6), st.data())
def test_generators_are_automorphisms(n, data):
    G = random_graph(n, data)
    edges = set(G.edges)
    for g in automorphism_generators(G):
        assert sorted(g) == list(range(G.n))
        assert {tuple(sorted((g[u], g[v]))) for u, v in G.edges} == edges


@given(st.integers(2, 6), st.data())
def test_orbit_sizes_invariant_under_relabelling(n, data):
    G = random_graph(n, data)
    perm = data.draw(st.permutations(range(n)))
    H = Graph(n, tuple(tuple(sorted((perm[u], perm[v]))) for u, v in G.edges))
    assert sorted(edge_orbits(G).sizes) == sorted(edge_orbits(H).sizes)


def test_orbit_json_record():
    rec = edge_orbits(circular_complete(8, 3)).to_json()
    assert rec == {"schema": "homlp/1", "r": 2, "sizes": [8, 4], "representatives": [[0, 3], [0, 4]]}
