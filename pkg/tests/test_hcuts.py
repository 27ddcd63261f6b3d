from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlp.errors import BudgetExceeded, DomainError
from homlp.graphs import Graph, circular_complete, complete, cube_scale, cycle, hom_exists
from homlp.hcuts import (
    Hypergraph,
    bipartite_density,
    chi_f,
    chi_H_cover,
    chi_H_via_s,
    enumerate_hcuts,
    hypergraph_reformulation,
    maximal_cuts,
    refute_density_conjecture,
    scale_membership,
)
from homlp.svalue import mc, s_value

K2, K3 = complete(2), complete(3)


def brute_cut_sets(G: Graph, H: Graph) -> set[frozenset]:
    adj = H.adjacency
    return {
        frozenset(i for i, (u, v) in enumerate(G.edges) if f[v] in adj[f[u]])
        for f in itertools.product(range(H.n), repeat=G.n)
    }


def brute_minimal_obstructions(G: Graph, H: Graph) -> set[frozenset]:
    bad = []
    for r in range(1, G.m + 1):
        for S in itertools.combinations(range(G.m), r):
            S = frozenset(S)
            if any(b <= S for b in bad):
                continue
            sub = Graph(G.n, tuple(G.edges[i] for i in S))
            if not hom_exists(sub, H):
                bad.append(S)
    return set(bad)


def random_graph(n: int, data) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, tuple(data.draw(st.lists(st.sampled_from(pairs), unique=True, min_size=1))))


# ---------------------------------------------------------------------------
# cuts


def test_triangle_has_four_edge_cuts():
    cuts = enumerate_hcuts(K3, K2)
    assert [sorted(c.edges) for c in cuts] == [[], [0, 1], [0, 2], [1, 2]]
    assert all(c.check(K3, K2) for c in cuts)


def test_four_cycle_cuts():
    # edge cuts of a cycle are its even-size edge sets: 1 + 6 + 1
    cuts = enumerate_hcuts(cycle(4), K2)
    assert {c.edges for c in cuts} == brute_cut_sets(cycle(4), K2)
    assert sorted(len(c.edges) for c in cuts) == [0, 2, 2, 2, 2, 2, 2, 4]


def test_single_edge_cuts():
    assert [set(c.edges) for c in enumerate_hcuts(K2, K2)] == [set(), {0}]


@given(st.integers(2, 6), st.data())
def test_cuts_match_brute_force(n, data):
    G = random_graph(n, data)
    H = data.draw(st.sampled_from([K2, K3, cycle(5)]))
    cuts = enumerate_hcuts(G, H)
    assert {c.edges for c in cuts} == brute_cut_sets(G, H)
    assert len({c.edges for c in cuts}) == len(cuts)
    assert all(c.check(G, H) for c in cuts)


def test_maximal_cuts_drop_subsets():
    cuts = maximal_cuts(enumerate_hcuts(cycle(4), K2))
    assert [sorted(c.edges) for c in cuts] == [[0, 1, 2, 3]]


def test_cut_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_hcuts(circular_complete(11, 4), K2, budget=10)


# ---------------------------------------------------------------------------
# cover LP


@pytest.mark.parametrize(
    "G, H, value",
    [
        (K3, K2, Fraction(3, 2)),
        (circular_complete(11, 4), K2, Fraction(22, 17)),
        (K2, K2, Fraction(1)),
        (cycle(5), K2, Fraction(5, 4)),
        (cube_scale(3, 2), K2, Fraction(3, 2)),
    ],
)
def test_cover_values(G, H, value):
    cert = chi_H_cover(G, H)
    assert cert.status == "finite" and cert.value == value
    cuts = enumerate_hcuts(G, H)
    assert cert.verify(G, cuts)


def test_dual_weights_are_feasible_and_sum_to_chi():
    G = circular_complete(11, 4)
    cert = chi_H_cover(G, K2)
    cuts = enumerate_hcuts(G, K2)
    g = cert.edge_weights
    assert sum(g) == cert.value
    assert all(sum(g[e] for e in c.edges) <= 1 for c in cuts)
    # rescaled to total 1, no cut carries more than 1/chi, which is s(K_2, G)
    g1 = cert.normalized_edge_weights()
    assert sum(g1) == 1
    assert mc(K2, G, g1)[0] == 1 / cert.value == s_value(K2, G).value


def test_edgeless_target_is_infinite():
    cert = chi_H_cover(K3, Graph(2, ()))
    assert cert.status == "infinite" and cert.value is None
    with pytest.raises(DomainError):
        chi_H_cover(Graph(3, ()), K2)


@pytest.mark.parametrize("G, H", [(K3, K2), (cycle(5), K2), (cycle(7), K2), (complete(4), K3), (cycle(5), K3)])
def test_three_routes_agree(G, H):
    via_s = chi_H_via_s(G, H)
    cover = chi_H_cover(G, H).value
    hyper = chi_f(hypergraph_reformulation(G, H))
    assert via_s == cover == hyper


def test_three_routes_on_eleven_four():
    G = circular_complete(11, 4)
    assert chi_H_via_s(G, K2) == chi_H_cover(G, K2).value == chi_f(hypergraph_reformulation(G, K2)) == Fraction(22, 17)


@settings(max_examples=20)
@given(st.integers(3, 6), st.data())
def test_cover_matches_reciprocal_of_s_on_random_graphs(n, data):
    G = random_graph(n, data)
    H = data.draw(st.sampled_from([K2, K3]))
    assert chi_H_cover(G, H).value == chi_H_via_s(G, H)


def test_cube_values_by_reciprocal():
    assert chi_H_via_s(cube_scale(3, 2), K2) == Fraction(3, 2)
    assert chi_H_via_s(cycle(5), K2) == Fraction(5, 4)


# ---------------------------------------------------------------------------
# scale membership


def test_scale_membership_examples():
    assert scale_membership(K3, 3, 2)
    assert scale_membership(K2, 1, 1)
    assert not scale_membership(K3, 1, 1)


@pytest.mark.parametrize("G", [K3, cycle(5), cycle(7), circular_complete(7, 3)])
@pytest.mark.parametrize("n,k", [(1, 1), (3, 2), (4, 3), (5, 4), (5, 3), (2, 1)])
def test_scale_membership_bounds_chi_from_above(G, n, k):
    if scale_membership(G, n, k):
        assert chi_H_via_s(G, K2) <= Fraction(n, k)


# ---------------------------------------------------------------------------
# hypergraph reformulation


def test_triangle_hypergraph():
    hg = hypergraph_reformulation(K3, K2)
    assert hg.hyperedges == (frozenset({0, 1, 2}),)
    assert chi_f(hg) == Fraction(3, 2)


def test_five_cycle_hypergraph():
    hg = hypergraph_reformulation(cycle(5), K2)
    assert hg.hyperedges == (frozenset(range(5)),)
    assert chi_f(hg) == Fraction(5, 4)


def test_bipartite_source_has_no_obstructions():
    hg = hypergraph_reformulation(cycle(6), K2)
    assert hg.hyperedges == ()
    assert chi_f(hg) == 1


def test_edgeless_target_gives_singleton_hyperedges():
    hg = hypergraph_reformulation(K3, Graph(1, ()))
    assert all(len(h) == 1 for h in hg.hyperedges)
    with pytest.raises(DomainError):
        chi_f(hg)


@settings(max_examples=25)
@given(st.integers(3, 6), st.data())
def test_obstructions_match_brute_force(n, data):
    G = random_graph(n, data)
    H = data.draw(st.sampled_from([K2, K3]))
    assert set(hypergraph_reformulation(G, H).hyperedges) == brute_minimal_obstructions(G, H)


def test_independence():
    hg = Hypergraph(3, (frozenset({0, 1}),))
    assert hg.is_independent({0, 2}) and not hg.is_independent({0, 1, 2})


def test_chi_f_of_a_graph_as_hypergraph():
    # 2-uniform hypergraph of C_5 has fractional chromatic number 5/2
    hg = Hypergraph(5, tuple(frozenset({i, (i + 1) % 5}) for i in range(5)))
    assert chi_f(hg) == Fraction(5, 2)


# ---------------------------------------------------------------------------
# bipartite density and the refutation record


def test_bipartite_density_examples():
    assert bipartite_density(cycle(5)) == Fraction(4, 5)
    assert bipartite_density(complete(4)) == Fraction(2, 3)
    b = bipartite_density(circular_complete(11, 4))
    assert b == Fraction(18, 22) and (b * 22).numerator % 2 == 0
    with pytest.raises(DomainError):
        bipartite_density(Graph(2, ()))


def test_refutation_record_for_eleven_four():
    rec = refute_density_conjecture(circular_complete(11, 4))
    assert rec["conclusion"] == "refuted"
    assert rec["s"] == "17/22" and rec["s_times_edges"] == "17"
    assert rec["max_cut"] == 18 and rec["parity"] == "even"
    assert rec["all_degrees_even"]
    parts = rec["cycle_partition"]
    assert parts is not None and [len(p) for p in parts] == [11, 11]


@pytest.mark.parametrize("G, s", [(cycle(5), "4/5"), (complete(4), "2/3")])
def test_equality_cases(G, s):
    rec = refute_density_conjecture(G)
    assert rec["conclusion"] == "equality"
    assert rec["s"] == rec["bipartite_density"] == s
