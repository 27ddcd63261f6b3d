from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from homlp.errors import BudgetExceeded, DomainError
from homlp.graphs import Graph, VertexMap, circular_complete, complete, cube_scale, cycle, hom_exists
from homlp.svalue import (
    WeightFunction,
    bound_from_class,
    enumerate_signatures,
    mc,
    pareto_frontier,
    s_value,
    s_value_generic,
    sandwich_bounds,
    signature_of,
    solve_orbit_lp,
)
from homlp.symmetry import edge_orbits


def brute_mc(M: Graph, G: Graph, w) -> Fraction:
    adj = M.adjacency
    return max(
        sum((x for (u, v), x in zip(G.edges, w) if f[v] in adj[f[u]]), Fraction(0))
        for f in itertools.product(range(M.n), repeat=G.n)
    )


def float_s(M: Graph, N: Graph) -> float:
    """Per-edge LP over every preserved edge set, solved in floating point."""
    adj = M.adjacency
    rows = {
        tuple(int(f[v] in adj[f[u]]) for u, v in N.edges) for f in itertools.product(range(M.n), repeat=N.n)
    }
    m = N.m
    A = np.array([list(r) + [-1] for r in rows], dtype=float)
    res = linprog(
        np.r_[np.zeros(m), 1.0],
        A_ub=A,
        b_ub=np.zeros(len(A)),
        A_eq=np.r_[np.ones(m), 0.0][None, :],
        b_eq=[1.0],
        bounds=[(0, None)] * (m + 1),
        method="highs",
    )
    assert res.status == 0
    return res.fun


def random_graph(n: int, data, min_size: int = 1) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, tuple(data.draw(st.lists(st.sampled_from(pairs), unique=True, min_size=min_size))))


K2 = complete(2)


# ---------------------------------------------------------------------------
# mc


@pytest.mark.parametrize(
    "M, G, value",
    [(K2, complete(4), 4), (K2, cycle(5), 4), (complete(3), complete(4), 5), (K2, circular_complete(11, 4), 18)],
)
def test_mc_unit_weight_examples(M, G, value):
    best, f = mc(M, G)
    assert best == value
    assert len(f.preserved_edges(G, M)) == value


@given(st.integers(2, 6), st.data())
def test_mc_matches_brute_force(n, data):
    G = random_graph(n, data)
    M = data.draw(st.sampled_from([K2, complete(3), cycle(5)]))
    w = data.draw(st.lists(st.fractions(0, 3, max_denominator=4), min_size=G.m, max_size=G.m))
    best, f = mc(M, G, w)
    assert best == brute_mc(M, G, w)
    kept = set(f.preserved_edges(G, M))
    assert sum((x for i, x in enumerate(w) if i in kept), Fraction(0)) == best


def test_mc_pinning_does_not_change_the_value():
    G = circular_complete(11, 4)
    w = [Fraction(i % 3 + 1) for i in range(G.m)]
    assert mc(cycle(5), G, w, fix_first=True)[0] == mc(cycle(5), G, w, fix_first=False)[0]


def test_mc_errors():
    with pytest.raises(DomainError):
        mc(K2, Graph(3, ()))
    with pytest.raises(DomainError):
        mc(K2, cycle(5), [1, 1])
    with pytest.raises(DomainError):
        WeightFunction((Fraction(-1),))
    with pytest.raises(BudgetExceeded):
        mc(complete(3), circular_complete(11, 4), budget=5)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("HOMLP_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        mc(complete(3), circular_complete(11, 4))
    # an explicit budget wins over the environment
    assert mc(complete(3), circular_complete(11, 4), budget=10**7)[0] == 22


# ---------------------------------------------------------------------------
# signatures


def test_frontier_for_complete_source():
    ss = enumerate_signatures(K2, complete(4))
    assert ss.signatures == [(4,)]


def test_frontier_for_eight_three_onto_an_edge():
    ss = enumerate_signatures(K2, circular_complete(8, 3))
    assert ss.signatures == [(6, 4), (8, 0)]
    assert ss.verify_witnesses(K2, circular_complete(8, 3), edge_orbits(circular_complete(8, 3)))


def test_frontier_for_eight_three_onto_five_cycle():
    N = circular_complete(8, 3)
    ss = enumerate_signatures(cycle(5), N)
    assert {(7, 4), (8, 1)} <= set(ss.signatures)
    assert ss.is_antichain()
    assert ss.verify_witnesses(cycle(5), N, edge_orbits(N))


def test_signature_of_checks_shapes():
    N = cycle(5)
    with pytest.raises(DomainError):
        signature_of(VertexMap((0, 1, 0), 2), K2, N, edge_orbits(N))


@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=1, max_size=15))
def test_pareto_frontier_is_the_set_of_undominated_rows(rows):
    front = {tuple(r) for r in pareto_frontier(np.array(rows)).tolist()}
    distinct = {tuple(r) for r in rows}
    expected = {a for a in distinct if not any(b != a and all(x >= y for x, y in zip(b, a)) for b in distinct)}
    assert front == expected


@pytest.mark.parametrize(
    "M, N",
    [(K2, circular_complete(8, 3)), (K2, circular_complete(11, 4)), (cycle(5), circular_complete(8, 3)), (K2, cube_scale(3, 2))],
)
def test_pareto_pruning_keeps_the_lp_value(M, N):
    orbits = edge_orbits(N)
    every = enumerate_signatures(M, N, orbits, keep_all=True)
    front = enumerate_signatures(M, N, orbits)
    assert set(front.signatures) <= set(every.signatures)
    assert solve_orbit_lp(orbits.sizes, every.signatures)[0] == solve_orbit_lp(orbits.sizes, front.signatures)[0]


# ---------------------------------------------------------------------------
# s values


@pytest.mark.parametrize(
    "M, N, value",
    [
        (K2, cycle(5), Fraction(4, 5)),
        (K2, circular_complete(11, 4), Fraction(17, 22)),
        (K2, K2, Fraction(1)),
        (K2, circular_complete(20, 7), Fraction(67, 89)),
        (K2, complete(3), Fraction(2, 3)),
        (K2, circular_complete(8, 3), Fraction(4, 5)),
        (cycle(5), circular_complete(8, 3), Fraction(25, 28)),
    ],
)
def test_s_value_examples(M, N, value):
    res = s_value(M, N)
    assert res.value == value
    assert sum(a * w for a, w in zip(res.orbits.sizes, res.omega)) == 1


@pytest.mark.parametrize("M, N", [(K2, cycle(5)), (K2, complete(3)), (K2, cube_scale(3, 2)), (complete(3), complete(4))])
def test_generic_per_edge_program_agrees(M, N):
    assert s_value_generic(M, N) == s_value(M, N).value


def test_generic_examples():
    assert s_value_generic(K2, complete(3)) == Fraction(2, 3)
    assert s_value_generic(K2, cube_scale(3, 2)) == Fraction(2, 3)
    with pytest.raises(BudgetExceeded):
        s_value_generic(K2, complete(13), max_edges=64)


MODE_INSTANCES = [
    (K2, cycle(5)),
    (K2, cycle(7)),
    (K2, complete(3)),
    (K2, complete(4)),
    (K2, circular_complete(8, 3)),
    (K2, circular_complete(11, 4)),
    (K2, circular_complete(13, 5)),
    (K2, circular_complete(14, 5)),
    (K2, cube_scale(3, 2)),
    (cycle(5), circular_complete(8, 3)),
    (complete(3), complete(4)),
    (cycle(5), circular_complete(7, 3)),
]


@pytest.mark.parametrize("M, N", MODE_INSTANCES)
def test_exhaustive_and_constraint_generation_agree(M, N):
    a = s_value(M, N, method="exhaustive")
    b = s_value(M, N, method="congen")
    assert a.value == b.value
    assert (a.method, b.method) == ("exhaustive", "congen")


@pytest.mark.parametrize("M, N", MODE_INSTANCES)
def test_oracle_is_tight_at_the_optimal_weights(M, N):
    res = s_value(M, N)
    w = WeightFunction.from_orbits(res.orbits, res.omega)
    assert mc(M, N, w)[0] == res.value


@pytest.mark.parametrize("M, N", MODE_INSTANCES[:10])
def test_s_value_matches_floating_point_per_edge_program(M, N):
    if M.n ** N.n > 2 * 10**6:
        pytest.skip("map space too large for the float oracle")
    assert abs(float(s_value(M, N).value) - float_s(M, N)) < 1e-9


@settings(max_examples=25)
@given(st.integers(2, 6), st.data())
def test_random_sources_match_float_program(n, data):
    N = random_graph(n, data)
    M = data.draw(st.sampled_from([K2, complete(3)]))
    assert abs(float(s_value(M, N).value) - float_s(M, N)) < 1e-9


@pytest.mark.parametrize("N", [cycle(5), cycle(6), cycle(7), complete(3), complete(4), complete(5)])
@pytest.mark.parametrize("M", [K2, complete(3)])
def test_edge_transitive_source_uses_uniform_weights(M, N):
    assert s_value(M, N).value == mc(M, N, WeightFunction.uniform(N, normalized=True))[0]


def test_constant_value_on_an_interval():
    assert s_value(circular_complete(7, 3), circular_complete(5, 2)).value == Fraction(4, 5)
    assert s_value(K2, circular_complete(5, 2)).value == Fraction(4, 5)
    assert s_value(K2, circular_complete(8, 3)).value == Fraction(4, 5)


CHAIN_POOL = [K2, cycle(7), cycle(5), circular_complete(7, 3), circular_complete(5, 2), circular_complete(8, 3)]


CHAINS = [(M, H, N) for M, H, N in itertools.permutations(CHAIN_POOL, 3) if hom_exists(M, H) and hom_exists(H, N)]


def test_chain_pool_yields_chains():
    assert len(CHAINS) >= 10


@pytest.mark.parametrize("M, H, N", CHAINS, ids=lambda G: G.display())
def test_monotonicity_along_homomorphism_chains(M, H, N):
    smn = s_value(M, N).value
    assert s_value(M, H).value >= smn
    assert s_value(H, N).value >= smn


def test_s_value_errors():
    with pytest.raises(DomainError):
        s_value(K2, Graph(2, ()))
    with pytest.raises(DomainError):
        s_value(K2, cycle(5), method="simplex")


def test_result_record():
    rec = s_value(K2, cycle(5)).to_json(K2, cycle(5))
    assert rec["s"] == "4/5" and rec["omega"] == ["1/5"] and rec["binding"] == [[4]]
    assert rec["schema"] == "homlp/1" and rec["M"] == "K(2)" and rec["N"] == "C(5)"


# ---------------------------------------------------------------------------
# bounds


def test_sandwich_lower_bound_through_a_chain():
    rep = sandwich_bounds(s_MH=None, s_HN=None, s_MN=Fraction(4, 5))
    assert rep["bounds"]["s(M,H)"].lo == Fraction(4, 5)
    assert rep["consistent"]


def test_sandwich_with_known_chain_graphs():
    chain = (K2, cycle(5), circular_complete(8, 3))
    rep = sandwich_bounds(s_MN=Fraction(4, 5), chain=chain)
    assert rep["bounds"]["s(H,N)"].lo == Fraction(4, 5)
    assert s_value(cycle(5), circular_complete(8, 3)).value >= rep["bounds"]["s(H,N)"].lo


def test_sandwich_with_identity_middle_keeps_the_value():
    rep = sandwich_bounds(s_MH=1, s_MN=Fraction(4, 5), chain=(K2, K2, cycle(5)))
    assert rep["bounds"]["s(M,N)"].lo == rep["bounds"]["s(M,N)"].hi == Fraction(4, 5)


def test_sandwich_flags_inconsistency_and_bad_chains():
    assert not sandwich_bounds(s_MH=Fraction(1, 2), s_MN=Fraction(4, 5))["consistent"]
    with pytest.raises(DomainError):
        sandwich_bounds(chain=(cycle(5), K2, K2))


def test_bound_from_class_table():
    assert bound_from_class(5, "K4_minor_free") == Fraction(4, 5)
    assert bound_from_class(9, "K4_minor_free") == Fraction(6, 7)
    assert bound_from_class(11, "K4_minor_free") == Fraction(8, 9)
    assert bound_from_class(11, "girth_mad") == Fraction(17, 22)
    assert bound_from_class(12, "girth_mad") == Fraction(4, 5)
    assert bound_from_class(10, "girth_mad") == Fraction(16, 21)
    for args in [(4, "K4_minor_free"), (3, "K4_minor_free"), (9, "girth_mad"), (5, "planar")]:
        with pytest.raises(DomainError):
            bound_from_class(*args)


def test_class_bounds_are_s_values_of_circular_targets():
    # the thresholds are s(K_2, K_r) for the circular bounds 8/3, 11/4 and 14/5
    assert bound_from_class(12, "girth_mad") == s_value(K2, circular_complete(8, 3)).value
    assert bound_from_class(11, "girth_mad") == s_value(K2, circular_complete(11, 4)).value
    assert bound_from_class(10, "girth_mad") == s_value(K2, circular_complete(14, 5)).value
