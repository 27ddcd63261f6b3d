"""Covering by H-cuts: chi_H, the cube scale, and the hypergraph view.

An H-cut of G is the set of edges a vertex map V(G) -> V(H) carries onto
edges of H.  chi_H(G) is the least total weight of H-cuts covering every
edge at least once, which equals 1/s(H, G).  Three routes are provided:
the covering LP over enumerated cuts, the reciprocal of the orbit LP, and
the fractional chromatic number of the hypergraph of minimal non-H-colourable
edge sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, DomainError, resolve_budget
from .exactlp import LinearProgram, certify, format_rational, solve_min
from .graphs import Graph, VertexMap, find_homomorphism, hom_exists, odd_girth, power_graph
from .svalue import WeightFunction, _decode_maps, _resolve_fix_first, mc, s_value
from .symmetry import edge_orbits

__all__ = [
    "HCut",
    "CoverCertificate",
    "Hypergraph",
    "enumerate_hcuts",
    "maximal_cuts",
    "chi_H_cover",
    "chi_H_via_s",
    "scale_membership",
    "hypergraph_reformulation",
    "chi_f",
    "bipartite_density",
    "refute_density_conjecture",
]

DEFAULT_CUT_BUDGET = 2**24
_CHUNK = 1 << 16
_ROWS_PER_ROUND = 16


@dataclass(frozen=True)
class HCut:
    edges: frozenset[int]
    witness: VertexMap

    def check(self, G: Graph, H: Graph) -> bool:
        return frozenset(self.witness.preserved_edges(G, H)) == self.edges


def enumerate_hcuts(G: Graph, H: Graph, budget: int | None = None, fix_first: bool | None = None) -> list[HCut]:
    """Every distinct H-cut of G, each with one witness map.

    Composing with an automorphism of H keeps the cut, so for a
    vertex-transitive H the first vertex is pinned.  Cuts are ordered by
    size and then by their sorted edge lists.
    """
    if H.n == 0:
        raise DomainError("H needs at least one vertex")
    fix = _resolve_fix_first(H, fix_first) if H.m else False
    budget = resolve_budget(budget, DEFAULT_CUT_BUDGET)
    free = G.n - 1 if fix else G.n
    total = H.n**free
    if total > budget:
        raise BudgetExceeded("H-cut enumeration map space", budget, total)
    table = H.matrix.reshape(-1)
    eu = np.array([u for u, _ in G.edges], dtype=np.int64)
    ev = np.array([v for _, v in G.edges], dtype=np.int64)
    seen: dict[bytes, int] = {}
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        maps = _decode_maps(np.arange(start, stop), G.n, H.n, fix)
        if G.m:
            hit = table[maps[:, eu] * H.n + maps[:, ev]]
        else:
            hit = np.zeros((stop - start, 0), dtype=bool)
        packed = np.packbits(hit, axis=1)
        _, first = np.unique(packed, axis=0, return_index=True)
        for i in first.tolist():
            key = packed[i].tobytes()
            if key not in seen:
                seen[key] = start + i
    idxs = np.array(sorted(seen.values()), dtype=np.int64)
    maps = _decode_maps(idxs, G.n, H.n, fix)
    cuts = []
    for row in maps:
        f = VertexMap(tuple(int(x) for x in row), H.n)
        cuts.append(HCut(frozenset(f.preserved_edges(G, H)), f))
    cuts.sort(key=lambda c: (len(c.edges), sorted(c.edges)))
    return cuts


def _edge_words(cuts: Sequence[HCut]) -> np.ndarray:
    """Cuts as rows of 64-bit words, bit e set when edge e is in the cut."""
    m = max((max(c.edges) + 1 for c in cuts if c.edges), default=1)
    words = np.zeros((len(cuts), (m + 63) // 64), dtype=np.uint64)
    for i, c in enumerate(cuts):
        for e in c.edges:
            words[i, e // 64] |= np.uint64(1) << np.uint64(e % 64)
    return words


def maximal_cuts(cuts: Sequence[HCut]) -> list[HCut]:
    """Cuts not strictly contained in another cut."""
    by_size = sorted(cuts, key=lambda c: -len(c.edges))
    if not by_size:
        return []
    words = _edge_words(by_size)
    kept_idx: list[int] = []
    kept = np.zeros((0, words.shape[1]), dtype=np.uint64)
    for i, w in enumerate(words):
        # distinct cuts, so containment in a kept (larger or equal-size) cut is strict
        if len(kept) and np.any(np.all((kept & w) == w, axis=1)):
            continue
        kept_idx.append(i)
        kept = np.vstack([kept, w[None, :]])
    out = [by_size[i] for i in kept_idx]
    out.sort(key=lambda c: (len(c.edges), sorted(c.edges)))
    return out


@dataclass
class CoverCertificate:
    """Optimal fractional H-cut cover and the matching per-edge dual weights.

    ``cut_weights`` covers every edge at least once and sums to ``value``.
    ``edge_weights`` puts total ``value`` on the edges with at most 1 on any
    cut; rescaled to total 1 it is a weighting on which no H-cut exceeds
    1/value.
    """

    status: str  # "finite" | "infinite"
    value: Fraction | None
    cut_weights: list[tuple[HCut, Fraction]] = field(default_factory=list)
    edge_weights: tuple[Fraction, ...] = ()
    cuts_considered: int = 0

    def normalized_edge_weights(self) -> tuple[Fraction, ...]:
        t = sum(self.edge_weights, Fraction(0))
        return tuple(g / t for g in self.edge_weights)

    def verify(self, G: Graph, cuts: Sequence[HCut] | None = None) -> bool:
        if self.status != "finite":
            return True
        cover = [Fraction(0)] * G.m
        for c, w in self.cut_weights:
            if w < 0:
                return False
            for e in c.edges:
                cover[e] += w
        if any(x < 1 for x in cover):
            return False
        if sum((w for _, w in self.cut_weights), Fraction(0)) != self.value:
            return False
        if sum(self.edge_weights, Fraction(0)) != self.value or any(g < 0 for g in self.edge_weights):
            return False
        for c in cuts or []:
            if sum((self.edge_weights[e] for e in c.edges), Fraction(0)) > 1:
                return False
        return True


def _float_support(member: np.ndarray) -> list[int]:
    """Cuts carrying positive weight in a floating-point optimum.

    Only a starting row set: the exact loop below adds any cut the
    float solve got wrong, so numerical error cannot change the answer.
    """
    from scipy.optimize import linprog

    res = linprog(
        -np.ones(member.shape[1]),
        A_ub=member,
        b_ub=np.ones(member.shape[0]),
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0:
        return [int(np.argmax(member.sum(axis=1)))]
    marg = -np.asarray(res.ineqlin.marginals)
    support = [int(i) for i in np.flatnonzero(marg > 1e-9)]
    return support or [int(np.argmax(member.sum(axis=1)))]


def chi_H_cover(G: Graph, H: Graph, budget: int | None = None) -> CoverCertificate:
    """chi_H(G) from the fractional cover LP over the enumerated H-cuts.

    The per-edge dual (maximise total edge weight with at most 1 on any
    cut) is solved by row generation over the maximal cuts; the primal
    cover is read off the duals of the final restricted LP and rechecked.
    """
    if G.m == 0:
        raise DomainError("chi_H needs G to have an edge")
    if H.m == 0:
        return CoverCertificate("infinite", None)
    cuts = maximal_cuts(enumerate_hcuts(G, H, budget=budget))
    covered = set().union(*(c.edges for c in cuts))
    if len(covered) < G.m:
        return CoverCertificate("infinite", None, cuts_considered=len(cuts))
    m = G.m
    member = np.zeros((len(cuts), m), dtype=np.int64)
    for i, c in enumerate(cuts):
        member[i, list(c.edges)] = 1
    active = _float_support(member)
    # seed with a cut through every edge so the restricted LP is bounded
    for e in range(m):
        if not any(member[i, e] for i in active):
            active.append(next(i for i in range(len(cuts)) if member[i, e]))
    while True:
        lp = LinearProgram(m, [-1] * m)
        for i in active:
            lp.add_le(member[i].tolist(), 1)
        sol = solve_min(lp)
        certify(lp, sol)
        g = sol.x
        scale = 1
        for x in g:
            scale = scale * x.denominator // np.gcd(scale, x.denominator)
        gi = np.array([int(x * scale) for x in g], dtype=object)
        loads = member.astype(object) @ gi
        violated = [i for i in np.argsort(-loads.astype(float), kind="stable")[:_ROWS_PER_ROUND] if loads[i] > scale]
        if not violated:
            break
        if any(i in active for i in violated):
            raise AssertionError("row generation returned an active cut")
        active.extend(int(i) for i in violated)
    value = -sol.value
    weights = [(cuts[i], -y) for i, y in zip(active, sol.duals) if y != 0]
    cert = CoverCertificate("finite", value, weights, tuple(g), len(cuts))
    if not cert.verify(G, cuts):
        raise AssertionError("cover certificate failed to verify")
    return cert


def chi_H_via_s(G: Graph, H: Graph, **kwargs) -> Fraction:
    """chi_H(G) = 1 / s(H, G)."""
    return 1 / s_value(H, G, **kwargs).value


def scale_membership(G: Graph, n: int, k: int, H: Graph | None = None, budget: int | None = None) -> bool:
    """Whether G maps to the power graph H^n_k (H defaults to K_2)."""
    from .graphs import complete

    H = complete(2) if H is None else H
    return hom_exists(G, power_graph(H, n, k, budget=budget))


# ---------------------------------------------------------------------------
# hypergraph reformulation


@dataclass(frozen=True)
class Hypergraph:
    """Vertices are the edges of G; hyperedges are the minimal non-H-colourable edge sets."""

    n_vertices: int
    hyperedges: tuple[frozenset[int], ...]

    def is_independent(self, subset: frozenset[int] | set[int]) -> bool:
        return not any(h <= subset for h in self.hyperedges)


def _odd_cycle_edge_sets(G: Graph, budget: int) -> list[frozenset[int]]:
    """Edge sets of all odd cycles (simple cycles, each listed once)."""
    idx = G.edge_index
    found: set[frozenset[int]] = set()
    nodes = 0
    for s in range(G.n):
        # cycles whose smallest vertex is s
        stack = [(s, [s], frozenset([s]))]
        while stack:
            v, path, seen = stack.pop()
            for w in sorted(G.adjacency[v]):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded("odd cycle enumeration steps", budget)
                if w == s and len(path) >= 3 and len(path) % 2 == 1:
                    es = [idx[tuple(sorted((path[i], path[i + 1])))] for i in range(len(path) - 1)]
                    es.append(idx[tuple(sorted((path[-1], s)))])
                    found.add(frozenset(es))
                elif w > s and w not in seen:
                    stack.append((w, path + [w], seen | {w}))
    return sorted(found, key=lambda h: (len(h), sorted(h)))


def hypergraph_reformulation(G: Graph, H: Graph, budget: int | None = None) -> Hypergraph:
    """Hyperedges are edge sets S with S -/-> H minimal under inclusion.

    For bipartite H with an edge these are exactly the odd cycles of G.
    Otherwise edge subsets are scanned by increasing size, skipping
    supersets of obstructions already found.
    """
    budget = resolve_budget(budget, 10**7)
    if H.m == 0:
        return Hypergraph(G.m, tuple(frozenset([e]) for e in range(G.m)))
    if odd_girth(H) == float("inf"):
        return Hypergraph(G.m, tuple(_odd_cycle_edge_sets(G, budget)))
    found: list[frozenset[int]] = []
    checked = 0
    for size in range(1, G.m + 1):
        for combo in itertools.combinations(range(G.m), size):
            s = frozenset(combo)
            if any(h <= s for h in found):
                continue
            checked += 1
            if checked > budget:
                raise BudgetExceeded("obstruction subsets checked", budget)
            if not hom_exists(G.edge_subgraph(combo), H):
                found.append(s)
    return Hypergraph(G.m, tuple(found))


def _max_weight_independent(hg: Hypergraph, y: Sequence[Fraction]) -> tuple[Fraction, frozenset[int]]:
    """Exact maximum-weight independent set by branch and bound."""
    order = sorted((v for v in range(hg.n_vertices) if y[v] > 0), key=lambda v: (-y[v], v))
    containing: dict[int, list[frozenset[int]]] = {v: [] for v in range(hg.n_vertices)}
    for h in hg.hyperedges:
        for v in h:
            containing[v].append(h)
    suffix = [Fraction(0)] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + y[order[i]]
    best = [Fraction(-1), frozenset()]
    chosen: set[int] = set()

    def rec(i: int, val: Fraction):
        if val + suffix[i] <= best[0]:
            return
        if i == len(order):
            best[0], best[1] = val, frozenset(chosen)
            return
        v = order[i]
        if not any(h - {v} <= chosen for h in containing[v]):
            chosen.add(v)
            rec(i + 1, val + y[v])
            chosen.discard(v)
        rec(i + 1, val)

    rec(0, Fraction(0))
    return best[0], best[1]


def _greedy_independent(hg: Hypergraph, y: Sequence[Fraction]) -> frozenset[int]:
    chosen: set[int] = set()
    for v in sorted(range(hg.n_vertices), key=lambda v: (-y[v], v)):
        chosen.add(v)
        if not hg.is_independent(chosen):
            chosen.discard(v)
    return frozenset(chosen)


def chi_f(hg: Hypergraph) -> Fraction:
    """Fractional chromatic number of a hypergraph.

    Solved as the dual LP (maximise total vertex weight, at most 1 on any
    independent set) by row generation: a greedy independent set is tried
    first, exact branch and bound only when greedy finds no violation.
    """
    n = hg.n_vertices
    if n == 0:
        return Fraction(0)
    if any(len(h) == 1 for h in hg.hyperedges):
        raise DomainError("a singleton hyperedge makes the fractional chromatic number infinite")
    rows: list[frozenset[int]] = [_greedy_independent(hg, [Fraction(1)] * n)]
    for v in range(n):
        if not any(v in r for r in rows):
            rows.append(_greedy_independent(hg, [Fraction(int(u == v)) for u in range(n)]))
    while True:
        lp = LinearProgram(n, [-1] * n)
        for r in rows:
            lp.add_le([1 if v in r else 0 for v in range(n)], 1)
        sol = solve_min(lp)
        certify(lp, sol)
        y = sol.x
        cand = _greedy_independent(hg, y)
        if sum((y[v] for v in cand), Fraction(0)) <= 1:
            val, cand = _max_weight_independent(hg, y)
            if val <= 1:
                return -sol.value
        rows.append(cand)


# ---------------------------------------------------------------------------
# bipartite density


def bipartite_density(G: Graph) -> Fraction:
    """Maximum cut size over edge count."""
    from .graphs import complete

    if G.m == 0:
        raise DomainError("bipartite density needs an edge")
    best, _ = mc(complete(2), G)
    return best / G.m


def _cycle_partition(G: Graph) -> list[list[int]] | None:
    """Edge orbits that each form one spanning cycle, if the orbits do."""
    try:
        orbits = edge_orbits(G)
    except DomainError:
        return None
    parts = orbits.orbits()
    for part in parts:
        sub = G.edge_subgraph(part)
        if any(sub.degree(v) != 2 for v in range(G.n)):
            return None
        if odd_girth(sub) != float("inf") and len(part) != G.n:
            return None
        # connected 2-regular spanning subgraph is a Hamiltonian cycle
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in sub.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != G.n:
            return None
    return parts


def refute_density_conjecture(G: Graph) -> dict:
    """Test whether s(K_2, G) equals the least bipartite density of a subgraph.

    s(K_2, G) never exceeds b(S) for a subgraph S.  With s = a/d reduced, a
    subgraph attaining s needs a multiple of d edges.  When d exceeds the
    edge count, or equals it while b(G) differs from s, equality is
    impossible and the record says "refuted".
    """
    from .graphs import complete

    K2 = complete(2)
    s = s_value(K2, G).value
    max_cut, _ = mc(K2, G)
    m = G.m
    b = Fraction(max_cut, m)
    d = s.denominator
    all_even = all(G.degree(v) % 2 == 0 for v in range(G.n))
    partition = _cycle_partition(G)
    if b == s:
        conclusion = "equality"
    elif d > m or (d == m and b != s):
        conclusion = "refuted"
    else:
        conclusion = "inconclusive"
    return {
        "schema": "homlp/1",
        "graph": G.display(),
        "edges": m,
        "s": format_rational(s),
        "s_times_edges": format_rational(s * m),
        "max_cut": int(max_cut),
        "parity": "even" if max_cut % 2 == 0 else "odd",
        "bipartite_density": format_rational(b),
        "all_degrees_even": all_even,
        "cycle_partition": partition,
        "conclusion": conclusion,
    }
