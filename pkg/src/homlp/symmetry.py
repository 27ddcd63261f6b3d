"""Edge orbits of the automorphism group of a graph.

The weights of an optimal adversarial instance may be taken constant on
every orbit of Aut*(N), so the orbit partition fixes the variables of the
orbit LP.  ``edge_orbits`` finds a generating set of Aut(G) by exact
backtracking and closes the edge set under it; ``circular_orbits`` is the
closed form for K_{p/q}.

A partition finer than the true orbit partition would still give the right
LP value (it only adds redundant variables), but orbit-indexed reports would
no longer be reproducible, so an inconclusive search is an error.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, DomainError, resolve_budget
from .graphs import Graph

__all__ = [
    "OrbitDecomposition",
    "automorphism_generators",
    "vertex_orbits",
    "is_vertex_transitive",
    "edge_orbits",
    "circular_orbits",
]

DEFAULT_AUT_BUDGET = 5 * 10**6


@dataclass(frozen=True)
class OrbitDecomposition:
    """Partition of E(G) into orbits.

    Orbit indices are 0-based; orbit ``c`` here is A_{c+1} in the usual
    1-based notation.  Orbits are numbered by their smallest edge.
    """

    orbit_of_edge: tuple[int, ...]
    sizes: tuple[int, ...]
    representatives: tuple[tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.sizes)

    @classmethod
    def from_labels(cls, G: Graph, labels: Sequence[int]) -> "OrbitDecomposition":
        """Renumber arbitrary per-edge labels by smallest contained edge."""
        if len(labels) != G.m:
            raise DomainError("one label per edge required")
        order: dict[int, int] = {}
        reps = []
        for i, lab in enumerate(labels):  # edges are sorted, so first hit is smallest
            if lab not in order:
                order[lab] = len(order)
                reps.append(G.edges[i])
        orbit_of = tuple(order[lab] for lab in labels)
        sizes = [0] * len(order)
        for c in orbit_of:
            sizes[c] += 1
        return cls(orbit_of, tuple(sizes), tuple(reps))

    def orbits(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.r)]
        for e, c in enumerate(self.orbit_of_edge):
            out[c].append(e)
        return out

    def same_partition(self, other: "OrbitDecomposition") -> bool:
        return self.orbit_of_edge == other.orbit_of_edge

    def to_json(self) -> dict:
        return {
            "schema": "homlp/1",
            "r": self.r,
            "sizes": list(self.sizes),
            "representatives": [list(e) for e in self.representatives],
        }


def _distances(G: Graph) -> list[list[int]]:
    n = G.n
    out = []
    for s in range(n):
        d = [-1] * n
        d[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in G.adjacency[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    dq.append(w)
        out.append(d)
    return out


def _color_refinement(G: Graph) -> list[int]:
    """Stable colouring by iterated neighbour-colour multisets (1-WL)."""
    colors = [0] * G.n
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in G.adjacency[v]))) for v in range(G.n)]
        ids = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ids[s] for s in sigs]
        if len(ids) == len(set(colors)):
            return new
        colors = new


class _AutSearch:
    def __init__(self, G: Graph, budget: int):
        self.G = G
        self.n = G.n
        self.budget = budget
        self.nodes = 0
        self.dist = _distances(G)
        self.color = _color_refinement(G)
        # candidate masks keyed by (distance row value) are built lazily
        self.cells: dict[int, int] = {}
        for v, c in enumerate(self.color):
            self.cells[c] = self.cells.get(c, 0) | (1 << v)
        self.by_dist: list[dict[int, int]] = []
        for y in range(self.n):
            m: dict[int, int] = {}
            for c, d in enumerate(self.dist[y]):
                m[d] = m.get(d, 0) | (1 << c)
            self.by_dist.append(m)

    def extend(self, fixed: Sequence[tuple[int, int]]) -> tuple[int, ...] | None:
        """Find an automorphism agreeing with the (x -> y) pairs, or None."""
        n = self.n
        dom = [self.cells[self.color[v]] for v in range(n)]
        img = [-1] * n
        used = 0
        for x, y in fixed:
            if not (dom[x] >> y) & 1 or (used >> y) & 1:
                return None
            img[x] = y
            used |= 1 << y
            for z in range(n):
                if img[z] < 0:
                    dom[z] &= self.by_dist[y].get(self.dist[x][z], 0)
                    if not dom[z]:
                        return None
        for z in range(n):
            if img[z] < 0:
                dom[z] &= ~used
                if not dom[z]:
                    return None
        if self._search(dom, img, used):
            return tuple(img)
        return None

    def _search(self, dom: list[int], img: list[int], used: int) -> bool:
        free = [z for z in range(self.n) if img[z] < 0]
        if not free:
            return True
        x = min(free, key=lambda z: (bin(dom[z]).count("1"), z))
        cand = dom[x]
        while cand:
            low = cand & -cand
            y = low.bit_length() - 1
            cand ^= low
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded("automorphism search nodes", self.budget)
            saved = []
            ok = True
            row = self.by_dist[y]
            dx = self.dist[x]
            for z in free:
                if z == x:
                    continue
                nd = dom[z] & row.get(dx[z], 0) & ~low
                if nd != dom[z]:
                    saved.append((z, dom[z]))
                    dom[z] = nd
                    if not nd:
                        ok = False
                        break
            if ok:
                img[x] = y
                if self._search(dom, img, used | low):
                    return True
                img[x] = -1
            for z, d in saved:
                dom[z] = d
        return False


def automorphism_generators(G: Graph, budget: int | None = None) -> list[tuple[int, ...]]:
    """A generating set of Aut(G) (not the whole group).

    Uses the base 0, 1, ..., n-1.  For each level i (deepest first) and each
    vertex w that could be the image of i under the pointwise stabiliser of
    0..i-1, one automorphism is searched for unless w is already known to
    be in the orbit.  The generators collected this way form a strong
    generating set, hence generate the full group.
    """
    budget = resolve_budget(budget, DEFAULT_AUT_BUDGET)
    n = G.n
    srch = _AutSearch(G, budget)
    gens: list[tuple[int, ...]] = []
    for i in range(n - 1, -1, -1):
        fixed = [(j, j) for j in range(i)]
        orbit = _orbit_of(i, gens, n)
        for w in range(n):
            if w in orbit or srch.color[w] != srch.color[i]:
                continue
            if any(srch.dist[j][i] != srch.dist[j][w] for j in range(i)):
                continue
            perm = srch.extend(fixed + [(i, w)])
            if perm is not None:
                gens.append(perm)
                orbit = _orbit_of(i, gens, n)
    return gens


def _orbit_of(v: int, gens: Sequence[Sequence[int]], n: int) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for g in gens:
            w = g[u]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def vertex_orbits(G: Graph, gens: Sequence[Sequence[int]] | None = None) -> list[list[int]]:
    if gens is None:
        gens = automorphism_generators(G)
    left = set(range(G.n))
    out = []
    for v in range(G.n):
        if v in left:
            orb = _orbit_of(v, gens, G.n)
            left -= orb
            out.append(sorted(orb))
    return out


def is_vertex_transitive(G: Graph, gens: Sequence[Sequence[int]] | None = None) -> bool:
    """Certified via the generator closure, so a ``True`` answer is exact."""
    if G.n <= 1:
        return True
    return len(vertex_orbits(G, gens)) == 1


def edge_orbits(G: Graph, budget: int | None = None) -> OrbitDecomposition:
    """Orbits of E(G) under Aut(G), numbered by smallest contained edge."""
    if G.m == 0:
        raise DomainError("edge_orbits needs a graph with at least one edge")
    gens = automorphism_generators(G, budget)
    parent = list(range(G.m))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    idx = G.edge_index
    for g in gens:
        for e, (u, v) in enumerate(G.edges):
            a, b = g[u], g[v]
            f = idx[(a, b) if a < b else (b, a)]
            ra, rb = find(e), find(f)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return OrbitDecomposition.from_labels(G, [find(e) for e in range(G.m)])


def circular_orbits(p: int, q: int) -> OrbitDecomposition:
    """Closed-form orbits A_c of K_{p/q}: edges at circular distance q+c-1.

    r = ceil((p-2q+1)/2); every class has p edges except the antipodal one
    (p even, distance p/2) which has p/2.
    """
    if math.gcd(p, q) != 1:
        raise DomainError(f"K({p}/{q}) is not reduced")
    if p < 2 * q:
        raise DomainError(f"K({p}/{q}) has no edges")
    from .graphs import circular_complete

    G = circular_complete(p, q)
    labels = [min(v - u, p - (v - u)) - q for u, v in G.edges]
    dec = OrbitDecomposition.from_labels(G, labels)
    r = -(-(p - 2 * q + 1) // 2)
    assert dec.r == r
    return dec
