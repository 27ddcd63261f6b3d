"""Simple undirected graphs, the standard families, and homomorphism search.

Vertices are dense 0-based integers.  Circular complete graphs use the
labelling v_0..v_{p-1} so that vertex ``i`` is at position ``i`` on the
circle.  Graphs are immutable; the edge list is kept sorted.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DomainError, ParseError, resolve_budget

__all__ = [
    "Graph",
    "VertexMap",
    "circular_complete",
    "cycle",
    "complete",
    "power_graph",
    "cube_scale",
    "find_homomorphism",
    "hom_exists",
    "odd_girth",
    "clique_number",
    "greedy_clique_size",
    "parse_graph",
    "serialize_graph",
    "DEFAULT_POWER_BUDGET",
]

DEFAULT_POWER_BUDGET = 2**16
DEFAULT_HOM_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class Graph:
    """Finite simple undirected graph in canonical form.

    ``edges`` holds pairs ``(u, v)`` with ``u < v`` in lexicographic order.
    ``label`` is a display name (e.g. ``"K(11/4)"``) and takes no part in
    equality.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("vertex count must be nonnegative")
        canon = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge ({u},{v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise DomainError(f"duplicate edge {e}")
            canon.add(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], label: str | None = None) -> "Graph":
        """Build a graph, silently dropping repeated edges (but not loops)."""
        seen = set()
        for u, v in edges:
            seen.add((min(u, v), max(u, v)))
        return cls(n, tuple(seen), label)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<Graph{name} n={self.n} m={len(self.edges)}>"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def adjacency_bits(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.adjacency)

    @cached_property
    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        a.setflags(write=False)
        return a

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex bijection ``i -> perm[i]``."""
        if sorted(perm) != list(range(self.n)):
            raise DomainError("relabel needs a permutation of the vertex set")
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges), self.label)

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """Spanning subgraph keeping only the given edge indices."""
        return Graph(self.n, tuple(self.edges[i] for i in edge_ids))

    def display(self) -> str:
        return self.label if self.label else serialize_graph(self)


@dataclass(frozen=True)
class VertexMap:
    """A vertex map V(source) -> V(target); ``image[i]`` is the image of vertex i."""

    image: tuple[int, ...]
    target_order: int

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(int(x) for x in self.image))
        for x in self.image:
            if not 0 <= x < self.target_order:
                raise DomainError(f"image {x} outside target of order {self.target_order}")

    @property
    def source_order(self) -> int:
        return len(self.image)

    def __getitem__(self, v: int) -> int:
        return self.image[v]

    def preserved_edges(self, source: Graph, target: Graph) -> list[int]:
        """Indices of source edges carried onto target edges."""
        if source.n != self.source_order or target.n != self.target_order:
            raise DomainError("vertex map does not match graph orders")
        adj = target.adjacency
        return [i for i, (u, v) in enumerate(source.edges) if self.image[v] in adj[self.image[u]]]

    def is_homomorphism(self, source: Graph, target: Graph) -> bool:
        return len(self.preserved_edges(source, target)) == source.m

    def preimages(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.target_order)]
        for v, c in enumerate(self.image):
            out[c].append(v)
        return out


# ---------------------------------------------------------------------------
# families


def circular_complete(p: int, q: int) -> Graph:
    """K_{p/q}: vertices 0..p-1, edges between circular distance q..p-q."""
    if p < 1 or q < 1:
        raise DomainError("p and q must be positive")
    if math.gcd(p, q) != 1:
        raise DomainError(f"K({p}/{q}) is not reduced: gcd(p,q) = {math.gcd(p, q)}")
    edges = [(i, j) for i in range(p) for j in range(i + 1, p) if q <= j - i <= p - q]
    label = f"K({p})" if q == 1 else f"K({p}/{q})"
    return Graph(p, tuple(edges), label)


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)), f"C({n})")


def complete(n: int) -> Graph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return Graph(n, tuple(itertools.combinations(range(n), 2)), f"K({n})")


def power_graph(H: Graph, n: int, k: int, budget: int | None = None) -> Graph:
    """H^n_k on V(H)^n.

    Tuple ``(u_1, ..., u_n)`` is encoded as ``sum u_i * |V(H)|**(n-i)``, so
    coordinate 0 is the most significant digit.  Two tuples are adjacent when
    at least ``k`` coordinates form edges of H.
    """
    if n < 1 or k < 1:
        raise DomainError("n and k must be positive")
    if k > n:
        raise DomainError(f"k={k} exceeds n={n}")
    if H.n < 1:
        raise DomainError("H must have a vertex")
    budget = resolve_budget(budget, DEFAULT_POWER_BUDGET)
    size = H.n**n
    if size > budget:
        raise BudgetExceeded("power graph vertex count", budget, size)
    digits = np.array(list(itertools.product(range(H.n), repeat=n)), dtype=np.int64).reshape(size, n)
    hm = H.matrix
    edges = []
    for a in range(size):
        hits = hm[digits[a][None, :], digits[a + 1:]].sum(axis=1)
        for off in np.nonzero(hits >= k)[0]:
            edges.append((a, a + 1 + int(off)))
    if H.label == "K(2)" or (H.n == 2 and H.m == 1):
        label = f"Q({n}/{k})"
    else:
        label = f"P({H.display()},{n},{k})"
    return Graph(size, tuple(edges), label)


def cube_scale(n: int, k: int) -> Graph:
    """Q_{n/k}: binary strings of length n, adjacent at Hamming distance >= k."""
    return power_graph(complete(2), n, k)


# ---------------------------------------------------------------------------
# homomorphisms


def find_homomorphism(G: Graph, H: Graph, budget: int | None = None) -> VertexMap | None:
    """Backtracking search for a homomorphism G -> H.

    Source vertices are taken in order of descending degree (ties by index);
    every assignment prunes the candidate sets of unassigned neighbours.
    Before searching, a greedy clique of G larger than the clique number
    of H settles non-existence, since cliques map injectively onto cliques.
    Returns a witness map or ``None``.
    """
    if H.n == 0:
        return VertexMap((), 0) if G.n == 0 else None
    budget = resolve_budget(budget, DEFAULT_HOM_BUDGET)
    if G.m and greedy_clique_size(G) > clique_number(H, budget):
        return None
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    hadj = H.adjacency_bits
    full = (1 << H.n) - 1
    dom = [full] * G.n
    image = [-1] * G.n
    gadj = G.adjacency
    nodes = 0

    def search(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        v = order[pos]
        cand = dom[v]
        while cand:
            low = cand & -cand
            c = low.bit_length() - 1
            cand ^= low
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("homomorphism search nodes", budget)
            saved = []
            ok = True
            for u in gadj[v]:
                if image[u] < 0:
                    nd = dom[u] & hadj[c]
                    if nd != dom[u]:
                        saved.append((u, dom[u]))
                        dom[u] = nd
                        if not nd:
                            ok = False
                            break
            if ok:
                image[v] = c
                if search(pos + 1):
                    return True
                image[v] = -1
            for u, d in saved:
                dom[u] = d
        return False

    if search(0):
        return VertexMap(tuple(image), H.n)
    return None


def greedy_clique_size(G: Graph) -> int:
    """Size of the largest clique found greedily from each start vertex."""
    best = 1 if G.n else 0
    adj = G.adjacency
    for s in range(G.n):
        clique = [s]
        cand = set(adj[s])
        while cand:
            v = max(cand, key=lambda u: (len(adj[u] & cand), -u))
            clique.append(v)
            cand &= adj[v]
        best = max(best, len(clique))
    return best


def clique_number(G: Graph, budget: int | None = None) -> int:
    """Exact clique number by Bron-Kerbosch with pivoting over bitsets."""
    budget = resolve_budget(budget, DEFAULT_HOM_BUDGET)
    adj = G.adjacency_bits
    best = 0
    nodes = 0

    def expand(size: int, cand: int, excl: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("clique search nodes", budget)
        if not cand and not excl:
            best = max(best, size)
            return
        if size + bin(cand).count("1") <= best:
            return
        pool = cand | excl
        pivot = max((u for u in range(G.n) if pool >> u & 1), key=lambda u: bin(cand & adj[u]).count("1"))
        rest = cand & ~adj[pivot]
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            expand(size + 1, cand & adj[v], excl & adj[v])
            cand &= ~low
            excl |= low

    expand(0, (1 << G.n) - 1, 0)
    return best


def hom_exists(G: Graph, H: Graph, budget: int | None = None) -> bool:
    return find_homomorphism(G, H, budget) is not None


def odd_girth(G: Graph) -> float:
    """Length of a shortest odd cycle, ``math.inf`` when G is bipartite.

    BFS from every vertex; an edge joining two vertices on the same layer
    d closes an odd walk of length 2d+1, and the minimum of these over all
    roots is the odd girth.
    """
    best = math.inf
    adj = G.adjacency
    for s in range(G.n):
        dist = [-1] * G.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        for u, v in G.edges:
            if dist[u] >= 0 and dist[u] == dist[v]:
                best = min(best, 2 * dist[u] + 1)
    return best


# ---------------------------------------------------------------------------
# text formats


def serialize_graph(G: Graph) -> str:
    """Canonical edge-list document ``{"n": .., "edges": [[u, v], ...]}``."""
    return json.dumps({"n": G.n, "edges": [list(e) for e in G.edges]}, separators=(", ", ": "))


def parse_graph(text: str) -> Graph:
    """Parse a constructor expression or an edge-list document.

    Constructors: ``K(n)``, ``K(p/q)``, ``C(n)``, ``Q(n/k)``, ``P(H,n,k)``
    where ``H`` is itself any graph expression.
    """
    parser = _Parser(text)
    g = parser.graph()
    parser.skip_ws()
    if parser.pos != len(text):
        raise ParseError("trailing characters", parser.pos)
    return g


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected an integer", start)
        return int(self.text[start:self.pos])

    def fraction(self) -> tuple[int, int]:
        a = self.integer()
        if self.peek() == "/":
            self.pos += 1
            return a, self.integer()
        return a, 1

    def graph(self) -> Graph:
        ch = self.peek()
        if ch == "{":
            return self.document()
        start = self.pos
        if ch not in ("K", "C", "Q", "P"):
            raise ParseError("expected a graph constructor K, C, Q, P or a JSON document", start)
        self.pos += 1
        self.expect("(")
        try:
            if ch == "K":
                p, q = self.fraction()
                self.expect(")")
                return complete(p) if q == 1 else circular_complete(p, q)
            if ch == "C":
                n = self.integer()
                self.expect(")")
                return cycle(n)
            if ch == "Q":
                n, k = self.fraction()
                self.expect(")")
                return cube_scale(n, k)
            h = self.graph()
            self.expect(",")
            n = self.integer()
            self.expect(",")
            k = self.integer()
            self.expect(")")
            return power_graph(h, n, k)
        except DomainError as exc:
            raise DomainError(f"{exc} (constructor at position {start})") from exc

    def document(self) -> Graph:
        start = self.pos
        depth = 0
        end = None
        for i in range(self.pos, len(self.text)):
            c = self.text[i]
            if c == "{":
                depth += 1
            elif c == "}":
                depth -= 1
                if depth == 0:
                    end = i + 1
                    break
        if end is None:
            raise ParseError("unterminated graph document", start)
        try:
            doc = json.loads(self.text[start:end])
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed graph document: {exc.msg}", start + exc.pos) from exc
        self.pos = end
        if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
            raise ParseError("graph document needs keys 'n' and 'edges'", start)
        n = doc["n"]
        if not isinstance(n, int) or n < 0:
            raise ParseError("'n' must be a nonnegative integer", start)
        edges = []
        for e in doc["edges"]:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise ParseError(f"bad edge entry {e!r}", start)
            edges.append(tuple(e))
        return Graph(n, tuple(edges))
