"""Max H-colourable subgraph values, signatures, and the orbit LP for s(M, N).

``s(M, N)`` is the optimum of

    minimise s
    subject to  sum_i f_i * w_i <= s      for every signature f
                sum_i |A_i| * w_i = 1,    w, s >= 0

where ``A_1..A_r`` are the edge orbits of Aut(N) and the signature of a map
``V(N) -> V(M)`` counts, per orbit, the edges it carries onto edges of M.
Signatures are obtained either by scanning the whole map space (keeping
the Pareto frontier) or lazily, by constraint generation with ``mc`` as the
separation oracle.  Both routes give the same exact rational.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, DomainError, resolve_budget
from .exactlp import LinearProgram, certify, format_rational, solve_min
from .graphs import Graph, VertexMap, find_homomorphism
from .symmetry import OrbitDecomposition, edge_orbits, is_vertex_transitive

__all__ = [
    "WeightFunction",
    "Signature",
    "SignatureSet",
    "SValueResult",
    "mc",
    "signature_of",
    "enumerate_signatures",
    "pareto_frontier",
    "orbit_lp",
    "solve_orbit_lp",
    "s_value",
    "s_value_generic",
    "sandwich_bounds",
    "bound_from_class",
    "EXHAUSTIVE_LIMIT",
]

DEFAULT_MC_BUDGET = 10**8
DEFAULT_ENUM_BUDGET = 2**31
EXHAUSTIVE_LIMIT = 10**7
_CHUNK = 1 << 17

Signature = tuple[int, ...]


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightFunction:
    """Nonnegative rational weights on the canonical edge list of a graph."""

    weights: tuple[Fraction, ...]
    orbit_values: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        if any(x < 0 for x in w):
            raise DomainError("weights must be nonnegative")
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, G: Graph, normalized: bool = False) -> "WeightFunction":
        v = Fraction(1, G.m) if normalized else Fraction(1)
        return cls((v,) * G.m)

    @classmethod
    def from_orbits(cls, orbits: OrbitDecomposition, values: Sequence) -> "WeightFunction":
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != orbits.r:
            raise DomainError("one value per orbit required")
        return cls(tuple(vals[c] for c in orbits.orbit_of_edge), vals)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def is_orbit_constant(self, orbits: OrbitDecomposition) -> bool:
        seen: dict[int, Fraction] = {}
        for w, c in zip(self.weights, orbits.orbit_of_edge):
            if seen.setdefault(c, w) != w:
                return False
        return True

    def normalized(self) -> "WeightFunction":
        t = self.total
        return WeightFunction(tuple(w / t for w in self.weights))


def _integer_weights(weights: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = 1
    for w in weights:
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    return [int(w * scale) for w in weights], scale


# ---------------------------------------------------------------------------
# mc by branch and bound


def _resolve_fix_first(M: Graph, fix_first: bool | None) -> bool:
    if fix_first is None:
        return M.n > 1 and is_vertex_transitive(M)
    return fix_first


def mc(
    M: Graph,
    G: Graph,
    w: WeightFunction | Sequence | None = None,
    fix_first: bool | None = None,
    budget: int | None = None,
) -> tuple[Fraction, VertexMap]:
    """Weight of a heaviest subgraph of (G, w) admitting a homomorphism to M.

    Branch and bound over vertex images.  Vertices go in order of
    descending weighted degree (ties by index).  The bound adds, for each
    unassigned vertex, its best possible gain towards assigned neighbours,
    plus the full weight of edges with both ends unassigned.  When M is
    vertex-transitive (certified unless ``fix_first`` is given) the first
    vertex is pinned to image 0.  ``budget`` caps the number of search nodes.
    """
    if G.m == 0 or M.m == 0:
        raise DomainError("mc needs both graphs to have an edge")
    if w is None:
        w = WeightFunction.uniform(G)
    weights = w.weights if isinstance(w, WeightFunction) else tuple(Fraction(x) for x in w)
    if len(weights) != G.m:
        raise DomainError("weight vector length differs from edge count")
    budget = resolve_budget(budget, DEFAULT_MC_BUDGET)
    fix = _resolve_fix_first(M, fix_first)
    iw, scale = _integer_weights(weights)

    n, k = G.n, M.n
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    wdeg = [0] * n
    for (u, v), x in zip(G.edges, iw):
        if x:
            nbrs[u].append((v, x))
            nbrs[v].append((u, x))
            wdeg[u] += x
            wdeg[v] += x
    order = sorted(range(n), key=lambda v: (-wdeg[v], v))
    madj = [sorted(M.adjacency[c]) for c in range(k)]
    gain = [[0] * k for _ in range(n)]
    img = [-1] * n
    internal = sum(iw)
    best = -1
    best_img: list[int] = []
    cur = 0
    nodes = 0

    def rec(i: int):
        nonlocal best, best_img, cur, internal, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("mc search nodes", budget)
        if i == n:
            if cur > best:
                best = cur
                best_img = img[:]
            return
        bound = cur + internal
        for u in order[i:]:
            bound += max(gain[u])
        if bound <= best:
            return
        v = order[i]
        gv = gain[v]
        colors = [0] if (i == 0 and fix) else sorted(range(k), key=lambda c: (-gv[c], c))
        free_nb = [(u, x) for u, x in nbrs[v] if img[u] < 0]
        lost = sum(x for _, x in free_nb)
        for c in colors:
            img[v] = c
            cur += gv[c]
            internal -= lost
            mc_ = madj[c]
            for u, x in free_nb:
                gu = gain[u]
                for d in mc_:
                    gu[d] += x
            rec(i + 1)
            for u, x in free_nb:
                gu = gain[u]
                for d in mc_:
                    gu[d] -= x
            internal += lost
            cur -= gv[c]
            img[v] = -1

    rec(0)
    return Fraction(best, scale), VertexMap(tuple(best_img), k)


# ---------------------------------------------------------------------------
# signatures


def signature_of(f: VertexMap, M: Graph, N: Graph, orbits: OrbitDecomposition) -> Signature:
    """Per-orbit count of edges of N that ``f`` carries onto edges of M."""
    if f.source_order != N.n or f.target_order != M.n:
        raise DomainError(
            f"map {f.source_order}->{f.target_order} does not fit N (n={N.n}) -> M (n={M.n})"
        )
    if len(orbits.orbit_of_edge) != N.m:
        raise DomainError("orbit decomposition does not belong to N")
    sig = [0] * orbits.r
    adj = M.adjacency
    for (u, v), c in zip(N.edges, orbits.orbit_of_edge):
        if f.image[v] in adj[f.image[u]]:
            sig[c] += 1
    return tuple(sig)


def pareto_frontier(sigs: np.ndarray) -> np.ndarray:
    """Rows not componentwise dominated by another (distinct) row."""
    if len(sigs) == 0:
        return sigs
    sigs = np.unique(sigs, axis=0)
    order = np.argsort(-sigs.sum(axis=1), kind="stable")
    kept: list[np.ndarray] = []
    for idx in order:
        row = sigs[idx]
        if kept:
            K = np.asarray(kept)
            if np.any(np.all(K >= row, axis=1)):
                continue
        kept.append(row)
    out = np.asarray(kept)
    return out[np.lexsort(out.T[::-1])]


@dataclass
class SignatureSet:
    signatures: list[Signature]
    witnesses: list[VertexMap]
    sizes: tuple[int, ...]
    provenance: str  # "exhaustive" | "constraint-generated" | "restricted"
    maps_scanned: int = 0

    def verify_witnesses(self, M: Graph, N: Graph, orbits: OrbitDecomposition) -> bool:
        return all(signature_of(w, M, N, orbits) == s for s, w in zip(self.signatures, self.witnesses))

    def is_antichain(self) -> bool:
        S = self.signatures
        for i, a in enumerate(S):
            for j, b in enumerate(S):
                if i != j and all(x >= y for x, y in zip(a, b)):
                    return False
        return True


def _decode_maps(indices: np.ndarray, n: int, k: int, fix: bool) -> np.ndarray:
    """Map index -> image array; vertex 0 is pinned to 0 when ``fix``."""
    idx = indices.astype(np.int64)
    cols = []
    free = list(range(1, n)) if fix else list(range(n))
    digits = {}
    for v in reversed(free):
        digits[v] = (idx % k).astype(np.int16)
        idx = idx // k
    for v in range(n):
        cols.append(digits[v] if v in digits else np.zeros(len(indices), dtype=np.int16))
    return np.stack(cols, axis=1)


def _iter_signature_chunks(M: Graph, N: Graph, orbits: OrbitDecomposition, fix: bool):
    n, k = N.n, M.n
    free = n - 1 if fix else n
    total = k**free
    table = M.matrix.reshape(-1)
    eu = np.array([u for u, _ in N.edges])
    ev = np.array([v for _, v in N.edges])
    oc = np.array(orbits.orbit_of_edge)
    weights = [1]
    for s in orbits.sizes[:-1]:
        weights.append(weights[-1] * (s + 1))
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        maps = _decode_maps(np.arange(start, stop), n, k, fix)
        hit = table[maps[:, eu] * k + maps[:, ev]]
        counts = np.zeros((stop - start, orbits.r), dtype=np.int32)
        for c in range(orbits.r):
            counts[:, c] = hit[:, oc == c].sum(axis=1)
        keys = counts @ np.array(weights, dtype=np.int64)
        yield start, counts, keys


def enumerate_signatures(
    M: Graph,
    N: Graph,
    orbits: OrbitDecomposition | None = None,
    budget: int | None = None,
    fix_first: bool | None = None,
    keep_all: bool = False,
) -> SignatureSet:
    """Scan every map V(N) -> V(M) and collect its signature.

    Returns the Pareto frontier (or every distinct signature with
    ``keep_all``), one witness map per signature.
    """
    if orbits is None:
        orbits = edge_orbits(N)
    fix = _resolve_fix_first(M, fix_first)
    budget = resolve_budget(budget, DEFAULT_ENUM_BUDGET)
    space = M.n ** (N.n - 1 if fix else N.n)
    if space > budget:
        raise BudgetExceeded("signature enumeration map space", budget, space)
    seen: dict[int, tuple[int, Signature]] = {}
    for start, counts, keys in _iter_signature_chunks(M, N, orbits, fix):
        uk, first = np.unique(keys, return_index=True)
        for key, i in zip(uk.tolist(), first.tolist()):
            if key not in seen:
                seen[key] = (start + i, tuple(int(x) for x in counts[i]))
    sigs = np.array([s for _, s in seen.values()], dtype=np.int64)
    wit_of = {s: idx for idx, s in seen.values()}
    chosen = sigs if keep_all else pareto_frontier(sigs)
    chosen = chosen[np.lexsort(chosen.T[::-1])] if len(chosen) else chosen
    out_sigs = [tuple(int(x) for x in row) for row in chosen]
    idxs = np.array([wit_of[s] for s in out_sigs], dtype=np.int64)
    maps = _decode_maps(idxs, N.n, M.n, fix)
    wits = [VertexMap(tuple(int(x) for x in row), M.n) for row in maps]
    return SignatureSet(out_sigs, wits, orbits.sizes, "exhaustive", space)


def enumerate_restricted(
    M: Graph,
    N: Graph,
    orbits: OrbitDecomposition,
    full_orbits: Sequence[int],
    fix_first: bool | None = None,
    budget: int | None = None,
) -> SignatureSet:
    """Pareto frontier among maps that carry every edge of ``full_orbits``.

    Such maps are exactly the homomorphisms of the spanning subgraph formed
    by those orbits, so they are enumerated by backtracking over that
    subgraph; the search is exhaustive on this subset of the map space.
    """
    fix = _resolve_fix_first(M, fix_first)
    budget = resolve_budget(budget, 10**8)
    keep = [e for e, c in enumerate(orbits.orbit_of_edge) if c in set(full_orbits)]
    sub = N.edge_subgraph(keep)
    order = _bfs_order(sub)
    madj = M.adjacency
    img = [-1] * N.n
    found: dict[Signature, VertexMap] = {}
    nodes = 0

    def rec(i: int):
        nonlocal nodes
        if i == N.n:
            f = VertexMap(tuple(img), M.n)
            s = signature_of(f, M, N, orbits)
            found.setdefault(s, f)
            return
        v = order[i]
        cands = [0] if (i == 0 and fix) else range(M.n)
        for c in cands:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("restricted enumeration nodes", budget)
            if all(img[u] < 0 or c in madj[img[u]] for u in sub.adjacency[v]):
                img[v] = c
                rec(i + 1)
                img[v] = -1

    rec(0)
    sigs = np.array(sorted(found), dtype=np.int64).reshape(-1, orbits.r)
    front = [tuple(int(x) for x in row) for row in pareto_frontier(sigs)] if len(sigs) else []
    return SignatureSet(front, [found[s] for s in front], orbits.sizes, "restricted", nodes)


def _bfs_order(G: Graph) -> list[int]:
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        q = [s]
        while q:
            u = q.pop(0)
            out.append(u)
            for w in sorted(G.adjacency[u]):
                if not seen[w]:
                    seen[w] = True
                    q.append(w)
    return out


# ---------------------------------------------------------------------------
# the orbit LP


def orbit_lp(sizes: Sequence[int], signatures: Sequence[Signature]) -> LinearProgram:
    """Variables ``w_1..w_r, s``; one row per signature, then the normalisation."""
    r = len(sizes)
    lp = LinearProgram(r + 1, [0] * r + [1])
    for f in signatures:
        if len(f) != r:
            raise DomainError(f"signature {f} has wrong length for {r} orbits")
        lp.add_le(list(f) + [-1], 0)
    lp.add_eq(list(sizes) + [0], 1)
    return lp


def solve_orbit_lp(sizes: Sequence[int], signatures: Sequence[Signature]):
    lp = orbit_lp(sizes, signatures)
    sol = solve_min(lp)
    if not sol.optimal:
        raise RuntimeError(f"orbit LP unexpectedly {sol.status}")
    certify(lp, sol)
    return sol.value, tuple(sol.x[:-1]), [signatures[i] for i in sol.tight if i < len(signatures)], lp, sol


@dataclass
class SValueResult:
    value: Fraction
    omega: tuple[Fraction, ...]
    binding: list[Signature]
    method: str
    orbits: OrbitDecomposition
    signatures: list[Signature] = field(default_factory=list)
    iterations: int = 0
    elapsed_ms: int = 0

    def __post_init__(self):
        total = sum((a * w for a, w in zip(self.orbits.sizes, self.omega)), Fraction(0))
        if total != 1:
            raise AssertionError("orbit weights are not normalised")

    def to_json(self, M: Graph | None = None, N: Graph | None = None) -> dict:
        rec = {"schema": "homlp/1"}
        if M is not None:
            rec["M"] = M.display()
        if N is not None:
            rec["N"] = N.display()
        rec.update(
            {
                "s": format_rational(self.value),
                "omega": [format_rational(w) for w in self.omega],
                "orbit_sizes": list(self.orbits.sizes),
                "binding": [list(f) for f in self.binding],
                "method": self.method,
                "elapsed_ms": self.elapsed_ms,
            }
        )
        return rec


def _check_inputs(M: Graph, N: Graph):
    if M.m == 0 or N.m == 0:
        raise DomainError("s(M, N) needs both graphs to have at least one edge")


def s_value(
    M: Graph,
    N: Graph,
    method: str = "auto",
    orbits: OrbitDecomposition | None = None,
    budget: int | None = None,
    fix_first: bool | None = None,
) -> SValueResult:
    """Exact s(M, N) from the orbit LP.

    ``method``: ``"exhaustive"`` (all signatures, one LP), ``"congen"``
    (constraint generation with ``mc`` as separation oracle) or ``"auto"``,
    which picks exhaustive when the map space is at most 10^7.
    """
    _check_inputs(M, N)
    t0 = time.perf_counter()
    if orbits is None:
        orbits = edge_orbits(N)
    fix = _resolve_fix_first(M, fix_first)
    if method == "auto":
        space = M.n ** (N.n - 1 if fix else N.n)
        method = "exhaustive" if space <= EXHAUSTIVE_LIMIT else "congen"
    if method == "exhaustive":
        ss = enumerate_signatures(M, N, orbits, budget=budget, fix_first=fix)
        value, omega, binding, _, _ = solve_orbit_lp(orbits.sizes, ss.signatures)
        res = SValueResult(value, omega, binding, "exhaustive", orbits, ss.signatures, 1)
    elif method == "congen":
        res = _s_congen(M, N, orbits, fix, budget)
    else:
        raise DomainError(f"unknown method {method!r}")
    res.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return res


def _s_congen(M, N, orbits, fix, budget) -> SValueResult:
    _, f0 = mc(M, N, WeightFunction.uniform(N), fix_first=fix, budget=budget)
    sigs = [signature_of(f0, M, N, orbits)]
    it = 0
    while True:
        it += 1
        value, omega, binding, _, _ = solve_orbit_lp(orbits.sizes, sigs)
        w = WeightFunction.from_orbits(orbits, omega)
        best, fmap = mc(M, N, w, fix_first=fix, budget=budget)
        if best <= value:
            if best != value:
                raise AssertionError("separation oracle below the restricted LP value")
            return SValueResult(value, omega, binding, "congen", orbits, sigs, it)
        sig = signature_of(fmap, M, N, orbits)
        if sig in sigs:
            raise AssertionError("separation oracle returned a known signature")
        sigs.append(sig)


def s_value_generic(M: Graph, N: Graph, max_edges: int = 64, budget: int | None = None) -> Fraction:
    """s(M, N) with one weight per edge and no symmetry reduction.

    Constraint generation over preserved edge sets; independent of the
    orbit machinery and used to cross-check :func:`s_value`.
    """
    _check_inputs(M, N)
    if N.m > max_edges:
        raise BudgetExceeded("per-edge LP edge count", max_edges, N.m)
    m = N.m
    _, f0 = mc(M, N, WeightFunction.uniform(N), budget=budget)
    rows = [tuple(int(i in set(f0.preserved_edges(N, M))) for i in range(m))]
    while True:
        lp = LinearProgram(m + 1, [0] * m + [1])
        for row in rows:
            lp.add_le(list(row) + [-1], 0)
        lp.add_eq([1] * m + [0], 1)
        sol = solve_min(lp)
        certify(lp, sol)
        best, fmap = mc(M, N, sol.x[:m], budget=budget)
        if best <= sol.value:
            return sol.value
        kept = set(fmap.preserved_edges(N, M))
        rows.append(tuple(int(i in kept) for i in range(m)))


# ---------------------------------------------------------------------------
# bounds


@dataclass
class Interval:
    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(1)

    @property
    def consistent(self) -> bool:
        return self.lo <= self.hi

    def __str__(self):
        return f"[{format_rational(self.lo)}, {format_rational(self.hi)}]"


def _as_interval(v) -> Interval:
    if v is None:
        return Interval()
    if isinstance(v, Interval):
        return Interval(v.lo, v.hi)
    if isinstance(v, tuple):
        return Interval(Fraction(v[0]), Fraction(v[1]))
    return Interval(Fraction(v), Fraction(v))


def sandwich_bounds(s_MH=None, s_HN=None, s_MN=None, chain: Sequence[Graph] | None = None, max_order: int = 40):
    """Propagate bounds through a homomorphism chain M -> H -> N.

    Uses s(M,H) >= s(M,N) and s(H,N) >= s(M,N).  Values may be exact
    rationals, ``(lo, hi)`` pairs or ``None``.  When ``chain = (M, H, N)`` is
    given and small enough, both homomorphisms are checked.
    """
    if chain is not None:
        M, H, N = chain
        for a, b in ((M, H), (H, N)):
            if max(a.n, b.n) <= max_order and find_homomorphism(a, b) is None:
                raise DomainError(f"no homomorphism {a.display()} -> {b.display()}")
    mh, hn, mn = _as_interval(s_MH), _as_interval(s_HN), _as_interval(s_MN)
    mh.lo = max(mh.lo, mn.lo)
    hn.lo = max(hn.lo, mn.lo)
    mn.hi = min(mn.hi, mh.hi, hn.hi)
    report = {"s(M,H)": mh, "s(H,N)": hn, "s(M,N)": mn}
    report_ok = all(iv.consistent for iv in report.values())
    return {"bounds": report, "consistent": report_ok}


def bound_from_class(odd_girth: int, graph_class: str) -> Fraction:
    """Lower bound on s(K_2, G) for a graph class with a girth hypothesis.

    ``"K4_minor_free"``: odd girth >= 6k-1 gives 4k/(4k+1), >= 6k+3 gives
    (4k+2)/(4k+3); the best applicable k is used.  ``"girth_mad"``: girth
    >= 12, 11, 10 give 4/5, 17/22, 16/21.  These follow from circular
    chromatic bounds (taken as given) and the s values of K_{8/3},
    K_{11/4}, K_{14/5} and odd cycles.
    """
    g = int(odd_girth)
    if graph_class == "K4_minor_free":
        if g < 5 or g % 2 == 0:
            raise DomainError("K4-minor-free bound needs an odd girth >= 5")
        cands = []
        k = 1
        while 6 * k - 1 <= g:
            cands.append(Fraction(4 * k, 4 * k + 1))
            if 6 * k + 3 <= g:
                cands.append(Fraction(4 * k + 2, 4 * k + 3))
            k += 1
        return max(cands)
    if graph_class == "girth_mad":
        if g >= 12:
            return Fraction(4, 5)
        if g == 11:
            return Fraction(17, 22)
        if g == 10:
            return Fraction(16, 21)
        raise DomainError("maximum-average-degree bound needs girth >= 10")
    raise DomainError(f"unknown graph class {graph_class!r}")
