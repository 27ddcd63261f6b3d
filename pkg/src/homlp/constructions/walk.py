"""Walk coordinates on the A_1 cycle of K_{p/q} and the walk-built maps to C_{2k+1}.

In K_{p/q} with gcd(p, q) = 1 the shortest-distance edges (orbit A_1) form a
single Hamiltonian cycle v_0, v_q, v_{2q}, ...  A vertex's *position* is its
index along that cycle.  ``build_fS`` walks the cycle in position order and
steps the image backwards on C_{2k+1} exactly at members of S.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ..errors import DomainError
from ..graphs import Graph, VertexMap, circular_complete, cycle

__all__ = [
    "TauCoords",
    "build_fS",
    "usefulcong_predicate",
    "image_shift",
    "normalize_S",
    "preimage_table",
    "render_table",
    "grid_from_map",
]


@dataclass(frozen=True)
class TauCoords:
    """Positions along the A_1 cycle.

    ``tau[v]`` is the position of vertex v (the j with j*q = v mod p) and
    ``vertex_at[j]`` its inverse, so ``vertex_at[j] = j*q mod p``.
    """

    p: int
    q: int

    def __post_init__(self):
        import math

        if self.p < 1 or self.q < 1 or math.gcd(self.p, self.q) != 1:
            raise DomainError(f"need coprime positive p, q; got {self.p}, {self.q}")

    @cached_property
    def vertex_at(self) -> tuple[int, ...]:
        return tuple(j * self.q % self.p for j in range(self.p))

    @cached_property
    def tau(self) -> tuple[int, ...]:
        t = [0] * self.p
        for j, v in enumerate(self.vertex_at):
            t[v] = j
        return tuple(t)

    def delta(self, a: int, b: int) -> int:
        """Forward walk length from v_a to v_b."""
        return (self.tau[b] - self.tau[a]) % self.p

    def closed(self, a: int, b: int) -> list[int]:
        """Vertices of [v_a, v_b] in walk order."""
        start = self.tau[a]
        return [self.vertex_at[(start + t) % self.p] for t in range(self.delta(a, b) + 1)]

    def half_open(self, a: int, b: int) -> list[int]:
        """Vertices of (v_a, v_b] in walk order."""
        return self.closed(a, b)[1:]

    def positions(self, lo: int, hi: int) -> list[int]:
        """Vertices at positions lo, lo+1, ..., hi, read cyclically."""
        span = (hi - lo) % self.p
        return [self.vertex_at[(lo + t) % self.p] for t in range(span + 1)]


def _as_vertex_set(S: Iterable[int], p: int) -> frozenset[int]:
    out = frozenset(int(v) for v in S)
    bad = [v for v in out if not 0 <= v < p]
    if bad:
        raise DomainError(f"vertices {sorted(bad)} are not in K_p with p={p}")
    return out


def build_fS(p: int, q: int, k: int, S: Iterable[int]) -> VertexMap:
    """The walk map V(K_{p/q}) -> V(C_{2k+1}) determined by S.

    v_0 goes to w_0.  Moving from position i-1 to i, the image steps to
    w_{j-1} if the vertex at position i lies in S and to w_{j+1} otherwise.
    Membership of v_0 in S does not affect the map.
    """
    if k < 1:
        raise DomainError("target cycle needs k >= 1")
    tc = TauCoords(p, q)
    Sset = _as_vertex_set(S, p)
    L = 2 * k + 1
    img = [0] * p
    cur = 0
    for j in range(1, p):
        v = tc.vertex_at[j]
        cur = (cur - 1) % L if v in Sset else (cur + 1) % L
        img[v] = cur
    return VertexMap(tuple(img), L)


def normalize_S(p: int, q: int, k: int, S: Iterable[int]) -> frozenset[int]:
    """Fix the membership of v_0 so that S and its map obey the counting rule.

    When the closing A_1 edge v_{p-q} v_0 is carried onto C_{2k+1}, v_0
    belongs to S exactly when f(v_{p-q}) = w_1.  Otherwise v_0 is left out.
    """
    Sset = set(_as_vertex_set(S, p))
    f = build_fS(p, q, k, Sset)
    last = f.image[(p - q) % p]
    Sset.discard(0)
    if last == 1:
        Sset.add(0)
    return frozenset(Sset)


def image_shift(tc: TauCoords, S: Iterable[int], i: int, i2: int, k: int) -> int:
    """Predicted image offset j' - j for f(v_i) = w_j, f(v_i2) = w_j'."""
    Sset = frozenset(S)
    cnt = sum(1 for v in tc.half_open(i, i2) if v in Sset)
    return (tc.delta(i, i2) - 2 * cnt) % (2 * k + 1)


def usefulcong_predicate(tc: TauCoords, S: Iterable[int], i: int, i2: int, k: int) -> bool:
    """Edge test through the interval count instead of the images.

    True iff |S & (v_i, v_i2]| = (k+1)(delta +- 1) mod 2k+1, where k+1 is the
    inverse of 2.  It agrees with the direct image test whenever the map
    carries the whole A_1 cycle and S follows :func:`normalize_S`.
    """
    L = 2 * k + 1
    Sset = frozenset(S)
    cnt = sum(1 for v in tc.half_open(i, i2) if v in Sset) % L
    d = tc.delta(i, i2)
    return cnt in {(k + 1) * (d + 1) % L, (k + 1) * (d - 1) % L}


Grid = list[list[int | None]]


def preimage_table(f: VertexMap, tc: TauCoords) -> Grid:
    """Lay the walk out as rows of a table with one column per w_j.

    Each row is a maximal stretch of walk steps in one direction that does
    not wrap around the cycle; a vertex sits in the column of its image.
    """
    L = f.target_order
    rows: Grid = []
    row: list[int | None] = [None] * L
    prev_img = None
    prev_dir = 0
    for j in range(tc.p):
        v = tc.vertex_at[j]
        c = f.image[v]
        new_row = j == 0
        if prev_img is not None:
            step = (c - prev_img) % L
            if step == 1:
                direction = 1
            elif step == L - 1:
                direction = -1
            else:
                raise DomainError("map does not follow the A_1 walk")
            wrapped = (direction == 1 and c == 0) or (direction == -1 and c == L - 1)
            if prev_dir and direction != prev_dir:
                new_row = True
            if wrapped:
                new_row = True
            prev_dir = direction
        if new_row and j > 0:
            rows.append(row)
            row = [None] * L
        row[c] = v
        prev_img = c
    rows.append(row)
    return rows


def render_table(grid: Grid) -> str:
    """Canonical text: a header line, then one line per row, cells joined by ' & '."""
    if not grid:
        return ""
    L = len(grid[0])
    lines = [" & ".join(f"f^{{-1}}(w_{j})" for j in range(L))]
    for row in grid:
        lines.append(" & ".join("" if v is None else f"v_{{{v}}}" for v in row).rstrip())
    return "\n".join(lines) + "\n"


def grid_from_map(p: int, q: int, k: int, S: Iterable[int]) -> Grid:
    return preimage_table(build_fS(p, q, k, S), TauCoords(p, q))


def host_and_cycle(p: int, q: int, k: int) -> tuple[Graph, Graph]:
    return circular_complete(p, q), cycle(2 * k + 1)
