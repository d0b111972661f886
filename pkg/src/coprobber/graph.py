"""Immutable bit-mask graphs, graph6 I/O and basic traversal primitives.

Vertex sets are plain ``int`` bit masks: bit ``v`` set means vertex ``v`` is
in the set.  ``Graph.adj[v]`` is the open neighbourhood ``N(v)`` of ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    Graph6Error,
    InvalidEdgeError,
    NotConnectedError,
    UnsupportedSizeError,
    VertexRangeError,
)

MAX_VERTICES = 62


def bits(mask: int) -> Iterator[int]:
    """Yield the members of a vertex mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise UnsupportedSizeError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise VertexRangeError(f"row {v} references a vertex >= {self.n}")
            if row >> v & 1:
                raise InvalidEdgeError(f"self-loop at {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def closed(self, v: int) -> int:
        """``N[v]`` as a mask."""
        return self.adj[v] | (1 << v)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in bits(self.adj[v] & ((1 << v) - 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(mask_of(pos[u] for u in bits(self.adj[v]) if u in pos))
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = mask_of(perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 1:
        raise UnsupportedSizeError("a graph needs at least one vertex")
    if n > MAX_VERTICES:
        raise UnsupportedSizeError(f"{n} vertices exceeds the limit of {MAX_VERTICES}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InvalidEdgeError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise VertexRangeError(f"vertex {v} outside 0..{g.n - 1}")


# -- graph6 -------------------------------------------------------------------

_HEADER = ">>graph6<<"


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 line (small-order form only, n <= 62)."""
    s = line.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 line")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range")
    if s[0] == "~":
        raise UnsupportedSizeError("graph6 orders above 62 are not supported")
    n = ord(s[0]) - 63
    if n == 0:
        raise Graph6Error("graph6 line encodes the empty graph")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"expected {(nbits + 5) // 6} data characters for n={n}, got {len(body)}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (ord(body[k // 6]) - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6 and (ord(body[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    if g.n > MAX_VERTICES:
        raise UnsupportedSizeError(f"{g.n} vertices exceeds the limit of {MAX_VERTICES}")
    out = [chr(g.n + 63)]
    acc = 0
    k = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            k += 1
            if k == 6:
                out.append(chr(acc + 63))
                acc = k = 0
    if k:
        out.append(chr((acc << (6 - k)) + 63))
    return "".join(out)


# -- neighbourhoods and distances ---------------------------------------------

def closed_neighborhood(g: Graph, vs: int) -> int:
    """Union of ``N[v]`` over the vertex mask ``vs``."""
    if vs == 0:
        raise ValueError("closed_neighborhood needs a nonempty vertex set")
    if vs >> g.n:
        raise VertexRangeError("vertex set references vertices outside the graph")
    out = vs
    for v in bits(vs):
        out |= g.adj[v]
    return out


def bfs_distances(g: Graph, source: int, within: int | None = None) -> list[int | None]:
    """Hop distances from ``source``; ``None`` for unreachable vertices.

    ``within`` optionally restricts the search to an induced subgraph.
    """
    allowed = g.all_vertices if within is None else within
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= allowed & ~seen
        for v in bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def distance(g: Graph, u: int, v: int) -> int | None:
    """Shortest-path hop count, or ``None`` when ``v`` is unreachable from ``u``."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    return bfs_distances(g, u)[v]


def shortest_path(g: Graph, u: int, v: int, within: int | None = None) -> list[int] | None:
    """Lexicographically least shortest path from ``u`` to ``v``."""
    dist_to_v = bfs_distances(g, v, within)
    if dist_to_v[u] is None:
        return None
    allowed = g.all_vertices if within is None else within
    path = [u]
    while path[-1] != v:
        here = path[-1]
        want = dist_to_v[here] - 1
        for w in bits(g.adj[here] & allowed):
            if dist_to_v[w] == want:
                path.append(w)
                break
    return path


def is_connected(g: Graph) -> bool:
    reach = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == g.all_vertices


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise NotConnectedError("the game is played on connected graphs only")


def eccentricity(g: Graph, v: int) -> int:
    dist = bfs_distances(g, v)
    if None in dist:
        raise NotConnectedError("eccentricity is undefined on a disconnected graph")
    return max(dist)


def diameter(g: Graph) -> int:
    require_connected(g)
    return max(eccentricity(g, v) for v in range(g.n))


def complement(g: Graph) -> Graph:
    full = g.all_vertices
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def components_after_removal(g: Graph, removed: int) -> list[int]:
    """Components of ``G - removed`` as masks, ordered by least vertex."""
    left = g.all_vertices & ~removed
    comps = []
    while left:
        start = left & -left
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & left & ~comp
            comp |= frontier
        comps.append(comp)
        left &= ~comp
    return comps


def greedy_dominating_set(g: Graph) -> list[int]:
    """Repeatedly take the vertex covering most undominated vertices."""
    undominated = g.all_vertices
    chosen = []
    while undominated:
        best = max(range(g.n), key=lambda v: (popcount(g.closed(v) & undominated), -v))
        chosen.append(best)
        undominated &= ~g.closed(best)
    return chosen


# -- a few named graphs used throughout tests and the CLI ----------------------

def path_graph(k: int) -> Graph:
    return from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    return from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def star_graph(leaves: int) -> Graph:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)
