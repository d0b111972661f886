"""Named forbidden structures and induced-subgraph detection."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, bits, complement, from_edges, path_graph


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: Graph

    @property
    def order(self) -> int:
        return self.graph.n


def _h1_edges(l: int) -> tuple[int, list[tuple[int, int]]]:
    # hub c_1 = 0, side vertices a = 1, b = 2, tail c_2.. = 3..
    n = l + 3
    edges = [(0, 1), (0, 2)]
    tail = [0] + list(range(3, n))
    edges += [(tail[i], tail[i + 1]) for i in range(len(tail) - 1)]
    return n, edges


def make_pattern(kind: str, params: Sequence[int] = (), graph: Graph | None = None) -> Pattern:
    """Build one of the named structures.

    ``kind`` is one of ``path``, ``cycle``, ``claw``, ``paw``, ``co_p5``,
    ``linear_forest``, ``h1``, ``h2`` or ``custom`` (with ``graph`` given).
    ``h1(l)`` is two non-adjacent vertices joined to the first vertex of a
    path on ``l + 1`` vertices; ``h2(l)`` adds the edge between the two.
    """
    params = list(params)

    def one_param(lo: int) -> int:
        if len(params) != 1 or params[0] < lo:
            raise ValueError(f"{kind} takes one integer parameter >= {lo}, got {params}")
        return params[0]

    if kind == "path":
        k = one_param(1)
        return Pattern(f"P{k}", path_graph(k))
    if kind == "cycle":
        l = one_param(3)
        return Pattern(f"C{l}", from_edges(l, [(i, (i + 1) % l) for i in range(l)]))
    if kind in ("claw", "paw", "co_p5"):
        if params:
            raise ValueError(f"{kind} takes no parameters")
        if kind == "claw":
            return Pattern("claw", from_edges(4, [(0, 1), (0, 2), (0, 3)]))
        if kind == "paw":
            return Pattern("paw", from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]))
        return Pattern("coP5", complement(path_graph(5)))
    if kind == "linear_forest":
        if not params or any(i < 1 for i in params):
            raise ValueError("linear_forest needs one or more path orders, each >= 1")
        edges = []
        base = 0
        for size in params:
            edges += [(base + i, base + i + 1) for i in range(size - 1)]
            base += size
        if base > 10:
            raise ValueError("patterns are limited to 10 vertices")
        return Pattern("+".join(str(i) for i in params), from_edges(base, edges))
    if kind in ("h1", "h2"):
        l = one_param(1)
        n, edges = _h1_edges(l)
        if kind == "h2":
            edges.append((1, 2))
        return Pattern(f"{kind.upper()}({l})", from_edges(n, edges))
    if kind == "custom":
        if graph is None:
            raise ValueError("custom patterns need an explicit graph")
        if graph.n > 10:
            raise ValueError("patterns are limited to 10 vertices")
        return Pattern("custom", graph)
    raise ValueError(f"unknown pattern kind {kind!r}")


_FOREST_TERM = re.compile(r"^(?:(\d+)?P(\d+)|(\d+))$")


def parse_pattern(name: str) -> Pattern:
    """Parse a CLI pattern name: P5, C4, claw, paw, coP5, H1(2), 2+2, 2P2, P1+P4."""
    s = name.strip()
    low = s.lower()
    if low in ("claw", "k13", "k1,3"):
        return make_pattern("claw")
    if low == "paw":
        return make_pattern("paw")
    if low in ("cop5", "house", "co_p5"):
        return make_pattern("co_p5")
    m = re.fullmatch(r"[Hh]([12])\((\d+)\)", s)
    if m:
        return make_pattern("h" + m.group(1), [int(m.group(2))])
    m = re.fullmatch(r"C(\d+)", s)
    if m:
        return make_pattern("cycle", [int(m.group(1))])
    m = re.fullmatch(r"P(\d+)", s)
    if m:
        return make_pattern("path", [int(m.group(1))])
    parts = s.split("+")
    sizes: list[int] = []
    for part in parts:
        t = _FOREST_TERM.match(part.strip())
        if not t:
            raise ValueError(f"unrecognised pattern name {name!r}")
        if t.group(3):
            sizes.append(int(t.group(3)))
        else:
            sizes += [int(t.group(2))] * int(t.group(1) or 1)
    if len(sizes) == 1:
        return make_pattern("path", sizes)
    return make_pattern("linear_forest", sizes)


# -- matching -------------------------------------------------------------------

def _search_plan(p: Graph) -> list[list[tuple[int, bool]]]:
    return [[(j, p.has_edge(i, j)) for j in range(i)] for i in range(p.n)]


def find_induced(g: Graph, p: Pattern | Graph) -> tuple[int, ...] | None:
    """Lexicographically least induced embedding of ``p`` into ``g``, or ``None``.

    The result maps pattern vertex ``i`` to host vertex ``result[i]``.
    """
    pg = p.graph if isinstance(p, Pattern) else p
    k = pg.n
    if k > g.n:
        return None
    plan = _search_plan(pg)
    pdeg = [pg.degree(i) for i in range(k)]
    hdeg = [g.degree(v) for v in range(g.n)]
    okdeg = [0] * k
    for i in range(k):
        okdeg[i] = sum(1 << v for v in range(g.n) if hdeg[v] >= pdeg[i])
    adj = g.adj
    full = g.all_vertices
    mapping = [0] * k

    def extend(i: int, used: int) -> bool:
        if i == k:
            return True
        cand = okdeg[i] & ~used
        for j, edge in plan[i]:
            cand &= adj[mapping[j]] if edge else full & ~adj[mapping[j]]
            if not cand:
                return False
        for v in bits(cand):
            mapping[i] = v
            if extend(i + 1, used | 1 << v):
                return True
        return False

    return tuple(mapping) if extend(0, 0) else None


def contains_induced(g: Graph, p: Pattern | Graph) -> tuple[bool, tuple[int, ...] | None]:
    w = find_induced(g, p)
    return w is not None, w


def is_induced_witness(g: Graph, p: Pattern | Graph, witness: Sequence[int]) -> bool:
    """Direct edge/non-edge check of an embedding."""
    pg = p.graph if isinstance(p, Pattern) else p
    if len(witness) != pg.n or len(set(witness)) != pg.n:
        return False
    if any(not 0 <= v < g.n for v in witness):
        return False
    return all(
        pg.has_edge(i, j) == g.has_edge(witness[i], witness[j])
        for i in range(pg.n)
        for j in range(i)
    )


def has_induced_path(g: Graph, k: int) -> bool:
    """True iff ``g`` contains an induced path on ``k`` vertices."""
    if k < 1:
        raise ValueError("path order must be >= 1")
    if k > g.n:
        return False
    if k == 1:
        return True
    adj = g.adj

    # blocked: the path so far plus the neighbourhoods of all but its last vertex
    def grow(last: int, length: int, blocked: int) -> bool:
        if length == k:
            return True
        cand = adj[last] & ~blocked
        nb = blocked | adj[last] | (1 << last)
        for w in bits(cand):
            if grow(w, length + 1, nb | (1 << w)):
                return True
        return False

    for v in range(g.n):
        if grow(v, 1, 1 << v):
            return True
    return False


def induced_path_witness(g: Graph, k: int) -> tuple[int, ...] | None:
    return find_induced(g, path_graph(k)) if k <= g.n else None


def is_family_free(g: Graph, family: Sequence[Pattern]) -> bool:
    if not family:
        raise ValueError("family must contain at least one pattern")
    for p in family:
        if _is_plain_path(p):
            if has_induced_path(g, p.order):
                return False
        elif find_induced(g, p) is not None:
            return False
    return True


def _is_plain_path(p: Pattern) -> bool:
    g = p.graph
    return p.name == f"P{g.n}" and g.edge_count == g.n - 1 and all(
        g.has_edge(i, i + 1) for i in range(g.n - 1)
    )
