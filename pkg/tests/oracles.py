"""Slow reference implementations used to cross-check the package.

Nothing here imports the package's algorithms; graphs are read only through
``g.n`` and ``g.has_edge``.
"""

import itertools


def closed(g, v):
    return [u for u in range(g.n) if u == v or g.has_edge(u, v)]


def naive_game_values(g, k):
    """Capture time by plain value iteration over labelled cop tuples.

    Returns (cop_to_move, robber_to_move) dicts keyed by (sorted cops, robber);
    a missing key is a robber win.
    """
    n = g.n
    teams = sorted({tuple(sorted(t)) for t in itertools.product(range(n), repeat=k)})
    moves = {t: {tuple(sorted(m)) for m in itertools.product(*(closed(g, c) for c in t))} for t in teams}
    cop, rob = {}, {}
    for t in teams:
        for r in set(t):
            cop[t, r] = rob[t, r] = 0
    changed = True
    while changed:
        changed = False
        for t in teams:
            for r in range(n):
                if r in t:
                    continue
                opts = [cop.get((t, x)) for x in closed(g, r)]
                if all(o is not None for o in opts):
                    v = max(opts)
                    if rob.get((t, r)) != v:
                        rob[t, r] = v
                        changed = True
                best = [rob[m, r] for m in moves[t] if (m, r) in rob]
                if best:
                    v = min(best) + 1
                    if cop.get((t, r)) != v:
                        cop[t, r] = v
                        changed = True
    return cop, rob


def naive_cop_number(g):
    for k in range(1, g.n + 1):
        _, rob = naive_game_values(g, k)
        teams = itertools.combinations_with_replacement(range(g.n), k)
        if any(all((t, r) in rob for r in range(g.n)) for t in teams):
            return k
    raise AssertionError("n cops always win")


def brute_induced(g, p_n, p_edges):
    """Lexicographically least injective map from pattern vertices into g
    that preserves adjacency and non-adjacency, or None."""
    pe = {frozenset(e) for e in p_edges}
    for image in itertools.permutations(range(g.n), p_n):
        if all(g.has_edge(image[a], image[b]) == (frozenset((a, b)) in pe)
               for a, b in itertools.combinations(range(p_n), 2)):
            return image
    return None


def brute_isomorphic(g, h):
    if g.n != h.n:
        return False
    return brute_induced(g, h.n, h.edges()) is not None
