"""Exact chromatic number, independence number and generalized chromatic number."""
from __future__ import annotations

from .errors import NodeBudgetExceeded
from .graph import Coloring, Graph, _bits

DEFAULT_NODE_BUDGET = 10 ** 8


def _greedy_clique(G: Graph) -> list:
    best = []
    for s in range(G.n):
        clique, cand = [s], G.adj[s]
        while cand:
            v = max(_bits(cand), key=lambda w: (G.adj[w] & cand).bit_count())
            clique.append(v)
            cand &= G.adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur_greedy(G: Graph) -> list:
    n = G.n
    col = [-1] * n
    sat = [0] * n  # bitmask of neighbour colours
    for _ in range(n):
        v = max((w for w in range(n) if col[w] < 0),
                key=lambda w: (sat[w].bit_count(), G.degree(w), -w))
        c = 0
        while sat[v] >> c & 1:
            c += 1
        col[v] = c
        for w in G.neighbors(v):
            sat[w] |= 1 << c
    return col


def _k_colorable(G: Graph, k: int, budget: int, counter: list):
    """Backtracking k-colouring with saturation-degree branching."""
    n = G.n
    col = [-1] * n
    # per-vertex count of neighbours holding each colour
    cnt = [[0] * k for _ in range(n)]
    nbrs = [G.neighbors(v) for v in range(n)]

    def pick():
        best, key = -1, None
        for v in range(n):
            if col[v] >= 0:
                continue
            s = sum(1 for c in range(k) if cnt[v][c])
            kk = (s, len(nbrs[v]), -v)
            if key is None or kk > key:
                best, key = v, kk
        return best

    def assign(v, c, d):
        col[v] = c
        for w in nbrs[v]:
            cnt[w][c] += d
        if d < 0:
            col[v] = -1

    def rec(depth, used):
        counter[0] += 1
        if counter[0] > budget:
            raise NodeBudgetExceeded(budget, "chromatic_number")
        if depth == n:
            return True
        v = pick()
        for c in range(min(used + 1, k)):
            if cnt[v][c]:
                continue
            assign(v, c, 1)
            if rec(depth + 1, max(used, c + 1)):
                return True
            assign(v, c, -1)
        return False

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        ok = rec(0, 0)
    finally:
        sys.setrecursionlimit(old)
    return list(col) if ok else None


def chromatic_number(G: Graph, node_budget=DEFAULT_NODE_BUDGET, certificate=False):
    """Exact χ(G). With certificate=True returns (χ, Coloring)."""
    if G.n == 0:
        return (0, Coloring((), 1)) if certificate else 0
    ub_col = _dsatur_greedy(G)
    ub = max(ub_col) + 1
    lb = max(1, len(_greedy_clique(G)))
    best = ub_col
    counter = [0]
    k = lb
    while k < ub:
        col = _k_colorable(G, k, node_budget, counter)
        if col is not None:
            best = col
            break
        k += 1
    chi = max(best) + 1
    if certificate:
        return chi, Coloring(tuple(best), chi)
    return chi


def max_clique(G: Graph, node_budget=DEFAULT_NODE_BUDGET) -> list:
    """Maximum clique by branch and bound with a greedy-colouring bound."""
    adj = G.adj
    best = [_greedy_clique(G) if G.n else []]
    counter = [0]

    def colour_bound(P):
        # greedy sequential colouring of P; returns vertices with their colour index
        order, bounds = [], []
        c = 0
        Q = P
        while Q:
            c += 1
            R = Q
            while R:
                low = R & -R
                v = low.bit_length() - 1
                R &= ~adj[v] & ~low
                Q &= ~low
                order.append(v)
                bounds.append(c)
        return order, bounds

    def expand(R, P):
        counter[0] += 1
        if counter[0] > node_budget:
            raise NodeBudgetExceeded(node_budget, "max_clique")
        order, bounds = colour_bound(P)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + bounds[i] <= len(best[0]):
                return
            v = order[i]
            R2 = R + [v]
            P2 = P & adj[v]
            if P2:
                expand(R2, P2)
            elif len(R2) > len(best[0]):
                best[0] = R2
            P &= ~(1 << v)

    if G.n:
        expand([], (1 << G.n) - 1)
    return sorted(best[0])


def independence_number(G: Graph, node_budget=DEFAULT_NODE_BUDGET, witness=False):
    if G.n == 0:
        return (0, []) if witness else 0
    S = max_clique(G.complement(), node_budget)
    return (len(S), S) if witness else len(S)


def chi_generalized(G: Graph, H: Graph, induced=False, node_budget=DEFAULT_NODE_BUDGET,
                    copy_limit=10 ** 7, certificate=False):
    """Least r with an r-colouring of G having no monochromatic (induced) copy of H."""
    from .arrow import arrow_check
    from .graph import find_copies

    if not find_copies(G, H, induced, limit=1):
        return (1, Coloring((0,) * G.n, 1)) if certificate else 1
    r = 1
    while True:
        v = arrow_check(G, [H], r, induced=induced, node_budget=node_budget,
                        copy_limit=copy_limit)
        if not v.holds:
            return (r, v.certificate) if certificate else r
        r += 1
