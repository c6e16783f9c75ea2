"""G-slices of Cartesian powers, peeling, greedy H-forest embedding, ternary
tuple utilities, partite representations, the mod-3 colouring and tiny
strong Turán numbers."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (BadLayer, BadParams, BudgetExceeded, GraphOverflow,
                     InsufficientSliceDegree, LengthMismatch, NodeBudgetExceeded)
from .generators import LayerVertexSet, PartiteReport, bipartition, h_forest_layout, subsets_graph
from .graph import (Embedding, Graph, build_graph, cartesian_power, find_copies, is_copy,
                    iter_embeddings, to_digits)


# ---------------------------------------------------------------- slices

@dataclass(frozen=True)
class SliceId:
    direction: int
    fixed: tuple  # digits of the other N-1 coordinates, in coordinate order

    def vertices(self, base: int) -> list:
        """Slice vertices ordered by the digit at `direction`."""
        digits = list(self.fixed[:self.direction]) + [0] + list(self.fixed[self.direction:])
        x0 = 0
        for d in reversed(digits):
            x0 = x0 * base + d
        step = base ** self.direction
        return [x0 + d * step for d in range(base)]


def slice_through(x: int, direction: int, base: int, N: int) -> SliceId:
    ds = to_digits(x, base, N)
    return SliceId(direction, ds[:direction] + ds[direction + 1:])


def all_slices(base: int, N: int):
    for i in range(N):
        for rest in range(base ** (N - 1)):
            yield SliceId(i, to_digits(rest, base, N - 1))


class PowerSubgraph:
    """A subgraph of base^{□N} given by an edge subset (vertex set is all of it)."""

    def __init__(self, base: Graph, N: int, present_edges=None):
        self.base = base
        self.N = N
        self.power = cartesian_power(base, N)
        full = set(self.power.edges)
        if present_edges is None:
            self.present = frozenset(full)
        else:
            pe = frozenset((min(u, v), max(u, v)) for u, v in present_edges)
            bad = pe - full
            if bad:
                raise ValueError(f"not edges of the power graph: {sorted(bad)[:3]}")
            self.present = pe
        self.graph = build_graph(self.power.n, self.present)

    @classmethod
    def full(cls, base, N):
        return cls(base, N)

    @property
    def n(self):
        return self.power.n

    def slice_edges(self, s: SliceId) -> list:
        vs = s.vertices(self.base.n)
        return [(min(vs[a], vs[b]), max(vs[a], vs[b])) for a, b in self.base.edges]

    def contains_slice(self, s: SliceId) -> bool:
        return all(e in self.present for e in self.slice_edges(s))

    def present_slices(self) -> list:
        return [s for s in all_slices(self.base.n, self.N) if self.contains_slice(s)]

    def without_edges(self, edges):
        drop = {(min(u, v), max(u, v)) for u, v in edges}
        return PowerSubgraph(self.base, self.N, self.present - drop)


def slice_fraction(S: PowerSubgraph):
    total = S.N * S.base.n ** (S.N - 1)
    contained = len(S.present_slices())
    return contained, total, Fraction(contained, total)


def peel_by_slice_degree(S: PowerSubgraph, threshold: int, order=None) -> frozenset:
    """Delete vertices lying in fewer than `threshold` surviving present slices.

    A slice survives while all its vertices survive. `order` optionally fixes
    the order in which the initial queue is processed (used to test confluence).
    """
    if threshold < 1:
        raise BadParams("threshold must be >= 1")
    b = S.base.n
    slices = [s.vertices(b) for s in S.present_slices()]
    through = [[] for _ in range(S.n)]
    for i, vs in enumerate(slices):
        for v in vs:
            through[v].append(i)
    deg = [len(t) for t in through]
    alive_v = [True] * S.n
    alive_s = [True] * len(slices)
    start = [v for v in range(S.n) if deg[v] < threshold]
    if order is not None:
        rank = {v: i for i, v in enumerate(order)}
        start.sort(key=lambda v: rank.get(v, len(rank) + v))
    queue = deque(start)
    queued = set(start)
    while queue:
        v = queue.popleft()
        alive_v[v] = False
        for si in through[v]:
            if not alive_s[si]:
                continue
            alive_s[si] = False
            for w in slices[si]:
                if alive_v[w]:
                    deg[w] -= 1
                    if deg[w] < threshold and w not in queued:
                        queued.add(w)
                        queue.append(w)
    return frozenset(v for v in range(S.n) if alive_v[v])


@dataclass
class ForestEmbedding:
    embedding: Embedding     # union vertex -> host vertex
    slices: list             # SliceId per copy
    directions: list
    threshold: int
    survivors: frozenset
    pattern: Graph

    def to_dict(self):
        return {"images": list(self.embedding.images),
                "directions": self.directions,
                "slices": [{"direction": s.direction, "fixed": list(s.fixed)} for s in self.slices],
                "threshold": self.threshold,
                "survivors": len(self.survivors)}


def _automorphism_sending(H: Graph, h: int, target: int):
    """Some automorphism of H with h -> target (first found), or None."""
    doms = [(1 << H.n) - 1] * H.n
    doms[h] = 1 << target
    for emb in iter_embeddings(H, H, induced=True, domains=doms):
        return emb
    return None


def greedy_forest_embed(S: PowerSubgraph, attachments: Sequence, threshold=None) -> ForestEmbedding:
    """Embed an H-forest (H = S.base) copy by copy, each copy as a fresh slice.

    Peels S at threshold ceil(eps*N/|V(H)|) with eps the contained-slice
    fraction, starts from the lowest surviving slice and attaches each later
    copy along the lowest direction not used so far.
    """
    H = S.base
    b, N = H.n, S.N
    pattern, maps = h_forest_layout(H, attachments)
    if threshold is None:
        contained, total, eps = slice_fraction(S)
        threshold = max(1, math.ceil(eps * N / b))
    alive = peel_by_slice_degree(S, threshold)
    alive_slices = [s for s in S.present_slices() if all(v in alive for v in s.vertices(b))]
    host = S.graph
    img = {}
    used_dirs = []
    chosen = []

    def try_place(i, s, pin=None):
        vs = s.vertices(b)
        if pin is None:
            perm = tuple(range(b))
        else:
            h, x = pin
            perm = _automorphism_sending(H, h, vs.index(x))
            if perm is None:
                return None
        new = {maps[i][w]: vs[perm[w]] for w in range(b)}
        taken = set(img.values())
        for uv, hv in new.items():
            if uv in img:
                if img[uv] != hv:
                    return None
            elif hv in taken:
                return None
        trial = dict(img)
        trial.update(new)
        keys = sorted(trial)
        sub = pattern.induced_subgraph(keys)
        if not is_copy(host, sub, [trial[k] for k in keys], induced=True):
            return None
        return trial

    for i, att in enumerate(attachments):
        pin = None
        if att is not None and len(att):
            pairs = [tuple(att)] if isinstance(att[0], int) else [tuple(p) for p in att]
            if len(pairs) != 1:
                raise BadParams("greedy embedding needs single-vertex attachments")
            prior, h = pairs[0]
            pin = (h, img[prior])
        placed = None
        if pin is None:
            cands = [s for s in alive_slices if s.direction not in used_dirs]
        else:
            x = pin[1]
            cands = []
            for d in range(N):
                if d in used_dirs:
                    continue
                s = slice_through(x, d, b, N)
                if s in alive_slices:
                    cands.append(s)
        for s in cands:
            placed = try_place(i, s, pin)
            if placed is not None:
                img = placed
                used_dirs.append(s.direction)
                chosen.append(s)
                break
        if placed is None:
            blocker = pin[1] if pin is not None else None
            raise InsufficientSliceDegree(blocker, used_dirs,
                                          None if pin is not None else
                                          f"no surviving slice available for copy {i}")
    images = tuple(img[k] for k in range(pattern.n))
    return ForestEmbedding(Embedding(images), chosen, used_dirs, threshold, alive, pattern)


# ---------------------------------------------------------------- ternary tuples

def support(x: Sequence[int]) -> tuple:
    """I(x): 0-based positions whose digit is not 3."""
    for d in x:
        if d not in (1, 2, 3):
            raise ValueError(f"digit {d} outside {{1,2,3}}")
    return tuple(i for i, d in enumerate(x) if d != 3)


def restrict(x: Sequence[int], S: Sequence[int]) -> tuple:
    return tuple(x[i] for i in sorted(S))


def equivalent(x: Sequence[int], y: Sequence[int]) -> bool:
    if len(x) != len(y):
        raise LengthMismatch(f"lengths {len(x)} and {len(y)}")
    return restrict(x, support(x)) == restrict(y, support(y))


# ---------------------------------------------------------------- partite representations

def down_star_union(n: int, A: LayerVertexSet):
    """Union of down k-stars centred at A: (graph, vertex sets, star-edge set).

    Vertices are the centres (in order) followed by their down-neighbours (colex).
    """
    centres = list(A.sets)
    leaves = sorted({c - {e} for c in centres for e in c}, key=lambda s: sorted(s)[::-1])
    sets = centres + leaves
    pos = {s: i for i, s in enumerate(sets)}
    es = [(pos[c], pos[c - {e}]) for c in centres for e in c]
    return build_graph(len(sets), es), sets


def _k_partition(n, k, edges):
    """Colour ground elements with k parts so each edge meets every part once."""
    part = [-1] * n
    elems = sorted({e for s in edges for e in s})
    by_elem = {e: [s for s in edges if e in s] for e in elems}

    def consistent(e):
        for s in by_elem[e]:
            seen = set()
            for f in s:
                p = part[f]
                if p < 0:
                    continue
                if p in seen:
                    return False
                seen.add(p)
        return True

    def rec(i, used):
        if i == len(elems):
            return True
        e = elems[i]
        for p in range(min(used + 1, k)):
            part[e] = p
            if consistent(e) and rec(i + 1, max(used, p + 1)):
                return True
        part[e] = -1
        return False

    if not edges:
        return [list(range(n))] + [[] for _ in range(k - 1)]
    if rec(0, 0):
        out = [[] for _ in range(k)]
        for e in range(n):
            out[max(part[e], 0)].append(e)
        return out
    return None


def verify_partite_representation(n: int, k: int, A, pattern: Graph, induced=True) -> PartiteReport:
    if not isinstance(A, LayerVertexSet):
        A = LayerVertexSet(n, k, A)
    if A.k != k or A.n != n:
        raise BadLayer(f"layer system is ({A.n},{A.k}), expected ({n},{k})")
    union, sets = down_star_union(n, A)
    # the union sits in layers k, k-1; compare with Q_n induced on the same vertex sets
    in_layer = all(len(s) in (k, k - 1) for s in sets)
    qn = subsets_graph(sets)
    is_ind = qn.edges == union.edges
    partition = _k_partition(n, k, [tuple(s) for s in A.sets])
    found = find_copies(union, pattern, induced=induced, limit=1)
    wit = tuple(sorted(tuple(sorted(sets[v])) for v in found[0])) if found else None
    return PartiteReport(in_layer, is_ind, partition is not None, partition, bool(found),
                         union=union, witness=wit)


# ---------------------------------------------------------------- mod-3 colouring

@dataclass
class Mod3Census:
    N: int
    copies: int
    expected: int
    monochromatic: int

    @property
    def verdict(self):
        return self.copies == self.expected and self.monochromatic == 0

    def to_dict(self):
        return {"N": self.N, "copies": self.copies, "expected": self.expected,
                "monochromatic": self.monochromatic, "verdict": self.verdict}


def mod3_color(x: int, N: int) -> int:
    """1 (red) iff the coordinates, read in {1,2,3}, sum to 0 mod 3."""
    return int(sum(d + 1 for d in to_digits(x, 3, N)) % 3 == 0)


def mod3_c4_check(N: int, max_N=6) -> Mod3Census:
    if N < 2:
        raise BadParams("N must be >= 2")
    if N > max_N:
        raise GraphOverflow(f"N={N} exceeds the mod-3 census budget N <= {max_N}")
    from .generators import complete, cycle

    G = cartesian_power(complete(3), N)
    col = [mod3_color(x, N) for x in range(G.n)]
    copies = find_copies(G, cycle(4))
    mono = sum(1 for c in copies if len({col[v] for v in c}) == 1)
    expected = math.comb(N, 2) * 9 * 3 ** (N - 2)
    return Mod3Census(N, len(copies), expected, mono)


# ---------------------------------------------------------------- strong Turán numbers

def layer_respecting_copies(N: int, Gamma: Graph, A, B) -> list:
    """Edge sets (frozensets of Q_N edge indices) of copies of Γ with A in a
    layer k and B in layer k-1."""
    from .generators import hypercube

    Q = hypercube(N)
    eidx = {e: i for i, e in enumerate(Q.edges)}
    A, B = set(A), set(B)
    out = set()
    for k in range(1, N + 1):
        up = sum(1 << x for x in range(Q.n) if bin(x).count("1") == k)
        down = sum(1 << x for x in range(Q.n) if bin(x).count("1") == k - 1)
        doms = [up if v in A else down for v in range(Gamma.n)]
        for emb in iter_embeddings(Q, Gamma, induced=False, domains=doms):
            es = frozenset(eidx[(min(emb[u], emb[v]), max(emb[u], emb[v]))] for u, v in Gamma.edges)
            out.add(es)
    return sorted(out, key=lambda s: sorted(s))


def _min_hitting_set(sets, budget):
    best = [None]
    nodes = [0]
    sets = [frozenset(s) for s in sets]

    def rec(chosen, remaining):
        nodes[0] += 1
        if nodes[0] > budget:
            raise NodeBudgetExceeded(budget, "strong_turan_number")
        if best[0] is not None and len(chosen) >= len(best[0]):
            return
        if not remaining:
            best[0] = set(chosen)
            return
        # greedy disjoint packing gives a lower bound on the edges still needed
        lb, covered = 0, set()
        for s in sorted(remaining, key=len):
            if not (s & covered):
                lb += 1
                covered |= s
        if best[0] is not None and len(chosen) + lb >= len(best[0]):
            return
        pick = min(remaining, key=lambda s: (len(s), sorted(s)))
        for e in sorted(pick):
            chosen.add(e)
            rec(chosen, [s for s in remaining if e not in s])
            chosen.discard(e)

    rec(set(), sets)
    return best[0]


def strong_turan_number(N: int, Gamma: Graph, A=None, B=None, max_N=4, node_budget=10 ** 7) -> int:
    """m(N, Γ, A, B): most edges of a Q_N subgraph with no layer-respecting copy."""
    if N > max_N:
        raise BudgetExceeded(f"strong Turán search capped at N <= {max_N}")
    if N < 1:
        raise BadParams("N must be >= 1")
    if A is None and B is None:
        A, B = bipartition(Gamma)
    copies = layer_respecting_copies(N, Gamma, A, B)
    total = N * 2 ** (N - 1)
    if not copies:
        return total
    hit = _min_hitting_set(copies, node_budget)
    return total - len(hit)
