"""Graph families, hypercube-layer vertex systems and unit-distance ingestion."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import (BadAnchor, BadLayer, BadParams, EdgeOverlap, NotBipartite,
                     Unsupported)
from .graph import Graph, build_graph, cartesian_power

log = logging.getLogger(__name__)


def colex_subsets(n, k):
    return sorted(combinations(range(n), k), key=lambda s: s[::-1])


def subsets_graph(sets: Sequence, name="") -> Graph:
    """Subgraph of the hypercube induced by the given subsets (vertex i = sets[i])."""
    fs = [frozenset(s) for s in sets]
    es = []
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            a, b = fs[i], fs[j]
            if len(a ^ b) == 1:
                es.append((i, j))
    return build_graph(len(fs), es, name=name)


def complete(d):
    return build_graph(d, [(i, j) for i in range(d) for j in range(i + 1, d)], name=f"K{d}")


def cycle(l):
    if l < 3:
        raise BadParams("cycle length must be >= 3")
    return build_graph(l, [(i, (i + 1) % l) for i in range(l)], name=f"C{l}")


def path(m):
    if m < 1:
        raise BadParams("path needs >= 1 vertex")
    return build_graph(m, [(i, i + 1) for i in range(m - 1)], name=f"P{m}")


def star(m):
    """K_{1,m}: centre 0, leaves 1..m."""
    if m < 0:
        raise BadParams("star needs m >= 0 leaves")
    return build_graph(m + 1, [(0, i) for i in range(1, m + 1)], name=f"S{m}")


def hypercube(n):
    if n < 1:
        raise BadParams("hypercube dimension must be >= 1")
    g = cartesian_power(complete(2), n)
    return Graph(g.n, g.edges, f"Q{n}")


def edge_layer(n, k):
    """Q_n induced on layers k-1 (first, colex) and k (after, colex)."""
    if not 1 <= k <= n:
        raise BadParams(f"edge layer needs 1 <= k <= n, got n={n}, k={k}")
    sets = colex_subsets(n, k - 1) + colex_subsets(n, k)
    g = subsets_graph(sets)
    return Graph(g.n, g.edges, f"L({n},{k})")


def johnson(n, k, t):
    """Generalized Johnson graph J(n,k,t): k-subsets in colex order, adjacent iff |A∩B| = t."""
    if not (0 <= t < k <= n):
        raise BadParams(f"johnson needs t < k <= n, got {(n, k, t)}")
    sets = [frozenset(s) for s in colex_subsets(n, k)]
    es = [(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets))
          if len(sets[i] & sets[j]) == t]
    return build_graph(len(sets), es, name=f"J({n},{k},{t})")


_KINDS = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star": (star, 1),
    "hypercube": (hypercube, 1),
    "edge_layer": (edge_layer, 2),
    "johnson": (johnson, 3),
}


def gen_standard(kind: str, *params) -> Graph:
    if kind not in _KINDS:
        raise BadParams(f"unknown family {kind!r}")
    fn, arity = _KINDS[kind]
    if len(params) != arity:
        raise BadParams(f"{kind} takes {arity} parameter(s), got {len(params)}")
    return fn(*[int(p) for p in params])


# ---------------------------------------------------------------- Γ_{A,B}(H,u,v)

def bipartition(G: Graph):
    """Two-colouring by BFS; the smallest vertex of each component goes to A."""
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for w in G.neighbors(v):
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    raise NotBipartite(f"odd cycle through edge ({v},{w})")
    A = [v for v in range(G.n) if side[v] == 0]
    B = [v for v in range(G.n) if side[v] == 1]
    return A, B


def gamma_substitution(Gamma: Graph, H: Graph, u: int, v: int, A=None, B=None) -> Graph:
    """Replace each edge ab of Γ (a∈A, b∈B) by a copy of H with u->a, v->b.

    Γ's vertices keep their ids; the other H vertices of each copy get fresh
    ids, edge by edge in sorted edge order.
    """
    if A is None and B is None:
        A, B = bipartition(Gamma)
    elif A is None or B is None:
        raise NotBipartite("give both parts or neither")
    A, B = set(A), set(B)
    if A & B or (A | B) != set(range(Gamma.n)):
        raise NotBipartite("A and B must partition V(Γ)")
    if u == v or not (0 <= u < H.n and 0 <= v < H.n):
        raise BadAnchor(f"anchors ({u},{v}) must be distinct vertices of H")
    nxt = Gamma.n
    es = []
    for a, b in Gamma.edges:
        if a in B and b in A:
            a, b = b, a
        elif not (a in A and b in B):
            raise NotBipartite(f"edge ({a},{b}) inside one part")
        mp = {u: a, v: b}
        for w in range(H.n):
            if w not in mp:
                mp[w] = nxt
                nxt += 1
        es.extend((mp[x], mp[y]) for x, y in H.edges)
    g = build_graph(nxt, es)
    if g.m != len(es):
        raise EdgeOverlap("two copies of H share an edge")
    return g


# ---------------------------------------------------------------- H-forests

def h_forest_layout(H: Graph, attachments: Sequence):
    """Glue copies of H; attachments[i] is None, a pair (prior vertex, vertex of H),
    or a list of such pairs, for copy i. Entry 0 must be None.

    Returns (graph, copy_maps) with copy_maps[i][h] the vertex playing h in copy i.
    """
    if attachments and attachments[0] not in (None, [], ()):
        raise BadAnchor("the first copy cannot attach to anything")
    n = 0
    edges = set()
    maps = []
    for i, att in enumerate(attachments):
        if att is None:
            pairs = []
        elif len(att) == 2 and all(isinstance(x, (int, np.integer)) for x in att):
            pairs = [tuple(att)]
        else:
            pairs = [tuple(p) for p in att]
        mp = {}
        for prior, h in pairs:
            if not 0 <= prior < n:
                raise BadAnchor(f"copy {i}: vertex {prior} not in the union of earlier copies")
            if not 0 <= h < H.n or h in mp:
                raise BadAnchor(f"copy {i}: bad or repeated H vertex {h}")
            if prior in mp.values():
                raise BadAnchor(f"copy {i}: vertex {prior} glued twice")
            mp[h] = prior
        for w in range(H.n):
            if w not in mp:
                mp[w] = n
                n += 1
        for x, y in H.edges:
            e = (min(mp[x], mp[y]), max(mp[x], mp[y]))
            if e in edges:
                raise EdgeOverlap(f"copy {i} reuses edge {e}")
            edges.add(e)
        maps.append(tuple(mp[w] for w in range(H.n)))
    return build_graph(n, edges), maps


def h_forest(H: Graph, attachments: Sequence) -> Graph:
    return h_forest_layout(H, attachments)[0]


# ---------------------------------------------------------------- layer systems

@dataclass(frozen=True)
class LayerVertexSet:
    n: int
    k: int
    sets: tuple

    def __post_init__(self):
        fs = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", fs)
        for s in fs:
            if len(s) != self.k:
                raise BadLayer(f"set {sorted(s)} does not have size {self.k}")
            if any(not 0 <= x < self.n for x in s):
                raise BadLayer(f"set {sorted(s)} leaves ground set of size {self.n}")
        if len(set(fs)) != len(fs):
            raise BadLayer("repeated set")

    def __len__(self):
        return len(self.sets)

    def to_dict(self):
        return {"n": self.n, "k": self.k, "sets": [sorted(s) for s in self.sets]}


@dataclass
class PartiteReport:
    is_subgraph_of_layer: bool
    is_induced: bool
    hypergraph_partite: bool
    partition: Optional[list]
    pattern_found: bool
    union: Optional[Graph] = field(default=None, repr=False)
    witness: Optional[tuple] = None

    @property
    def ok(self):
        return (self.is_subgraph_of_layer and self.is_induced
                and self.hypergraph_partite and self.pattern_found)

    def to_dict(self):
        return {"is_subgraph_of_layer": self.is_subgraph_of_layer,
                "is_induced": self.is_induced,
                "hypergraph_partite": self.hypergraph_partite,
                "partition": self.partition,
                "pattern_found": self.pattern_found,
                "witness": None if self.witness is None else list(self.witness)}


@dataclass(frozen=True)
class CycleRepresentation:
    n: int
    A: LayerVertexSet
    B: LayerVertexSet
    parts: tuple  # intended partition of the ground set

    def cycle_order(self):
        """Cycle vertices A_0, B_0, A_1, B_1, ... as frozensets."""
        out = []
        for a, b in zip(self.A.sets, self.B.sets):
            out += [a, b]
        return out


def appendix_cycle_representation(l: int) -> CycleRepresentation:
    """Layer systems A, B whose alternation is an induced C_{2l}.

    Even l = 2k: ground {0..2k-1}, A_i = {i, i+1 mod 2k}, B_i = {i+1}.
    Odd l = 2k+1 (k >= 3): ground a=0, b=1, x_1..x_{k-1} = 2..k, y_0..y_{k-1} = k+1..2k,
    with B_i = A_i ∩ A_{i+1}.
    """
    if l in (2, 3, 5) or l < 2:
        raise Unsupported(f"C_{2 * l} has no representation of this kind")
    if l % 2 == 0:
        k = l // 2
        n = 2 * k
        A = [{i, (i + 1) % n} for i in range(n)]
        B = [{(i + 1) % n} for i in range(n)]
        parts = (tuple(range(0, n, 2)), tuple(range(1, n, 2)))
        return CycleRepresentation(n, LayerVertexSet(n, 2, A), LayerVertexSet(n, 1, B), parts)
    k = (l - 1) // 2
    n = 2 * k + 1
    a, b = 0, 1
    x = {i: 1 + i for i in range(1, k)}
    y = {j: k + 1 + j for j in range(k)}
    A = [{a, x[1], y[1]}]
    for i in range(2, k):
        A.append({a, x[i], y[i - 1]})
        A.append({a, x[i], y[i]})
    A += [{b, x[k - 1], y[k - 1]}, {b, x[k - 1], y[0]}, {b, x[1], y[0]}, {b, x[1], y[1]}]
    B = [A[i] & A[(i + 1) % len(A)] for i in range(len(A))]
    parts = ((a, b), tuple(x.values()), tuple(y.values()))
    return CycleRepresentation(n, LayerVertexSet(n, 3, A), LayerVertexSet(n, 2, B), parts)


@dataclass(frozen=True)
class PolesEmbedding:
    t: int
    n: int
    graph: Graph
    sets: tuple  # sets[v] is the ground subset carrying vertex v
    paths: tuple  # vertex sequences pole0 -> pole1


def h_poles_graph(t: int) -> PolesEmbedding:
    """H(t): t-1 paths of length 5 between two poles, embedded in Q_{2t+1}.

    Ground set is {0..2t} (element e here stands for e+1 in 1-based labels);
    poles are [t] and [t+1], vertices 0 and 1.
    """
    if t < 4:
        raise BadParams("H(t) needs t >= 4")
    n = 2 * t + 1
    T = frozenset(range(t))          # [t]
    T1 = frozenset(range(t + 1))     # [t+1]
    sets = [T, T1]
    es = []
    paths = []
    for j in range(2, t + 1):
        J, TJ, T1e = j - 1, t + j - 1, t  # 0-based j, t+j, t+1
        internal = [T | {TJ}, (T - {J}) | {TJ}, (T - {J}) | {TJ, T1e}, T1 - {J}]
        ids = list(range(len(sets), len(sets) + 4))
        sets.extend(frozenset(s) for s in internal)
        seq = [0] + ids + [1]
        es.extend(zip(seq, seq[1:]))
        paths.append(tuple(seq))
    g = build_graph(len(sets), es, name=f"H({t})")
    return PolesEmbedding(t, n, g, tuple(sets), tuple(paths))


# ---------------------------------------------------------------- coordinates

def load_points_csv(path_or_text, is_text=False) -> np.ndarray:
    """Comma-separated coordinates, one point per line; `# dim=d` header optional."""
    text = path_or_text if is_text else open(path_or_text).read()
    dim = None
    rows = []
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s[1:].strip()
            if body.startswith("dim="):
                dim = int(body[4:])
            continue
        rows.append([float(x) for x in s.split(",")])
    arr = np.array(rows, dtype=float)
    if arr.size and dim is not None and arr.shape[1] != dim:
        raise ValueError(f"header says dim={dim}, rows have {arr.shape[1]} columns")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite coordinate")
    return arr


def moser_points() -> np.ndarray:
    text = resources.files("euclid_ramsey").joinpath("data/moser_spindle.csv").read_text()
    return load_points_csv(text, is_text=True)


@dataclass
class IngestReport:
    near_threshold: list  # (i, j, distance) with eps < |d-1| <= 10 eps
    duplicates: list      # (i, j) closer than eps


def ingest_unit_distance(points, eps=1e-9, report=False):
    """Unit-distance graph: edge iff |dist - 1| <= eps."""
    from scipy.spatial import cKDTree

    if eps < 0:
        raise BadParams("eps must be >= 0")
    P = np.asarray(points, dtype=float)
    if P.ndim != 2:
        raise BadParams("points must be a 2-d array")
    if not np.all(np.isfinite(P)):
        raise BadParams("non-finite coordinate")
    tree = cKDTree(P)
    es, near, dup = [], [], []
    for i, j in sorted(tree.query_pairs(1 + 10 * eps + 1e-15)):
        d = float(np.linalg.norm(P[i] - P[j]))
        if d < eps or (eps == 0 and d == 0):
            dup.append((i, j))
        dev = abs(d - 1)
        if dev <= eps:
            es.append((i, j))
        elif dev <= 10 * eps:
            near.append((i, j, d))
    if dup:
        log.warning("%d near-duplicate point pairs", len(dup))
    if near:
        log.warning("%d pairs within 10*eps of unit distance but outside eps", len(near))
    g = build_graph(len(P), es)
    if report:
        return g, IngestReport(near, dup)
    return g


def moser_spindle() -> Graph:
    g = ingest_unit_distance(moser_points())
    return Graph(g.n, g.edges, "moser")
