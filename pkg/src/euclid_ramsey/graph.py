"""Finite simple graphs, Cartesian products/powers, and copy enumeration.

Vertices are 0..n-1. Adjacency is kept as one Python int per vertex
(bit j of adj[i] set iff ij is an edge), which makes the copy search a
sequence of mask intersections.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (GraphOverflow, LoopEdge, SizeMismatch,
                     VertexOutOfRange)

VERTEX_BUDGET = 4096


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple
    name: str = ""
    adj: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not self.adj:
            rows = [0] * self.n
            for u, v in self.edges:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            object.__setattr__(self, "adj", tuple(rows))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list:
        return _bits(self.adj[v])

    def induced_subgraph(self, vertices: Sequence[int], name=""):
        """Subgraph induced on `vertices`, relabelled 0..k-1 in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return build_graph(len(vertices), es, name=name)

    def complement(self):
        es = [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
              if not self.has_edge(u, v)]
        return build_graph(self.n, es, name=f"co-{self.name}" if self.name else "")

    def to_dict(self):
        return {"name": self.name, "n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return build_graph(int(d["n"]), [tuple(e) for e in d["edges"]], name=d.get("name", ""))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_edgelist(self) -> str:
        lines = [f"# n={self.n}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text, n=None, name=""):
        es = []
        for line in text.splitlines():
            line = line.strip()
            if line.startswith("#"):
                if line[1:].strip().startswith("n=") and n is None:
                    n = int(line[1:].strip()[2:])
                continue
            if not line:
                continue
            a, b = line.split()[:2]
            es.append((int(a), int(b)))
        if n is None:
            n = 1 + max((max(e) for e in es), default=-1)
        return build_graph(n, es, name=name)


def _bits(x: int) -> list:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def build_graph(n: int, edges: Iterable, name: str = "") -> Graph:
    """Normalise an edge list (u<v, sorted, deduplicated) and validate it."""
    if n < 0:
        raise VertexOutOfRange(f"negative vertex count {n}")
    seen = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
        seen.add((u, v) if u < v else (v, u))
    return Graph(n, tuple(sorted(seen)), name)


def _check_budget(size, budget):
    budget = VERTEX_BUDGET if budget is None else budget
    if size > budget:
        raise GraphOverflow(f"{size} vertices exceeds budget {budget}")


def cartesian_product(G: Graph, H: Graph, budget=None) -> Graph:
    """G□H with vertex (g,h) -> g*|V(H)|+h."""
    _check_budget(G.n * H.n, budget)
    nh = H.n
    es = []
    for g in range(G.n):
        for a, b in H.edges:
            es.append((g * nh + a, g * nh + b))
    for a, b in G.edges:
        for h in range(nh):
            es.append((a * nh + h, b * nh + h))
    name = f"{G.name}*{H.name}" if G.name and H.name else ""
    return build_graph(G.n * nh, es, name=name)


def to_digits(idx: int, base: int, length: int) -> tuple:
    """Mixed-radix digits, least significant first: idx = sum d[i]*base**i."""
    ds = []
    for _ in range(length):
        idx, d = divmod(idx, base)
        ds.append(d)
    return tuple(ds)


def from_digits(digits: Sequence[int], base: int) -> int:
    out = 0
    for d in reversed(digits):
        if not 0 <= d < base:
            raise VertexOutOfRange(f"digit {d} outside base {base}")
        out = out * base + d
    return out


@dataclass(frozen=True)
class PowerIndex:
    base: int
    digits: tuple

    @property
    def length(self):
        return len(self.digits)

    @property
    def id(self):
        return from_digits(self.digits, self.base)

    @classmethod
    def of(cls, idx, base, length):
        if not 0 <= idx < base ** length:
            raise VertexOutOfRange(f"id {idx} outside {base}^{length}")
        return cls(base, to_digits(idx, base, length))


def cartesian_power(G: Graph, N: int, budget=None) -> Graph:
    """G^{□N}; vertex ids are the PowerIndex values sum d_i b^i.

    With this digit order power(G,N) equals cartesian_product(power(G,N-1), G)
    as labelled graphs (the new factor is the most significant digit).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    b = G.n
    _check_budget(b ** N, budget)
    es = []
    for i in range(N):
        step = b ** i
        for x in range(b ** N):
            d = (x // step) % b
            for a, c in G.edges:
                if d == a:
                    es.append((x, x + (c - a) * step))
    name = f"{G.name}^{N}" if G.name else ""
    return build_graph(b ** N, es, name=name)


# ---------------------------------------------------------------- copies

def _pattern_order(P: Graph) -> list:
    """BFS order, each component started at its highest-degree vertex."""
    order, seen = [], set()
    rest = sorted(range(P.n), key=lambda v: (-P.degree(v), v))
    for s in rest:
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(P.neighbors(v), key=lambda w: (-P.degree(w), w)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def iter_embeddings(host: Graph, pattern: Graph, induced=False, mask=None,
                    domains=None) -> Iterator[tuple]:
    """Yield labelled embeddings as tuples img[p] for p in pattern order 0..k-1.

    mask restricts the host vertices used; domains (optional list of masks,
    one per pattern vertex) restricts each pattern vertex individually.
    """
    k = pattern.n
    if k == 0:
        yield ()
        return
    if mask is None:
        mask = (1 << host.n) - 1
    order = _pattern_order(pattern)
    # for step i: earlier positions that are neighbours / non-neighbours
    nbr_prev = []
    non_prev = []
    for i, p in enumerate(order):
        nb = [j for j in range(i) if pattern.has_edge(p, order[j])]
        nn = [j for j in range(i) if not pattern.has_edge(p, order[j])]
        nbr_prev.append(nb)
        non_prev.append(nn)
    dom = [mask if domains is None else mask & domains[p] for p in order]
    hadj = host.adj
    img = [0] * k
    used = 0

    def cands(i):
        c = dom[i] & ~used
        for j in nbr_prev[i]:
            c &= hadj[img[j]]
        if induced:
            for j in non_prev[i]:
                c &= ~hadj[img[j]]
        return c

    stack = [cands(0)]
    while stack:
        i = len(stack) - 1
        c = stack[i]
        if not c:
            stack.pop()
            if stack:
                used &= ~(1 << img[i - 1])
            continue
        low = c & -c
        stack[i] = c ^ low
        v = low.bit_length() - 1
        img[i] = v
        if i == k - 1:
            out = [0] * k
            for j, p in enumerate(order):
                out[p] = img[j]
            yield tuple(out)
            continue
        used |= low
        stack.append(cands(i + 1))


class Copies(list):
    """List of vertex subsets (sorted tuples) with a truncation flag."""
    truncated = False


def find_copies(host: Graph, pattern: Graph, induced=False, limit=None,
                mask=None, domains=None) -> Copies:
    """Distinct vertex sets carrying an (induced) copy of pattern in host.

    Sets are sorted tuples in discovery order. If more than `limit` exist,
    the first `limit` are returned and `.truncated` is set.
    """
    out = Copies()
    if pattern.n > host.n:
        return out
    seen = set()
    for emb in iter_embeddings(host, pattern, induced, mask, domains):
        key = 0
        for v in emb:
            key |= 1 << v
        if key in seen:
            continue
        seen.add(key)
        if limit is not None and len(out) >= limit:
            out.truncated = True
            break
        out.append(tuple(sorted(emb)))
    return out


@dataclass(frozen=True)
class Embedding:
    images: tuple

    def __post_init__(self):
        if len(set(self.images)) != len(self.images):
            raise ValueError("embedding is not injective")

    @property
    def pattern_size(self):
        return len(self.images)


def is_copy(host: Graph, pattern: Graph, emb, induced=False) -> bool:
    images = emb.images if isinstance(emb, Embedding) else tuple(emb)
    if len(images) != pattern.n:
        raise SizeMismatch(f"embedding has {len(images)} images, pattern has {pattern.n} vertices")
    if len(set(images)) != len(images):
        raise ValueError("embedding is not injective")
    for v in images:
        if not 0 <= v < host.n:
            raise SizeMismatch(f"image {v} outside host")
    for u in range(pattern.n):
        for v in range(u + 1, pattern.n):
            he = host.has_edge(images[u], images[v])
            if pattern.has_edge(u, v):
                if not he:
                    return False
            elif induced and he:
                return False
    return True


@dataclass(frozen=True)
class Coloring:
    colors: tuple
    r: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        for c in self.colors:
            if not 0 <= c < self.r:
                raise ValueError(f"color {c} outside 0..{self.r - 1}")

    def __len__(self):
        return len(self.colors)

    def classes(self):
        out = [[] for _ in range(self.r)]
        for v, c in enumerate(self.colors):
            out[c].append(v)
        return out

    def to_dict(self):
        return {"r": self.r, "colors": list(self.colors)}
