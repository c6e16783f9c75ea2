"""Arrow relations G ->^r {H_1..H_m}: exact backtracking, CNF encoding, odd-cycle bounds."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .cnf import CnfFormula, dpll_solve
from .errors import CopyLimitExceeded, NodeBudgetExceeded, SizeMismatch
from .graph import Coloring, Graph, find_copies

DEFAULT_COPY_LIMIT = 10 ** 7
DEFAULT_NODE_BUDGET = 10 ** 8


@dataclass
class Verdict:
    holds: bool
    certificate: Optional[Coloring]
    copies_considered: int
    nodes: int
    engine: str

    def to_dict(self):
        return {
            "holds": self.holds,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "copies_considered": self.copies_considered,
            "nodes": self.nodes,
            "engine": self.engine,
        }


@dataclass(frozen=True)
class MonoCopy:
    index: int  # which family member
    color: int
    vertices: tuple


def _colors_of(G, coloring):
    cols = coloring.colors if isinstance(coloring, Coloring) else tuple(coloring)
    if len(cols) != G.n:
        raise SizeMismatch(f"coloring has length {len(cols)}, graph has {G.n} vertices")
    return cols


def contains_mono(G: Graph, family: Sequence[Graph], coloring, induced=False) -> Optional[MonoCopy]:
    """First monochromatic (induced) copy, scanning family members then colours."""
    cols = _colors_of(G, coloring)
    r = (max(cols) + 1) if cols else 0
    masks = [0] * r
    for v, c in enumerate(cols):
        masks[c] |= 1 << v
    for i, H in enumerate(family):
        for c in range(r):
            if masks[c].bit_count() < H.n:
                continue
            found = find_copies(G, H, induced, limit=1, mask=masks[c])
            if found:
                return MonoCopy(i, c, found[0])
    return None


def enumerate_copy_masks(G: Graph, family: Sequence[Graph], induced=False,
                         copy_limit=DEFAULT_COPY_LIMIT) -> list:
    """All distinct vertex sets (as bitmasks) carrying a copy of some family member."""
    seen = set()
    out = []
    for H in family:
        cs = find_copies(G, H, induced, limit=copy_limit)
        if cs.truncated:
            raise CopyLimitExceeded(copy_limit, H.name)
        for s in cs:
            m = 0
            for v in s:
                m |= 1 << v
            if m not in seen:
                seen.add(m)
                out.append(m)
        if len(out) > copy_limit:
            raise CopyLimitExceeded(copy_limit)
    return out


def _search(n, r, ending, prefix=(), node_budget=DEFAULT_NODE_BUDGET):
    """DFS over colourings of 0..n-1 with colours introduced in first-use order.

    ending[v] lists copy masks whose largest vertex is v; a copy is checked when
    that vertex gets coloured. Returns (colouring or None, nodes).
    """
    cls = [0] * r
    col = [0] * n
    nodes = 0

    def ok(v, c):
        bit = 1 << v
        have = cls[c] | bit
        for m in ending[v]:
            if m & have == m:
                return False
        return True

    # replay the fixed prefix
    used = 0
    for v, c in enumerate(prefix):
        if c > used or not ok(v, c):
            return None, nodes
        col[v] = c
        cls[c] |= 1 << v
        used = max(used, c + 1)
    start = len(prefix)
    if start == n:
        return tuple(col), nodes
    # explicit stack: next colour to try at each depth, and used-count before it
    nxt = [0] * (n + 1)
    used_at = [0] * (n + 1)
    v = start
    used_at[v] = used
    nxt[v] = 0
    while True:
        if v < start:
            return None, nodes
        c = nxt[v]
        limit = min(used_at[v] + 1, r)
        if c >= limit:
            # exhausted; undo the previous vertex
            v -= 1
            if v >= start:
                cls[col[v]] &= ~(1 << v)
                nxt[v] = col[v] + 1
            continue
        nxt[v] = c + 1
        nodes += 1
        if nodes > node_budget:
            raise NodeBudgetExceeded(node_budget, "arrow_check")
        if not ok(v, c):
            continue
        col[v] = c
        cls[c] |= 1 << v
        if v == n - 1:
            return tuple(col), nodes
        used_at[v + 1] = max(used_at[v], c + 1)
        v += 1
        nxt[v] = 0


def _prefixes(n, r, depth):
    out = [()]
    for v in range(min(depth, n)):
        new = []
        for p in out:
            used = (max(p) + 1) if p else 0
            for c in range(min(used + 1, r)):
                new.append(p + (c,))
        out = new
    return out


def _worker(args):
    n, r, ending, prefix, budget = args
    return _search(n, r, ending, prefix, budget)


def arrow_check(G: Graph, family: Sequence[Graph], r: int, induced=False, engine="backtrack",
                copy_limit=DEFAULT_COPY_LIMIT, node_budget=DEFAULT_NODE_BUDGET, jobs=1) -> Verdict:
    """Decide G ->^r family (or ->^r_ind with induced=True).

    holds=True means every r-colouring has a monochromatic copy. Otherwise the
    certificate is a colouring without one; the backtracking engine with jobs=1
    returns the lexicographically least such colouring.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    masks = enumerate_copy_masks(G, family, induced, copy_limit)
    n = G.n
    if engine == "cnf":
        f = _encode_from_masks(n, r, masks)
        res = dpll_solve(f, node_budget)
        if not res.sat:
            return Verdict(True, None, len(masks), res.nodes, "cnf")
        cols = []
        for v in range(n):
            cs = [c for c in range(r) if res.value(v * r + c + 1)]
            cols.append(cs[0])
        return Verdict(False, Coloring(tuple(cols), r), len(masks), res.nodes, "cnf")
    if engine != "backtrack":
        raise ValueError(f"unknown engine {engine!r}")

    ending = [[] for _ in range(n)]
    for m in masks:
        ending[m.bit_length() - 1].append(m)
    if jobs <= 1 or n < 4:
        col, nodes = _search(n, r, ending, (), node_budget)
    else:
        prefixes = _prefixes(n, r, 2)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_worker, [(n, r, ending, p, node_budget) for p in prefixes]))
        nodes = sum(x[1] for x in results)
        # prefixes are in lexicographic order, so the first hit is still the least
        col = next((x[0] for x in results if x[0] is not None), None)
    if col is None:
        return Verdict(True, None, len(masks), nodes, "backtrack")
    return Verdict(False, Coloring(col, r), len(masks), nodes, "backtrack")


def _encode_from_masks(n, r, masks):
    f = CnfFormula(n * r)
    for v in range(n):
        for c in range(r):
            f.var_names[v * r + c + 1] = f"x_{{{v},{c}}}"
    for v in range(n):
        f.add([v * r + c + 1 for c in range(r)])
        for c in range(r):
            for d in range(c + 1, r):
                f.add([-(v * r + c + 1), -(v * r + d + 1)])
    for m in masks:
        vs = []
        x = m
        while x:
            low = x & -x
            vs.append(low.bit_length() - 1)
            x ^= low
        for c in range(r):
            f.add([-(v * r + c + 1) for v in vs])
    return f


def encode_cnf(G: Graph, family: Sequence[Graph], r: int, induced=False,
               copy_limit=DEFAULT_COPY_LIMIT) -> CnfFormula:
    """Variables x_{v,c} = v*r + c + 1; satisfiable iff the arrow relation fails."""
    masks = enumerate_copy_masks(G, family, induced, copy_limit)
    return _encode_from_masks(G.n, r, masks)


def odd_cycle(L):
    from .graph import build_graph
    return build_graph(L, [(i, (i + 1) % L) for i in range(L)], name=f"C{L}")


@dataclass
class OddCycleBound:
    L: Optional[int]
    certificate: Optional[Coloring]

    def to_dict(self):
        return {"L": self.L,
                "certificate": None if self.certificate is None else self.certificate.to_dict()}


def mono_odd_cycle_bound(G: Graph, r: int, Lmax: int, **kw) -> OddCycleBound:
    """Least odd L <= Lmax with G ->^r {C_3, ..., C_L}, else None plus a certificate."""
    if Lmax < 3 or Lmax % 2 == 0:
        raise ValueError("Lmax must be odd and >= 3")
    fam = []
    last = None
    for L in range(3, Lmax + 1, 2):
        fam.append(odd_cycle(L))
        if L > G.n:
            # no new copies possible; the verdict is unchanged
            continue
        last = arrow_check(G, fam, r, **kw)
        if last.holds:
            return OddCycleBound(L, None)
    if last is None:
        last = arrow_check(G, fam[:1], r, **kw)
    return OddCycleBound(None, last.certificate)
