"""CNF formulas, DIMACS I/O and a small DPLL reference solver."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NodeBudgetExceeded


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list = field(default_factory=list)
    var_names: dict = field(default_factory=dict)  # id -> label, for the comment block

    def __post_init__(self):
        self.clauses = [tuple(int(l) for l in c) for c in self.clauses]
        for c in self.clauses:
            self._check(c)

    def _check(self, c):
        if not c:
            raise ValueError("empty clause")
        for l in c:
            if l == 0 or abs(l) > self.num_vars:
                raise ValueError(f"literal {l} outside 1..{self.num_vars}")

    def add(self, clause):
        c = tuple(int(l) for l in clause)
        self._check(c)
        self.clauses.append(c)

    def to_dimacs(self) -> str:
        out = []
        for v in sorted(self.var_names):
            out.append(f"c var {self.var_names[v]} = {v}")
        out.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for c in self.clauses:
            out.append(" ".join(map(str, c)) + " 0")
        return "\n".join(out) + "\n"

    @classmethod
    def from_dimacs(cls, text: str):
        names = {}
        nv = None
        lits, clauses = [], []
        for line in text.splitlines():
            s = line.strip()
            if not s:
                continue
            if s.startswith("c"):
                m = re.match(r"c var (.+) = (\d+)$", s)
                if m:
                    names[int(m.group(2))] = m.group(1)
                continue
            if s.startswith("p"):
                parts = s.split()
                nv = int(parts[2])
                continue
            for tok in s.split():
                x = int(tok)
                if x == 0:
                    clauses.append(lits)
                    lits = []
                else:
                    lits.append(x)
        if lits:
            clauses.append(lits)
        if nv is None:
            raise ValueError("missing 'p cnf' header")
        return cls(nv, clauses, names)


@dataclass
class SatResult:
    sat: bool
    model: tuple  # signed literals, one per variable (empty when unsat)
    nodes: int

    def value(self, var):
        return self.model[var - 1] > 0


def dpll_solve(f: CnfFormula, node_budget=10 ** 8) -> SatResult:
    """DPLL with unit propagation; branches on the lowest unassigned variable, true first."""
    nv = f.num_vars
    clauses = f.clauses
    if any(len(c) == 0 for c in clauses):
        return SatResult(False, (), 0)
    occ = {}
    for i, c in enumerate(clauses):
        for l in c:
            occ.setdefault(l, []).append(i)
    val = [0] * (nv + 1)
    trail = []
    # each decision: (trail position, variable, tried_both)
    decisions = []
    nodes = 0

    def lit_val(l):
        v = val[abs(l)]
        return v if l > 0 else -v

    def set_lit(l):
        val[abs(l)] = 1 if l > 0 else -1
        trail.append(l)

    def propagate(start):
        i = start
        while i < len(trail):
            l = trail[i]
            i += 1
            for ci in occ.get(-l, ()):
                unassigned = None
                n_un = 0
                sat = False
                for x in clauses[ci]:
                    xv = lit_val(x)
                    if xv > 0:
                        sat = True
                        break
                    if xv == 0:
                        n_un += 1
                        unassigned = x
                if sat:
                    continue
                if n_un == 0:
                    return False
                if n_un == 1:
                    set_lit(unassigned)
        return True

    # initial unit clauses
    for c in clauses:
        if len(c) == 1:
            cv = lit_val(c[0])
            if cv < 0:
                return SatResult(False, (), 0)
            if cv == 0:
                set_lit(c[0])
    ok = propagate(0)
    if not ok:
        return SatResult(False, (), 0)

    next_var = 1
    while True:
        while next_var <= nv and val[next_var] != 0:
            next_var += 1
        if next_var > nv:
            return SatResult(True, tuple(v if val[v] > 0 else -v for v in range(1, nv + 1)), nodes)
        nodes += 1
        if nodes > node_budget:
            raise NodeBudgetExceeded(node_budget, "dpll")
        pos = len(trail)
        decisions.append((pos, next_var, False))
        set_lit(next_var)
        ok = propagate(pos)
        while not ok:
            # backtrack to the most recent decision with an untried branch
            while decisions and decisions[-1][2]:
                decisions.pop()
            if not decisions:
                return SatResult(False, (), nodes)
            pos, var, _ = decisions.pop()
            for l in trail[pos:]:
                val[abs(l)] = 0
            del trail[pos:]
            decisions.append((pos, var, True))
            set_lit(-var)
            nodes += 1
            if nodes > node_budget:
                raise NodeBudgetExceeded(node_budget, "dpll")
            ok = propagate(pos)
        next_var = 1
