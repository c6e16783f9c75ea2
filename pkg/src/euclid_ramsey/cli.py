"""Command-line entry point. Every subcommand prints a JSON report.

Exit status: 0 when a result was computed (whatever the verdict), 1 on usage
errors, 2 when a search budget or size limit was exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import arrow, bounds, exact, generators, hypercube, plane
from .errors import BudgetExceeded, GraphOverflow
from .graph import Graph, cartesian_power, cartesian_product, find_copies

EXIT_OK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- graph specs

_ATOM = re.compile(r"^(K|C|P|S|Q)(\d+)$")
_J = re.compile(r"^J\((\d+),(\d+),(\d+)\)$")
_L = re.compile(r"^L\((\d+),(\d+)\)$")


def _atom(tok: str) -> Graph:
    tok = tok.strip()
    if os.path.exists(tok):
        return load_graph_file(tok)
    m = _ATOM.match(tok)
    if m:
        kind = {"K": "complete", "C": "cycle", "P": "path", "S": "star", "Q": "hypercube"}[m.group(1)]
        return generators.gen_standard(kind, int(m.group(2)))
    m = _J.match(tok)
    if m:
        return generators.johnson(*map(int, m.groups()))
    m = _L.match(tok)
    if m:
        return generators.edge_layer(*map(int, m.groups()))
    if tok.lower() == "moser":
        return generators.moser_spindle()
    raise UsageError(f"cannot parse graph {tok!r}")


def parse_graph(spec: str) -> Graph:
    """`A*B` is a Cartesian product, `A^N` a Cartesian power; atoms are files
    (.json, .csv coordinates, edge lists) or names K3, C5, P3, S3, Q3,
    J(n,k,t), L(n,k), moser."""
    if os.path.exists(spec):
        return load_graph_file(spec)
    g = None
    for factor in spec.split("*"):
        if "^" in factor and not os.path.exists(factor):
            base, N = factor.rsplit("^", 1)
            h = cartesian_power(_atom(base), int(N))
        else:
            h = _atom(factor)
        g = h if g is None else cartesian_product(g, h)
    return g


def load_graph_file(path: str) -> Graph:
    text = open(path).read()
    if path.endswith(".json"):
        return Graph.from_json(text)
    if path.endswith(".csv"):
        return generators.ingest_unit_distance(generators.load_points_csv(text, is_text=True))
    return Graph.from_edgelist(text)


def _family(spec: str):
    return [parse_graph(s) for s in spec.split(",") if s.strip()]


def _ints(spec):
    return [int(x) for x in spec.split(",") if x.strip()] if spec else []


# ---------------------------------------------------------------- commands

def _graph_summary(g: Graph, edges=True):
    d = {"n": g.n, "m": g.m, "name": g.name}
    if edges:
        d["edges"] = [list(e) for e in g.edges]
    return d


def cmd_product(a):
    return {"graph": _graph_summary(cartesian_product(parse_graph(a.left), parse_graph(a.right)))}


def cmd_power(a):
    return {"graph": _graph_summary(cartesian_power(parse_graph(a.graph), a.N))}


def cmd_copies(a):
    cs = find_copies(parse_graph(a.host), parse_graph(a.pattern), a.induced, limit=a.limit)
    return {"count": len(cs), "truncated": cs.truncated, "copies": [list(c) for c in cs]}


def cmd_chi(a):
    chi, col = exact.chromatic_number(parse_graph(a.graph), a.node_budget, certificate=True)
    return {"chi": chi, "coloring": list(col.colors)}


def cmd_alpha(a):
    al, S = exact.independence_number(parse_graph(a.graph), a.node_budget, witness=True)
    return {"alpha": al, "witness": S}


def cmd_chi_h(a):
    r, col = exact.chi_generalized(parse_graph(a.graph), parse_graph(a.pattern), a.induced,
                                   a.node_budget, a.copy_limit, certificate=True)
    return {"chi_H": r, "coloring": list(col.colors)}


def cmd_arrow(a):
    v = arrow.arrow_check(parse_graph(a.graph), _family(a.family), a.r, induced=a.induced,
                          engine=a.engine, copy_limit=a.copy_limit, node_budget=a.node_budget,
                          jobs=a.jobs)
    return v.to_dict()


def cmd_odd_cycle_bound(a):
    res = arrow.mono_odd_cycle_bound(parse_graph(a.graph), a.r, a.Lmax, copy_limit=a.copy_limit,
                                     node_budget=a.node_budget, jobs=a.jobs)
    return res.to_dict()


def cmd_export_cnf(a):
    f = arrow.encode_cnf(parse_graph(a.graph), _family(a.family), a.r, a.induced, a.copy_limit)
    text = f.to_dimacs()
    rep = {"variables": f.num_vars, "clauses": len(f.clauses)}
    if a.cnf_out:
        with open(a.cnf_out, "w") as fh:
            fh.write(text)
        rep["path"] = a.cnf_out
    else:
        rep["dimacs"] = text
    if a.solve:
        res = arrow.dpll_solve(f, a.node_budget)
        rep["sat"] = res.sat
    return rep


def _power_subgraph(a):
    S = hypercube.PowerSubgraph(parse_graph(a.base), a.N)
    if a.drop:
        pairs = [tuple(map(int, p.split("-"))) for p in a.drop.split(",")]
        S = S.without_edges(pairs)
    return S


def cmd_slices(a):
    S = _power_subgraph(a)
    c, t, f = hypercube.slice_fraction(S)
    rep = {"contained": c, "total": t, "fraction": float(f), "fraction_exact": str(f)}
    if a.threshold:
        surv = hypercube.peel_by_slice_degree(S, a.threshold)
        rep["survivors"] = sorted(surv)
    return rep


def _attachments(spec):
    out = []
    for part in spec.split(";"):
        part = part.strip()
        if part.lower() in ("", "none", "-"):
            out.append(None)
        else:
            p, h = part.split(":")
            out.append((int(p), int(h)))
    return out


def cmd_embed_forest(a):
    S = _power_subgraph(a)
    return hypercube.greedy_forest_embed(S, _attachments(a.attach)).to_dict()


def cmd_verify_rep(a):
    if a.poles:
        P = generators.h_poles_graph(a.poles)
        sets = P.sets
        layers_ok = all(len(s) in (P.t, P.t + 1) for s in sets)
        steps_ok = all(len(sets[u] ^ sets[v]) == 1 for u, v in P.graph.edges)
        return {"t": P.t, "n": P.n, "vertices": P.graph.n, "edges": P.graph.m,
                "layers_ok": layers_ok, "steps_ok": steps_ok,
                "sets": [sorted(s) for s in sets]}
    R = generators.appendix_cycle_representation(a.l)
    rep = hypercube.verify_partite_representation(R.n, R.A.k, R.A, generators.cycle(2 * a.l), True)
    out = rep.to_dict()
    out.update({"l": a.l, "n": R.n, "A": R.A.to_dict(), "B": R.B.to_dict(), "ok": rep.ok})
    return out


def cmd_mod3(a):
    return hypercube.mod3_c4_check(a.N).to_dict()


def cmd_strong_turan(a):
    G = parse_graph(a.gamma)
    A = _ints(a.A) if a.A else None
    B = _ints(a.B) if a.B else None
    if (A is None) != (B is None):
        raise UsageError("give both --A and --B or neither")
    return {"m": hypercube.strong_turan_number(a.N, G, A, B, node_budget=a.node_budget),
            "total_edges": a.N * 2 ** (a.N - 1)}


def _scheme(a):
    return plane.PlaneScheme(a.scheme, a.param)


def cmd_plane_falsify(a):
    sch = _scheme(a)
    w = plane.falsify(sch, a.config_kind, a.trials, a.seed, a.window)
    return {"scheme": sch.to_dict(), "found": w is not None,
            "witness": None if w is None else w.to_dict()}


def cmd_plane_audit(a):
    return plane.tiling_audit(_scheme(a))


def cmd_render(a):
    bbox = tuple(float(x) for x in a.bbox.split(","))
    if len(bbox) != 4:
        raise UsageError("--bbox needs x0,y0,x1,y1")
    doc = plane.render_svg(_scheme(a), bbox, a.cells, path=a.image)
    rep = {"scheme": _scheme(a).to_dict(), "bbox": list(bbox), "cells": a.cells}
    if a.image:
        rep["path"] = a.image
    else:
        rep["svg"] = doc
    return rep


def cmd_bounds(a):
    which = a.which
    if which == "rho":
        return bounds.odd_cycle_constants(a.l)
    if which == "chain":
        res = bounds.min_circumradius_chain(a.m, a.dim, a.restarts, a.seed)
        out = res.to_dict()
        out["r_expected"] = bounds.odd_cycle_constants((a.m - 1) // 2)["r_l"]
        return out
    if which == "b3":
        if a.stats:
            d = json.load(open(a.stats))
            if "G" in d and "H" in d:
                return bounds.frankl_rodl_from_graphs(Graph.from_dict(d["G"]), Graph.from_dict(d["H"])).to_dict()
            return bounds.frankl_rodl_bound(d["vG"], d["aG"], d["vH"], d["eH"], d["aH"]).to_dict()
        if a.graphs:
            G, H = (parse_graph(s) for s in a.graphs)
            return bounds.frankl_rodl_from_graphs(G, H).to_dict()
        raise UsageError("bounds b3 needs --stats or --graphs")
    if which == "johnson":
        return bounds.johnson_stats(a.n, a.k, a.t)
    if which == "exponent":
        return bounds.exponent_optimize(a.psi)
    raise UsageError(f"unknown bounds target {which}")


def cmd_ingest(a):
    pts = generators.load_points_csv(a.points)
    g, rep = generators.ingest_unit_distance(pts, a.eps, report=True)
    return {"graph": _graph_summary(g), "near_threshold": [list(x) for x in rep.near_threshold],
            "duplicates": [list(x) for x in rep.duplicates]}


# ---------------------------------------------------------------- parser

def build_parser():
    common = Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--node-budget", type=int, default=10 ** 8)
    common.add_argument("--copy-limit", type=int, default=10 ** 7)
    common.add_argument("--deterministic", action="store_true")
    common.add_argument("--out", default=None, help="write the JSON report here")

    p = Parser(prog="euclid-ramsey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("product", cmd_product, "Cartesian product of two graphs")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("power", cmd_power, "Cartesian power")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--N", type=int, required=True)
    sp = add("copies", cmd_copies, "enumerate copies of a pattern")
    sp.add_argument("--host", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--induced", action="store_true")
    sp.add_argument("--limit", type=int, default=None)
    sp = add("chi", cmd_chi, "chromatic number")
    sp.add_argument("--graph", required=True)
    sp = add("alpha", cmd_alpha, "independence number")
    sp.add_argument("--graph", required=True)
    sp = add("chi-h", cmd_chi_h, "generalized chromatic number")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--induced", action="store_true")
    for name, fn, h in (("arrow", cmd_arrow, "decide an arrow relation"),
                        ("export-cnf", cmd_export_cnf, "DIMACS encoding of an arrow relation")):
        sp = add(name, fn, h)
        sp.add_argument("--graph", required=True)
        sp.add_argument("--family", required=True, help="comma-separated graph specs")
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--induced", action="store_true")
        if name == "arrow":
            sp.add_argument("--engine", choices=["backtrack", "cnf"], default="backtrack")
        else:
            sp.add_argument("--cnf-out", default=None)
            sp.add_argument("--solve", action="store_true")
    sp = add("odd-cycle-bound", cmd_odd_cycle_bound, "least L with a forced monochromatic odd cycle")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--Lmax", type=int, required=True)
    for name, fn, h in (("slices", cmd_slices, "slice counts and peeling"),
                        ("embed-forest", cmd_embed_forest, "greedy H-forest embedding")):
        sp = add(name, fn, h)
        sp.add_argument("--base", required=True)
        sp.add_argument("--N", type=int, required=True)
        sp.add_argument("--drop", default=None, help="edges to remove, e.g. 0-1,3-4")
        if name == "slices":
            sp.add_argument("--threshold", type=int, default=None)
        else:
            sp.add_argument("--attach", required=True, help="e.g. 'none;1:0;2:0'")
    sp = add("verify-rep", cmd_verify_rep, "check a layer representation")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--l", type=int)
    g.add_argument("--poles", type=int, help="t for the pole graph H(t)")
    sp = add("mod3", cmd_mod3, "mod-3 colouring C_4 census")
    sp.add_argument("--N", type=int, required=True)
    sp = add("strong-turan", cmd_strong_turan, "tiny strong Turán numbers")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--A", default=None)
    sp.add_argument("--B", default=None)
    for name, fn, h in (("plane-falsify", cmd_plane_falsify, "random monochromatic search"),
                        ("plane-audit", cmd_plane_audit, "tile distance audit"),
                        ("render", cmd_render, "SVG picture of a colouring")):
        sp = add(name, fn, h)
        sp.add_argument("--scheme", required=True, choices=["strips", "staircase", "hex4", "square4"])
        sp.add_argument("--param", type=float, default=None)
        if name == "plane-falsify":
            sp.add_argument("--config-kind", required=True)
            sp.add_argument("--trials", type=int, default=10 ** 4)
            sp.add_argument("--window", type=float, default=50.0)
        if name == "render":
            sp.add_argument("--bbox", default="0,0,8,8")
            sp.add_argument("--cells", type=int, default=120)
            sp.add_argument("--image", default=None, help="SVG output path")
    sp = add("bounds", cmd_bounds, "numeric constants and bounds")
    sp.add_argument("which", choices=["rho", "chain", "b3", "johnson", "exponent"])
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--m", type=int, default=5)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--restarts", type=int, default=10)
    sp.add_argument("--stats", default=None)
    sp.add_argument("--graphs", nargs=2, default=None)
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--psi", type=float, default=bounds.PSI)
    sp = add("ingest", cmd_ingest, "unit-distance graph from coordinates")
    sp.add_argument("--points", required=True)
    sp.add_argument("--eps", type=float, default=1e-9)
    return p


def _config(a):
    return {k: v for k, v in sorted(vars(a).items()) if k not in ("fn",)}


def run(argv=None):
    """Parse argv, run the command; returns (exit status, report dict or None)."""
    p = build_parser()
    try:
        a = p.parse_args(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else EXIT_USAGE), None
    if a.deterministic:
        a.jobs = 1
    if a.node_budget < 1 or a.copy_limit < 1 or a.jobs < 1:
        print("budgets and --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE, None
    try:
        result = a.fn(a)
        status = EXIT_OK
    except (BudgetExceeded, GraphOverflow) as e:
        result = {"error": type(e).__name__, "message": str(e)}
        status = EXIT_BUDGET
    except (UsageError, ValueError) as e:
        print(f"euclid-ramsey: error: {e}", file=sys.stderr)
        return EXIT_USAGE, None
    report = dict(result)
    report["config"] = _config(a)
    text = json.dumps(report, sort_keys=True, indent=2, default=_jsonable)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status, report


def _jsonable(x):
    import numpy as np

    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"not JSON serialisable: {type(x)}")


def main(argv=None):
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
