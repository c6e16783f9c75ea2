"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL line.

Run alone with `pytest tests/test_acceptance.py -v` or `python3 tests/test_acceptance.py`.
"""
import math
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations

if __name__ == "__main__":
    # fresh interpreter so pytest sees the test modules before they are imported
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-v"]))

import numpy as np
import pytest

from conftest import C3, C4, K2, K3, P3, all_colorings, brute_alpha, brute_chi, exhaustive_arrow
from euclid_ramsey import generators as gen
from euclid_ramsey.arrow import arrow_check, contains_mono, odd_cycle
from euclid_ramsey.bounds import (C2, exponent_optimize, frankl_rodl_bound, min_circumradius_chain,
                                  odd_cycle_constants, orthogonal_tree_unit_copy,
                                  star_polygon_embedding)
from euclid_ramsey.errors import InsufficientSliceDegree
from euclid_ramsey.exact import chi_generalized, chromatic_number, independence_number
from euclid_ramsey.graph import build_graph, cartesian_power, cartesian_product, is_copy
from euclid_ramsey.hypercube import (PowerSubgraph, all_slices, greedy_forest_embed,
                                     mod3_c4_check, peel_by_slice_degree, slice_fraction,
                                     verify_partite_representation)
from euclid_ramsey.plane import PlaneScheme, falsify, tiling_audit

pytestmark = pytest.mark.acceptance

FAMILIES = [[K2], [P3], [C3], [C4], [P3, C3], [K2, C4], [P3, C4], [C3, C4], [P3, C3, C4]]


def corpus(count=200, seed=20240501):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(1, 9))
        p = rng.uniform(0.2, 0.8)
        es = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        out.append(build_graph(n, es))
    return out


def test_criterion_01_oracle_equivalence():
    t0 = time.time()
    graphs = corpus()
    checked = 0
    for i, G in enumerate(graphs):
        fam = FAMILIES[i % len(FAMILIES)]
        induced = bool(i % 2)
        for r in (2, 3):
            a = arrow_check(G, fam, r, induced=induced)
            b = arrow_check(G, fam, r, induced=induced, engine="cnf")
            c = exhaustive_arrow(G, fam, r, induced)
            assert a.holds == b.holds == c, (i, r)
            for v in (a, b):
                if not v.holds:
                    assert contains_mono(G, fam, v.certificate, induced) is None
            checked += 1
    assert checked == 400
    assert time.time() - t0 < 300


def test_criterion_02_chi_alpha_exact(moser):
    for G in corpus():
        assert chromatic_number(G) == brute_chi(G)
        assert independence_number(G) == brute_alpha(G)
    assert chromatic_number(moser) == 4
    # no proper 3-colouring among all 3^7
    cols = all_colorings(7, 3)
    ok = np.ones(len(cols), dtype=bool)
    for u, v in moser.edges:
        ok &= cols[:, u] != cols[:, v]
    assert not ok.any()


def test_criterion_03_small_arrows(moser):
    G = cartesian_product(K3, K3)
    assert len(all_colorings(9, 2)) == 512
    assert exhaustive_arrow(G, [P3], 2)
    assert arrow_check(G, [P3], 2).holds
    assert chi_generalized(G, P3) == 3
    fam = [odd_cycle(3), odd_cycle(5), odd_cycle(7)]
    v = arrow_check(moser, fam, 2)
    assert not v.holds
    cert = v.certificate
    assert contains_mono(moser, fam, cert) is None
    # every colour class induces a bipartite graph, so no odd cycle of any length is monochromatic
    for c in (0, 1):
        cls = [x for x in range(7) if cert.colors[x] == c]
        sub = moser.induced_subgraph(cls)
        gen.bipartition(sub)


def test_criterion_04_mod3_census():
    t0 = time.time()
    for N in range(2, 6):
        c = mod3_c4_check(N)
        assert c.copies == math.comb(N, 2) * 9 * 3 ** (N - 2)
        assert c.monochromatic == 0
    assert time.time() - t0 < 60


def test_criterion_05_representations():
    t0 = time.time()
    for l in (4, 6, 7, 8, 9):
        rep = gen.appendix_cycle_representation(l)
        order = rep.cycle_order()
        cyc = gen.subsets_graph(order)
        assert cyc.m == 2 * l and all(cyc.has_edge(i, (i + 1) % (2 * l)) for i in range(2 * l))
        r = verify_partite_representation(rep.n, rep.A.k, rep.A, gen.cycle(2 * l), induced=True)
        assert r.ok
        assert len([p for p in r.partition if p]) == (2 if l % 2 == 0 else 3)
    for t in (4, 5):
        P = gen.h_poles_graph(t)
        assert P.n == 2 * t + 1
        assert {len(s) for s in P.sets} == {t, t + 1}
        assert all(max(s) < P.n for s in P.sets)
        seen = set()
        for p in P.paths:
            assert len(p) - 1 == 5 and p[0] == 0 and p[-1] == 1
            assert not seen & set(p[1:-1])
            seen |= set(p[1:-1])
        for u, v in P.graph.edges:
            assert len(P.sets[u] ^ P.sets[v]) == 1
        assert P.graph.m == 5 * (t - 1)
    assert time.time() - t0 < 60


def test_criterion_06_constants():
    assert abs(odd_cycle_constants(1)["r_l"] - 1 / math.sqrt(3)) < 1e-12
    assert abs(odd_cycle_constants(2)["r_l"] - 0.5257311) < 1e-6
    for l in range(1, 101):
        c = odd_cycle_constants(l)
        assert abs(c["upper_base"] - (1 + 1 / c["r_l"])) < 1e-12
    assert abs(C2 - 1.0746) < 1e-4


def test_criterion_07_star_polygons():
    for l in range(1, 51):
        assert star_polygon_embedding(l)[2] < 1e-10


@pytest.mark.parametrize("m,dim", [(3, 2), (5, 2), (5, 3), (7, 2), (7, 3)])
def test_criterion_08_circumradius(m, dim):
    t0 = time.time()
    res = min_circumradius_chain(m, dim, restarts=10, seed=0)
    elapsed = time.time() - t0
    r = odd_cycle_constants((m - 1) // 2)["r_l"]
    assert res.converged
    assert abs(res.radius - r) < 1e-4
    assert min(res.radii) >= r - 1e-4
    assert elapsed < 30


def test_criterion_09_plane_falsification():
    t0 = time.time()
    assert falsify(PlaneScheme("hex4", 2 / 3), "rhombus", 10 ** 6, seed=0) is None
    assert falsify(PlaneScheme("square4"), "rhombus", 10 ** 6, seed=0) is None
    strips = PlaneScheme("strips", math.sqrt(3) / 2)
    assert falsify(strips, "triangle", 10 ** 6, seed=0) is None
    w = falsify(strips, "path3", 10 ** 3, seed=0)
    assert w is not None and w.is_valid()
    stair = PlaneScheme("staircase", 1 + 3 / math.sqrt(2))
    assert falsify(stair, "box_copy(11)", 10 ** 4, seed=0) is None
    assert time.time() - t0 < 600


def test_criterion_10_hex_audit():
    r = tiling_audit(PlaneScheme("hex4", 2 / 3))
    assert abs(r["in_tile_diameter"] - 4 / 3) < 1e-12
    assert r["in_tile_diameter"] < math.sqrt(2)
    assert r["min_same_color_cross_tile"] > 1


def test_criterion_11_b3_and_exponent():
    t0 = time.time()
    assert abs(frankl_rodl_bound(5, 2, 5, 5, 2).value - 1 / (2 / 5 + 1 * 2 / 5)) < 1e-12
    assert abs(frankl_rodl_bound(3, 1, 3, 3, 1).value - 1 / (1 / 3 + 1 / 3)) < 1e-12
    r = exponent_optimize()
    assert abs(r["base"] - 1.0792) < 1e-3
    assert abs(r["kappa"] - 0.0453) < 2e-3
    assert time.time() - t0 < 1


def test_criterion_12_orthogonal_star():
    for d in range(1, 9):
        X = orthogonal_tree_unit_copy(gen.star(d), 1 / math.sqrt(2))
        for i, j in combinations(range(1, d + 1), 2):
            assert abs(np.linalg.norm(X[i] - X[j]) - 1) < 1e-12


def _brute_peel(S, threshold):
    slices = [s.vertices(S.base.n) for s in S.present_slices()]
    alive = set(range(S.n))
    while True:
        deg = dict.fromkeys(alive, 0)
        for vs in slices:
            if all(v in alive for v in vs):
                for v in vs:
                    deg[v] += 1
        drop = {v for v in alive if deg[v] < threshold}
        if not drop:
            return frozenset(alive)
        alive -= drop


def test_criterion_13_slice_machinery():
    rng = np.random.default_rng(13)
    bases = [K2, K3, P3, C4]
    for trial in range(100):
        base = bases[trial % len(bases)]
        N = int(rng.integers(1, 4))
        P = cartesian_power(base, N)
        keep = rng.uniform(0.4, 1.0)
        S = PowerSubgraph(base, N, [e for e in P.edges if rng.random() < keep])
        th = int(rng.integers(1, N + 1))
        ref = _brute_peel(S, th)
        assert peel_by_slice_degree(S, th) == ref
        for _ in range(3):
            assert peel_by_slice_degree(S, th, order=list(rng.permutation(S.n))) == ref
        c, t, f = slice_fraction(S)
        direct = sum(all(e in S.present for e in S.slice_edges(s)) for s in all_slices(base.n, N))
        assert (c, t, f) == (direct, N * base.n ** (N - 1), Fraction(direct, t))
    for base, N in ((K2, 3), (K3, 2), (K3, 3), (C4, 2)):
        S = PowerSubgraph.full(base, N)
        assert slice_fraction(S)[2] == 1
        one = S.without_edges([S.power.edges[0]])
        assert slice_fraction(one)[0] == N * base.n ** (N - 1) - 1
    embedded = 0
    for trial in range(60):
        base, N = ((K2, 4), (K3, 3))[trial % 2]
        P = cartesian_power(base, N)
        S = PowerSubgraph(base, N, [e for e in P.edges if rng.random() < 0.85])
        att, total = [None], base.n
        for _ in range(int(rng.integers(1, N))):
            att.append((int(rng.integers(total)), int(rng.integers(base.n))))
            total += base.n - 1
        try:
            fe = greedy_forest_embed(S, att, threshold=1)
        except InsufficientSliceDegree:
            continue
        embedded += 1
        assert len(set(fe.directions)) == len(fe.directions)
        assert is_copy(S.graph, fe.pattern, fe.embedding, induced=True)
    assert embedded > 0


def test_criterion_14_determinism(tmp_path):
    cmds = [
        ["arrow", "--graph", "K3*C4", "--family", "C4", "--r", "2", "--seed", "3", "--deterministic"],
        ["plane-falsify", "--scheme", "strips", "--config-kind", "path3", "--trials", "1000",
         "--seed", "7", "--deterministic"],
        ["bounds", "chain", "--m", "5", "--restarts", "3", "--seed", "1", "--deterministic"],
        ["mod3", "--N", "3", "--deterministic"],
    ]
    for argv in cmds:
        outs = [subprocess.run([sys.executable, "-m", "euclid_ramsey.cli", *argv],
                               capture_output=True, check=True).stdout for _ in range(2)]
        assert outs[0] and outs[0] == outs[1], argv
