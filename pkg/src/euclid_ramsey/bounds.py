"""Odd-cycle radius constants, circumradius optimisation, Frankl-Rödl type
bounds, Johnson graph statistics and orthogonal tree embeddings."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParams, NotATree
from .graph import Graph

PSI = 1.239  # base of the best known exponential lower bound on χ(R^n); more digits unknown
C2 = (4 / 3) ** 0.25


# ---------------------------------------------------------------- odd cycles

def odd_cycle_constants(l: int) -> dict:
    """r_l = 1/(2cos(pi/(4l+2))), upper_base = 1 + 1/r_l, eps_l = 3 - upper_base."""
    if l < 1:
        raise BadParams("l must be >= 1")
    c = math.cos(math.pi / (4 * l + 2))
    r = 1 / (2 * c)
    upper = 1 + 2 * c
    return {"l": l, "r_l": r, "upper_base": upper, "eps_l": 3 - upper}


def star_polygon_embedding(l: int):
    """Vertices of {2l+1/l} on the circle of radius r_l.

    Returns (points, order, residual) where order lists the cycle i -> i+l
    (mod 2l+1) and residual is the largest deviation of a chord from 1.
    """
    if l < 1:
        raise BadParams("l must be >= 1")
    m = 2 * l + 1
    r = odd_cycle_constants(l)["r_l"]
    ang = 2 * np.pi * np.arange(m) / m
    pts = r * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    order = [(i * l) % m for i in range(m)]
    Y = pts[order]
    chords = np.linalg.norm(Y - np.roll(Y, -1, axis=0), axis=1)
    return pts, order, float(np.abs(chords - 1).max())


@dataclass
class ChainConfig:
    points: np.ndarray

    @property
    def m(self):
        return len(self.points)

    @property
    def dim(self):
        return self.points.shape[1]

    def residual(self):
        P = self.points
        return float(np.abs(np.linalg.norm(P - np.roll(P, -1, axis=0), axis=1) - 1).max())

    def radius(self):
        return float(np.linalg.norm(self.points, axis=1).max())

    def angles(self):
        """Turning angles between consecutive edges (diagnostic)."""
        D = np.roll(self.points, -1, axis=0) - self.points
        Dn = np.roll(D, -1, axis=0)
        cosang = np.sum(D * Dn, axis=1) / (np.linalg.norm(D, axis=1) * np.linalg.norm(Dn, axis=1))
        return np.arccos(np.clip(cosang, -1, 1))


@dataclass
class ChainResult:
    radius: float
    config: ChainConfig
    residual: float
    converged: bool
    radii: list = field(default_factory=list)

    def to_dict(self):
        return {"radius": self.radius, "residual": self.residual, "converged": self.converged,
                "radii": self.radii, "m": self.config.m, "dim": self.config.dim,
                "points": self.config.points.tolist()}


def _project_cycle(Y):
    """One cyclic sweep moving each consecutive pair to distance 1."""
    m = len(Y)
    for i in range(m):
        j = (i + 1) % m
        d = Y[j] - Y[i]
        n = np.linalg.norm(d)
        if n == 0:
            continue
        c = (n - 1) / 2 * d / n
        Y[i] += c
        Y[j] -= c


def _cycle_residual(Y):
    return float(np.abs(np.linalg.norm(Y - np.roll(Y, -1, axis=0), axis=1) - 1).max())


def _alternating(Y, iters, shrink):
    for _ in range(iters):
        _project_cycle(Y)
        Y -= Y.mean(axis=0)
        norms = np.linalg.norm(Y, axis=1)
        R = norms.max() * shrink
        big = norms > R
        Y[big] *= (R / norms[big])[:, None]
    return Y


def _polish(Y, tol):
    """Minimise t subject to unit cyclic distances and |y_i| <= t (SLSQP)."""
    from scipy.optimize import minimize

    m, dim = Y.shape
    x0 = np.append(Y.ravel(), np.linalg.norm(Y, axis=1).max())
    grad = np.zeros(len(x0))
    grad[-1] = 1.0

    def unit(x):
        P = x[:-1].reshape(m, dim)
        D = P - np.roll(P, -1, axis=0)
        return (D * D).sum(axis=1) - 1

    def ball(x):
        P = x[:-1].reshape(m, dim)
        return x[-1] ** 2 - (P * P).sum(axis=1)

    res = minimize(lambda x: x[-1], x0, jac=lambda x: grad, method="SLSQP",
                   constraints=[{"type": "eq", "fun": unit}, {"type": "ineq", "fun": ball}],
                   options={"ftol": 1e-14, "maxiter": 500})
    P = res.x[:-1].reshape(m, dim).copy()
    if not np.all(np.isfinite(P)):
        P = Y.copy()
    for _ in range(200):
        _project_cycle(P)
        if _cycle_residual(P) < tol:
            break
    return P


def min_circumradius_chain(m: int, dim: int, restarts=10, seed=0, iters=2000,
                           shrink=0.999, tol=1e-7) -> ChainResult:
    """Smallest max-norm of a closed chain y_0..y_{m-1} with unit steps.

    Each restart: alternating projections (unit-step sweep, recentre, pull the
    outermost points onto a slightly smaller sphere), then an SLSQP polish of
    the min-max formulation, then projection sweeps to restore feasibility.
    Best feasible restart wins (ties by restart index).
    """
    if m < 3 or m % 2 == 0:
        raise BadParams("m must be odd and >= 3")
    if dim < 2:
        raise BadParams("dim must be >= 2")
    children = np.random.SeedSequence(seed).spawn(restarts)
    best = None
    radii = []
    for ss in children:
        rng = np.random.default_rng(ss)
        Y = _alternating(rng.normal(size=(m, dim)), iters, shrink)
        P = _polish(Y, 1e-13)
        res = _cycle_residual(P)
        rad = float(np.linalg.norm(P, axis=1).max())
        radii.append(rad)
        key = (res >= tol, rad)
        if best is None or key < best[0]:
            best = (key, P, res, rad)
    _, P, res, rad = best
    return ChainResult(rad, ChainConfig(P), res, res < tol, radii)


# ---------------------------------------------------------------- Frankl-Rödl

@dataclass
class BoundReport:
    value: float
    alpha_ind_upper: float
    inputs: dict
    formula: str = "1/(aH/vH + (eH/vH)*(aG/vG))"

    def to_dict(self):
        return {"value": self.value, "alpha_ind_upper": self.alpha_ind_upper,
                "inputs": self.inputs, "formula": self.formula}


def frankl_rodl_bound(vG, aG, vH, eH, aH) -> BoundReport:
    """Colours needed on G□H so that no induced C_4 is monochromatic.

    Uses alpha_ind(G□H, C_4) <= vG*aH + eH*aG, giving
    value = (aH/vH + (eH/vH)(aG/vG))^{-1}.
    """
    for name, x in (("vG", vG), ("aG", aG), ("vH", vH), ("aH", aH)):
        if not x > 0:
            raise BadParams(f"{name} must be positive")
    if eH < 0:
        raise BadParams("eH must be >= 0")
    if aG > vG or aH > vH:
        raise BadParams("independence number exceeds vertex count")
    value = 1.0 / (aH / vH + (eH / vH) * (aG / vG))
    return BoundReport(value, vG * aH + eH * aG,
                       {"vG": vG, "aG": aG, "vH": vH, "eH": eH, "aH": aH})


def frankl_rodl_from_graphs(G: Graph, H: Graph, **kw) -> BoundReport:
    from .exact import independence_number

    return frankl_rodl_bound(G.n, independence_number(G, **kw), H.n, H.m,
                             independence_number(H, **kw))


def _is_prime(p):
    if p < 2:
        return False
    return all(p % q for q in range(2, int(math.isqrt(p)) + 1))


def johnson_stats(n: int, k: int, t: int) -> dict:
    if not (0 <= t < k <= n):
        raise BadParams(f"need t < k <= n, got {(n, k, t)}")
    V = math.comb(n, k)
    twoE = V * math.comb(k, t) * math.comb(n - k, k - t)
    E = twoE // 2
    fw = (2 * k <= n) and (2 * t <= k) and _is_prime(k - t)
    return {"V": V, "E": E, "alpha_upper": math.comb(n, k - t - 1), "fw_applicable": fw}


def _lnC(a, b):
    """n^{-1} ln C(an, bn) by Stirling: a ln a - b ln b - (a-b) ln(a-b)."""
    def xlx(x):
        return x * math.log(x) if x > 0 else 0.0
    return xlx(a) - xlx(b) - xlx(a - b)


def exponent_rate(kappa, psi=PSI):
    """ln of the reciprocal base: max of the two decay rates in the bound."""
    tau = kappa / 2
    r1 = _lnC(1, kappa - tau) - _lnC(1, kappa)              # alpha(H)/|V(H)|
    r2 = _lnC(kappa, tau) + _lnC(1 - kappa, kappa - tau) - math.log(psi)  # |E(H)|/|V(H)| * alpha(G)/|V(G)|
    return max(r1, r2)


def exponent_optimize(psi=PSI, xatol=1e-9) -> dict:
    """Best base over kappa = k/n in (0, 1/2) with t = k/2 (bounded Brent search)."""
    from scipy.optimize import minimize_scalar

    res = minimize_scalar(lambda k: exponent_rate(k, psi), bounds=(1e-6, 0.5),
                          method="bounded", options={"xatol": xatol})
    return {"base": math.exp(-res.fun), "kappa": float(res.x), "psi": psi}


# ---------------------------------------------------------------- orthogonal trees

def orthogonal_tree_unit_copy(tree: Graph, lengths) -> np.ndarray:
    """Points in R^{|E|}: root 0 at the origin, edge e along axis e scaled by lengths[e].

    Edges are indexed in the graph's sorted edge order.
    """
    n, m = tree.n, tree.m
    if m != n - 1:
        raise NotATree(f"{n} vertices but {m} edges")
    if np.isscalar(lengths):
        lengths = [float(lengths)] * m
    lengths = list(lengths)
    if len(lengths) != m or any(not L > 0 for L in lengths):
        raise BadParams("need one positive length per edge")
    eidx = {e: i for i, e in enumerate(tree.edges)}
    X = np.zeros((n, m))
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in tree.neighbors(v):
            if w in seen:
                continue
            seen.add(w)
            i = eidx[(min(v, w), max(v, w))]
            X[w] = X[v]
            X[w, i] += lengths[i]
            stack.append(w)
    if len(seen) != n:
        raise NotATree("graph is disconnected")
    return X
