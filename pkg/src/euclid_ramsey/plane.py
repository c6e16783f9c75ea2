"""Colourings of the plane, configuration samplers and falsification.

All colour functions are total: every point of R^2 gets exactly one colour,
with boundaries assigned by half-open rules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import BadParams, UnsupportedScheme

SQRT3 = math.sqrt(3.0)
STRIP_WIDTH = SQRT3 / 2
STAIR_RUN = 1 + 3 / math.sqrt(2)
HEX_SIDE = 2 / 3

# tile colour by (i mod 4, j mod 2)
HEX_TABLE = np.array([[0, 1], [2, 3], [1, 0], [3, 2]], dtype=np.int64)
PALETTE = ["#B2B2FF", "#4747AF", "#D25353", "#FFCCCC", "#7FBF7F", "#F2C94C", "#555555"]


@dataclass(frozen=True)
class PlaneScheme:
    kind: str
    param: Optional[float] = None

    def __post_init__(self):
        k, p = self.kind, self.param
        if k == "strips":
            if p is None:
                object.__setattr__(self, "param", STRIP_WIDTH)
            elif not p > 0:
                raise BadParams("strip width must be > 0")
        elif k == "staircase":
            if p is None:
                object.__setattr__(self, "param", STAIR_RUN)
            elif not p > 1:
                raise BadParams("staircase run must be > 1")
        elif k == "hex4":
            if p is None:
                object.__setattr__(self, "param", HEX_SIDE)
            elif not (1 / SQRT3 < p < 1 / math.sqrt(2)):
                raise BadParams(f"hex side {p} outside (1/sqrt3, 1/sqrt2)")
        elif k == "square4":
            if p is not None:
                raise BadParams("square4 takes no parameter")
        else:
            raise BadParams(f"unknown scheme {k!r}")

    @property
    def num_colors(self):
        return 2 if self.kind in ("strips", "staircase") else 4

    def colors(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if self.kind == "strips":
            return np.floor(y / self.param).astype(np.int64) % 2
        if self.kind == "square4":
            return 2 * (np.floor(x).astype(np.int64) % 2) + np.floor(y).astype(np.int64) % 2
        if self.kind == "staircase":
            return staircase_index(x, y, self.param) % 2
        return HEX_TABLE[hex_tile(x, y, self.param)]

    def to_dict(self):
        return {"kind": self.kind, "param": self.param}


def color_at(scheme: PlaneScheme, p) -> int:
    return int(scheme.colors(np.array([p[0]]), np.array([p[1]]))[0])


def stair_boundary(k, x, lam):
    """b_k(x) = -k - lam*floor((x+k)/lam); boundary k is boundary k-1 moved by (-1,-1)."""
    return -k - lam * np.floor((x + k) / lam)


def staircase_index(x, y, lam) -> np.ndarray:
    """The k with b_k(x) <= y < b_{k-1}(x); the lower boundary belongs to its staircase.

    b_k is strictly decreasing in k and -x-2k < b_k(x) <= -x-2k+lam, so k lies in
    ((-x-y)/2, (lam-x-y)/2]; we scan upward for the first k with b_k <= y.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = np.floor((-x - y) / 2).astype(np.int64)  # b_k > y may or may not hold here
    out = np.full(x.shape, np.iinfo(np.int64).min, dtype=np.int64)
    todo = np.ones(x.shape, dtype=bool)
    for step in range(int(math.ceil(lam / 2)) + 4):
        kk = k + step
        hit = todo & (stair_boundary(kk, x, lam) <= y)
        out[hit] = kk[hit]
        todo &= ~hit
        if not todo.any():
            break
    if todo.any():
        raise RuntimeError("staircase search failed")
    return out


def hex_center(i, j, a):
    return i * 1.5 * a, j * a * SQRT3 + (np.asarray(i) % 2) * a * SQRT3 / 2


def _in_hex(dx, dy, a):
    h = a * SQRT3 / 2
    return (np.abs(dy) <= h) & (SQRT3 * np.abs(dx) + np.abs(dy) <= a * SQRT3)


def hex_tile(x, y, a):
    """(i mod 4, j mod 2) of the tile containing (x,y): the lexicographically
    least (i,j) among the closed hexagons containing the point."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    i0 = np.round(x / (1.5 * a)).astype(np.int64)
    bi = np.full(x.shape, 0, dtype=np.int64)
    bj = np.full(x.shape, 0, dtype=np.int64)
    todo = np.ones(x.shape, dtype=bool)
    best_d = np.full(x.shape, np.inf)
    fi = np.zeros(x.shape, dtype=np.int64)
    fj = np.zeros(x.shape, dtype=np.int64)
    for di in (-1, 0, 1):
        i = i0 + di
        j0 = np.round((y - (i % 2) * a * SQRT3 / 2) / (a * SQRT3)).astype(np.int64)
        for dj in (-1, 0, 1):
            j = j0 + dj
            cx, cy = hex_center(i, j, a)
            dx, dy = x - cx, y - cy
            inside = todo & _in_hex(dx, dy, a)
            bi[inside] = i[inside]
            bj[inside] = j[inside]
            todo &= ~inside
            d = dx * dx + dy * dy
            closer = d < best_d
            best_d[closer] = d[closer]
            fi[closer] = i[closer]
            fj[closer] = j[closer]
    # rounding-level misses fall back to the nearest centre
    bi[todo] = fi[todo]
    bj[todo] = fj[todo]
    return bi % 4, bj % 2


# ---------------------------------------------------------------- RNG

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def splitmix64(z):
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = z + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def trial_seeds(seed: int, trials) -> np.ndarray:
    """Per-trial seed mix(seed, t); independent of chunking and scheduling."""
    s = splitmix64(np.uint64(seed % 2 ** 64))
    return splitmix64(s ^ np.asarray(trials, dtype=np.uint64))


def uniforms(tseeds, count) -> np.ndarray:
    """(len(tseeds), count) doubles in [0,1) from counter-mode splitmix64."""
    ts = np.asarray(tseeds, dtype=np.uint64)[:, None]
    ctr = np.arange(1, count + 1, dtype=np.uint64)[None, :]
    with np.errstate(over="ignore"):
        z = splitmix64(ts + ctr * _GOLDEN)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0 ** -53


# ---------------------------------------------------------------- configurations

KINDS = ("triangle", "rhombus", "path3", "box_copy")
RHOMBUS_DELTA = 1e-3


def _subset_matrix(d):
    S = np.arange(2 ** d)[:, None]
    return ((S >> np.arange(d)[None, :]) & 1).astype(float)


def sample_batch(kind, seed, trials, window=50.0, d=11):
    """Points (T, k, 2) plus generator data (base (T,2), vectors (T,m,2))."""
    trials = np.asarray(trials)
    ts = trial_seeds(seed, trials)
    if kind == "triangle":
        U = uniforms(ts, 3)
        base = (2 * U[:, :2] - 1) * window
        th = 2 * np.pi * U[:, 2]
        angs = np.stack([th, th + np.pi / 3], axis=1)
    elif kind == "rhombus":
        U = uniforms(ts, 4)
        base = (2 * U[:, :2] - 1) * window
        th = 2 * np.pi * U[:, 2]
        alpha = RHOMBUS_DELTA + (np.pi - 2 * RHOMBUS_DELTA) * U[:, 3]
        angs = np.stack([th, th + alpha], axis=1)
    elif kind == "path3":
        U = uniforms(ts, 4)
        base = (2 * U[:, :2] - 1) * window
        angs = 2 * np.pi * U[:, 2:4]
    elif kind == "box_copy":
        U = uniforms(ts, 2 + d)
        base = (2 * U[:, :2] - 1) * window
        angs = 2 * np.pi * U[:, 2:]
    else:
        raise BadParams(f"unknown configuration kind {kind!r}")
    vec = np.stack([np.cos(angs), np.sin(angs)], axis=-1)  # (T, m, 2)
    if kind == "triangle":
        pts = np.stack([base, base + vec[:, 0], base + vec[:, 1]], axis=1)
    elif kind == "rhombus":
        pts = np.stack([base, base + vec[:, 0], base + vec[:, 0] + vec[:, 1], base + vec[:, 1]], axis=1)
    elif kind == "path3":
        pts = np.stack([base + vec[:, 0], base, base + vec[:, 1]], axis=1)
    else:
        M = _subset_matrix(d)
        pts = base[:, None, :] + np.einsum("sd,tdc->tsc", M, vec)
    return pts, base, vec


@dataclass
class ConfigWitness:
    kind: str
    points: np.ndarray
    base: np.ndarray
    vectors: np.ndarray
    seed: int = 0
    trial: int = 0
    color: Optional[int] = None
    d: int = field(default=0)

    def unit_pairs(self):
        """Index pairs that must be at distance 1."""
        k = self.kind
        if k == "triangle":
            return [(0, 1), (1, 2), (0, 2)]
        if k == "rhombus":
            return [(0, 1), (1, 2), (2, 3), (3, 0)]
        if k == "path3":
            return [(0, 1), (1, 2)]
        n = len(self.points)
        return [(s, s | (1 << i)) for s in range(n) for i in range(self.d) if not s >> i & 1]

    def max_residual(self):
        P = self.points
        res = max(abs(float(np.linalg.norm(P[i] - P[j])) - 1) for i, j in self.unit_pairs())
        if self.kind == "box_copy":
            M = _subset_matrix(self.d)
            res = max(res, float(np.abs(P - (self.base + M @ self.vectors)).max()))
        return res

    def is_valid(self, tol=1e-12):
        return self.max_residual() <= tol

    def to_dict(self):
        return {"kind": self.kind, "seed": self.seed, "trial": self.trial, "color": self.color,
                "base": self.base.tolist(), "vectors": self.vectors.tolist(),
                "points": self.points.tolist() if self.kind != "box_copy" else None,
                "max_residual": self.max_residual()}


def _kind_d(kind):
    if kind.startswith("box_copy"):
        if "(" in kind:
            return "box_copy", int(kind[kind.index("(") + 1:kind.index(")")])
        return "box_copy", 11
    return kind, 0


def sample_config(kind, seed=0, trial=0, window=50.0, d=None) -> ConfigWitness:
    kind, dd = _kind_d(kind)
    d = d or dd or 11
    pts, base, vec = sample_batch(kind, seed, [trial], window, d)
    return ConfigWitness(kind, pts[0], base[0], vec[0], seed, trial, None,
                         d if kind == "box_copy" else 0)


def falsify(scheme: PlaneScheme, kind, trials: int, seed=0, window=50.0, d=None,
            chunk=None) -> Optional[ConfigWitness]:
    """First monochromatic configuration among `trials` samples, or None."""
    kind, dd = _kind_d(kind)
    d = d or dd or 11
    if trials < 1:
        raise BadParams("trials must be >= 1")
    if chunk is None:
        npts = {"triangle": 3, "rhombus": 4, "path3": 3}.get(kind, 2 ** d)
        chunk = max(1, min(200000, 2_000_000 // npts))
    for start in range(0, trials, chunk):
        idx = np.arange(start, min(trials, start + chunk), dtype=np.uint64)
        pts, base, vec = sample_batch(kind, seed, idx, window, d)
        col = scheme.colors(pts[..., 0], pts[..., 1])
        mono = np.all(col == col[:, :1], axis=1)
        if mono.any():
            t = int(np.argmax(mono))
            w = ConfigWitness(kind, pts[t], base[t], vec[t], seed, int(idx[t]), int(col[t, 0]),
                              d if kind == "box_copy" else 0)
            # re-check independently of the vectorised path
            cs = {color_at(scheme, p) for p in w.points}
            if len(cs) != 1 or not w.is_valid():
                raise RuntimeError(f"witness at trial {w.trial} failed re-verification")
            return w
    return None


# ---------------------------------------------------------------- tiling audit

def hex_polygon(i, j, a):
    from shapely.geometry import Polygon

    cx, cy = hex_center(i, j, a)
    pts = [(cx + a * math.cos(math.pi / 3 * t), cy + a * math.sin(math.pi / 3 * t)) for t in range(6)]
    return Polygon(pts)


def tiling_audit(scheme: PlaneScheme, radius=5) -> dict:
    """In-tile diameter and least distance between distinct same-coloured closed tiles."""
    from shapely.geometry import box

    if scheme.kind == "hex4":
        a = scheme.param
        P0 = hex_polygon(0, 0, a)
        c0 = HEX_TABLE[0, 0]
        best, arg = math.inf, None
        for i in range(-radius, radius + 1):
            for j in range(-radius, radius + 1):
                if (i, j) == (0, 0) or HEX_TABLE[i % 4, j % 2] != c0:
                    continue
                dist = P0.distance(hex_polygon(i, j, a))
                if dist < best:
                    best, arg = dist, (i, j)
        verts = list(P0.exterior.coords)[:-1]
        diam = max(math.dist(p, q) for p in verts for q in verts)
        return {"scheme": scheme.to_dict(), "in_tile_diameter": diam,
                "min_same_color_cross_tile": best, "closest_tile_offset": list(arg),
                "diameter_attained_only_on_excluded_boundary": False,
                "cross_attained_only_on_excluded_boundary": False,
                "diameter_below_sqrt2": diam < math.sqrt(2), "cross_above_1": best > 1}
    if scheme.kind == "square4":
        T0 = box(0, 0, 1, 1)
        best, arg = math.inf, None
        for i in range(-radius, radius + 1):
            for j in range(-radius, radius + 1):
                if (i, j) == (0, 0) or (i % 2, j % 2) != (0, 0):
                    continue
                dist = T0.distance(box(i, j, i + 1, j + 1))
                if dist < best:
                    best, arg = dist, (i, j)
        # closed-tile extremes sit on the right/top sides, which [0,1)^2 excludes,
        # so the half-open values are strict: diameter < sqrt2, cross distance > 1
        return {"scheme": scheme.to_dict(), "in_tile_diameter": math.sqrt(2),
                "min_same_color_cross_tile": best, "closest_tile_offset": list(arg),
                "diameter_attained_only_on_excluded_boundary": True,
                "cross_attained_only_on_excluded_boundary": True,
                "diameter_below_sqrt2": True, "cross_above_1": True}
    raise UnsupportedScheme(f"tiling audit needs hex4 or square4, got {scheme.kind}")


# ---------------------------------------------------------------- rendering

def render_svg(scheme: PlaneScheme, bbox=(0.0, 0.0, 8.0, 8.0), cells=200, path=None) -> str:
    """Raster-style SVG: one rect per cell, coloured at the cell centre."""
    if cells < 1:
        raise BadParams("cells must be >= 1")
    x0, y0, x1, y1 = bbox
    w, h = (x1 - x0) / cells, (y1 - y0) / cells
    xs = x0 + (np.arange(cells) + 0.5) * w
    ys = y0 + (np.arange(cells) + 0.5) * h
    X, Y = np.meshgrid(xs, ys)
    C = scheme.colors(X, Y)
    px = 600.0 / cells
    out = ['<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600" '
           'viewBox="0 0 600 600">']
    for r in range(cells):
        row = cells - 1 - r  # y axis points up
        for c in range(cells):
            out.append(f'<rect x="{c * px:.4f}" y="{row * px:.4f}" width="{px:.4f}" '
                       f'height="{px:.4f}" fill="{PALETTE[int(C[r, c]) % len(PALETTE)]}"/>')
    out.append("</svg>")
    doc = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(doc)
    return doc
