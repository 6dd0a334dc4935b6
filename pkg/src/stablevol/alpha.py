"""Alpha filtrations of 2D/3D pointclouds.

Levels are circumradii (not squared radii): a simplex that is Gabriel (its
smallest circumsphere contains no other point strictly inside) enters at its
own circumradius, anything else inherits the smallest level among its
cofaces. Vertices enter at 0. Borderline sphere-membership decisions fall
back to exact rational arithmetic, so cocircular configurations such as unit
squares get exact levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .complexes import OrderWithLevel, SimplicialComplex, build_order
from .delaunay import DegenerateInputError, delaunay

_GABRIEL_BAND = 1e-9  # relative width of the float filter around the sphere


@dataclass
class PointCloud:
    dim: int
    points: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2 or self.points.shape[1] != self.dim:
            raise ValueError(f"expected shape (n, {self.dim})")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("non-finite coordinates in pointcloud")

    def __len__(self):
        return len(self.points)


def parse_pointcloud(text: str) -> PointCloud:
    """Whitespace- or comma-separated coordinates, one point per line.

    Dimension is inferred from the column count (2 or 3). Blank lines and
    lines starting with '#' are skipped.
    """
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        rows.append([float(x) for x in parts])
    if not rows:
        raise ValueError("empty pointcloud")
    width = {len(r) for r in rows}
    if len(width) != 1 or width.pop() not in (2, 3):
        raise ValueError("pointcloud rows must all have 2 or 3 columns")
    arr = np.array(rows, dtype=float)
    return PointCloud(arr.shape[1], arr)


def format_pointcloud(pc: PointCloud) -> str:
    return "\n".join(" ".join(repr(float(x)) for x in row) for row in pc.points) + "\n"


@dataclass
class AlphaFiltration:
    points: PointCloud
    cx: SimplicialComplex
    order: OrderWithLevel


def _circum_one(pts_row):
    V = np.asarray(pts_row, dtype=float)
    A = V[1:] - V[:1]
    G = 2.0 * A @ A.T
    g = np.einsum("kd,kd->k", A, A)
    lam = np.linalg.solve(G, g)
    cvec = lam @ A
    return V[0] + cvec, float(cvec @ cvec)


def _circum_batch(pts: np.ndarray, vert_lists: np.ndarray, huge_r2=None):
    """Circumcenters and squared circumradii of same-dimension simplices.

    Exactly degenerate simplices (affinely dependent vertices, possible in a
    jitter-resolved triangulation of degenerate inputs) get a sentinel radius
    far beyond the data scale: they can never be Gabriel, so they inherit
    their coface levels downstream, which is the correct limit behaviour.
    """
    V = pts[vert_lists]  # (m, k+1, d)
    A = V[:, 1:, :] - V[:, :1, :]  # (m, k, d)
    G = 2.0 * np.einsum("mkd,mld->mkl", A, A)
    g = np.einsum("mkd,mkd->mk", A, A)
    try:
        lam = np.linalg.solve(G, g[..., None])[..., 0]
    except np.linalg.LinAlgError:
        centers = np.empty((len(vert_lists), pts.shape[1]))
        r2 = np.empty(len(vert_lists))
        for j, verts in enumerate(vert_lists):
            try:
                centers[j], r2[j] = _circum_one(pts[verts])
            except np.linalg.LinAlgError:
                if huge_r2 is None:
                    raise DegenerateInputError(
                        "affinely dependent simplex vertices; circumsphere undefined"
                    )
                centers[j] = pts[verts].mean(axis=0)
                r2[j] = huge_r2
        return centers, r2
    cvec = np.einsum("mk,mkd->md", lam, A)
    centers = V[:, 0, :] + cvec
    r2 = np.einsum("md,md->m", cvec, cvec)
    return centers, r2


def _circum_exact(verts_pts):
    """Exact circumcenter and squared circumradius over fractions."""
    v0 = [Fraction(x) for x in verts_pts[0]]
    A = [[Fraction(x) - b for x, b in zip(v, v0)] for v in verts_pts[1:]]
    k = len(A)
    G = [[2 * sum(A[i][t] * A[j][t] for t in range(len(v0))) for j in range(k)] for i in range(k)]
    g = [sum(x * x for x in A[i]) for i in range(k)]
    # gaussian elimination with exact pivots
    for col in range(k):
        piv = next((r for r in range(col, k) if G[r][col] != 0), None)
        if piv is None:
            raise DegenerateInputError("exactly degenerate simplex")
        if piv != col:
            G[col], G[piv] = G[piv], G[col]
            g[col], g[piv] = g[piv], g[col]
        for r in range(col + 1, k):
            if G[r][col] != 0:
                f = G[r][col] / G[col][col]
                for c in range(col, k):
                    G[r][c] -= f * G[col][c]
                g[r] -= f * g[col]
    lam = [Fraction(0)] * k
    for r in range(k - 1, -1, -1):
        acc = g[r] - sum(G[r][c] * lam[c] for c in range(r + 1, k))
        lam[r] = acc / G[r][r]
    cvec = [sum(lam[i] * A[i][t] for i in range(k)) for t in range(len(v0))]
    center = [b + c for b, c in zip(v0, cvec)]
    r2 = sum(c * c for c in cvec)
    return center, r2


def alpha_levels(cx: SimplicialComplex, points) -> list:
    """Alpha level per simplex id for a Delaunay complex of the points."""
    pts = np.asarray(points, dtype=float)
    spread = float(((pts.max(axis=0) - pts.min(axis=0)) ** 2).sum())
    huge_r2 = 1e12 * (spread + 1.0)
    n = cx.dim
    levels = [0.0] * len(cx)
    centers = {}
    r2s = {}
    for k in range(1, n + 1):
        ids = cx.ids_of_dim(k)
        if not ids:
            continue
        vl = np.array([cx.simplices[i] for i in ids], dtype=int)
        cs, r2 = _circum_batch(pts, vl, huge_r2=huge_r2)
        for j, sid in enumerate(ids):
            centers[sid] = cs[j]
            r2s[sid] = r2[j]
    for k in range(n, 0, -1):
        for sid in cx.ids_of_dim(k):
            if k == n or _is_gabriel(cx, pts, sid, centers[sid], r2s[sid]):
                levels[sid] = math.sqrt(max(r2s[sid], 0.0))
            else:
                levels[sid] = min(levels[c] for c in cx.cofaces[sid])
    # clamp float noise so level(face) <= level(coface) holds exactly
    for k in range(n - 1, -1, -1):
        for sid in cx.ids_of_dim(k):
            if cx.cofaces[sid]:
                cap = min(levels[c] for c in cx.cofaces[sid])
                if levels[sid] > cap:
                    levels[sid] = cap
    return levels


def _is_gabriel(cx, pts, sid, center, r2) -> bool:
    """True iff no other input point lies strictly inside the circumball."""
    verts = cx.simplices[sid]
    d2 = ((pts - center) ** 2).sum(axis=1)
    band = _GABRIEL_BAND * (d2 + r2 + 1e-300)
    inside = d2 < r2 - band
    unsure = np.abs(d2 - r2) <= band
    mask = np.ones(len(pts), dtype=bool)
    mask[list(verts)] = False
    if np.any(inside & mask):
        return False
    border = np.nonzero(unsure & mask)[0]
    if len(border) == 0:
        return True
    ec, er2 = _circum_exact([pts[v] for v in verts])
    for i in border:
        dd = sum((Fraction(x) - c) ** 2 for x, c in zip(pts[i], ec))
        if dd < er2:
            return False
    return True


def alpha_filtration(points) -> AlphaFiltration:
    """Delaunay complex + alpha levels + total order, from a pointcloud."""
    if isinstance(points, PointCloud):
        pc = points
    else:
        arr = np.asarray(points, dtype=float)
        pc = PointCloud(arr.shape[1], arr)
    cx = delaunay(pc.points, pc.dim)
    levels = alpha_levels(cx, pc.points)
    order = build_order(cx, levels)
    return AlphaFiltration(pc, cx, order)
