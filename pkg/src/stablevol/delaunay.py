"""Incremental Bowyer-Watson Delaunay triangulation in 2D and 3D.

The triangulation keeps ghost cells through a single vertex at infinity, so
hull growth needs no special casing: a ghost cell conflicts with a point
exactly when the point lies strictly outside its hull facet. All predicate
decisions run on deterministically jittered coordinates with exact signs, so
the combinatorics are those of a genuinely general-position pointcloud. A
predicate that still evaluates to zero raises DegenerateInputError.
"""

from __future__ import annotations

from .complexes import SimplicialComplex
from .predicates import circumsphere_side, jittered_points, orient

INFINITE = -1


class DegenerateInputError(ValueError):
    pass


class _Triangulation:
    def __init__(self, pts, dim):
        self.pts = pts  # jittered coordinates
        self.dim = dim
        self.verts = {}  # cell id -> tuple of d+1 vertex ids (INFINITE allowed)
        self.nbrs = {}  # cell id -> list of d+1 cell ids, nbrs[k] opposite verts[k]
        self.next_id = 0
        self.hint = None

    def _new_cell(self, verts):
        cid = self.next_id
        self.next_id += 1
        self.verts[cid] = tuple(verts)
        self.nbrs[cid] = [None] * (self.dim + 1)
        return cid

    def _coords(self, vid):
        return self.pts[vid]

    def _orient_ids(self, vids):
        return orient([self._coords(v) for v in vids])

    def _conflict(self, cell, p):
        verts = self.verts[cell]
        if INFINITE in verts:
            k = verts.index(INFINITE)
            facet = verts[:k] + verts[k + 1 :]
            inner = self.nbrs[cell][k]  # finite cell across the hull facet
            w = next(v for v in self.verts[inner] if v not in facet)
            s_p = self._orient_ids(facet + (p,))
            s_w = self._orient_ids(facet + (w,))
            if s_p == 0 or s_w == 0:
                raise DegenerateInputError(
                    f"point {p} is coplanar with hull facet {facet} after jitter"
                )
            return s_p != s_w
        side = circumsphere_side([self._coords(v) for v in verts], self._coords(p))
        if side == 0:
            raise DegenerateInputError(
                f"point {p} is cospherical with cell {verts} after jitter"
            )
        return side > 0

    def _locate(self, p):
        cell = self.hint
        if cell is None or cell not in self.verts:
            cell = next(iter(self.verts))
        if INFINITE in self.verts[cell]:
            cell = self.nbrs[cell][self.verts[cell].index(INFINITE)]
        limit = 4 * len(self.verts) + 64
        for _ in range(limit):
            verts = self.verts[cell]
            moved = False
            for k, v in enumerate(verts):
                facet = verts[:k] + verts[k + 1 :]
                s_p = self._orient_ids(facet + (p,))
                if s_p == 0:
                    raise DegenerateInputError(
                        f"point {p} degenerate against facet {facet} after jitter"
                    )
                if s_p != self._orient_ids(facet + (v,)):
                    nb = self.nbrs[cell][k]
                    if INFINITE in self.verts[nb]:
                        return nb  # p is outside the hull through this facet
                    cell = nb
                    moved = True
                    break
            if not moved:
                return cell
        # visibility walks terminate on Delaunay triangulations; this fallback
        # is pure defensive programming
        for cid in sorted(self.verts):
            if self._conflict(cid, p):
                return cid
        raise DegenerateInputError(f"no conflict cell found for point {p}")

    def insert(self, p):
        start = self._locate(p)
        status = {start: True}
        region = [start]
        stack = [start]
        boundary = []
        while stack:
            c = stack.pop()
            for k, nb in enumerate(self.nbrs[c]):
                hit = status.get(nb)
                if hit is None:
                    hit = self._conflict(nb, p)
                    status[nb] = hit
                    if hit:
                        region.append(nb)
                        stack.append(nb)
                if not hit:
                    boundary.append((c, k))
        ridge_map = {}
        created = []
        d = self.dim
        for c, k in boundary:
            verts = self.verts[c]
            facet = verts[:k] + verts[k + 1 :]
            outside = self.nbrs[c][k]
            nid = self._new_cell(facet + (p,))
            self.nbrs[nid][d] = outside
            self.nbrs[outside][self.nbrs[outside].index(c)] = nid
            for j, u in enumerate(facet):
                key = frozenset(facet) - {u}
                other = ridge_map.pop(key, None)
                if other is None:
                    ridge_map[key] = (nid, j)
                else:
                    oid, oj = other
                    self.nbrs[nid][j] = oid
                    self.nbrs[oid][oj] = nid
            created.append(nid)
        if ridge_map:
            raise DegenerateInputError("cavity boundary is not closed")
        for c in region:
            del self.verts[c]
            del self.nbrs[c]
        self.hint = created[-1]


def _initial_cells(tri: _Triangulation, seed_ids):
    d = tri.dim
    if tri._orient_ids(tuple(seed_ids)) == 0:
        raise DegenerateInputError(
            f"first {d + 1} insertion points are affinely dependent after jitter"
        )
    c0 = tri._new_cell(tuple(seed_ids))
    ghosts = []
    for k in range(d + 1):
        facet = tuple(seed_ids[:k] + seed_ids[k + 1 :])
        g = tri._new_cell(facet + (INFINITE,))
        tri.nbrs[g][d] = c0
        tri.nbrs[c0][k] = g
        ghosts.append((g, facet))
    # ghost-ghost adjacency along hull ridges
    for g, facet in ghosts:
        for j, u in enumerate(facet):
            ridge = frozenset(facet) - {u} | {INFINITE}
            for g2, facet2 in ghosts:
                if g2 != g and ridge <= set(facet2) | {INFINITE}:
                    tri.nbrs[g][j] = g2
                    break


def delaunay(points, dim=None) -> SimplicialComplex:
    """Delaunay complex of a 2D/3D pointcloud as a SimplicialComplex.

    Vertex ids are input point indices. Insertion follows coordinate-sorted
    order for determinism and walk locality.
    """
    pts = [tuple(map(float, p)) for p in points]
    if dim is None:
        dim = len(pts[0])
    if dim not in (2, 3):
        raise ValueError(f"only 2D and 3D pointclouds are supported, got dim {dim}")
    if len(pts) < dim + 1:
        raise DegenerateInputError(
            f"need at least {dim + 1} points for a {dim}D triangulation"
        )
    for p in pts:
        if len(p) != dim or any(x != x or x in (float("inf"), float("-inf")) for x in p):
            raise ValueError(f"bad coordinates {p}")
    jit = jittered_points(pts)
    tri = _Triangulation(jit, dim)
    insertion = sorted(range(len(pts)), key=lambda i: pts[i])
    _initial_cells(tri, list(insertion[: dim + 1]))
    for p in insertion[dim + 1 :]:
        tri.insert(p)
    top = [
        tuple(sorted(v)) for v in tri.verts.values() if INFINITE not in v
    ]
    return SimplicialComplex(top, closure=True)
