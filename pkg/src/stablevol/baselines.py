"""Prior-art baselines: the statistical resampling method and reconstructed
shortest cycles from persistent cohomology.

The statistical method re-runs the whole pipeline on noise-perturbed copies
of the pointcloud and counts, per input point, how often it lies on the
boundary cycle of the matched pair's optimal volume. Reconstructed shortest
cycles cut the 1-skeleton along a representative cocycle and search the
shortest loop that re-crosses the cut.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import persistence as pers
from . import volopt
from .alpha import PointCloud, alpha_filtration
from .complexes import OrderWithLevel
from .dualtree import build_dual_graph, compute_tree, optimal_volume_tree
from .parallel import parallel_map
from .persistence import PersistencePair


@dataclass
class NoiseModel:
    """Uniform box noise; identical seed means identical perturbation stream."""

    half_width: float
    seed: int
    kind: str = "uniform-box"

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("noise half_width must be positive")
        if self.kind != "uniform-box":
            raise ValueError(f"unsupported noise kind {self.kind}")

    def perturb(self, points: np.ndarray, trial: int) -> np.ndarray:
        rng = np.random.default_rng([self.seed, trial])
        return points + rng.uniform(-self.half_width, self.half_width, points.shape)


@dataclass
class FrequencyMap:
    trials: int
    matched: int
    counts: np.ndarray  # per input point, over matched trials
    status: str = "ok"

    @property
    def frequencies(self) -> np.ndarray:
        if self.matched == 0:
            return np.zeros_like(self.counts, dtype=float)
        return self.counts / float(self.matched)


def _match_pair(diag: pers.Diagram, target: PersistencePair, radius: float):
    best = None
    best_d = math.inf
    for p in diag.finite():
        d = max(abs(p.birth_time - target.birth_time), abs(p.death_time - target.death_time))
        if d < best_d:
            best, best_d = p, d
    if best is None or best_d > radius:
        return None
    return best


def _boundary_vertices(order: OrderWithLevel, cells) -> set:
    from .complexes import boundary, chain_z2

    bnd = boundary(order.cx, chain_z2(cells, order.cx))
    verts = set()
    for sid in bnd.support():
        verts.update(order.cx.simplices[sid])
    return verts


def optimal_volume_cells(order: OrderWithLevel, pair: PersistencePair) -> set:
    """Optimal volume by the persistence tree when the pair has codimension 1,
    by the l1 program otherwise."""
    if pair.degree == order.cx.dim - 1:
        tree = compute_tree(build_dual_graph(order), order)
        for q in tree.pairs():
            if q.death_simplex == pair.death_simplex:
                return optimal_volume_tree(tree, q)
        raise ValueError("pair not found in the persistence tree")
    return volopt.solve_volume(order, pair, "optimal").cells


def statistical_frequencies(
    pc: PointCloud,
    target: PersistencePair,
    noise: NoiseModel,
    trials: int,
    threads: int = 1,
) -> FrequencyMap:
    """Per-point frequency of lying on the optimal volume-boundary across
    noise-perturbed recomputations.

    Each trial perturbs the cloud, recomputes the alpha filtration and its
    diagram, matches the target pair to the nearest pair in the l-inf metric
    (accepted within max(2 * half_width, 1e-6)), and marks the vertices of
    the matched pair's optimal volume boundary. Unmatched trials are excluded
    from the denominator and reported; a majority of unmatched trials flags
    the result with a warning status.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    radius = max(2.0 * noise.half_width, 1e-6)

    def one_trial(t: int):
        pts = noise.perturb(pc.points, t)
        filt = alpha_filtration(pts)
        pairs = pers.reduce(filt.order)
        diag = pers.diagram(pairs, filt.order, target.degree)
        hit = _match_pair(diag, target, radius)
        if hit is None:
            return None
        cells = optimal_volume_cells(filt.order, hit)
        return _boundary_vertices(filt.order, cells)

    results = parallel_map(one_trial, range(trials), threads)
    counts = np.zeros(len(pc), dtype=int)
    matched = 0
    for verts in results:
        if verts is None:
            continue
        matched += 1
        for v in verts:
            counts[v] += 1
    status = "ok"
    if trials - matched > trials / 2:
        status = f"warning: {trials - matched} of {trials} trials unmatched"
    return FrequencyMap(trials, matched, counts, status)


# ---------------------------------------------------------------------------
# reconstructed shortest cycles


@dataclass
class CycleLoop:
    edges: list  # simplex ids, consecutive, closing back to the start
    vertices: list  # loop vertex ids, len == len(edges)
    weight: float
    k_rank: int


@dataclass
class RscResult:
    loop: Optional[CycleLoop]
    status: str = "ok"
    candidates: int = 0


def reconstructed_shortest_cycle(
    o: OrderWithLevel,
    pair: PersistencePair,
    k_rank: Optional[int] = None,
    euclidean: bool = False,
    points=None,
    cocycle: Optional[set] = None,
) -> RscResult:
    """Tightest 1-cycle for a degree-1 pair at filtration step k.

    With C the representative cocycle of the pair, each edge of C present at
    step k proposes the loop (shortest path between its endpoints avoiding C)
    + (the edge itself); the lightest proposal wins. Weights are hop counts
    unless euclidean=True (needs points). A fully separating cut is reported
    via status="disconnected", not raised.
    """
    if pair.degree != 1:
        raise ValueError("reconstructed shortest cycles apply to degree-1 pairs only")
    if pair.essential:
        raise pers.StarPairError("essential pairs have no death index")
    if euclidean and points is None:
        raise ValueError("euclidean weights need point coordinates")
    if cocycle is None:
        _, cocycles = pers.cohomology_reduce(o)
        cocycle = cocycles[(pair.birth_rank, pair.death_rank)]
    if k_rank is None:
        k_rank = pair.death_rank - 1
    if not pair.birth_rank <= k_rank < pair.death_rank:
        raise ValueError(
            f"k must lie in [{pair.birth_rank}, {pair.death_rank}), got {k_rank}"
        )
    cx = o.cx
    present = [sid for sid in o.order[: k_rank + 1] if cx.dim_of(sid) == 1]
    cut = {sid for sid in cocycle}
    adj = {}
    for sid in present:
        if sid in cut:
            continue
        u, v = cx.simplices[sid]
        w = _edge_weight(cx, sid, euclidean, points)
        adj.setdefault(u, []).append((v, w, sid))
        adj.setdefault(v, []).append((u, w, sid))
    for lst in adj.values():
        lst.sort()
    best = None
    crossings = [sid for sid in present if sid in cut]
    for sid in crossings:
        u, v = cx.simplices[sid]
        path = _shortest_path(adj, u, v)
        if path is None:
            continue
        dist, edges, verts = path
        total = dist + _edge_weight(cx, sid, euclidean, points)
        loop_edges = edges + [sid]
        key = (total, tuple(sorted(loop_edges)))
        if best is None or key < best[0]:
            best = (key, CycleLoop(loop_edges, verts, total, k_rank))
    if best is None:
        return RscResult(None, "disconnected", len(crossings))
    return RscResult(best[1], "ok", len(crossings))


def _edge_weight(cx, sid, euclidean, points):
    if not euclidean:
        return 1.0
    u, v = cx.simplices[sid]
    return float(np.linalg.norm(np.asarray(points[u], float) - np.asarray(points[v], float)))


def _shortest_path(adj, src, dst):
    """Dijkstra with deterministic tie-breaking by vertex id."""
    dist = {src: 0.0}
    prev = {}
    heap = [(0.0, src)]
    seen = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in seen:
            continue
        seen.add(u)
        if u == dst:
            break
        for v, w, sid in adj.get(u, ()):
            nd = d + w
            if v not in dist or nd < dist[v] - 1e-15:
                dist[v] = nd
                prev[v] = (u, sid)
                heapq.heappush(heap, (nd, v))
    if dst not in seen:
        return None
    edges = []
    verts = []
    v = dst
    while v != src:
        u, sid = prev[v]
        edges.append(sid)
        verts.append(v)
        v = u
    verts.append(src)
    edges.reverse()
    verts.reverse()
    return dist[dst], edges, verts
