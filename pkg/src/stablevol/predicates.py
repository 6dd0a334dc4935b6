"""Exact-sign geometric predicates via a float filter with rational fallback.

Each predicate evaluates a small determinant in double precision together
with a running magnitude of the summed terms. When the result is safely
larger than the accumulated rounding error the float sign is returned;
otherwise the determinant is recomputed exactly over fractions. Inputs are
floats, so the fraction stage is exact, never heuristic.
"""

from __future__ import annotations

from fractions import Fraction

_EPS = 2.0 ** -52
# generous safety factors; too large only costs a rational re-evaluation
_ORIENT_GUARD = 32.0 * _EPS
_SPHERE_GUARD = 512.0 * _EPS


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def _det_exact(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def orient2d(pa, pb, pc) -> int:
    """Sign of det[b-a; c-a]: +1 when (a, b, c) is counterclockwise."""
    acx = pa[0] - pc[0]
    acy = pa[1] - pc[1]
    bcx = pb[0] - pc[0]
    bcy = pb[1] - pc[1]
    det = acx * bcy - acy * bcx
    mag = abs(acx * bcy) + abs(acy * bcx)
    if abs(det) > _ORIENT_GUARD * mag:
        return _sign(det)
    return _sign(_det_exact([[acx, acy], [bcx, bcy]]))


def orient3d(pa, pb, pc, pd) -> int:
    """Sign of det[b-a; c-a; d-a]."""
    adx = pb[0] - pa[0]
    ady = pb[1] - pa[1]
    adz = pb[2] - pa[2]
    bdx = pc[0] - pa[0]
    bdy = pc[1] - pa[1]
    bdz = pc[2] - pa[2]
    cdx = pd[0] - pa[0]
    cdy = pd[1] - pa[1]
    cdz = pd[2] - pa[2]
    t1 = adx * (bdy * cdz - bdz * cdy)
    t2 = ady * (bdx * cdz - bdz * cdx)
    t3 = adz * (bdx * cdy - bdy * cdx)
    det = t1 - t2 + t3
    mag = abs(t1) + abs(t2) + abs(t3)
    if abs(det) > _ORIENT_GUARD * mag:
        return _sign(det)
    return _sign(
        _det_exact(
            [[adx, ady, adz], [bdx, bdy, bdz], [cdx, cdy, cdz]]
        )
    )


def orient(points) -> int:
    """Orientation of d+1 points in dimension d (d = 2 or 3)."""
    if len(points) == 3:
        return orient2d(*points)
    if len(points) == 4:
        return orient3d(*points)
    raise ValueError(f"orientation needs 3 or 4 points, got {len(points)}")


def _lifted_rows(points, p):
    rows = []
    for v in points:
        diff = [v[i] - p[i] for i in range(len(p))]
        rows.append(diff + [sum(x * x for x in diff)])
    return rows


def _det_float(rows):
    # cofactor expansion along the first row; returns (value, magnitude)
    n = len(rows)
    if n == 1:
        return rows[0][0], abs(rows[0][0])
    if n == 2:
        a = rows[0][0] * rows[1][1]
        b = rows[0][1] * rows[1][0]
        return a - b, abs(a) + abs(b)
    det = 0.0
    mag = 0.0
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sub, submag = _det_float(minor)
        term = rows[0][j] * sub
        det += term if j % 2 == 0 else -term
        mag += abs(rows[0][j]) * submag
    return det, mag


def circumsphere_side(points, p) -> int:
    """+1 if p is strictly inside the circumsphere of the d+1 points, -1 if
    strictly outside, 0 if exactly on it. Raises on degenerate simplices."""
    d = len(p)
    o = orient(points)
    if o == 0:
        raise ValueError("degenerate simplex in circumsphere test")
    rows = _lifted_rows(points, p)
    det, mag = _det_float(rows)
    if abs(det) > _SPHERE_GUARD * mag:
        s = _sign(det)
    else:
        s = _sign(_det_exact(rows))
    # p inside  <=>  (-1)^(d+1) * det * orient < 0
    parity = -1 if (d + 1) % 2 else 1
    return -_sign(parity * s * o)


# ---------------------------------------------------------------------------
# symbolic jitter


_M64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def jittered_points(points, magnitude: float = 1e-9):
    """Deterministic symbolic jitter derived from the point index.

    Each coordinate is offset by a hash-derived value in
    [-magnitude, magnitude] times the bounding-box extent of that axis.
    Used only inside predicate evaluation; level computations keep the
    original coordinates.
    """
    pts = [tuple(map(float, p)) for p in points]
    if not pts:
        return []
    dim = len(pts[0])
    lo = [min(p[a] for p in pts) for a in range(dim)]
    hi = [max(p[a] for p in pts) for a in range(dim)]
    extent = [h - l if h > l else 1.0 for l, h in zip(lo, hi)]
    out = []
    for i, p in enumerate(pts):
        q = []
        for a in range(dim):
            u = _splitmix64(i * 7 + a + 1) / float(1 << 63) - 1.0  # in [-1, 1)
            q.append(p[a] + u * magnitude * extent[a])
        out.append(tuple(q))
    return out
