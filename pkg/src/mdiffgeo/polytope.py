"""Exact polytope kernel: hulls, volumes, representation conversions.

Coordinates are ``Fraction`` throughout.  The convex hull is an
incremental beneath-beyond over integer-scaled points: the common
denominator of all coordinates is cleared once, every predicate after
that is integer arithmetic (hyperplane normals come from fraction-free
cofactor determinants), and points are inserted in lexicographic order
so each genuinely new point lies strictly outside the prefix hull.  The
boundary is kept triangulated; coplanar simplicial facets are merged
only when the irredundant H-representation is extracted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm

from . import linalg
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    EmptyInput,
    OriginNotInterior,
    Unbounded,
)
from .linalg import Vec, dot, int_rank, vadd, vsub
from .lp import lp_feasible

ZERO = Fraction(0)
ONE = Fraction(1)

Halfspace = tuple[Vec, Fraction]  # <normal, x> <= offset


@dataclass(frozen=True)
class VPolytope:
    """Bounded convex polytope as its (canonical) extreme points.

    ``vertices`` are lexicographically sorted, so equality of canonical
    polytopes is plain dataclass equality.
    """

    dim: int
    vertices: tuple[Vec, ...]

    def __post_init__(self):
        if not self.vertices:
            raise EmptyInput("polytope needs at least one vertex")
        for v in self.vertices:
            if len(v) != self.dim:
                raise DimensionMismatch("vertex/dim mismatch")

    def translate(self, t: Vec) -> "VPolytope":
        return VPolytope(self.dim, tuple(sorted(vadd(v, t) for v in self.vertices)))

    def scale(self, c) -> "VPolytope":
        c = Fraction(c)
        return VPolytope(self.dim, tuple(sorted(tuple(c * x for x in v) for v in self.vertices)))

    def negate(self) -> "VPolytope":
        return VPolytope(self.dim, tuple(sorted(tuple(-x for x in v) for v in self.vertices)))

    def support(self, u) -> Fraction:
        return max(dot(u, v) for v in self.vertices)

    def is_origin_symmetric(self) -> bool:
        vs = set(self.vertices)
        return all(tuple(-x for x in v) in vs for v in vs)


@dataclass(frozen=True)
class HPolytope:
    """Convex polyhedron as irredundant halfspaces <a, x> <= b."""

    dim: int
    halfspaces: tuple[Halfspace, ...]
    bounded: bool = True

    def __post_init__(self):
        for a, _ in self.halfspaces:
            if len(a) != self.dim:
                raise DimensionMismatch("halfspace/dim mismatch")

    def contains(self, x) -> bool:
        return all(dot(a, x) <= b for a, b in self.halfspaces)

    def interior_contains(self, x) -> bool:
        return all(dot(a, x) < b for a, b in self.halfspaces)


def canonical_halfspace(a, b) -> Halfspace:
    """Scale so the normal is a primitive integer vector."""
    fracs = tuple(Fraction(x) for x in a)
    mult = lcm(*(f.denominator for f in fracs))
    ints = [int(f * mult) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise DegenerateInput("zero normal vector")
    scale = Fraction(mult, g)
    return tuple(f * scale for f in fracs), Fraction(b) * scale


# ---------------------------------------------------------------------------
# incremental hull over integer points


class _Hull:
    """Triangulated boundary of conv(points) with exact integer predicates."""

    def __init__(self, points: list[Vec], dim: int):
        self.dim = dim
        self.points_frac = points
        ints, self.scale = linalg.clear_denominators(points)
        self.pts = ints
        if dim == 1:
            self._build_1d()
        else:
            self._build(ints, dim)

    # -- 1-D special case ---------------------------------------------------

    def _build_1d(self):
        vals = sorted({p[0] for p in self.pts})
        if len(vals) < 2:
            raise DegenerateInput("affine hull has dimension < 1")
        lo, hi = vals[0], vals[-1]
        self.facets = []  # unused in 1-D
        self._volume = Fraction(hi - lo, self.scale)
        self._centroid = (Fraction(lo + hi, 2 * self.scale),)
        self.facet_planes = [((1,), Fraction(hi, self.scale)), ((-1,), Fraction(-lo, self.scale))]
        self.vertex_points = [(Fraction(lo, self.scale),), (Fraction(hi, self.scale),)]
        self.vertex_points.sort()

    # -- general case ---------------------------------------------------------

    def _build(self, pts, d):
        import numpy as np

        order = sorted(range(len(pts)), key=lambda i: pts[i])
        uniq = [order[0]]
        for i in order[1:]:
            if pts[i] != pts[uniq[-1]]:
                uniq.append(i)
        basis = self._affine_basis(pts, uniq, d)
        if basis is None:
            raise DegenerateInput(f"affine hull has dimension < {d}")
        cprime = tuple(sum(pts[i][j] for i in basis) for j in range(d))  # (d+1) * interior
        self._cprime = cprime
        self._zref = uniq[0]  # lex-min point is always a hull vertex

        max_coord = max(1, max(abs(c) for p in pts for c in p))
        # int64 dot products stay exact as long as d*|a|*|p| < 2^62
        int64_bound = 2**62 // (d * max_coord + 1)

        fverts: list[tuple[int, ...] | None] = []
        fnorms: list[tuple[int, ...]] = []
        foffs: list[int] = []
        cap = 1024
        plane_buf = np.zeros((cap, d + 1), dtype=np.int64)
        alive_buf = np.zeros(cap, dtype=bool)
        use_numpy = True
        ridge_map: dict[tuple[int, ...], list[int]] = {}

        fgcds: list[int] = []

        def add_facet(vert_ids):
            nonlocal cap, plane_buf, alive_buf, use_numpy
            a, b, g = linalg.hyperplane_through([pts[i] for i in vert_ids])
            s = sum(x * y for x, y in zip(a, cprime)) - b * (d + 1)
            if s > 0:
                a, b = tuple(-x for x in a), -b
            fid = len(fverts)
            fverts.append(vert_ids)
            fnorms.append(a)
            foffs.append(b)
            fgcds.append(g)
            if fid >= cap:
                cap *= 2
                plane_buf = np.resize(plane_buf, (cap, d + 1))
                alive_buf = np.resize(alive_buf, cap)
                alive_buf[fid:] = False
            if use_numpy:
                if max(abs(x) for x in a) < int64_bound and abs(b) < 2**62:
                    plane_buf[fid, :d] = a
                    plane_buf[fid, d] = b
                else:
                    use_numpy = False
            alive_buf[fid] = True
            for k in range(d):
                ridge = vert_ids[:k] + vert_ids[k + 1 :]
                ridge_map.setdefault(ridge, []).append(fid)

        simplex = sorted(basis)
        for k in range(d + 1):
            add_facet(tuple(simplex[:k] + simplex[k + 1 :]))

        basis_set = set(basis)
        for idx in uniq:
            if idx in basis_set:
                continue
            p = pts[idx]
            n = len(fverts)
            if use_numpy:
                pv = np.array(p + (-1,), dtype=np.int64)
                scores = plane_buf[:n] @ pv
                visible = np.nonzero((scores > 0) & alive_buf[:n])[0].tolist()
            else:
                visible = [
                    fid
                    for fid in range(n)
                    if alive_buf[fid]
                    and sum(x * y for x, y in zip(fnorms[fid], p)) > foffs[fid]
                ]
            if not visible:
                continue
            vis = set(visible)
            horizon = []
            for fid in visible:
                vert_ids = fverts[fid]
                for k in range(d):
                    ridge = vert_ids[:k] + vert_ids[k + 1 :]
                    pair = ridge_map[ridge]
                    other = pair[0] if pair[1] == fid else pair[1]
                    if other not in vis:
                        horizon.append(ridge)
                alive_buf[fid] = False
            for fid in visible:
                vert_ids = fverts[fid]
                for k in range(d):
                    ridge = vert_ids[:k] + vert_ids[k + 1 :]
                    pair = ridge_map[ridge]
                    pair.remove(fid)
                    if not pair:
                        del ridge_map[ridge]
                fverts[fid] = None
            for ridge in horizon:
                add_facet(tuple(sorted(ridge + (idx,))))

        self.facets = [
            (fverts[fid], fnorms[fid], foffs[fid], fgcds[fid])
            for fid in range(len(fverts))
            if fverts[fid] is not None and alive_buf[fid]
        ]
        self._volume = None
        self._centroid = None
        self._extract_planes_and_vertices(d)

    @staticmethod
    def _affine_basis(pts, order, d):
        base = pts[order[0]]
        chosen = [order[0]]
        rows: list[list[int]] = []
        for idx in order[1:]:
            cand = [pts[idx][j] - base[j] for j in range(d)]
            if int_rank(rows + [cand]) > len(rows):
                rows.append(cand)
                chosen.append(idx)
                if len(rows) == d:
                    return chosen
        return None

    def _extract_planes_and_vertices(self, d):
        planes: dict[tuple[tuple[int, ...], int], None] = {}
        on_hull: set[int] = set()
        for vert_ids, a, b, _ in self.facets:
            planes.setdefault((a, b), None)
            on_hull.update(vert_ids)
        plane_list = list(planes)
        vertices = []
        for idx in sorted(on_hull):
            p = self.pts[idx]
            active = [
                a
                for a, b in plane_list
                if sum(x * y for x, y in zip(a, p)) == b
            ]
            if len(active) >= d and int_rank([list(a) for a in active]) == d:
                vertices.append(self.points_frac_of(idx))
        vertices.sort()
        self.vertex_points = vertices
        s = self.scale
        self.facet_planes = [(a, Fraction(b, s)) for a, b in plane_list]

    def points_frac_of(self, idx) -> Vec:
        s = self.scale
        return tuple(Fraction(c, s) for c in self.pts[idx])

    @property
    def volume(self) -> Fraction:
        if self._volume is None:
            d = self.dim
            zp = self.pts[self._zref]
            total = 0
            # signed pyramid volume from z over an outward facet is
            # g * (b - <a, z>) / d!, and z lies weakly inside every facet
            for _, a, b, g in self.facets:
                total += g * (b - sum(x * y for x, y in zip(a, zp)))
            self._volume = Fraction(total, factorial(d) * self.scale**d)
        return self._volume

    @property
    def centroid(self) -> Vec:
        if self._centroid is None:
            d = self.dim
            zp = self.pts[self._zref]
            acc = [0] * d
            total = 0
            for vert_ids, a, b, g in self.facets:
                w = g * (b - sum(x * y for x, y in zip(a, zp)))
                if w == 0:
                    continue
                total += w
                # pyramid centroid = (z + sum of facet verts)/(d+1), weight w
                for j in range(d):
                    acc[j] += w * (zp[j] + sum(self.pts[i][j] for i in vert_ids))
            self._centroid = tuple(
                Fraction(a, total * (d + 1) * self.scale) for a in acc
            )
        return self._centroid


_HULL_CACHE: dict[tuple, _Hull] = {}
_HULL_CACHE_LIMIT = 48


def _hull_of(points, dim) -> _Hull:
    key = (dim, tuple(sorted(set(points))))
    hull = _HULL_CACHE.get(key)
    if hull is None:
        if len(_HULL_CACHE) >= _HULL_CACHE_LIMIT:
            _HULL_CACHE.clear()
        hull = _Hull(list(key[1]), dim)
        _HULL_CACHE[key] = hull
        # the canonical vertex set indexes the same hull
        vkey = (dim, tuple(hull.vertex_points))
        _HULL_CACHE.setdefault(vkey, hull)
    return hull


# ---------------------------------------------------------------------------
# public operations


def convex_hull(points) -> VPolytope:
    """Extreme points of conv(points), canonicalized; exact arithmetic.

    Raises EmptyInput on an empty set and DegenerateInput when the affine
    hull is lower-dimensional.
    """
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if not pts:
        raise EmptyInput("convex_hull of no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    if d < 1:
        raise DegenerateInput("dimension must be >= 1")
    hull = _hull_of(pts, d)
    return VPolytope(d, tuple(hull.vertex_points))


def volume_exact(p: VPolytope) -> Fraction:
    """Exact Lebesgue volume via the triangulated boundary."""
    return _hull_of(p.vertices, p.dim).volume


def centroid_exact(p: VPolytope) -> Vec:
    return _hull_of(p.vertices, p.dim).centroid


_FACETS_CACHE: dict[tuple, HPolytope] = {}


def facet_enum(p: VPolytope) -> HPolytope:
    """Irredundant H-representation of a full-dimensional V-polytope."""
    key = (p.dim, p.vertices)
    cached = _FACETS_CACHE.get(key)
    if cached is not None:
        return cached
    hull = _hull_of(p.vertices, p.dim)
    hs = [
        canonical_halfspace(tuple(Fraction(x) for x in a), b)
        for a, b in hull.facet_planes
    ]
    hs.sort()
    result = HPolytope(p.dim, tuple(hs), bounded=True)
    if len(_FACETS_CACHE) >= _HULL_CACHE_LIMIT:
        _FACETS_CACHE.clear()
    _FACETS_CACHE[key] = result
    return result


def vertex_enum(h: HPolytope) -> VPolytope:
    """V-representation of a bounded full-dimensional H-polytope.

    Uses polarity: translate an interior point to the origin, take the
    hull of the scaled normals, and read vertices off its facets.
    """
    d = h.dim
    if not h.halfspaces:
        raise Unbounded("no constraints: the whole space is unbounded")
    if d == 1:
        return _vertex_enum_1d(h)
    _certify_bounded(h)
    x0 = interior_point(h)
    shifted = []
    for a, b in h.halfspaces:
        b2 = b - dot(a, x0)
        if b2 <= 0:
            raise DegenerateInput("H-polytope has empty interior")
        shifted.append(tuple(c / b2 for c in a))
    polar_hull = _hull_of(shifted, d)
    verts = []
    for a, b in polar_hull.facet_planes:
        # facet <a, y> <= b of the polar corresponds to vertex a/b
        verts.append(tuple(Fraction(c, 1) / b + x for c, x in zip(a, x0)))
    verts = sorted(set(verts))
    return VPolytope(d, tuple(verts))


def _vertex_enum_1d(h: HPolytope) -> VPolytope:
    hi = [Fraction(b) / a[0] for a, b in h.halfspaces if a[0] > 0]
    lo = [Fraction(b) / a[0] for a, b in h.halfspaces if a[0] < 0]
    if not hi or not lo:
        raise Unbounded("interval unbounded")
    top, bot = min(hi), max(lo)
    if top < bot:
        raise DegenerateInput("empty interval")
    return VPolytope(1, tuple(sorted({(bot,), (top,)})))


def _certify_bounded(h: HPolytope) -> None:
    d = h.dim
    for j in range(d):
        for sign in (1, -1):
            obj = tuple(Fraction(sign if k == j else 0) for k in range(d))
            try:
                res = lp_feasible(h.halfspaces, objective=obj)
            except Unbounded:
                raise Unbounded(f"H-polytope unbounded in coordinate {j}")
            if not res.is_feasible:
                raise DegenerateInput("H-polytope is empty")


def interior_point(h: HPolytope) -> Vec:
    """A strictly interior rational point (L1-inball center via LP)."""
    d = h.dim
    rows = []
    for a, b in h.halfspaces:
        norm1 = sum(abs(c) for c in a)
        rows.append((tuple(a) + (Fraction(norm1),), Fraction(b)))
    obj = tuple(Fraction(0) for _ in range(d)) + (Fraction(1),)
    # bound the margin variable so the LP is never unbounded
    rows.append((tuple(Fraction(0) for _ in range(d)) + (Fraction(1),), Fraction(1)))
    res = lp_feasible(rows, objective=obj)
    if not res.is_feasible or res.x is None or res.x[d] <= 0:
        raise DegenerateInput("H-polytope has empty interior")
    return res.x[:d]


def minkowski_sum(p: VPolytope, q: VPolytope) -> VPolytope:
    if p.dim != q.dim:
        raise DimensionMismatch("Minkowski sum of different dimensions")
    sums = {vadd(u, v) for u in p.vertices for v in q.vertices}
    return convex_hull(sums)


def linear_image(matrix, p: VPolytope) -> VPolytope:
    """Image of a polytope under a rational matrix (rows = output coords).

    Non-injective maps are fine; the mapped vertices are re-hulled in the
    image dimension.  Raises DegenerateInput when the image is not
    full-dimensional there.
    """
    rows = [tuple(Fraction(c) for c in row) for row in matrix]
    if any(len(r) != p.dim for r in rows):
        raise DimensionMismatch("matrix columns must match polytope dimension")
    mapped = {tuple(dot(r, v) for r in rows) for v in p.vertices}
    return convex_hull(mapped)


def contains_point(p: VPolytope, x) -> bool:
    """Exact membership via the H-representation."""
    return facet_enum(p).contains(tuple(Fraction(c) for c in x))


def bounding_box(p: VPolytope) -> tuple[Vec, Vec]:
    lo = tuple(min(v[j] for v in p.vertices) for j in range(p.dim))
    hi = tuple(max(v[j] for v in p.vertices) for j in range(p.dim))
    return lo, hi


def origin_interior(p: VPolytope) -> bool:
    """Exact certificate that the origin is strictly inside."""
    return all(b > 0 for _, b in facet_enum(p).halfspaces)


def cube(dim: int, low=0, high=1) -> VPolytope:
    lo, hi = Fraction(low), Fraction(high)
    verts = []
    for mask in range(2**dim):
        verts.append(tuple(hi if mask & (1 << j) else lo for j in range(dim)))
    return VPolytope(dim, tuple(sorted(verts)))


def simplex(dim: int) -> VPolytope:
    verts = [tuple(Fraction(0) for _ in range(dim))]
    for j in range(dim):
        verts.append(tuple(Fraction(1 if k == j else 0) for k in range(dim)))
    return VPolytope(dim, tuple(sorted(verts)))


def cross_polytope(dim: int, radius=1) -> VPolytope:
    r = Fraction(radius)
    verts = []
    for j in range(dim):
        for s in (r, -r):
            verts.append(tuple(s if k == j else Fraction(0) for k in range(dim)))
    return VPolytope(dim, tuple(sorted(verts)))


def segment_polytope(a, b) -> VPolytope:
    va = tuple(Fraction(c) for c in a)
    vb = tuple(Fraction(c) for c in b)
    return VPolytope(len(va), tuple(sorted({va, vb})))
