"""Steiner and fiber symmetrization, shadow systems, projection bodies.

Steiner symmetrals of polytopes are exact: split the H-representation
into constraints with positive / negative / zero component along the
direction and emit every half-difference pair.  Fiber symmetrals in
R^{nm} are represented by membership oracles only (exact LPs); their
inclusion and volume behavior is probed by sampling.  Directions are
rational and never normalized, which keeps all coordinates exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from . import linalg
from .bodies import Body, BodyCollection
from .errors import (
    BudgetExceeded,
    DegenerateInput,
    NotOriginSymmetric,
    OriginNotInterior,
)
from .linalg import Vec, dot, perp_basis, vsub
from .lp import lp_feasible
from .mdiff import DEFAULT_BUDGET_DIM, build_mdiff, schneider_functional
from .polar import Estimate, polar_volume_exact
from .polytope import (
    HPolytope,
    VPolytope,
    bounding_box,
    convex_hull,
    cube,
    facet_enum,
    minkowski_sum,
    segment_polytope,
    vertex_enum,
    volume_exact,
)

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# Steiner symmetrization (exact)


def steiner_symmetral(p: VPolytope, v) -> VPolytope:
    """Exact Steiner symmetrization of a polytope along a rational direction."""
    v = tuple(Fraction(c) for c in v)
    if len(v) != p.dim or all(c == 0 for c in v):
        raise DegenerateInput("direction must be a nonzero vector of the right dimension")
    h = facet_enum(p)
    vv = dot(v, v)
    upper, lower, flat = [], [], []
    for a, b in h.halfspaces:
        av = dot(a, v)
        if av > 0:
            upper.append((a, b, av))
        elif av < 0:
            lower.append((a, b, av))
        else:
            flat.append((a, b))
    halfspaces = list(flat)
    # fiber through y has extent [L_j(y), U_i(y)]; the symmetral is
    # |t| <= (U_i - L_j)/2 for every upper/lower pair, t = <x,v>/<v,v>
    for a_u, b_u, au in upper:
        for a_l, b_l, al in lower:
            mid = tuple(x / au - y / al for x, y in zip(a_u, a_l))
            rhs = b_u / au - b_l / al
            for sign in (1, -1):
                normal = tuple(
                    mid_c + sign * Fraction(2) * vc / vv for mid_c, vc in zip(mid, v)
                )
                halfspaces.append((normal, rhs))
    hp = HPolytope(p.dim, tuple(halfspaces), bounded=True)
    return vertex_enum(hp)


def double_cone_c3() -> VPolytope:
    """The Steiner symmetral of [-1,1]^3 along (1,1,1): an 8-vertex double cone."""
    return steiner_symmetral(cube(3, -1, 1), (1, 1, 1))


@dataclass(frozen=True)
class CounterexampleReport:
    s_cube: Fraction
    s_symmetrized: Fraction
    increase: Fraction
    strict_increase: bool


def steiner_counterexample(m: int = 2, budget_dim: int = DEFAULT_BUDGET_DIM) -> CounterexampleReport:
    """Volume functional strictly increases under this Steiner symmetrization."""
    s_cube = schneider_functional(Body.from_polytope(cube(3)), m, budget_dim=budget_dim)
    s_sym = schneider_functional(Body.from_polytope(double_cone_c3()), m, budget_dim=budget_dim)
    return CounterexampleReport(
        s_cube=s_cube,
        s_symmetrized=s_sym,
        increase=s_sym - s_cube,
        strict_increase=s_sym > s_cube,
    )


# ---------------------------------------------------------------------------
# fiber symmetrization oracles


def _decompose(point: Vec, v: Vec, n: int, m: int) -> tuple[tuple[Vec, ...], tuple[Fraction, ...]]:
    """Split p in R^{nm} into blocks x_i + q_i v with x_i orthogonal to v."""
    vv = dot(v, v)
    blocks = [point[i * n : (i + 1) * n] for i in range(m)]
    qs = tuple(dot(b, v) / vv for b in blocks)
    xs = tuple(vsub(b, tuple(q * c for c in v)) for b, q in zip(blocks, qs))
    return xs, qs


def fiber_member(l_poly: VPolytope, v, point, adjoint: bool = False) -> bool:
    """Exact membership of ``point`` in the fiber symmetral of ``l_poly``.

    The usual symmetral averages along the v-fiber coordinates; the
    adjoint version averages the orthogonal part instead.
    """
    v = tuple(Fraction(c) for c in v)
    n = len(v)
    nm = l_poly.dim
    if nm % n != 0:
        raise DegenerateInput("body dimension must be a multiple of the direction's")
    m = nm // n
    p = tuple(Fraction(c) for c in point)
    if len(p) != nm:
        raise DegenerateInput("point dimension mismatch")
    h = facet_enum(l_poly)
    return _fiber_member_h(h, v, p, n, m, adjoint)


def _fiber_member_h(h: HPolytope, v: Vec, p: Vec, n: int, m: int, adjoint: bool) -> bool:
    xs, qs = _decompose(p, v, n, m)
    if not adjoint:
        # need s with x + v s^T in L and x + v (s - 2q)^T in L;
        # rows sharing a coefficient direction collapse to the tightest one
        best: dict[tuple[int, ...], Fraction] = {}
        for a, b in h.halfspaces:
            ablocks = [a[i * n : (i + 1) * n] for i in range(m)]
            coeff = tuple(dot(ab, v) for ab in ablocks)
            base = sum(dot(ab, x) for ab, x in zip(ablocks, xs))
            shift = sum(2 * q * c for q, c in zip(qs, coeff))
            if all(c == 0 for c in coeff):
                if b - base < 0 or b - base + shift < 0:
                    return False
                continue
            prim = linalg.primitive_direction(coeff)
            j = next(i for i, c in enumerate(prim) if c != 0)
            scale = coeff[j] / prim[j]  # positive by construction
            for rhs in (b - base, b - base + shift):
                val = rhs / scale
                cur = best.get(prim)
                if cur is None or val < cur:
                    best[prim] = val
        rows = [(k, val) for k, val in best.items()]
        return lp_feasible(rows).is_feasible
    # adjoint: need x1 in v^{perp m} with x1 + v q^T in L and x1 - 2x + v q^T in L
    basis = perp_basis(v)  # n-1 rational vectors spanning v^perp
    k = len(basis)
    rows = []
    for a, b in h.halfspaces:
        ablocks = [a[i * n : (i + 1) * n] for i in range(m)]
        coeff = []
        for i in range(m):
            for w in basis:
                coeff.append(dot(ablocks[i], w))
        fiber_part = sum(q * dot(ab, v) for q, ab in zip(qs, ablocks))
        rows.append((tuple(coeff), b - fiber_part))
        shift = sum(2 * dot(ab, x) for ab, x in zip(ablocks, xs))
        rows.append((tuple(coeff), b - fiber_part + shift))
    return lp_feasible(rows).is_feasible


def fiber_support(l_poly: VPolytope, v, z) -> Fraction:
    """Exact support function of the fiber symmetral of ``l_poly`` at z.

    Maximizes <z, x + v((s1-s2)/2)^T> over x in v^{perp m} and fiber
    parameters with x + v s_i^T in L.
    """
    v = tuple(Fraction(c) for c in v)
    n = len(v)
    m = l_poly.dim // n
    z = tuple(Fraction(c) for c in z)
    h = facet_enum(l_poly)
    basis = perp_basis(v)
    k = len(basis)
    nvars = m * k + 2 * m  # block coords in v^perp basis, then s1, s2
    rows = []
    for a, b in h.halfspaces:
        ablocks = [a[i * n : (i + 1) * n] for i in range(m)]
        coeff_x = []
        for i in range(m):
            for w in basis:
                coeff_x.append(dot(ablocks[i], w))
        av = [dot(ab, v) for ab in ablocks]
        for which in range(2):
            coeff = list(coeff_x) + [ZERO] * (2 * m)
            for i in range(m):
                coeff[m * k + which * m + i] = av[i]
            rows.append((tuple(coeff), b))
    zblocks = [z[i * n : (i + 1) * n] for i in range(m)]
    obj = []
    for i in range(m):
        for w in basis:
            obj.append(dot(zblocks[i], w))
    zv = [dot(zb, v) for zb in zblocks]
    half = Fraction(1, 2)
    obj += [half * c for c in zv] + [-half * c for c in zv]
    res = lp_feasible(rows, objective=tuple(obj))
    return res.value


def _block_reflect(vec_nm: Vec, d: Vec) -> Vec:
    """Reflect each n-block of a vector in R^{nm} across the hyperplane d-perp."""
    vv = dot(d, d)
    dn = len(d)
    mm = len(vec_nm) // dn
    out = list(vec_nm)
    for i in range(mm):
        block = vec_nm[i * dn : (i + 1) * dn]
        q = dot(block, d) / vv
        for j in range(dn):
            out[i * dn + j] -= 2 * q * d[j]
    return tuple(out)


def fiber_membership_lp_rows(h: HPolytope, v: Vec, n: int, m: int, depth_dirs):
    """Membership oracle for iterated fiber symmetrals as one LP.

    A point p lies in the symmetral along d of a set S exactly when some
    u in R^m puts both p + d u^T and its blockwise d-reflection + d u^T
    inside S, so ``depth_dirs`` (outermost last) unfolds into 2^k affine
    expressions over k*m shared fiber variables.  Keep the depth small.
    """

    def member(point: Vec) -> bool:
        nm = len(point)
        # expression = (const vector, {var: coefficient vector})
        exprs: list[tuple[Vec, dict[int, Vec]]] = [(tuple(point), {})]
        var_count = 0
        for d in reversed(list(depth_dirs)):
            d = tuple(Fraction(c) for c in d)
            dn = len(d)
            mm = nm // dn
            new_exprs = []
            for const, terms in exprs:
                # each membership gets its own fiber variables, shared
                # only by its two reflected branches
                uvars = list(range(var_count, var_count + mm))
                var_count += mm
                refl_const = _block_reflect(const, d)
                refl_terms = {var: _block_reflect(w, d) for var, w in terms.items()}
                for cst, trm in ((const, terms), (refl_const, refl_terms)):
                    trm = dict(trm)
                    for i, uv in enumerate(uvars):
                        unit = [ZERO] * nm
                        for j in range(dn):
                            unit[i * dn + j] = d[j]
                        trm[uv] = tuple(unit)
                    new_exprs.append((cst, trm))
            exprs = new_exprs
        if var_count == 0:
            return h.contains(point)
        rows = []
        for const, terms in exprs:
            for a, b in h.halfspaces:
                row = [ZERO] * var_count
                for var, w in terms.items():
                    row[var] = dot(a, w)
                rows.append((tuple(row), b - dot(a, const)))
        return lp_feasible(rows).is_feasible

    return member


# ---------------------------------------------------------------------------
# probes


@dataclass(frozen=True)
class FiberProbeReport:
    polar_inclusion_failures: int
    polar_inclusion_samples: int
    polar_volume_exact: float  # vol(L^o), exact pipeline
    polar_volume_symmetral: Estimate  # vol((S_v L)^o), sampled
    volume_holds_within_3se: bool
    mdiff_inclusion_failures: int
    mdiff_inclusion_samples: int


def fiber_polar_inclusion_probe(
    l_poly: VPolytope,
    v,
    samples: int,
    seed: int = 0,
    mdiff_source: Body | None = None,
    m: int | None = None,
) -> FiberProbeReport:
    """Sampled checks of the polar behavior of fiber symmetrization.

    (a) points of the adjoint symmetral of the polar lie in the polar of
    the symmetral (support-value test); (b) the polar volume does not
    drop, within 3 standard errors of the sampled side; (c) when
    ``mdiff_source`` K is given, sampled points of D^m(Steiner K) lie in
    the fiber symmetral of D^m K.
    """
    from .polar import polar_body

    if not l_poly.is_origin_symmetric():
        raise NotOriginSymmetric("fiber polar probe needs an origin-symmetric body")
    v = tuple(Fraction(c) for c in v)
    n = len(v)
    mm = l_poly.dim // n
    rng = np.random.default_rng(seed)

    polar = polar_body(l_poly)
    lo, hi = bounding_box(polar)
    # the adjoint symmetral's coordinates are bounded by half the polar's
    # spread plus its fiber extent
    box_a = [
        float((h - l) / 2 + max(abs(l), abs(h))) for l, h in zip(lo, hi)
    ]
    polar_h = HPolytope(
        l_poly.dim,
        tuple((vert, Fraction(1)) for vert in l_poly.vertices),
        bounded=True,
    )
    fails_a = 0
    checked = 0
    target = max(20, samples // 20)
    budget = 60 * target
    while checked < target and budget > 0:
        cand = rng.uniform(-1.0, 1.0, size=l_poly.dim) * box_a
        budget -= 1
        q = tuple(Fraction(float(c)).limit_denominator(10**6) for c in cand)
        if _fiber_member_h(polar_h, v, q, n, mm, adjoint=True):
            checked += 1
            if fiber_support(l_poly, v, q) > 1:
                fails_a += 1

    # (b) exact vol(L^o) against a sampled vol((S_v L)^o)
    vol_exact = float(volume_exact(polar))
    inr = min(
        float(b) / sqrt(sum(float(c) ** 2 for c in a))
        for a, b in facet_enum(l_poly).halfspaces
    )
    if inr <= 0:
        raise OriginNotInterior("origin must be interior")
    rad = 1.0 / inr
    n_hi = max(200, samples // 4)
    hits = 0
    for _ in range(n_hi):
        z = rng.uniform(-rad, rad, size=l_poly.dim)
        zq = tuple(Fraction(float(c)).limit_denominator(10**6) for c in z)
        if fiber_support(l_poly, v, zq) <= 1:
            hits += 1
    box = (2 * rad) ** l_poly.dim
    rate = hits / n_hi
    vol_hi = Estimate(
        box * rate, box * sqrt(max(rate * (1 - rate), 1e-300) / n_hi), n_hi, seed
    )
    holds = vol_hi.value - vol_exact >= -3 * vol_hi.std_error

    # (c) inclusion of the difference body of the Steiner symmetral
    fails_c = 0
    count_c = 0
    if mdiff_source is not None and m is not None:
        count_c, fails_c = mdiff_steiner_inclusion_check(
            mdiff_source, v, m, samples // 10 or 1, seed=seed + 1
        )

    return FiberProbeReport(
        polar_inclusion_failures=fails_a,
        polar_inclusion_samples=checked,
        polar_volume_exact=vol_exact,
        polar_volume_symmetral=vol_hi,
        volume_holds_within_3se=holds,
        mdiff_inclusion_failures=fails_c,
        mdiff_inclusion_samples=count_c,
    )


def mdiff_steiner_inclusion_check(
    body: Body, v, m: int, points: int, seed: int = 0
) -> tuple[int, int]:
    """Exactly verified sampled inclusion D^m(S_v K) inside S_v-fiber(D^m K).

    Samples from the body on the left, rounds to rationals, shrinks
    slightly toward the origin, keeps only points exactly inside the left
    body, and tests each against the fiber-symmetral oracle of the right
    body.  Returns (points checked, inclusion failures).
    """
    v = tuple(Fraction(c) for c in v)
    n = len(v)
    sym = steiner_symmetral(body.polytope, v)
    d_sym = build_mdiff(BodyCollection.uniform(Body.from_polytope(sym), m))
    d_orig = build_mdiff(BodyCollection.uniform(body, m))
    d_sym_h = facet_enum(d_sym)
    d_orig_h = facet_enum(d_orig)
    from .sampling import sample_uniform

    pts = sample_uniform(d_sym, points, seed=seed)
    # integer-scaled facet data for the fast exact containment test
    facets_int = [
        ([int(c) for c in a], b.numerator, b.denominator)
        for a, b in d_sym_h.halfspaces
    ]
    checked = 0
    fails = 0
    for row in pts:
        # round to rationals over a fixed power-of-ten grid, shrink 0.995
        nums = [round(float(c) * 199_000) for c in row]
        den = 200_000
        inside = all(
            sum(ac * xc for ac, xc in zip(a, nums)) * bd <= bn * den
            for a, bn, bd in facets_int
        )
        if not inside:
            continue
        q = tuple(Fraction(num, den) for num in nums)
        checked += 1
        if not _fiber_member_h(d_orig_h, v, q, n, m, adjoint=False):
            fails += 1
    return checked, fails


def fiber_volume_probe(l_poly: VPolytope, v, samples: int, seed: int = 0) -> tuple[Estimate, Fraction]:
    """MC volume of the fiber symmetral against the exact volume of L."""
    v = tuple(Fraction(c) for c in v)
    n = len(v)
    m = l_poly.dim // n
    h = facet_enum(l_poly)
    lo, hi = bounding_box(l_poly)
    # the symmetral lives in the same box: fibers only get recentered
    rad = max(max(abs(float(x)) for x in lo), max(abs(float(x)) for x in hi))
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        z = rng.uniform(-rad, rad, size=l_poly.dim)
        zq = tuple(Fraction(float(c)).limit_denominator(10**6) for c in z)
        if _fiber_member_h(h, v, zq, n, m, adjoint=False):
            hits += 1
    box = (2 * rad) ** l_poly.dim
    rate = hits / samples
    est = Estimate(box * rate, box * sqrt(max(rate * (1 - rate), 1e-300) / samples), samples, seed)
    return est, volume_exact(l_poly)


def fiber_composition_volume_log(
    l_poly: VPolytope, directions, samples: int, seed: int = 0
) -> list[Estimate]:
    """MC volumes of iterated fiber symmetrals (logged, not asserted)."""
    v0 = tuple(Fraction(c) for c in directions[0])
    n = len(v0)
    m = l_poly.dim // n
    h = facet_enum(l_poly)
    lo, hi = bounding_box(l_poly)
    rad = max(max(abs(float(x)) for x in lo), max(abs(float(x)) for x in hi))
    rng = np.random.default_rng(seed)
    out = []
    for k in range(1, len(directions) + 1):
        dirs = [tuple(Fraction(c) for c in d) for d in directions[:k]]
        member = fiber_membership_lp_rows(h, v0, n, m, dirs)
        hits = 0
        for _ in range(samples):
            z = rng.uniform(-rad, rad, size=l_poly.dim)
            zq = tuple(Fraction(float(c)).limit_denominator(10**5) for c in z)
            if member(zq):
                hits += 1
        box = (2 * rad) ** l_poly.dim
        rate = hits / samples
        out.append(
            Estimate(box * rate, box * sqrt(max(rate * (1 - rate), 1e-300) / samples), samples, seed)
        )
    return out


# ---------------------------------------------------------------------------
# shadow systems


@dataclass(frozen=True)
class ShadowSystemSpec:
    base: VPolytope
    direction: Vec
    speeds: tuple[Fraction, ...]  # one per vertex of base
    t_min: Fraction
    t_max: Fraction

    def __post_init__(self):
        if len(self.speeds) != len(self.base.vertices):
            raise ValueError("one speed per vertex required")
        if self.t_min > self.t_max:
            raise ValueError("empty parameter interval")
        if all(c == 0 for c in self.direction):
            raise ValueError("direction must be nonzero")


def shadow_system_at(spec: ShadowSystemSpec, t) -> VPolytope:
    """The exact body conv{x_i + speed_i * t * direction} at rational t."""
    t = Fraction(t)
    pts = [
        tuple(x + s * t * d for x, d in zip(vert, spec.direction))
        for vert, s in zip(spec.base.vertices, spec.speeds)
    ]
    return convex_hull(pts)


def uniform_grid(spec: ShadowSystemSpec, points: int = 7) -> list[Fraction]:
    step = (spec.t_max - spec.t_min) / (points - 1)
    return [spec.t_min + k * step for k in range(points)]


@dataclass(frozen=True)
class ShadowConvexityReport:
    grid: tuple[Fraction, ...]
    volumes: tuple[Fraction, ...]
    volume_convex: bool
    polar_values: tuple[Estimate, ...] | None
    polar_reciprocal_midpoint_convex: bool | None
    skipped_polar: str | None


def shadow_convexity_probe(
    spec: ShadowSystemSpec,
    grid_points: int = 7,
    m: int = 1,
    samples: int = 20000,
    seed: int = 0,
) -> ShadowConvexityReport:
    """Exact convexity of vol(K(t)) on a uniform grid, plus midpoint
    convexity of 1/vol(D^{m,o}(K(t))) by Monte Carlo when the base is
    origin-symmetric at every grid point."""
    from .polar import polar_volume_mc

    grid = uniform_grid(spec, grid_points)
    bodies = [shadow_system_at(spec, t) for t in grid]
    vols = [volume_exact(b) for b in bodies]
    convex = all(
        vols[k - 1] + vols[k + 1] >= 2 * vols[k] for k in range(1, len(vols) - 1)
    )

    polar_vals = None
    polar_convex = None
    skipped = None
    symmetric = all(b.is_origin_symmetric() for b in bodies)
    interior = all(
        all(off > 0 for _, off in facet_enum(b).halfspaces) for b in bodies
    )
    if not symmetric:
        skipped = "base not origin-symmetric along the grid; polar probe skipped"
    elif not interior:
        skipped = "origin left the interior along the grid; polar probe skipped"
    else:
        polar_vals = tuple(
            polar_volume_mc(
                BodyCollection.uniform(Body.from_polytope(b), m), 0.0, samples, seed
            )
            for b in bodies
        )
        polar_convex = True
        for k in range(1, len(polar_vals) - 1):
            g = [1.0 / polar_vals[k - 1].value, 1.0 / polar_vals[k].value, 1.0 / polar_vals[k + 1].value]
            ses = [
                polar_vals[j].std_error / polar_vals[j].value**2
                for j in (k - 1, k, k + 1)
            ]
            slack = g[0] + g[2] - 2 * g[1]
            tol = 3 * sqrt(ses[0] ** 2 + ses[2] ** 2 + 4 * ses[1] ** 2)
            if slack < -tol:
                polar_convex = False
    return ShadowConvexityReport(
        grid=tuple(grid),
        volumes=tuple(vols),
        volume_convex=convex,
        polar_values=polar_vals,
        polar_reciprocal_midpoint_convex=polar_convex,
        skipped_polar=skipped,
    )


# ---------------------------------------------------------------------------
# projection bodies in R^3


def _cyclic_order_2d(points2d: list[tuple[Fraction, Fraction]]) -> list[int]:
    """Indices of a planar convex point set in counterclockwise order."""
    cx = sum(p[0] for p in points2d) / len(points2d)
    cy = sum(p[1] for p in points2d) / len(points2d)
    rel = [(p[0] - cx, p[1] - cy) for p in points2d]

    def half(p):
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    import functools

    def cmp(i, j):
        hi, hj = half(rel[i]), half(rel[j])
        if hi != hj:
            return -1 if hi < hj else 1
        cross = rel[i][0] * rel[j][1] - rel[i][1] * rel[j][0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(range(len(points2d)), key=functools.cmp_to_key(cmp))


def facet_area_vectors(p: VPolytope) -> list[Vec]:
    """Exact area-weighted outward normals of the facets of a 3-polytope.

    The cross-product form (half the sum of consecutive vertex cross
    products) keeps every component rational.
    """
    if p.dim != 3:
        raise DegenerateInput("projection bodies implemented for dimension 3 only")
    h = facet_enum(p)
    vectors = []
    for a, b in h.halfspaces:
        on_facet = [v for v in p.vertices if dot(a, v) == b]
        basis = perp_basis(a)
        coords = [(dot(basis[0], v), dot(basis[1], v)) for v in on_facet]
        order = _cyclic_order_2d(coords)
        ring = [on_facet[i] for i in order]
        acc = [ZERO, ZERO, ZERO]
        for i in range(len(ring)):
            u, w = ring[i], ring[(i + 1) % len(ring)]
            acc[0] += u[1] * w[2] - u[2] * w[1]
            acc[1] += u[2] * w[0] - u[0] * w[2]
            acc[2] += u[0] * w[1] - u[1] * w[0]
        g = tuple(c / 2 for c in acc)
        vectors.append(g)
    return vectors


def projection_body_3d(p: VPolytope) -> VPolytope:
    """The zonotope sum of segments [-a_F/2, a_F/2] over facet area vectors."""
    gens = facet_area_vectors(p)
    half = Fraction(1, 2)
    body = None
    for g in gens:
        seg = segment_polytope(tuple(-half * c for c in g), tuple(half * c for c in g))
        if body is None:
            body = seg
            continue
        pts = {tuple(x + y for x, y in zip(u, w)) for u in body.vertices for w in seg.vertices}
        try:
            body = convex_hull(pts)
        except DegenerateInput:
            body = VPolytope(3, tuple(sorted(pts)))
    return body


def petty_product(p: VPolytope) -> Fraction:
    """vol(projection body) / vol(K)^2 for a 3-polytope, exact."""
    return volume_exact(projection_body_3d(p)) / volume_exact(p) ** 2


def petty_product_ball() -> float:
    """Closed form for the unit ball: projections are disks of area pi."""
    from math import pi

    from .bodies import ball_volume

    return pi**3 * ball_volume(3) / ball_volume(3) ** 2


@dataclass(frozen=True)
class EliIdentityReport:
    s_value: Fraction
    petty: Fraction
    lhs: Fraction  # 4 * S_{3,2}(K)
    rhs: Fraction  # 84 + 3 * P_3(K)
    holds_exactly: bool


def eli_identity_check(p: VPolytope, budget_dim: int = DEFAULT_BUDGET_DIM) -> EliIdentityReport:
    """Exact identity 4 S_{3,2}(K) = 84 + 3 P_3(K) for symmetric 3-polytopes.

    Two fully independent exact pipelines (6-dimensional hull volume vs
    zonotope volume) must agree rationally.
    """
    if not p.is_origin_symmetric():
        raise NotOriginSymmetric("identity requires an origin-symmetric body")
    s = schneider_functional(Body.from_polytope(p), 2, budget_dim=budget_dim)
    pp = petty_product(p)
    lhs = 4 * s
    rhs = 84 + 3 * pp
    return EliIdentityReport(s_value=s, petty=pp, lhs=lhs, rhs=rhs, holds_exactly=lhs == rhs)


def random_zonotope_3d(rng, generators: int) -> VPolytope:
    """Zonotope from random rational segments; always origin-symmetric."""
    gens = []
    for _ in range(generators):
        g = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
        if any(g):
            gens.append(g)
    body = None
    half = Fraction(1, 2)
    for g in gens:
        seg = segment_polytope(tuple(-half * c for c in g), tuple(half * c for c in g))
        if body is None:
            body = seg
            continue
        pts = {tuple(x + y for x, y in zip(u, w)) for u in body.vertices for w in seg.vertices}
        try:
            body = convex_hull(pts)
        except DegenerateInput:
            body = VPolytope(3, tuple(sorted(pts)))
    return body
