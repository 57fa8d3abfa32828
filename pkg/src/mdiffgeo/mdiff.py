"""Higher-order difference bodies of collections of convex bodies.

For a collection (K_0, ..., K_m) in R^n the order-m difference body lives
in R^{nm}: it is the set of m-tuples (x_1, ..., x_m) for which K_0 and all
the translates K_i + x_i share a point.  Equivalently it is the sum of the
diagonal embedding of K_0 with the product of the reflected K_i, which is
what the exact construction uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import linalg
from .bodies import Body, BodyCollection
from .errors import (
    BallUnsupported,
    BudgetExceeded,
    DimensionMismatch,
    MixedVariantsUnsupported,
)
from .linalg import Vec, solve
from .polytope import VPolytope, convex_hull, facet_enum, volume_exact
from .lp import lp_feasible

DEFAULT_BUDGET_DIM = 6


def build_mdiff(collection: BodyCollection, budget_dim: int = DEFAULT_BUDGET_DIM) -> VPolytope:
    """Exact V-representation of the order-m difference body in R^{nm}.

    Candidate vertices are all tuples (v0 - v1, ..., v0 - vm) over vertex
    choices; the hull prunes the non-extreme ones.
    """
    if not collection.all_polytopes:
        raise BallUnsupported("build_mdiff needs polytope bodies; use mdiff_member for balls")
    n, m = collection.n, collection.m
    if n * m > budget_dim:
        raise BudgetExceeded(f"exact construction in dimension {n * m} > budget {budget_dim}")
    verts = [b.polytope.vertices for b in collection.bodies]
    tuples = [()]
    for vi in verts[1:]:
        tuples = [t + (w,) for t in tuples for w in vi]
    points = set()
    for v0 in verts[0]:
        for t in tuples:
            point = []
            for w in t:
                point.extend(a - b for a, b in zip(v0, w))
            points.add(tuple(point))
    return convex_hull(points)


def mdiff_support(collection: BodyCollection, theta) -> Fraction | float:
    """Support value h(theta_1, ..., theta_m) of the difference body.

    Exact (Fraction) when every body is a polytope; float as soon as a
    ball is involved.
    """
    n, m = collection.n, collection.m
    theta = tuple(theta)
    if len(theta) != n * m:
        raise DimensionMismatch(f"direction must have dimension {n * m}")
    blocks = [theta[i * n : (i + 1) * n] for i in range(m)]
    total_dir = tuple(sum(b[j] for b in blocks) for j in range(n))
    val = collection.bodies[0].support(total_dir)
    for i, block in enumerate(blocks):
        val += collection.bodies[i + 1].support(tuple(-c for c in block))
    return val


def mdiff_member(collection: BodyCollection, x) -> bool:
    """Exact membership of the point x = (x_1, ..., x_m) in R^{nm}.

    Polytope collections use LP feasibility of a common intersection
    point; equal-radius ball collections reduce to the smallest enclosing
    ball of {0, x_1, ..., x_m}.
    """
    n, m = collection.n, collection.m
    x = tuple(Fraction(c) for c in x)
    if len(x) != n * m:
        raise DimensionMismatch(f"point must have dimension {n * m}")
    blocks = [x[i * n : (i + 1) * n] for i in range(m)]
    if collection.all_polytopes:
        rows = []
        for a, b in facet_enum(collection.bodies[0].polytope).halfspaces:
            rows.append((a, b))
        for i, body in enumerate(collection.bodies[1:]):
            for a, b in facet_enum(body.polytope).halfspaces:
                rows.append((a, b + linalg.dot(a, blocks[i])))
        return lp_feasible(rows).is_feasible
    if collection.all_balls:
        radii = {b.ball_radius for b in collection.bodies}
        if len(radii) != 1:
            raise MixedVariantsUnsupported("ball collections must share one radius")
        r = radii.pop()
        pts = [tuple(Fraction(0) for _ in range(n))] + blocks
        _, r2 = min_enclosing_ball(pts)
        return r2 <= r * r
    raise MixedVariantsUnsupported("bodies must be all polytopes or all balls")


def min_enclosing_ball(points: list[Vec]) -> tuple[Vec, Fraction]:
    """Exact smallest enclosing ball: (center, squared radius).

    Brute force over support subsets; intended for the handful of points
    coming out of membership queries, not for bulk data.
    """
    n = len(points[0])
    pts = list(dict.fromkeys(points))
    best: tuple[Vec, Fraction] | None = None
    from itertools import combinations

    for size in range(1, min(len(pts), n + 1) + 1):
        for sub in combinations(pts, size):
            ball = _circumball(sub, n)
            if ball is None:
                continue
            c, r2 = ball
            if all(_dist2(p, c) <= r2 for p in pts):
                if best is None or r2 < best[1]:
                    best = (c, r2)
        if best is not None:
            return best
    raise ValueError("no enclosing ball found")  # pragma: no cover


def _dist2(p: Vec, q: Vec) -> Fraction:
    return sum((a - b) ** 2 for a, b in zip(p, q))


def _circumball(sub, n) -> tuple[Vec, Fraction] | None:
    """Smallest ball with the given affinely independent points on it."""
    base = sub[0]
    if len(sub) == 1:
        return base, Fraction(0)
    diffs = [tuple(p[j] - base[j] for j in range(n)) for p in sub[1:]]
    gram = [[2 * linalg.dot(di, dj) for dj in diffs] for di in diffs]
    rhs = [linalg.dot(di, di) for di in diffs]
    coeffs = solve(gram, rhs)
    if coeffs is None:
        return None
    center = list(base)
    for c, dv in zip(coeffs, diffs):
        for j in range(n):
            center[j] += c * dv[j]
    center = tuple(center)
    return center, _dist2(center, base)


def schneider_functional(
    body: Body, m: int, budget_dim: int = DEFAULT_BUDGET_DIM
) -> Fraction:
    """vol(D^m K) / vol(K)^m, exact; invariant under invertible affine maps."""
    if body.is_ball:
        raise BallUnsupported("exact functional needs a polytope")
    collection = BodyCollection.uniform(body, m)
    d = build_mdiff(collection, budget_dim=budget_dim)
    return volume_exact(d) / volume_exact(body.polytope) ** m


def rogers_shephard_bound(n: int, m: int) -> int:
    """The simplex value binom(nm + n, n); exact upper bound for the functional."""
    return comb(n * m + n, n)


def projection_matrix(n: int, m: int) -> tuple[Vec, ...]:
    """The (nm) x (n(m+1)) block matrix mapping the product body onto D^m.

    Block row i holds the identity in the first block column and minus
    the identity in block column i+1.
    """
    zero, one = Fraction(0), Fraction(1)
    rows = []
    for i in range(m):
        for r in range(n):
            row = [zero] * (n * (m + 1))
            row[r] = one
            row[(i + 1) * n + r] = -one
            rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class MonotonicityVerdict:
    lhs: Fraction  # S_{n,m+1}^m
    rhs: Fraction  # S_{n,m}^{m+1}
    holds: bool
    s_m: Fraction
    s_m_plus_1: Fraction


def monotonicity_check(
    body: Body, m: int, budget_dim: int = DEFAULT_BUDGET_DIM
) -> MonotonicityVerdict:
    """Exact check that S_{n,m+1}(K)^m <= S_{n,m}(K)^{m+1}."""
    s_m = schneider_functional(body, m, budget_dim=budget_dim)
    s_m1 = schneider_functional(body, m + 1, budget_dim=budget_dim)
    lhs = s_m1**m
    rhs = s_m ** (m + 1)
    return MonotonicityVerdict(lhs=lhs, rhs=rhs, holds=lhs <= rhs, s_m=s_m, s_m_plus_1=s_m1)
