"""Polar duality, exact polar volumes, and support-functional Monte Carlo.

The estimator behind most of this module integrates

    exp(-h_{K_0}(sum x_i)) * prod_i exp(-h_{-K_i}(x_i)) |x_i|^{-q}

over R^{nm} by importance sampling (uniform directions, Gamma radial
profile per block) and divides by Gamma(1 + m(n-q)); with q = 0 that is
the volume of the polar of the order-m difference body.  Weights stay
bounded because each block's Gamma rate is set strictly below the
inradius of the reflected body.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gamma, sqrt

import numpy as np

from .bodies import Body, BodyCollection, ball_volume, sphere_area
from .errors import (
    BudgetExceeded,
    InvalidQ,
    OriginNotInterior,
)
from .mdiff import DEFAULT_BUDGET_DIM, schneider_functional
from .polytope import (
    HPolytope,
    VPolytope,
    canonical_halfspace,
    centroid_exact,
    convex_hull,
    facet_enum,
    vertex_enum,
    volume_exact,
)
from .sampling import sphere_points

BETA_SCALE = 0.8  # Gamma rate as a fraction of the exact inradius


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo result; every stochastic output carries its error."""

    value: float
    std_error: float
    samples: int
    seed: int | None = None

    def __post_init__(self):
        if self.std_error < 0 or self.samples < 2:
            raise ValueError("need std_error >= 0 and samples >= 2")

    def scaled(self, c: float) -> "Estimate":
        return Estimate(self.value * c, self.std_error * abs(c), self.samples, self.seed)


def ratio_estimate(num: Estimate, den: Estimate) -> Estimate:
    """num/den with first-order error propagation (independent errors)."""
    v = num.value / den.value
    se = sqrt(
        (num.std_error / den.value) ** 2
        + (num.value * den.std_error / den.value**2) ** 2
    )
    return Estimate(v, se, min(num.samples, den.samples), num.seed)


# ---------------------------------------------------------------------------
# exact polarity


def polar_dual(p: VPolytope) -> HPolytope:
    """The polar body as halfspaces <v, x> <= 1, one per vertex."""
    if not all(b > 0 for _, b in facet_enum(p).halfspaces):
        raise OriginNotInterior("polar needs the origin strictly inside")
    hs = sorted(canonical_halfspace(v, Fraction(1)) for v in p.vertices)
    return HPolytope(p.dim, tuple(hs), bounded=True)


def polar_dual_inverse(h: HPolytope) -> VPolytope:
    """Inverse of :func:`polar_dual`: the body whose polar has these facets."""
    if not all(b > 0 for _, b in h.halfspaces):
        raise OriginNotInterior("polar needs the origin strictly inside")
    return convex_hull([tuple(c / b for c in a) for a, b in h.halfspaces])


def polar_body(p: VPolytope) -> VPolytope:
    """V-representation of the polar of p (origin strictly inside)."""
    return vertex_enum(polar_dual(p))


def polar_volume_exact(p: VPolytope, budget_dim: int = DEFAULT_BUDGET_DIM) -> Fraction:
    if p.dim > budget_dim:
        raise BudgetExceeded(f"exact polar volume in dimension {p.dim} > {budget_dim}")
    return volume_exact(polar_body(p))


# ---------------------------------------------------------------------------
# support-functional Monte Carlo


class _SupportData:
    """Float support evaluators and exact inradius for one body."""

    def __init__(self, body: Body, scale: float = 1.0):
        self.scale = scale
        if body.is_ball:
            self.radius = float(body.ball_radius) * scale
            self.verts = None
            self.inradius = self.radius
        else:
            h = facet_enum(body.polytope)
            if not all(b > 0 for _, b in h.halfspaces):
                raise OriginNotInterior("all bodies must contain the origin inside")
            self.radius = None
            self.verts = np.array(
                [[float(c) for c in v] for v in body.polytope.vertices]
            ) * scale
            self.inradius = min(
                float(b) / sqrt(sum(float(c) ** 2 for c in a)) for a, b in h.halfspaces
            ) * scale

    def support(self, x: np.ndarray) -> np.ndarray:
        if self.verts is None:
            return self.radius * np.linalg.norm(x, axis=1)
        return (x @ self.verts.T).max(axis=1)

    def support_neg(self, x: np.ndarray) -> np.ndarray:
        """Support of the reflected body at x."""
        return self.support(-x)


def polar_volume_mc(
    collection: BodyCollection,
    q: float,
    samples: int,
    seed: int = 0,
    scales: tuple[float, ...] | None = None,
) -> Estimate:
    """Weighted volume of the polar of the order-m difference body.

    With q = 0 this is vol(D^{m,o}); q in (0, n) weighs each block by
    |x_i|^{-q}.
    """
    n, m = collection.n, collection.m
    if not (0 <= q < n):
        raise InvalidQ(f"q must lie in [0, {n})")
    if scales is None:
        scales = (1.0,) * (m + 1)
    data = [_SupportData(b, s) for b, s in zip(collection.bodies, scales)]
    rng = np.random.default_rng(seed)
    shape = n - q
    area = sphere_area(n)

    log_w = np.zeros(samples)
    total = np.zeros((samples, n))
    const = 1.0
    for i in range(1, m + 1):
        beta = BETA_SCALE * data[i].inradius
        dirs = sphere_points(n, samples, rng)
        radii = rng.gamma(shape, 1.0 / beta, samples)
        x = radii[:, None] * dirs
        log_w += beta * radii - data[i].support_neg(x)
        const *= gamma(shape) * area * beta ** (q - n)
        total += x
    log_w -= data[0].support(total)
    w = const * np.exp(log_w) / gamma(1 + m * (n - q))
    value = float(w.mean())
    se = float(w.std(ddof=1) / sqrt(samples))
    return Estimate(value, se, samples, seed)


_BALL_CACHE: dict[tuple, Estimate] = {}


def ball_polar_reference(n: int, m: int, q: float, samples: int, seed: int) -> Estimate:
    """Cached mu(D^{m,o}(unit ball)); the denominator of every ratio."""
    key = (n, m, q, samples, seed)
    if key not in _BALL_CACHE:
        coll = BodyCollection.uniform(Body.ball(1, n), m)
        _BALL_CACHE[key] = polar_volume_mc(coll, q, samples, seed)
    return _BALL_CACHE[key]


def polar_schneider_ratio(body: Body, m: int, samples: int, seed: int = 0) -> Estimate:
    """[vol(D^{m,o}(K)) vol(K)^m] / [vol(D^{m,o}(B)) vol(B)^m].

    At most 1 up to noise, with equality characterizing ellipsoids; for
    the unit ball the estimator reproduces 1.0 exactly (same stream).
    """
    n = body.dim
    centered = body.centered()
    num = polar_volume_mc(BodyCollection.uniform(centered, m), 0.0, samples, seed)
    num = num.scaled(float(centered.volume()) ** m)
    den = ball_polar_reference(n, m, 0.0, samples, seed).scaled(ball_volume(n) ** m)
    return ratio_estimate(num, den)


@dataclass(frozen=True)
class InequalityVerdict:
    lhs: Estimate
    rhs: Estimate
    holds_within_3se: bool
    slack: float  # rhs - lhs in units of the combined std error


def _compare(lhs: Estimate, rhs: Estimate) -> InequalityVerdict:
    combined = sqrt(lhs.std_error**2 + rhs.std_error**2)
    gap = rhs.value - lhs.value
    slack = gap / combined if combined > 0 else float("inf") * np.sign(gap or 1)
    return InequalityVerdict(lhs, rhs, gap >= -3 * combined, float(slack))


def collection_polar_schneider(
    collection: BodyCollection,
    samples: int,
    seed: int = 0,
    q: float = 0.0,
    budget_dim: int = DEFAULT_BUDGET_DIM,
) -> InequalityVerdict:
    """Weighted polar inequality for a collection, after rescaling every
    body so all polar volumes match the first one's."""
    n, m = collection.n, collection.m
    centered = tuple(b.centered() for b in collection.bodies)
    polar_vols = []
    for b in centered:
        if b.is_ball:
            polar_vols.append(ball_volume(n) / float(b.ball_radius) ** n)
        else:
            polar_vols.append(float(polar_volume_exact(b.polytope, budget_dim)))
    scales = tuple((pv / polar_vols[0]) ** (1.0 / n) for pv in polar_vols)
    coll = BodyCollection(n=n, m=m, bodies=centered)
    mu = polar_volume_mc(coll, q, samples, seed, scales=scales)
    lhs = mu.value
    for b, s in zip(centered[1:], scales[1:]):
        lhs *= (float(b.volume()) * s**n) ** (1 - q / n)
    lhs_est = Estimate(lhs, mu.std_error * lhs / mu.value if mu.value else 0.0, samples, seed)
    ball_mu = ball_polar_reference(n, m, q, samples, seed)
    rhs = ball_mu.scaled(ball_volume(n) ** (m * (1 - q / n)))
    return _compare(lhs_est, rhs)


# ---------------------------------------------------------------------------
# dual quermassintegrals


def dual_quermass(body: Body, q: float, samples: int, seed: int = 0) -> Estimate:
    """Sphere-uniform Monte Carlo of the q-th dual quermassintegral."""
    n = body.dim
    if not (0 <= q < n):
        raise InvalidQ(f"q must lie in [0, {n})")
    rng = np.random.default_rng(seed)
    u = sphere_points(n, samples, rng)
    if body.is_ball:
        rho = np.full(samples, float(body.ball_radius))
    else:
        h = facet_enum(body.polytope)
        if not all(b > 0 for _, b in h.halfspaces):
            raise OriginNotInterior("radial function needs the origin inside")
        a = np.array([[float(c) for c in normal] for normal, _ in h.halfspaces])
        b = np.array([float(off) for _, off in h.halfspaces])
        dots = u @ a.T
        with np.errstate(divide="ignore"):
            t = np.where(dots > 1e-14, b / dots, np.inf)
        rho = t.min(axis=1)
    vals = rho ** (n - q) * (sphere_area(n) / n)
    return Estimate(float(vals.mean()), float(vals.std(ddof=1) / sqrt(samples)), samples, seed)


# ---------------------------------------------------------------------------
# asymptotic lower bound for the volume functional


def _ball_mdiff_member_batch(blocks: np.ndarray, radius: float) -> np.ndarray:
    """Vectorized membership x in D^m(rB): smallest enclosing ball of
    {0, x_1, ..., x_m} has radius <= r.  blocks has shape (N, m, n)."""
    npts, m, n = blocks.shape
    pts = np.concatenate([np.zeros((npts, 1, n)), blocks], axis=1)
    k_tot = m + 1
    best = np.full(npts, np.inf)
    from itertools import combinations

    for size in range(1, min(k_tot, n + 1) + 1):
        for sub in combinations(range(k_tot), size):
            base = pts[:, sub[0], :]
            if size == 1:
                center = base
                r2 = np.zeros(npts)
            else:
                diffs = pts[:, sub[1:], :] - base[:, None, :]
                gram = 2 * np.einsum("nik,njk->nij", diffs, diffs)
                rhs = np.einsum("nik,nik->ni", diffs, diffs)
                dets = np.linalg.det(gram)
                ok = np.abs(dets) > 1e-12
                coeffs = np.zeros_like(rhs)
                if ok.any():
                    coeffs[ok] = np.linalg.solve(gram[ok], rhs[ok][..., None])[..., 0]
                center = base + np.einsum("ni,nik->nk", coeffs, diffs)
                r2 = ((center - base) ** 2).sum(axis=1)
                r2[~ok] = np.inf
            d2 = ((pts - center[:, None, :]) ** 2).sum(axis=2)
            valid = (d2 <= r2[:, None] * (1 + 1e-9) + 1e-12).all(axis=1)
            best = np.where(valid & (r2 < best), r2, best)
    return best <= radius**2 * (1 + 1e-9)


def ball_schneider_mc(n: int, m: int, samples: int, seed: int = 0) -> Estimate:
    """Monte Carlo estimate of vol(D^m(B)) / vol(B)^m for the unit ball."""
    rng = np.random.default_rng(seed)
    side = 4.0  # D^m(B) fits in [-2, 2]^{nm}
    x = rng.uniform(-2.0, 2.0, size=(samples, m, n))
    hits = _ball_mdiff_member_batch(x, 1.0)
    rate = hits.mean()
    box = side ** (n * m)
    vol = box * rate
    se = box * sqrt(max(rate * (1 - rate), 1e-300) / samples)
    denom = ball_volume(n) ** m
    return Estimate(vol / denom, se / denom, samples, seed)


@dataclass(frozen=True)
class BourgainMilmanVerdict:
    s_body: float
    s_ball: Estimate
    constant: float  # c^{nm} * pi * n * m
    holds_within_3se: bool
    symmetric: bool


def bourgain_milman_check(
    body: Body,
    m: int,
    samples: int,
    seed: int = 0,
    budget_dim: int = DEFAULT_BUDGET_DIM,
) -> BourgainMilmanVerdict:
    """Asymptotic lower bound S_{n,m}(K) >= c^{nm} (pi n m) S_{n,m}(B)."""
    n = body.dim
    if n < 3 or m < 2:
        raise ValueError("the bound is stated for n >= 3 and m >= 2")
    s_body = float(schneider_functional(body, m, budget_dim=budget_dim))
    s_ball = ball_schneider_mc(n, m, samples, seed)
    symmetric = body.centered().polytope.is_origin_symmetric() if not body.is_ball else True
    c = 0.5 if symmetric else 0.25
    const = c ** (n * m) * np.pi * n * m
    rhs = s_ball.scaled(const)
    holds = s_body >= rhs.value - 3 * rhs.std_error
    return BourgainMilmanVerdict(s_body, s_ball, float(const), holds, symmetric)


def polar_centroid_log(p: VPolytope, budget_dim: int = DEFAULT_BUDGET_DIM):
    """Exact centroid of the polar body (logged, never asserted)."""
    return centroid_exact(polar_body(p)) if p.dim <= budget_dim else None
