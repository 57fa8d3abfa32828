"""Approximately uniform sampling from convex bodies (float precision).

Rejection from the bounding box is used whenever a pilot run suggests an
acceptance rate of at least ``MIN_ACCEPT``; otherwise hit-and-run with a
configurable per-sample burn-in (default 10 * dim steps).  Every sampler
takes an explicit seed so parallel workers can use disjoint streams.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInput
from .polytope import HPolytope, VPolytope, bounding_box, facet_enum, interior_point, vertex_enum

MIN_ACCEPT = 1e-3
PILOT = 2048


def _float_hrep(p) -> tuple[np.ndarray, np.ndarray]:
    h = facet_enum(p) if isinstance(p, VPolytope) else p
    a = np.array([[float(c) for c in normal] for normal, _ in h.halfspaces])
    b = np.array([float(off) for _, off in h.halfspaces])
    return a, b


def sample_uniform(
    p: VPolytope | HPolytope,
    count: int,
    seed: int = 0,
    burn_in: int | None = None,
) -> np.ndarray:
    """Draw ``count`` approximately uniform points from a bounded polytope."""
    if isinstance(p, HPolytope):
        vp = vertex_enum(p)
    else:
        vp = p
    d = vp.dim
    if len(vp.vertices) <= d:
        raise DegenerateInput("polytope is not full-dimensional")
    a, b = _float_hrep(vp)
    lo_f, hi_f = bounding_box(vp)
    lo = np.array([float(x) for x in lo_f])
    hi = np.array([float(x) for x in hi_f])
    rng = np.random.default_rng(seed)

    pilot = rng.uniform(lo, hi, size=(PILOT, d))
    inside = np.all(pilot @ a.T <= b + 1e-12, axis=1)
    rate = inside.mean()
    if rate >= MIN_ACCEPT:
        return _rejection(rng, a, b, lo, hi, count, rate)
    return _hit_and_run(rng, vp, a, b, count, burn_in)


def _rejection(rng, a, b, lo, hi, count, rate_hint) -> np.ndarray:
    d = len(lo)
    out = np.empty((count, d))
    got = 0
    batch = max(1024, int(count / max(rate_hint, 1e-4)))
    batch = min(batch, 2_000_000)
    while got < count:
        cand = rng.uniform(lo, hi, size=(batch, d))
        keep = cand[np.all(cand @ a.T <= b + 1e-12, axis=1)]
        take = min(count - got, len(keep))
        out[got : got + take] = keep[:take]
        got += take
    return out


def _hit_and_run(rng, vp, a, b, count, burn_in) -> np.ndarray:
    d = vp.dim
    steps = burn_in if burn_in is not None else 10 * d
    x = np.array([float(c) for c in interior_point(facet_enum(vp))])
    out = np.empty((count, d))
    for i in range(count):
        for _ in range(steps):
            u = rng.standard_normal(d)
            u /= np.linalg.norm(u)
            au = a @ u
            slack = b - a @ x
            with np.errstate(divide="ignore"):
                ts = np.where(np.abs(au) > 1e-14, slack / au, np.inf * np.sign(au + 1e-300))
            t_hi = np.min(ts[au > 1e-14]) if np.any(au > 1e-14) else 1.0
            t_lo = np.max(ts[au < -1e-14]) if np.any(au < -1e-14) else -1.0
            if not np.isfinite(t_hi) or not np.isfinite(t_lo) or t_hi < t_lo:
                continue
            x = x + u * rng.uniform(t_lo, t_hi)
        out[i] = x
    return out


def sphere_points(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform directions on the unit sphere in R^n."""
    g = rng.standard_normal((count, n))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def monte_carlo_volume(p: VPolytope, samples: int, seed: int = 0) -> tuple[float, float]:
    """Rejection estimate (value, std_error) of the volume; float oracle."""
    a, b = _float_hrep(p)
    lo_f, hi_f = bounding_box(p)
    lo = np.array([float(x) for x in lo_f])
    hi = np.array([float(x) for x in hi_f])
    box = float(np.prod(hi - lo))
    rng = np.random.default_rng(seed)
    cand = rng.uniform(lo, hi, size=(samples, p.dim))
    hits = np.all(cand @ a.T <= b + 1e-12, axis=1)
    rate = hits.mean()
    se = float(np.sqrt(max(rate * (1 - rate), 1e-300) / samples))
    return box * rate, box * se
