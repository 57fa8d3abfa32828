"""Gaussian extremizer machinery and functional inequalities (float).

Everything in this module is numpy float arithmetic with explicit
conditioning guards; the exact-rational kernel is deliberately not used
here.  Contents: the block matrix built from a tuple of positive
definite matrices, its determinant identity, the normalized objective
whose supremum is (m+1)^{-n/2}, the sharp constant of the functional
polar inequality, Monte Carlo evaluation of that inequality's left side
for Gaussian and grid inputs, sampling from the associated Gaussian
measure on R^{nm}, and a variance/energy probe of the resulting
Poincare-type inequality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi, sqrt

import numpy as np

from .errors import IllConditioned, NonIntegrable, NotEven
from .polar import Estimate

COND_LIMIT = 1e12
SYM_TOL = 1e-12


@dataclass(frozen=True)
class PDMatrix:
    """Symmetric positive-definite matrix; construction fails loudly."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        if a.shape != (self.n, self.n):
            raise ValueError(f"expected {self.n}x{self.n} matrix")
        scale = max(np.abs(a).max(), 1.0)
        if np.abs(a - a.T).max() > SYM_TOL * scale:
            raise ValueError("matrix is not symmetric within 1e-12")
        try:
            np.linalg.cholesky(a)
        except np.linalg.LinAlgError as exc:
            raise ValueError("matrix is not positive definite") from exc
        object.__setattr__(self, "entries", a)

    @staticmethod
    def identity(n: int) -> "PDMatrix":
        return PDMatrix(n, np.eye(n))

    @staticmethod
    def random(n: int, rng: np.random.Generator, spread: float = 10.0) -> "PDMatrix":
        """Random PD matrix with eigenvalues log-uniform in [1/spread, spread]."""
        q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        lam = np.exp(rng.uniform(-np.log(spread), np.log(spread), n))
        return PDMatrix(n, (q * lam) @ q.T)

    def check_conditioning(self) -> None:
        if np.linalg.cond(self.entries) > COND_LIMIT:
            raise IllConditioned("condition number exceeds 1e12")


@dataclass(frozen=True)
class GaussianSpec:
    """The function c * exp(-<A x, x>/2)."""

    amplitude: float
    matrix: PDMatrix

    def __post_init__(self):
        if self.amplitude <= 0:
            raise ValueError("amplitude must be positive")

    @property
    def n(self) -> int:
        return self.matrix.n

    def values(self, x: np.ndarray) -> np.ndarray:
        quad = np.einsum("ni,ij,nj->n", x, self.matrix.entries, x)
        return self.amplitude * np.exp(-quad / 2)

    def polar(self) -> "GaussianSpec":
        return GaussianSpec(1.0 / self.amplitude, PDMatrix(self.n, np.linalg.inv(self.matrix.entries)))

    def lp_norm_integral(self, p: float) -> float:
        """Closed form of the integral of the p-th power."""
        n = self.n
        det = np.linalg.det(self.matrix.entries)
        return self.amplitude**p * (2 * pi / p) ** (n / 2) * det**-0.5


def block_matrix_M(mats: list[PDMatrix] | tuple[PDMatrix, ...]) -> np.ndarray:
    """(nm)x(nm) block matrix with A_0 everywhere and A_i added on the diagonal.

    Input is the tuple (A_0, A_1, ..., A_m); symmetric positive definite
    by construction.
    """
    a0 = mats[0].entries
    n = mats[0].n
    m = len(mats) - 1
    if any(mat.n != n for mat in mats):
        raise ValueError("all blocks must share dimension n")
    out = np.tile(a0, (m, m))
    for i in range(1, m + 1):
        s = slice((i - 1) * n, i * n)
        out[s, s] += mats[i].entries
    return out


@dataclass(frozen=True)
class DetIdentityReport:
    direct: float
    via_identity: float
    rel_diff: float
    holds: bool


def det_identity_check(mats, tol: float = 1e-9) -> DetIdentityReport:
    """det(M) against prod det(A_i) * det(sum A_i^{-1}), relative tolerance."""
    for mat in mats:
        mat.check_conditioning()
    m_big = block_matrix_M(mats)
    sign, logdet = np.linalg.slogdet(m_big)
    if sign <= 0:
        raise IllConditioned("block matrix lost positive definiteness numerically")
    direct = sign * np.exp(logdet)
    prod = 1.0
    inv_sum = np.zeros_like(mats[0].entries)
    for mat in mats:
        prod *= np.linalg.det(mat.entries)
        inv_sum += np.linalg.inv(mat.entries)
    via = prod * np.linalg.det(inv_sum)
    rel = abs(direct - via) / max(abs(direct), abs(via))
    return DetIdentityReport(direct=direct, via_identity=via, rel_diff=rel, holds=rel <= tol)


def f_objective(mats) -> float:
    """prod det(A_i)^{m/(2(m+1))} * det(M)^{-1/2}; maximized at equal tuples."""
    m = len(mats) - 1
    logdet_sum = sum(np.linalg.slogdet(mat.entries)[1] for mat in mats)
    _, logdet_m = np.linalg.slogdet(block_matrix_M(mats))
    return float(np.exp(logdet_sum * m / (2 * (m + 1)) - logdet_m / 2))


@dataclass(frozen=True)
class BoundProbeReport:
    trials: int
    violations: int
    max_value: float
    bound: float
    equal_tuple_gap: float


def f_bound_probe(n: int, m: int, trials: int, seed: int = 0, tol: float = 1e-9) -> BoundProbeReport:
    """Random tuples never exceed (m+1)^{-n/2}; equal tuples attain it."""
    rng = np.random.default_rng(seed)
    bound = (m + 1) ** (-n / 2)
    worst = -np.inf
    violations = 0
    for _ in range(trials):
        mats = [PDMatrix.random(n, rng) for _ in range(m + 1)]
        val = f_objective(mats)
        worst = max(worst, val)
        if val > bound * (1 + tol):
            violations += 1
    a = PDMatrix.random(n, rng)
    equal_gap = abs(f_objective([a] * (m + 1)) - bound) / bound
    return BoundProbeReport(
        trials=trials, violations=violations, max_value=float(worst), bound=bound,
        equal_tuple_gap=float(equal_gap),
    )


def schneider_constant(n: int, m: int) -> float:
    """Sharp constant of the functional polar inequality.

    Equals pi^n at m = 1; the two-factor closed form matches the
    optimization route (prefactor times the supremum) to float precision.
    """
    return (2 * pi * m / (m + 1)) ** (m * n / 2) * (2 * pi / (m + 1) ** (1 / m)) ** (n * m / 2)


def schneider_constant_via_optimum(n: int, m: int) -> float:
    """Re-derivation: (4 pi^2 m/(m+1))^{nm/2} times the supremum (m+1)^{-n/2}."""
    return (4 * pi**2 * m / (m + 1)) ** (n * m / 2) * (m + 1) ** (-n / 2)


# ---------------------------------------------------------------------------
# grid functions and their polars


@dataclass(frozen=True)
class GridFunction:
    """Nonnegative even function tabulated on a symmetric grid (n = 1 or 2).

    ``points`` has shape (G, n) and must be closed under negation;
    ``values`` holds f at those points.
    """

    n: int
    points: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.n or self.n not in (1, 2):
            raise ValueError("points must be (G, n) with n in {1, 2}")
        if np.any(vals < 0):
            raise ValueError("values must be nonnegative")
        order = np.lexsort(pts.T)
        neg_order = np.lexsort((-pts).T)
        if not np.allclose(pts[order], -pts[neg_order], atol=1e-12):
            raise NotEven("grid is not symmetric under negation")
        if not np.allclose(vals[order], vals[neg_order], rtol=1e-10, atol=1e-12):
            raise NotEven("function values are not even")
        near_origin = np.linalg.norm(pts, axis=1) <= np.linalg.norm(pts, axis=1).max() * 0.05 + 1e-12
        if not np.any(vals[near_origin] > 0):
            raise NonIntegrable("function vanishes near the origin; polar would not decay")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    def integral_power(self, p: float) -> float:
        """Grid quadrature of f^p (uniform cell weight)."""
        cell = _grid_cell_volume(self.points, self.n)
        return float((self.values**p).sum() * cell)

    def log_polar(self, y: np.ndarray) -> np.ndarray:
        """-log f_polar at query points y, shape (N, n): a direct max-scan."""
        mask = self.values > 0
        pts = self.points[mask]
        psi = -np.log(self.values[mask])
        out = np.empty(len(y))
        chunk = max(1, 10_000_000 // max(len(pts), 1))
        for i in range(0, len(y), chunk):
            block = y[i : i + chunk]
            scores = block @ pts.T - psi[None, :]
            out[i : i + chunk] = scores.max(axis=1)
        return out

    def polar_values(self, y: np.ndarray) -> np.ndarray:
        return np.exp(-self.log_polar(y))


def _grid_cell_volume(points: np.ndarray, n: int) -> float:
    xs = np.unique(points[:, 0])
    h = float(np.min(np.diff(xs)))
    return h**n


def plateau_grid_function(n: int = 1, radius: float = 1.0, width: float = 3.0, size: int = 257) -> GridFunction:
    """A smooth plateau (flat top, fast decay): far from any Gaussian."""
    axis = np.linspace(-width, width, size)
    if n == 1:
        pts = axis[:, None]
    else:
        xx, yy = np.meshgrid(axis, axis)
        pts = np.stack([xx.ravel(), yy.ravel()], axis=1)
    r = np.linalg.norm(pts, axis=1)
    vals = 1.0 / (1.0 + (r / radius) ** 8)
    return GridFunction(n=n, points=pts, values=vals)


# ---------------------------------------------------------------------------
# the functional inequality's left side


def functional_lhs_mc(funcs, samples: int, seed: int = 0) -> Estimate:
    """Left side of the functional polar inequality for m+1 inputs.

    The single-function integrals use closed forms (Gaussians) or grid
    quadrature; the nm-dimensional product-of-polars integral is Monte
    Carlo.  Gaussian inputs get a matched Gaussian proposal; grid inputs
    get a heavy-tailed Student proposal so the exponential tails of the
    polars keep the weights bounded.
    """
    m = len(funcs) - 1
    if m < 1:
        raise ValueError("need at least two functions")
    ns = {f.n for f in funcs}
    if len(ns) != 1:
        raise ValueError("all inputs must share the dimension")
    n = ns.pop()
    p = (m + 1) / m
    prefactor = 1.0
    for f in funcs:
        if isinstance(f, GaussianSpec):
            integral = f.lp_norm_integral(p)
        else:
            integral = f.integral_power(p)
        prefactor *= integral ** (m / (m + 1))
    if all(isinstance(f, GaussianSpec) for f in funcs):
        integral_est = _polar_product_integral_gaussian(funcs, n, m, samples, seed)
    else:
        integral_est = _polar_product_integral_grid(funcs, n, m, samples, seed)
    return integral_est.scaled(prefactor)


def _polar_product_integral_gaussian(funcs, n, m, samples, seed) -> Estimate:
    rng = np.random.default_rng(seed)
    inv_mats = [PDMatrix(n, np.linalg.inv(f.matrix.entries)) for f in funcs]
    m_big = block_matrix_M(inv_mats)
    rho = 0.7
    cov = np.linalg.inv(rho * m_big)
    chol = np.linalg.cholesky(cov)
    z = rng.standard_normal((samples, n * m)) @ chol.T
    log_density = _gaussian_logpdf(z, rho * m_big)
    log_integrand = _log_polar_product(funcs, z, n, m)
    w = np.exp(log_integrand - log_density)
    return Estimate(float(w.mean()), float(w.std(ddof=1) / sqrt(samples)), samples, seed)


def _polar_product_integral_grid(funcs, n, m, samples, seed) -> Estimate:
    rng = np.random.default_rng(seed)
    # per-coordinate Student-t proposal: polynomial tails dominate the
    # exponential decay of the polars, keeping the weights bounded
    df = 3.0
    scale = 1.0
    z = rng.standard_t(df, size=(samples, n * m)) * scale
    log_density = _t_logpdf(z, df, scale).sum(axis=1)
    log_integrand = _log_polar_product(funcs, z, n, m)
    w = np.exp(log_integrand - log_density)
    return Estimate(float(w.mean()), float(w.std(ddof=1) / sqrt(samples)), samples, seed)


def _t_logpdf(x: np.ndarray, df: float, scale: float) -> np.ndarray:
    from math import lgamma

    c = lgamma((df + 1) / 2) - lgamma(df / 2) - 0.5 * np.log(df * pi) - np.log(scale)
    return c - (df + 1) / 2 * np.log1p((x / scale) ** 2 / df)


def _gaussian_logpdf(z: np.ndarray, precision: np.ndarray) -> np.ndarray:
    d = z.shape[1]
    sign, logdet = np.linalg.slogdet(precision)
    quad = np.einsum("ni,ij,nj->n", z, precision, z)
    return 0.5 * logdet - 0.5 * d * np.log(2 * pi) - 0.5 * quad


def _log_polar_product(funcs, z, n, m) -> np.ndarray:
    blocks = [z[:, i * n : (i + 1) * n] for i in range(m)]
    total = -sum(blocks)
    out = np.zeros(len(z))
    for i, block in enumerate(blocks, start=1):
        out += _log_polar(funcs[i], block)
    out += _log_polar(funcs[0], total)
    return out


def _log_polar(f, x: np.ndarray) -> np.ndarray:
    if isinstance(f, GaussianSpec):
        inv = np.linalg.inv(f.matrix.entries)
        quad = np.einsum("ni,ij,nj->n", x, inv, x)
        return -np.log(f.amplitude) - quad / 2
    return -f.log_polar(x)


# ---------------------------------------------------------------------------
# order-one corollaries and the dual L2 comparison


def pairwise_product_integral(f0: GaussianSpec, f1: GaussianSpec) -> float:
    """Closed form of the integral of f0 * f1 for Gaussians."""
    n = f0.n
    s = f0.matrix.entries + f1.matrix.entries
    return f0.amplitude * f1.amplitude * (2 * pi) ** (n / 2) * np.linalg.det(s) ** -0.5


def order_one_corollary_mc(
    f0: GaussianSpec, f1: GaussianSpec, samples: int, seed: int = 0
) -> tuple[Estimate, Estimate]:
    """Both order-one forms: the L2-norm product form and the
    Cauchy-Schwarz product form; each is at most pi^n up to noise."""
    n = f0.n
    polar_int = _polar_product_integral_gaussian([f0, f1], n, 1, samples, seed)
    l2 = sqrt(f0.lp_norm_integral(2.0)) * sqrt(f1.lp_norm_integral(2.0))
    cs = pairwise_product_integral(f0, f1)
    return polar_int.scaled(l2), polar_int.scaled(cs)


def ellipsoid_dual_l2_identity(n: int, m: int, matrix: PDMatrix) -> tuple[float, float]:
    """Both sides of the sharp dual-L2 volume identity for a collection of
    equal centered ellipsoids {<Ax,x> <= 1}; they agree exactly.

    Left: prod vol(K_i)^{m/(m+1)} * vol of the polar of the iterated
    L2-sum body.  Right: vol(B)^m vol(B^{nm}) / (m+1)^{n/2}.
    """
    from .bodies import ball_volume

    a = matrix.entries
    det_a = np.linalg.det(a)
    vol_k = ball_volume(n) * det_a**-0.5
    # the dual L2 body of the collection is the ellipsoid of the block
    # quadratic form with every block equal to A^{-1}
    inv = PDMatrix(n, np.linalg.inv(a))
    q = block_matrix_M([inv] * (m + 1))
    vol_dual = ball_volume(n * m) * np.linalg.det(q) ** -0.5
    lhs = vol_k ** ((m + 1) * m / (m + 1)) * vol_dual
    rhs = ball_volume(n) ** m * ball_volume(n * m) / (m + 1) ** (n / 2)
    return float(lhs), float(rhs)


def dual_sum_gauge_comparison(collection, points: int, seed: int = 0) -> tuple[int, int, int]:
    """Spot-check of the gauge inequality behind the dual-sum inclusion.

    For random directions z the additive support value is at most
    sqrt(m+1) times the quadratic combination, with equality only in the
    reflection-symmetric order-one case.  Returns (checked, violations,
    strict_count).
    """
    from .mdiff import mdiff_support

    rng = np.random.default_rng(seed)
    n, m = collection.n, collection.m
    checked = violations = strict = 0
    for _ in range(points):
        z = rng.standard_normal(n * m)
        from fractions import Fraction

        zq = tuple(Fraction(float(c)).limit_denominator(10**4) for c in z)
        blocks = [zq[i * n : (i + 1) * n] for i in range(m)]
        total = tuple(sum(b[j] for b in blocks) for j in range(n))
        h0 = float(collection.bodies[0].support(total))
        his = [
            float(collection.bodies[i + 1].support(tuple(-c for c in blocks[i])))
            for i in range(m)
        ]
        additive = h0 + sum(his)
        quadratic = sqrt((m + 1) * (h0**2 + sum(h**2 for h in his)))
        checked += 1
        if additive > quadratic * (1 + 1e-12):
            violations += 1
        elif additive < quadratic * (1 - 1e-9):
            strict += 1
    return checked, violations, strict


# ---------------------------------------------------------------------------
# the Gaussian measure attached to the order-m structure


def schneider_gaussian_matrix(n: int, m: int) -> np.ndarray:
    """Precision matrix of the measure: identity blocks plus an all-ones
    block pattern; determinant (m+1)^n."""
    return block_matrix_M([PDMatrix.identity(n)] * (m + 1))


def schneider_gaussian_normalizer(n: int, m: int) -> tuple[float, float]:
    """(det M)^{1/2}/(2 pi)^{nm/2} against ((m+1)/(2 pi)^m)^{n/2}."""
    m_big = schneider_gaussian_matrix(n, m)
    direct = sqrt(np.linalg.det(m_big)) / (2 * pi) ** (n * m / 2)
    closed = ((m + 1) / (2 * pi) ** m) ** (n / 2)
    return float(direct), float(closed)


def sample_schneider_gaussian(n: int, m: int, count: int, seed: int = 0) -> np.ndarray:
    """Exact sampling: centered normal with covariance M^{-1}."""
    rng = np.random.default_rng(seed)
    m_big = schneider_gaussian_matrix(n, m)
    cov = np.linalg.inv(m_big)
    chol = np.linalg.cholesky(cov)
    return rng.standard_normal((count, n * m)) @ chol.T


# ---------------------------------------------------------------------------
# Poincare-type probe


@dataclass(frozen=True)
class TestFunction:
    """Even C^1 test function with an analytic gradient, vectorized."""

    name: str
    value: object  # callable (N, n) -> (N,)
    grad: object  # callable (N, n) -> (N, n)


def test_function(name: str, n: int, frequency: np.ndarray | None = None) -> TestFunction:
    if name == "constant":
        return TestFunction(
            name="constant",
            value=lambda x: np.ones(len(x)),
            grad=lambda x: np.zeros_like(x),
        )
    if name == "quadratic":
        return TestFunction(
            name="quadratic",
            value=lambda x: (x**2).sum(axis=1),
            grad=lambda x: 2 * x,
        )
    if name == "cosine":
        u = np.asarray(frequency if frequency is not None else np.ones(n), dtype=float)
        return TestFunction(
            name="cosine",
            value=lambda x: np.cos(x @ u),
            grad=lambda x: -np.sin(x @ u)[:, None] * u[None, :],
        )
    raise ValueError(f"unknown test function {name!r}")


def lifted_sum_values(fn: TestFunction, z: np.ndarray, n: int, m: int) -> np.ndarray:
    """sum_i psi(x_i) + psi(-sum x_i) evaluated on rows of z in R^{nm}."""
    blocks = [z[:, i * n : (i + 1) * n] for i in range(m)]
    total = -sum(blocks)
    out = fn.value(total)
    for b in blocks:
        out = out + fn.value(b)
    return out


def lifted_sum_gradient(fn: TestFunction, z: np.ndarray, n: int, m: int) -> np.ndarray:
    """Blockwise gradient: grad psi(x_i) - grad psi(-sum x_j)."""
    blocks = [z[:, i * n : (i + 1) * n] for i in range(m)]
    total = -sum(blocks)
    gt = fn.grad(total)
    out = np.empty_like(z)
    for i, b in enumerate(blocks):
        out[:, i * n : (i + 1) * n] = fn.grad(b) - gt
    return out


def gradient_check(fn: TestFunction, n: int, m: int, points: int = 100, seed: int = 0, h: float = 1e-5) -> float:
    """Max relative error of the analytic lifted gradient against central
    differences; should sit near 1e-5 * curvature."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((points, n * m))
    analytic = lifted_sum_gradient(fn, z, n, m)
    worst = 0.0
    for j in range(n * m):
        zp = z.copy()
        zm = z.copy()
        zp[:, j] += h
        zm[:, j] -= h
        fd = (lifted_sum_values(fn, zp, n, m) - lifted_sum_values(fn, zm, n, m)) / (2 * h)
        scale = np.maximum(np.abs(analytic[:, j]), 1.0)
        worst = max(worst, float(np.max(np.abs(fd - analytic[:, j]) / scale)))
    return worst


@dataclass(frozen=True)
class PoincareReport:
    lhs: float
    rhs: float
    margin_se: float  # (rhs - lhs) in combined std errors
    holds_within_3se: bool
    terms: dict = field(default_factory=dict)


def poincare_probe(fn: TestFunction, n: int, m: int, samples: int, seed: int = 0) -> PoincareReport:
    """Variance/energy inequality for the lifted function, by Monte Carlo.

    ((m+1)/m) Var psi + (1/(m+1)) Var of the lifted sum is at most half
    of [(1/(m+1)) lifted gradient energy + gradient energy], each under
    its own Gaussian measure; batching supplies the standard error.
    """
    rng = np.random.default_rng(seed)
    sigma = m / (m + 1)
    x = rng.standard_normal((samples, n)) * sqrt(sigma)
    z = sample_schneider_gaussian(n, m, samples, seed + 1)

    batches = 64
    vals = np.array_split(np.arange(samples), batches)
    diffs = []
    t1_all = t2_all = r1_all = r2_all = 0.0
    for idx in vals:
        psi = fn.value(x[idx])
        gpsi = fn.grad(x[idx])
        dpsi = lifted_sum_values(fn, z[idx], n, m)
        gdpsi = lifted_sum_gradient(fn, z[idx], n, m)
        t1 = (m + 1) / m * psi.var(ddof=1)
        t2 = 1 / (m + 1) * dpsi.var(ddof=1)
        r1 = 1 / (m + 1) * (gdpsi**2).sum(axis=1).mean()
        r2 = (gpsi**2).sum(axis=1).mean()
        diffs.append(0.5 * (r1 + r2) - t1 - t2)
    diffs = np.array(diffs)
    margin = float(diffs.mean())
    se = float(diffs.std(ddof=1) / sqrt(len(diffs)))

    psi = fn.value(x)
    dpsi = lifted_sum_values(fn, z, n, m)
    t1 = (m + 1) / m * psi.var(ddof=1)
    t2 = 1 / (m + 1) * dpsi.var(ddof=1)
    r1 = 1 / (m + 1) * (lifted_sum_gradient(fn, z, n, m) ** 2).sum(axis=1).mean()
    r2 = (fn.grad(x) ** 2).sum(axis=1).mean()
    lhs = t1 + t2
    rhs = 0.5 * (r1 + r2)
    return PoincareReport(
        lhs=float(lhs),
        rhs=float(rhs),
        margin_se=margin / se if se > 0 else float("inf"),
        holds_within_3se=margin >= -3 * se if se > 0 else lhs <= rhs,
        terms={"var_psi": float(t1), "var_lifted": float(t2), "energy_lifted": float(r1), "energy_psi": float(r2)},
    )


def classical_even_poincare_probe(fn: TestFunction, n: int, samples: int, seed: int = 0) -> PoincareReport:
    """Sanity cross-check: for even psi the Gaussian variance is at most
    half the gradient energy."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, n))
    batches = 64
    diffs = []
    for idx in np.array_split(np.arange(samples), batches):
        v = fn.value(x[idx]).var(ddof=1)
        e = (fn.grad(x[idx]) ** 2).sum(axis=1).mean()
        diffs.append(0.5 * e - v)
    diffs = np.array(diffs)
    se = float(diffs.std(ddof=1) / sqrt(len(diffs)))
    lhs = float(fn.value(x).var(ddof=1))
    rhs = float(0.5 * (fn.grad(x) ** 2).sum(axis=1).mean())
    return PoincareReport(
        lhs=lhs,
        rhs=rhs,
        margin_se=float(diffs.mean() / se) if se > 0 else float("inf"),
        holds_within_3se=diffs.mean() >= -3 * se if se > 0 else lhs <= rhs,
        terms={},
    )
