"""Convex bodies (polytopes and balls) and ordered collections of them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gamma, pi, sqrt

from .errors import DegenerateInput, DimensionMismatch
from .polytope import VPolytope, centroid_exact, volume_exact


def ball_volume(n: int, radius: float = 1.0) -> float:
    """Volume of the n-dimensional Euclidean ball."""
    return pi ** (n / 2) / gamma(1 + n / 2) * radius**n


def sphere_area(n: int) -> float:
    """Surface area of the unit sphere S^{n-1} in R^n."""
    return 2 * pi ** (n / 2) / gamma(n / 2)


@dataclass(frozen=True)
class Body:
    """Either a full-dimensional polytope or a centered Euclidean ball."""

    dim: int
    polytope: VPolytope | None = None
    ball_radius: Fraction | None = None

    def __post_init__(self):
        if (self.polytope is None) == (self.ball_radius is None):
            raise ValueError("exactly one of polytope/ball_radius must be set")
        if self.polytope is not None:
            if self.polytope.dim != self.dim:
                raise DimensionMismatch("body dim != polytope dim")
            if len(self.polytope.vertices) <= self.dim:
                raise DegenerateInput("polytope body must be full-dimensional")
        elif self.ball_radius <= 0:
            raise ValueError("ball radius must be positive")

    @staticmethod
    def from_polytope(p: VPolytope) -> "Body":
        return Body(dim=p.dim, polytope=p)

    @staticmethod
    def ball(radius, dim: int) -> "Body":
        return Body(dim=dim, ball_radius=Fraction(radius))

    @property
    def is_ball(self) -> bool:
        return self.ball_radius is not None

    def volume(self) -> Fraction | float:
        if self.is_ball:
            return ball_volume(self.dim, float(self.ball_radius))
        return volume_exact(self.polytope)

    def support(self, u) -> Fraction | float:
        """Support function value; exact for polytopes, float for balls."""
        if self.is_ball:
            return float(self.ball_radius) * sqrt(sum(float(x) ** 2 for x in u))
        return self.polytope.support(u)

    def centered(self) -> "Body":
        """Translate the centroid to the origin (balls already are)."""
        if self.is_ball:
            return self
        c = centroid_exact(self.polytope)
        return Body.from_polytope(self.polytope.translate(tuple(-x for x in c)))


@dataclass(frozen=True)
class BodyCollection:
    """The ordered tuple (K_0, ..., K_m) of bodies in R^n."""

    n: int
    m: int
    bodies: tuple[Body, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("order m must be >= 1")
        if len(self.bodies) != self.m + 1:
            raise ValueError(f"need exactly {self.m + 1} bodies, got {len(self.bodies)}")
        for b in self.bodies:
            if b.dim != self.n:
                raise DimensionMismatch("all bodies must share dimension n")

    @staticmethod
    def uniform(body: Body, m: int) -> "BodyCollection":
        return BodyCollection(n=body.dim, m=m, bodies=(body,) * (m + 1))

    @property
    def all_polytopes(self) -> bool:
        return all(not b.is_ball for b in self.bodies)

    @property
    def all_balls(self) -> bool:
        return all(b.is_ball for b in self.bodies)
