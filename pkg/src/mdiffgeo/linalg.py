"""Exact rational linear algebra on small dense matrices.

Everything here works on tuples of ``fractions.Fraction`` (type alias
``Vec``) or, in the hot paths, on plain ``int`` rows after a common
denominator has been cleared.  Determinants use fraction-free Bareiss
elimination so intermediate values stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(*coords) -> Vec:
    return tuple(Fraction(c) for c in coords)


def dot(u, v) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def vneg(u):
    return tuple(-a for a in u)


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def int_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix via Bareiss elimination."""
    return _int_det_inplace([row[:] for row in rows])


def _int_det_inplace(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix (fraction-free elimination, full pivoting)."""
    a = [row[:] for row in rows if any(row)]
    if not a:
        return 0
    cols = len(a[0])
    rank = 0
    prev = 1
    for col in range(cols):
        piv = None
        for i in range(rank, len(a)):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pk = a[rank][col]
        for i in range(rank + 1, len(a)):
            aic = a[i][col]
            for j in range(cols):
                a[i][j] = (a[i][j] * pk - aic * a[rank][j]) // prev
        prev = pk
        rank += 1
        if rank == len(a):
            break
    return rank


def frac_det(rows) -> Fraction:
    """Determinant of a square matrix of Fractions."""
    scaled = []
    denom = ONE
    for row in rows:
        mult = lcm(*(f.denominator for f in row)) if row else 1
        scaled.append([int(f * mult) for f in row])
        denom *= mult
    return Fraction(int_det(scaled), 1) / denom


def frac_rank(rows) -> int:
    scaled = []
    for row in rows:
        mult = lcm(*(f.denominator for f in row)) if row else 1
        scaled.append([int(Fraction(f) * mult) for f in row])
    return int_rank(scaled)


def solve(a_rows, b) -> Vec | None:
    """Solve the square system A x = b exactly; None when A is singular."""
    n = len(a_rows)
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(aug[i][n] for i in range(n))


def clear_denominators(points) -> tuple[list[IntVec], int]:
    """Scale a point set by the common denominator L, returning int points and L."""
    denoms = {f.denominator for p in points for f in p}
    mult = lcm(*denoms) if denoms else 1
    return [tuple(int(f * mult) for f in p) for p in points], mult


def primitive(ints: IntVec) -> IntVec:
    """Divide an integer vector by the gcd of its entries (gcd > 0)."""
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g <= 1:
        return tuple(ints)
    return tuple(x // g for x in ints)


def primitive_direction(fracs) -> IntVec:
    """Primitive integer vector positively proportional to a rational vector."""
    mult = lcm(*(f.denominator for f in fracs))
    return primitive(tuple(int(f * mult) for f in fracs))


def hyperplane_through(points: list[IntVec]) -> tuple[IntVec, int, int] | None:
    """Hyperplane <a, x> = b through d integer points in Z^d.

    Returns (a, b, g) with primitive a and g > 0 the gcd of the raw
    cofactor normal, so that g * (<a, x> - b) recovers the signed simplex
    determinant det(p1 - x, ..., pd - x).  None when the points are
    affinely dependent.  Orientation is arbitrary; callers fix it against
    a reference point.
    """
    d = len(points[0])
    base = points[0]
    rows = [[p[j] - base[j] for j in range(d)] for p in points[1:]]
    normal = []
    sign = 1
    for j in range(d):
        minor = [row[:j] + row[j + 1 :] for row in rows]
        normal.append(sign * _int_det_inplace(minor))
        sign = -sign
    if not any(normal):
        return None
    g = 0
    for x in normal:
        g = gcd(g, x)
    normal = [x // g for x in normal]
    b = sum(a * x for a, x in zip(normal, base))
    return tuple(normal), b, g


def identity_matrix(n: int) -> tuple[Vec, ...]:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def perp_basis(v: Vec) -> tuple[Vec, ...]:
    """n-1 independent rational vectors orthogonal to a nonzero v in Q^n."""
    n = len(v)
    k = next(i for i, x in enumerate(v) if x != 0)
    basis = []
    for j in range(n):
        if j == k:
            continue
        w = [ZERO] * n
        w[j] = v[k]
        w[k] = -v[j]
        basis.append(tuple(w))
    return tuple(basis)
