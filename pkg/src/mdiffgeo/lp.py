"""Exact rational linear programming.

Two-phase simplex with Bland's anti-cycling rule on a condensed (Tucker)
tableau: rows are the constraints, columns are the nonbasic variables, so
a pivot costs O(rows * vars) rather than O(rows * (rows + vars)).  Free
variables are split into positive and negative parts.  All arithmetic is
``fractions.Fraction``; results are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Unbounded

ZERO = Fraction(0)
ONE = Fraction(1)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
OPTIMAL = "optimal"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def is_feasible(self) -> bool:
        return self.status != INFEASIBLE


def lp_feasible(halfspaces, objective=None, equalities=()) -> LPResult:
    """Solve { <a,x> <= b } (+ optional equalities), maximizing ``objective``.

    ``halfspaces`` is an iterable of (normal, offset) pairs over free
    variables.  Without an objective the result is Feasible(witness) or
    Infeasible; with one it is Optimal(optimizer, value) and Unbounded is
    raised when the maximum is infinite.
    """
    ineqs = [(tuple(Fraction(c) for c in a), Fraction(b)) for a, b in halfspaces]
    eqs = [(tuple(Fraction(c) for c in a), Fraction(b)) for a, b in equalities]
    if not ineqs and not eqs:
        raise ValueError("no constraints given")
    d = len(ineqs[0][0]) if ineqs else len(eqs[0][0])
    for a, _ in ineqs + eqs:
        if len(a) != d:
            raise ValueError("inconsistent constraint dimensions")

    rows = list(ineqs)
    for a, b in eqs:
        rows.append((a, b))
        rows.append((tuple(-c for c in a), -b))

    tab = _Tableau(rows, d)
    if not tab.phase_one():
        return LPResult(INFEASIBLE)
    if objective is None:
        return LPResult(FEASIBLE, x=tab.solution())
    obj = tuple(Fraction(c) for c in objective)
    if len(obj) != d:
        raise ValueError("objective dimension mismatch")
    if not tab.phase_two(obj):
        raise Unbounded("objective is unbounded above on the feasible region")
    x = tab.solution()
    value = sum(c * v for c, v in zip(obj, x))
    return LPResult(OPTIMAL, x=x, value=value)


def lp_solve(halfspaces, objective, equalities=()) -> LPResult:
    """Alias of :func:`lp_feasible` with a mandatory objective."""
    return lp_feasible(halfspaces, objective=objective, equalities=equalities)


class _Tableau:
    """Condensed simplex tableau over Fractions.

    Row i encodes   basic_i = rhs_i - sum_j T[i][j] * nonbasic_j
    and the objective row (index m) encodes the objective the same way.
    Variable ids: 0..2d-1 are the split structural variables (x_k = u_k -
    w_k with u_k = id k, w_k = id d+k), then one slack per row, then the
    single phase-one artificial.
    """

    def __init__(self, rows, d: int):
        self.d = d
        self.m = len(rows)
        self.t: list[list[Fraction]] = []
        for a, b in rows:
            self.t.append(list(a) + [-c for c in a] + [b])
        self.row_ids = [2 * d + i for i in range(self.m)]
        self.col_ids = list(range(2 * d))
        self.art_id = 2 * d + self.m

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, r: int, c: int, obj: list[Fraction]) -> None:
        t = self.t
        p = t[r][c]
        inv = ONE / p
        row_r = t[r]
        ncols = len(row_r)
        for j in range(ncols):
            row_r[j] *= inv
        row_r[c] = inv
        for row in t:
            if row is row_r:
                continue
            f = row[c]
            if f != 0:
                for j in range(ncols):
                    row[j] -= f * row_r[j]
                row[c] = -f * inv
        f = obj[c]
        if f != 0:
            for j in range(ncols):
                obj[j] -= f * row_r[j]
            obj[c] = -f * inv
        self.row_ids[r], self.col_ids[c] = self.col_ids[c], self.row_ids[r]

    def _run_simplex(self, obj: list[Fraction]) -> bool:
        """Maximize; True at optimum, False when unbounded.  Bland's rule."""
        t = self.t
        while True:
            enter = None
            enter_id = None
            for j, cid in enumerate(self.col_ids):
                if obj[j] < 0 and (enter_id is None or cid < enter_id):
                    enter = j
                    enter_id = cid
            if enter is None:
                return True
            leave = None
            best = None
            leave_id = None
            for i in range(self.m):
                coef = t[i][enter]
                if coef > 0:
                    ratio = t[i][-1] / coef
                    if best is None or ratio < best or (
                        ratio == best and self.row_ids[i] < leave_id
                    ):
                        best = ratio
                        leave = i
                        leave_id = self.row_ids[i]
            if leave is None:
                return False
            self._pivot(leave, enter, obj)

    # -- phases -----------------------------------------------------------

    def phase_one(self) -> bool:
        worst = min(range(self.m), key=lambda i: self.t[i][-1], default=None)
        if worst is None or self.t[worst][-1] >= 0:
            return True
        for i, row in enumerate(self.t):
            row.insert(len(row) - 1, -ONE)
        self.col_ids.append(self.art_id)
        art_col = len(self.col_ids) - 1
        # objective: maximize -z  (z is the artificial)
        obj = [ZERO] * (len(self.col_ids) + 1)
        obj[art_col] = ONE
        self._pivot(worst, art_col, obj)
        self._run_simplex(obj)  # bounded below by construction
        if obj[-1] < 0:
            return False
        if self.art_id in self.row_ids:
            r = self.row_ids.index(self.art_id)
            c = next((j for j, v in enumerate(self.t[r][:-1]) if v != 0), None)
            if c is not None:
                self._pivot(r, c, obj)
            else:
                # redundant 0 = 0 row; drop it
                del self.t[r], self.row_ids[r]
                self.m -= 1
        if self.art_id in self.col_ids:
            c = self.col_ids.index(self.art_id)
            del self.col_ids[c]
            for row in self.t:
                del row[c]
        return True

    def phase_two(self, objective) -> bool:
        obj = [ZERO] * (len(self.col_ids) + 1)
        coeff = {}
        for k, c in enumerate(objective):
            coeff[k] = coeff.get(k, ZERO) + c
            coeff[self.d + k] = coeff.get(self.d + k, ZERO) - c
        # express the objective over the current nonbasic variables
        for j, cid in enumerate(self.col_ids):
            if cid in coeff:
                obj[j] += coeff[cid]
        for i, rid in enumerate(self.row_ids):
            c = coeff.get(rid)
            if c:
                row = self.t[i]
                obj[-1] += c * row[-1]
                for j in range(len(self.col_ids)):
                    obj[j] -= c * row[j]
        # we maximize f = obj[-1] - sum obj[j] * nonbasic_j, so flip signs
        obj = [-v for v in obj[:-1]] + [obj[-1]]
        return self._run_simplex(obj)

    def solution(self) -> tuple[Fraction, ...]:
        vals = {}
        for i, rid in enumerate(self.row_ids):
            vals[rid] = self.t[i][-1]
        x = []
        for k in range(self.d):
            x.append(vals.get(k, ZERO) - vals.get(self.d + k, ZERO))
        return tuple(x)
