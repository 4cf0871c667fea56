"""Two-phase tableau simplex for standard-form problems.

Solves  min c.x  s.t.  A x = b, x >= 0  with Bland's anti-cycling rule.
One implementation serves both backends: exact comparisons over Fractions,
or toleranced comparisons over floats (in which case an iteration cap turns
non-convergence into a distinct "stalled" status instead of a wrong answer).

Artificial columns are kept in the tableau after phase 1 (barred from
entering) so row prices and Farkas multipliers can be read off the
objective rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
STALLED = "stalled"


class Arith:
    """Comparison context: tol == None means exact rational arithmetic."""

    def __init__(self, tol: Optional[float] = None):
        self.tol = tol
        self.exact = tol is None

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def is_pos(self, x) -> bool:
        return x > (0 if self.exact else self.tol)

    def is_neg(self, x) -> bool:
        return x < (0 if self.exact else -self.tol)

    def is_zero(self, x) -> bool:
        return x == 0 if self.exact else abs(x) <= self.tol


@dataclass
class StandardResult:
    status: str
    x: Optional[tuple] = None      # primal solution (length n)
    value: object = None           # objective c.x at the optimum
    duals: Optional[tuple] = None  # row prices y: y.A_j <= c_j, y.b = value
    farkas: Optional[tuple] = None  # y with y.A <= 0 (entrywise), y.b > 0
    ray: Optional[tuple] = None    # x-space ray: A ray = 0, ray >= 0, c.ray < 0


def solve_standard_min(costs: Sequence, rows: Sequence[Sequence], rhs: Sequence,
                       arith: Optional[Arith] = None,
                       max_iterations: int = 50_000) -> StandardResult:
    arith = arith or Arith()
    n = len(costs)
    m = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError(f"row length {len(row)} != {n} variables")
    if len(rhs) != m:
        raise ValueError("rhs length mismatch")

    zero = arith.zero()
    one = zero + 1

    # Flip rows so b >= 0; remember orientation for row-indexed outputs.
    sign = [(-1 if arith.is_neg(b) else 1) for b in rhs]
    ncols = n + m
    tableau = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        t = [zero + v for v in row] + [zero] * m + [zero + b]
        if sign[i] < 0:
            t = [-v for v in t]
        t[n + i] = one
        tableau.append(t)
    basis = [n + i for i in range(m)]

    # Objective rows hold reduced costs; last entry is -(objective value).
    z_row = [zero + c for c in costs] + [zero] * (m + 1)
    w_row = [zero] * (ncols + 1)
    for t in tableau:
        for j in range(n):
            w_row[j] -= t[j]
        w_row[ncols] -= t[ncols]

    def pivot(obj_rows, r, col):
        piv = tableau[r][col]
        tableau[r] = [v / piv for v in tableau[r]]
        prow = tableau[r]
        for i in range(m):
            if i != r:
                f = tableau[i][col]
                if not arith.is_zero(f):
                    tableau[i] = [v - f * w for v, w in zip(tableau[i], prow)]
        for obj in obj_rows:
            f = obj[col]
            if not arith.is_zero(f):
                for j in range(ncols + 1):
                    obj[j] -= f * prow[j]
        basis[r] = col

    def bland_entering(obj, allowed_cols):
        for j in allowed_cols:
            if arith.is_neg(obj[j]):
                return j
        return None

    def bland_leaving(col):
        best = None
        for i in range(m):
            a = tableau[i][col]
            if arith.is_pos(a):
                ratio = tableau[i][ncols] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        return None if best is None else best[1]

    def run_phase(obj, other_obj, allowed_cols, budget):
        iters = 0
        while True:
            col = bland_entering(obj, allowed_cols)
            if col is None:
                return OPTIMAL, iters
            r = bland_leaving(col)
            if r is None:
                return UNBOUNDED, col
            pivot([obj, other_obj], r, col)
            iters += 1
            if iters > budget:
                if arith.exact:
                    # Bland's rule terminates on exact data; running out of
                    # budget means a bug, not a hard instance.
                    raise RuntimeError("anti-cycling pivot exceeded its budget on exact data")
                return STALLED, iters

    # Phase 1: minimize the artificial total.
    status, _ = run_phase(w_row, z_row, range(n), max_iterations)
    if status == STALLED:
        return StandardResult(STALLED)
    if status == UNBOUNDED:
        # The artificial total is bounded below by zero; only float
        # round-off can land here.
        if arith.exact:
            raise RuntimeError("phase 1 reported unbounded on exact data")
        return StandardResult(STALLED)
    infeas = -w_row[ncols]
    if arith.is_pos(infeas):
        # Farkas prices from phase-1 reduced costs of the artificial columns.
        y = tuple(sign[i] * (one - w_row[n + i]) for i in range(m))
        return StandardResult(INFEASIBLE, farkas=y)

    # Drive any leftover artificials out of the basis (degenerate pivots);
    # rows with no real pivot entry are redundant and stay inert.
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if not arith.is_zero(tableau[r][j])), None)
            if col is not None:
                pivot([w_row, z_row], r, col)

    # Phase 2 on the true costs, artificials barred from entering.
    status, info = run_phase(z_row, w_row, range(n), max_iterations)
    if status == STALLED:
        return StandardResult(STALLED)
    if status == UNBOUNDED:
        col = info
        ray = [zero] * n
        ray[col] = one
        for i in range(m):
            if basis[i] < n:
                ray[basis[i]] = -tableau[i][col]
        return StandardResult(UNBOUNDED, ray=tuple(ray))

    x = [zero] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][ncols]
    value = -z_row[ncols]
    duals = tuple(sign[i] * (-z_row[n + i]) for i in range(m))
    return StandardResult(OPTIMAL, x=tuple(x), value=value, duals=duals)
