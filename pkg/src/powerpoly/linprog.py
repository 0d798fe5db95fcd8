"""Exact rational linear programming via two-phase primal simplex.

Bland's rule everywhere, so the method terminates without cycling; all
pivoting is done on Fractions, so optima and optimizers are exact.  The
problems this package generates are small (tens of variables, at most a
few hundred rows), which keeps the dense tableau affordable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

LE, GE, EQ = "<=", ">=", "=="


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    point: list[Fraction] | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """max c.x  s.t.  A x = b, x >= 0, b >= 0, starting from a given basis."""

    def __init__(self, a, b, basis):
        self.a = a  # m x n
        self.b = b  # m
        self.basis = basis  # m basic column indices
        self.m = len(a)
        self.n = len(a[0]) if a else 0

    def _price(self, c):
        """Reduced costs c_j - c_B . B^-1 A_j for the current (canonical) tableau."""
        dual = [c[bi] for bi in self.basis]
        red = []
        for j in range(self.n):
            s = c[j]
            for i in range(self.m):
                if self.a[i][j]:
                    s -= dual[i] * self.a[i][j]
            red.append(s)
        return red

    def _pivot(self, row, col):
        a, b = self.a, self.b
        inv = Fraction(1) / a[row][col]
        a[row] = [v * inv for v in a[row]]
        b[row] *= inv
        for i in range(self.m):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
                b[i] -= f * b[row]
        self.basis[row] = col

    def maximize(self, c, frozen=()):
        """Run primal simplex; `frozen` columns may never enter the basis.

        Returns "optimal" or "unbounded".
        """
        blocked = set(frozen)
        while True:
            red = self._price(c)
            col = next(
                (j for j in range(self.n) if j not in blocked and red[j] > 0), None
            )
            if col is None:
                return "optimal"
            row = None
            best = None
            for i in range(self.m):
                if self.a[i][col] > 0:
                    ratio = self.b[i] / self.a[i][col]
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[row]
                    ):
                        best = ratio
                        row = i
            if row is None:
                return "unbounded"
            self._pivot(row, col)

    def objective_value(self, c):
        return sum(c[self.basis[i]] * self.b[i] for i in range(self.m))

    def solution(self, n):
        x = [Fraction(0)] * n
        for i, bi in enumerate(self.basis):
            if bi < n:
                x[bi] = self.b[i]
        return x


def solve_lp(
    nvars: int,
    objective: Sequence,
    constraints: Sequence[tuple[Sequence, str, object]],
    sense: str = "max",
    nonneg: Sequence[bool] | None = None,
) -> LPResult:
    """Optimize objective.x subject to rows (coeffs, rel, rhs).

    Variables are unrestricted unless flagged in `nonneg`.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"bad sense {sense!r}")
    obj = [Fraction(v) for v in objective]
    if len(obj) != nvars:
        raise ValueError("objective length mismatch")
    if sense == "min":
        obj = [-v for v in obj]
    if nonneg is None:
        nonneg = [False] * nvars
    # Map original variables to standard-form columns (split free vars).
    col_of: list[tuple[int, int | None]] = []  # (plus column, minus column)
    ncols = 0
    for i in range(nvars):
        if nonneg[i]:
            col_of.append((ncols, None))
            ncols += 1
        else:
            col_of.append((ncols, ncols + 1))
            ncols += 2

    rows = []
    for coeffs, rel, rhs in constraints:
        if len(coeffs) != nvars:
            raise ValueError("constraint length mismatch")
        if rel not in (LE, GE, EQ):
            raise ValueError(f"bad relation {rel!r}")
        rows.append(([Fraction(v) for v in coeffs], rel, Fraction(rhs)))

    m = len(rows)
    nslack = sum(1 for _, rel, _ in rows if rel != EQ)
    total = ncols + nslack
    a = [[Fraction(0)] * total for _ in range(m)]
    b = [Fraction(0)] * m
    si = ncols
    for r, (coeffs, rel, rhs) in enumerate(rows):
        for i in range(nvars):
            if coeffs[i]:
                plus, minus = col_of[i]
                a[r][plus] = coeffs[i]
                if minus is not None:
                    a[r][minus] = -coeffs[i]
        if rel == LE:
            a[r][si] = Fraction(1)
            si += 1
        elif rel == GE:
            a[r][si] = Fraction(-1)
            si += 1
        b[r] = rhs
        if b[r] < 0:
            a[r] = [-v for v in a[r]]
            b[r] = -b[r]

    # Phase 1: artificial basis.
    art = list(range(total, total + m))
    for r in range(m):
        a[r] = a[r] + [Fraction(1) if i == r else Fraction(0) for i in range(m)]
    tab = _Tableau(a, b, list(art))
    phase1 = [Fraction(0)] * total + [Fraction(-1)] * m
    tab.maximize(phase1)
    if tab.objective_value(phase1) != 0:
        return LPResult("infeasible")
    # Drive leftover artificials out of the basis where possible.
    for i in range(tab.m):
        if tab.basis[i] >= total:
            col = next((j for j in range(total) if tab.a[i][j]), None)
            if col is not None:
                tab._pivot(i, col)

    # Phase 2 on the original columns only.
    c2 = [Fraction(0)] * (total + m)
    for i in range(nvars):
        plus, minus = col_of[i]
        c2[plus] = obj[i]
        if minus is not None:
            c2[minus] = -obj[i]
    status = tab.maximize(c2, frozen=range(total, total + m))
    if status == "unbounded":
        return LPResult("unbounded")
    xs = tab.solution(total)
    point = []
    for i in range(nvars):
        plus, minus = col_of[i]
        v = xs[plus] - (xs[minus] if minus is not None else 0)
        point.append(v)
    value = sum(o * p for o, p in zip(obj, point))
    if sense == "min":
        value = -value
    return LPResult("optimal", value, point)
