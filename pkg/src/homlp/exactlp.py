"""Exact rational linear programming.

A dense two-phase tableau simplex over :class:`fractions.Fraction` with
Bland's rule (lowest index enters, lowest basic index leaves on ties).
No floating point is involved anywhere.  Every optimal solution carries a
dual vector, and :func:`certify` checks primal feasibility, dual
feasibility and equal objectives exactly.
"""
from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError

__all__ = [
    "Fraction",
    "parse_rational",
    "format_rational",
    "LinearProgram",
    "LPSolution",
    "solve_min",
    "certify",
    "CertificateError",
    "COUNTERS",
]

log = logging.getLogger(__name__)

# running totals; callers compare them to confirm every optimum was certified
COUNTERS: Counter[str] = Counter()

_RAT = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into a reduced Fraction."""
    m = _RAT.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}", 0)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_SENSES = ("<=", ">=", "==")


@dataclass
class LinearProgram:
    """``minimize c.x`` subject to rows ``a.x (<=|>=|==) b``.

    Variables are nonnegative unless ``nonneg[j]`` is False.
    """

    n_vars: int
    objective: list[Fraction] = field(default_factory=list)
    rows: list[tuple[list[Fraction], str, Fraction]] = field(default_factory=list)
    nonneg: list[bool] = field(default_factory=list)

    def __post_init__(self):
        if not self.objective:
            self.objective = [Fraction(0)] * self.n_vars
        self.objective = [Fraction(c) for c in self.objective]
        if not self.nonneg:
            self.nonneg = [True] * self.n_vars
        if len(self.objective) != self.n_vars or len(self.nonneg) != self.n_vars:
            raise ValueError("objective/nonneg width differs from n_vars")

    def add(self, coeffs: Sequence, sense: str, rhs) -> int:
        if sense not in _SENSES:
            raise ValueError(f"unknown row sense {sense!r}")
        if len(coeffs) != self.n_vars:
            raise ValueError(f"row width {len(coeffs)} != {self.n_vars}")
        self.rows.append(([Fraction(a) for a in coeffs], sense, Fraction(rhs)))
        return len(self.rows) - 1

    def add_le(self, coeffs, rhs) -> int:
        return self.add(coeffs, "<=", rhs)

    def add_ge(self, coeffs, rhs) -> int:
        return self.add(coeffs, ">=", rhs)

    def add_eq(self, coeffs, rhs) -> int:
        return self.add(coeffs, "==", rhs)

    def row_value(self, i: int, x: Sequence[Fraction]) -> Fraction:
        return sum((a * xj for a, xj in zip(self.rows[i][0], x)), Fraction(0))


@dataclass
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: list[Fraction] = field(default_factory=list)
    duals: list[Fraction] = field(default_factory=list)
    tight: list[int] = field(default_factory=list)
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Rows ``[coeffs..., rhs]`` plus an objective row of reduced costs."""

    def __init__(self, rows, basis, ncols):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, c: int):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            row = [v * inv if v else v for v in row]
            self.rows[r] = row
        nz = [j for j, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    for j in nz:
                        other[j] -= f * row[j]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        d = list(cost) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j, v in enumerate(row):
                    if v:
                        d[j] -= cb * v
        return d

    def run(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> str:
        """Bland's-rule primal simplex from the current feasible basis."""
        while True:
            d = self.reduced_costs(cost)
            enter = next((j for j in range(self.ncols) if allowed[j] and d[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)

    def dump(self, names: Sequence[str]) -> str:
        width = [max(len(n), 6) for n in names] + [6]
        lines = ["basis | " + " ".join(n.rjust(w) for n, w in zip(list(names) + ["rhs"], width))]
        for b, row in zip(self.basis, self.rows):
            cells = " ".join(format_rational(v).rjust(w) for v, w in zip(row, width))
            lines.append(f"{names[b]:>5} | {cells}")
        return "\n".join(lines)


def solve_min(lp: LinearProgram, verbose: bool = False) -> LPSolution:
    """Solve ``lp`` exactly.  Infeasible/unbounded are reported in ``status``."""
    n = lp.n_vars
    # column layout: split variables, then one slack/surplus per inequality,
    # then one artificial per row (artificials never re-enter in phase 2)
    var_cols: list[list[tuple[int, int]]] = []
    ncols = 0
    for j in range(n):
        if lp.nonneg[j]:
            var_cols.append([(ncols, 1)])
            ncols += 1
        else:
            var_cols.append([(ncols, 1), (ncols + 1, -1)])
            ncols += 2
    n_struct = ncols
    m = len(lp.rows)
    flips = []
    slack_col: list[int | None] = []
    for coeffs, sense, rhs in lp.rows:
        flip = rhs < 0
        flips.append(flip)
        if sense == "==":
            slack_col.append(None)
        else:
            slack_col.append(ncols)
            ncols += 1
    art_start = ncols
    ncols += m
    names = []
    for j in range(n):
        names.extend([f"x{j}"] if lp.nonneg[j] else [f"x{j}+", f"x{j}-"])
    names += [f"s{i}" for i in range(m) if slack_col[i] is not None]
    names += [f"a{i}" for i in range(m)]

    rows = []
    basis = []
    cost1 = [Fraction(0)] * ncols
    for i, (coeffs, sense, rhs) in enumerate(lp.rows):
        sgn = -1 if flips[i] else 1
        row = [Fraction(0)] * (ncols + 1)
        for j, a in enumerate(coeffs):
            if a:
                for col, s in var_cols[j]:
                    row[col] = sgn * s * a
        eff = sense
        if flips[i] and sense != "==":
            eff = ">=" if sense == "<=" else "<="
        if slack_col[i] is not None:
            row[slack_col[i]] = Fraction(1 if eff == "<=" else -1)
        row[art_start + i] = Fraction(1)
        row[-1] = sgn * rhs
        rows.append(row)
        if eff == "<=":
            basis.append(slack_col[i])
        else:
            basis.append(art_start + i)
            cost1[art_start + i] = Fraction(1)
    tab = _Tableau(rows, basis, ncols)

    allowed = [True] * ncols
    for i in range(m):
        allowed[art_start + i] = False
    if any(cost1):
        allowed1 = [True] * ncols
        for i in range(m):
            # artificials of <= rows are never basic and must stay out
            allowed1[art_start + i] = cost1[art_start + i] != 0
        tab.run(cost1, allowed1)
        infeas = sum((cost1[b] * tab.rows[i][-1] for i, b in enumerate(tab.basis)), Fraction(0))
        if infeas > 0:
            return LPSolution("infeasible", pivots=tab.pivots)
        # drive remaining (zero-valued) artificials out of the basis
        for i in range(m):
            b = tab.basis[i]
            if b >= art_start:
                col = next((j for j in range(art_start) if tab.rows[i][j] != 0), None)
                if col is not None:
                    tab.pivot(i, col)
    cost2 = [Fraction(0)] * ncols
    for j in range(n):
        for col, s in var_cols[j]:
            cost2[col] = s * lp.objective[j]
    # redundant rows keep an artificial at level 0 in the basis; it never
    # leaves because its row has no structural entries, which is harmless
    status = tab.run(cost2, allowed)
    if verbose:
        log.info("final tableau:\n%s", tab.dump(names))
    if status == "unbounded":
        return LPSolution("unbounded", pivots=tab.pivots)

    val = [Fraction(0)] * ncols
    for i, b in enumerate(tab.basis):
        val[b] = tab.rows[i][-1]
    x = [sum((s * val[col] for col, s in var_cols[j]), Fraction(0)) for j in range(n)]
    d = tab.reduced_costs(cost2)
    duals = []
    for i in range(m):
        # the artificial column of row i is +e_i with zero phase-2 cost,
        # so its reduced cost is -y_i
        y = -d[art_start + i]
        duals.append(-y if flips[i] else y)
    value = sum((c * xj for c, xj in zip(lp.objective, x)), Fraction(0))
    tight = [i for i in range(m) if lp.row_value(i, x) == lp.rows[i][2]]
    COUNTERS["optimal_solves"] += 1
    return LPSolution("optimal", value, x, duals, tight, tab.pivots)


class CertificateError(AssertionError):
    pass


def certify(lp: LinearProgram, sol: LPSolution) -> None:
    """Check optimality of ``sol`` exactly via LP duality; raise on failure.

    Dual of ``min c.x`` with rows ``a_i.x (sense) b_i``: maximise ``b.y``
    subject to ``A^T y <= c`` on nonnegative variables (``==`` on free
    ones), with ``y_i <= 0`` on ``<=`` rows and ``y_i >= 0`` on ``>=`` rows.
    """
    if not sol.optimal:
        raise CertificateError(f"no certificate for status {sol.status}")
    x, y = sol.x, sol.duals
    for i, (a, sense, b) in enumerate(lp.rows):
        v = lp.row_value(i, x)
        if (sense == "<=" and v > b) or (sense == ">=" and v < b) or (sense == "==" and v != b):
            raise CertificateError(f"row {i} violated: {v} {sense} {b}")
        if (sense == "<=" and y[i] > 0) or (sense == ">=" and y[i] < 0):
            raise CertificateError(f"dual sign wrong on row {i}: {y[i]}")
    for j in range(lp.n_vars):
        if lp.nonneg[j] and x[j] < 0:
            raise CertificateError(f"x{j} negative")
        aty = sum((row[0][j] * yi for row, yi in zip(lp.rows, y)), Fraction(0))
        c = lp.objective[j]
        if (lp.nonneg[j] and aty > c) or (not lp.nonneg[j] and aty != c):
            raise CertificateError(f"dual constraint {j} violated: {aty} vs {c}")
    primal = sum((c * xj for c, xj in zip(lp.objective, x)), Fraction(0))
    dual = sum((row[2] * yi for row, yi in zip(lp.rows, y)), Fraction(0))
    if primal != dual or primal != sol.value:
        raise CertificateError(f"objectives differ: primal {primal}, dual {dual}")
    COUNTERS["certified"] += 1


def lp_from_rows(n_vars: int, objective: Iterable, le_rows=(), eq_rows=()) -> LinearProgram:
    lp = LinearProgram(n_vars, [Fraction(c) for c in objective])
    for a, b in le_rows:
        lp.add_le(a, b)
    for a, b in eq_rows:
        lp.add_eq(a, b)
    return lp
