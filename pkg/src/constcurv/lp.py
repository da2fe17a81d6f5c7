"""Exact rational linear programming.

Two-phase primal simplex with Bland's rule, run on a sparse tableau of
``gmpy2.mpq`` rationals.  Public values are :class:`fractions.Fraction`.

Problems are stated as::

    E x = b,   lower <= x <= upper,   optimise c . x

A lower bound of ``None`` marks a free variable, an upper bound of ``None``
means no upper bound.  Infeasible outcomes carry a Farkas vector ``y`` on the
equality rows: with ``r = y^T E`` one has ``y . b < min{r . x : lower <= x <=
upper}``, which :func:`verify_certificate` rechecks exactly.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from gmpy2 import mpq

from .errors import ResourceLimitError

DEFAULT_MAX_PIVOTS = 10**6

_ZERO = mpq(0)


class Status(str, enum.Enum):
    FEASIBLE = "feasible"
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if type(x).__name__ == "mpq":
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact linear programs")
    return Fraction(x)


def _mpq(x) -> mpq:
    x = to_fraction(x)
    return mpq(x.numerator, x.denominator)


def _as_sparse(row, n: int) -> dict[int, Fraction]:
    if isinstance(row, Mapping):
        items = row.items()
    else:
        if len(row) != n:
            raise ValueError(f"row has length {len(row)}, expected {n}")
        items = enumerate(row)
    out = {}
    for j, v in items:
        if not 0 <= j < n:
            raise ValueError(f"column index {j} out of range")
        v = to_fraction(v)
        if v:
            out[j] = v
    return out


@dataclass
class LPProblem:
    """A linear program over the rationals.

    ``equalities`` holds ``(row, rhs)`` pairs; a row is either a dense
    sequence of length ``num_vars`` or a sparse ``{column: coefficient}``
    mapping.  ``lower`` defaults to all zeros.
    """

    num_vars: int
    equalities: list = field(default_factory=list)
    lower: Sequence | None = None
    upper: Sequence | None = None
    objective: Sequence | Mapping | None = None
    sense: str = "max"

    def __post_init__(self):
        n = self.num_vars
        if n < 0:
            raise ValueError("num_vars must be nonnegative")
        self.equalities = [(_as_sparse(r, n), to_fraction(b)) for r, b in self.equalities]
        lower = [Fraction(0)] * n if self.lower is None else list(self.lower)
        upper = [None] * n if self.upper is None else list(self.upper)
        if len(lower) != n or len(upper) != n:
            raise ValueError("bound vectors must have length num_vars")
        self.lower = [None if v is None else to_fraction(v) for v in lower]
        self.upper = [None if v is None else to_fraction(v) for v in upper]
        for lo, hi in zip(self.lower, self.upper):
            if lo is not None and hi is not None and lo > hi:
                raise ValueError("lower bound exceeds upper bound")
        if self.objective is not None:
            self.objective = _as_sparse(self.objective, n)
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min'")


@dataclass
class LPOutcome:
    status: Status
    point: list[Fraction] | None = None
    objective_value: Fraction | None = None
    certificate: list[Fraction] | None = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.status in (Status.FEASIBLE, Status.OPTIMAL, Status.UNBOUNDED)


class _Tableau:
    """Sparse simplex tableau; every row stores its basic column with coefficient 1."""

    def __init__(self, rows, rhs, n_cols, max_pivots):
        self.rows = rows
        self.rhs = rhs
        self.n_cols = n_cols
        self.basis = [n_cols + i for i in range(len(rows))]
        for i, row in enumerate(rows):
            row[n_cols + i] = mpq(1)
        self.pivots = 0
        self.max_pivots = max_pivots
        self.cost: dict[int, mpq] = {}
        self.value = _ZERO

    def pivot(self, r: int, j: int):
        self.pivots += 1
        if self.pivots > self.max_pivots:
            raise ResourceLimitError(f"simplex exceeded {self.max_pivots} pivots")
        prow = self.rows[r]
        piv = prow[j]
        if piv != 1:
            prow = {k: v / piv for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] /= piv
        br = self.rhs[r]
        items = list(prow.items())
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if f is None:
                continue
            for k, v in items:
                nv = row.get(k, _ZERO) - f * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]
            if br:
                self.rhs[i] -= f * br
        f = self.cost.get(j)
        if f is not None:
            cost = self.cost
            for k, v in items:
                nv = cost.get(k, _ZERO) - f * v
                if nv:
                    cost[k] = nv
                else:
                    del cost[k]
            self.value += f * br
        self.basis[r] = j

    def run(self, allowed) -> bool:
        """Minimise the current cost row.  Returns False when unbounded."""
        while True:
            entering = None
            for k, v in self.cost.items():
                if v < 0 and allowed(k) and (entering is None or k < entering):
                    entering = k
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is None or a <= 0:
                    continue
                ratio = self.rhs[i] / a
                if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                    best = (ratio, i)
            if best is None:
                return False
            self.pivot(best[1], entering)


class _StandardForm:
    """Maps a general problem onto ``A x' = b', x' >= 0`` with nonnegative ``b'``."""

    def __init__(self, p: LPProblem):
        self.problem = p
        self.var_cols: list[list[tuple[int, int]]] = []
        self.offset: list[Fraction] = []
        n_cols = 0
        for lo in p.lower:
            if lo is None:
                self.var_cols.append([(n_cols, 1), (n_cols + 1, -1)])
                self.offset.append(Fraction(0))
                n_cols += 2
            else:
                self.var_cols.append([(n_cols, 1)])
                self.offset.append(lo)
                n_cols += 1
        rows: list[dict[int, Fraction]] = []
        rhs: list[Fraction] = []
        for coeffs, b in p.equalities:
            row: dict[int, Fraction] = {}
            for j, a in coeffs.items():
                b -= a * self.offset[j]
                for c, s in self.var_cols[j]:
                    row[c] = row.get(c, 0) + s * a
            rows.append(row)
            rhs.append(b)
        self.n_eq = len(rows)
        for j, hi in enumerate(p.upper):
            if hi is None:
                continue
            row = {c: Fraction(s) for c, s in self.var_cols[j]}
            row[n_cols] = Fraction(1)
            n_cols += 1
            rows.append(row)
            rhs.append(hi - self.offset[j])
        self.n_cols = n_cols
        self.sign = [1 if b >= 0 else -1 for b in rhs]
        self.rows = [{k: _mpq(s * v) for k, v in row.items() if v} for row, s in zip(rows, self.sign)]
        self.rhs = [_mpq(s * b) for b, s in zip(rhs, self.sign)]

    def point(self, values: dict[int, Fraction]) -> list[Fraction]:
        return [off + sum((s * values.get(c, 0) for c, s in cols), Fraction(0))
                for off, cols in zip(self.offset, self.var_cols)]


def solve(problem: LPProblem, max_pivots: int = DEFAULT_MAX_PIVOTS) -> LPOutcome:
    """Solve ``problem`` exactly.

    Without an objective the status is FEASIBLE or INFEASIBLE; with one it is
    OPTIMAL, UNBOUNDED or INFEASIBLE.
    """
    sf = _StandardForm(problem)
    m, n = len(sf.rows), sf.n_cols
    tab = _Tableau(sf.rows, sf.rhs, n, max_pivots)

    # phase 1: minimise the sum of artificials
    cost: dict[int, mpq] = {}
    for row in tab.rows:
        for k, v in row.items():
            if k < n:
                cost[k] = cost.get(k, _ZERO) - v
    tab.cost = {k: v for k, v in cost.items() if v}
    tab.value = sum(tab.rhs, _ZERO)
    tab.run(lambda k: k < n)

    if tab.value > 0:
        y = [Fraction(0)] * m
        for i in range(m):
            d = tab.cost.get(n + i, _ZERO)
            # phase-1 dual is 1 - reduced cost; the Farkas vector is its negation
            y[i] = to_fraction(d - 1) * sf.sign[i]
        return LPOutcome(Status.INFEASIBLE, certificate=y[: sf.n_eq], pivots=tab.pivots)

    # drive zero-level artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(m):
        if tab.basis[i] >= n:
            k = next((k for k in sorted(tab.rows[i]) if k < n), None)
            if k is None:
                continue
            tab.pivot(i, k)
        keep.append(i)
    tab.rows = [{k: v for k, v in tab.rows[i].items() if k < n} for i in keep]
    tab.rhs = [tab.rhs[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    if problem.objective is None:
        values = {b: to_fraction(v) for b, v in zip(tab.basis, tab.rhs)}
        return LPOutcome(Status.FEASIBLE, point=sf.point(values), pivots=tab.pivots)

    sgn = -1 if problem.sense == "max" else 1
    c: dict[int, mpq] = {}
    const = Fraction(0)
    for j, a in problem.objective.items():
        const += a * sf.offset[j]
        for col, s in sf.var_cols[j]:
            c[col] = c.get(col, _ZERO) + _mpq(sgn * s * a)
    cost = dict(c)
    value = _ZERO
    for i, b in enumerate(tab.basis):
        cb = c.get(b)
        if not cb:
            continue
        for k, v in tab.rows[i].items():
            cost[k] = cost.get(k, _ZERO) - cb * v
        value += cb * tab.rhs[i]
    tab.cost = {k: v for k, v in cost.items() if v}
    tab.value = value
    bounded = tab.run(lambda k: True)
    values = {b: to_fraction(v) for b, v in zip(tab.basis, tab.rhs)}
    point = sf.point(values)
    if not bounded:
        return LPOutcome(Status.UNBOUNDED, point=point, pivots=tab.pivots)
    obj = sum((a * point[j] for j, a in problem.objective.items()), Fraction(0))
    return LPOutcome(Status.OPTIMAL, point=point, objective_value=obj, pivots=tab.pivots)


def verify_point(problem: LPProblem, x: Sequence) -> bool:
    """Exact re-substitution of ``x`` into every constraint."""
    if len(x) != problem.num_vars:
        return False
    x = [to_fraction(v) for v in x]
    for lo, hi, v in zip(problem.lower, problem.upper, x):
        if lo is not None and v < lo:
            return False
        if hi is not None and v > hi:
            return False
    for row, b in problem.equalities:
        if sum((a * x[j] for j, a in row.items()), Fraction(0)) != b:
            return False
    return True


def aggregate(problem: LPProblem, y: Sequence) -> tuple[dict[int, Fraction], Fraction]:
    """Return ``(y^T E, y . b)`` for multipliers on the equality rows."""
    r: dict[int, Fraction] = {}
    rhs = Fraction(0)
    for (row, b), w in zip(problem.equalities, y):
        w = to_fraction(w)
        if not w:
            continue
        rhs += w * b
        for j, a in row.items():
            r[j] = r.get(j, 0) + w * a
    return {j: v for j, v in r.items() if v}, rhs


def verify_certificate(problem: LPProblem, y: Sequence) -> bool:
    """Check a Farkas vector mechanically.

    The aggregated equation ``r . x = y . b`` must be impossible on the box
    of bounds: every coefficient of ``r`` has to point into a finite bound,
    and the resulting minimum of ``r . x`` must exceed ``y . b``.
    """
    if y is None or len(y) != len(problem.equalities):
        return False
    r, rhs = aggregate(problem, y)
    lowest = Fraction(0)
    for j, a in r.items():
        bound = problem.lower[j] if a > 0 else problem.upper[j]
        if bound is None:
            return False
        lowest += a * bound
    return rhs < lowest


def _integer_row(row) -> dict[int, int]:
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    fr = {j: to_fraction(v) for j, v in items if v}
    den = 1
    for v in fr.values():
        den = den * v.denominator // gcd(den, v.denominator)
    return {j: int(v * den) for j, v in fr.items()}


def rank(rows) -> int:
    """Exact rank by fraction-free sparse elimination.

    Rows may be dense sequences or sparse mappings.  Each elimination step
    replaces ``row`` by ``p * row - a * pivot_row`` and divides out the
    content, so entries stay integral and small.
    """
    work = [r for r in (_integer_row(row) for row in rows) if r]
    rk = 0
    while work:
        pi = min(range(len(work)), key=lambda i: len(work[i]))
        prow = work.pop(pi)
        col = min(prow)
        p = prow[col]
        rk += 1
        nxt = []
        for row in work:
            a = row.get(col)
            if a is not None:
                new = {k: p * v for k, v in row.items()}
                for k, v in prow.items():
                    nv = new.get(k, 0) - a * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                if not new:
                    continue
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                    if g == 1:
                        break
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
                row = new
            nxt.append(row)
        work = nxt
    return rk
