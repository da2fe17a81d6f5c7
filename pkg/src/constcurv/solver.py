"""Constant curvature: the linear system, its feasibility, its solution set.

The unknowns are the shares ``p_x(v)`` for every simplex ``x`` of dimension
at least one and every vertex ``v`` of ``x``.  Vertex simplices keep their
energy.  The system asks for ``K(v) = H(G)/|V|`` at every vertex together
with ``sum_v p_x(v) = 1`` on every simplex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels, lp
from .complex import Graph, Simplex, SimplicialComplex, build_clique_complex, is_tree
from .curvature import DistributionFamily, curvature_bounds, curvature_from_family, default_energy
from .errors import EmptyComplexError, NotATreeError, ShareOutOfRangeError


@dataclass
class ConstantCurvatureSystem:
    complex: SimplicialComplex
    energy: dict[Simplex, Fraction]
    variables: list[tuple[Simplex, int]]
    target: Fraction
    normalization_rows: list[tuple[dict[int, Fraction], Fraction]]
    vertex_rows: list[tuple[dict[int, Fraction], Fraction]]

    @property
    def rows(self):
        return self.normalization_rows + self.vertex_rows

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def to_lp(self, objective=None, sense="max") -> lp.LPProblem:
        return lp.LPProblem(self.num_vars, list(self.rows), objective=objective, sense=sense)

    def family(self, point) -> DistributionFamily:
        shares: dict[Simplex, list] = {}
        for (x, _), v in zip(self.variables, point):
            shares.setdefault(x, []).append(v)
        return DistributionFamily(shares)

    def point(self, family: DistributionFamily) -> list[Fraction]:
        return [Fraction(family.share(x, v)) for x, v in self.variables]


def assemble(c: SimplicialComplex, h=None) -> ConstantCurvatureSystem:
    if not c.vertices:
        raise EmptyComplexError("the complex has no vertices")
    h = default_energy(c) if h is None else h
    total = sum((Fraction(h[x]) for x in c.simplices), Fraction(0))
    target = total / len(c.vertices)
    variables: list[tuple[Simplex, int]] = []
    norm = []
    per_vertex: dict[int, dict[int, Fraction]] = {v: {} for v in c.vertices}
    for x in c.simplices:
        if len(x) == 1:
            continue
        hx = Fraction(h[x])
        row = {}
        for v in x:
            j = len(variables)
            variables.append((x, v))
            row[j] = Fraction(1)
            if hx:
                per_vertex[v][j] = hx
        norm.append((row, Fraction(1)))
    vrows = [(per_vertex[v], target - Fraction(h[(v,)])) for v in c.vertices]
    return ConstantCurvatureSystem(c, h, variables, target, norm, vrows)


@dataclass
class ConstantResult:
    feasible: bool
    system: ConstantCurvatureSystem
    family: DistributionFamily | None = None
    certificate: list[Fraction] | None = None
    precheck_vertex: int | None = None

    @property
    def target(self) -> Fraction:
        return self.system.target

    def certificate_verifies(self) -> bool:
        return self.certificate is not None and lp.verify_certificate(self.system.to_lp(), self.certificate)


def _bound_certificate(system: ConstantCurvatureSystem, v: int, below: bool) -> list[Fraction]:
    """Farkas vector for ``target`` falling outside the curvature range at ``v``.

    Using the vertex row of ``v`` (sign ``s``) plus the normalization rows of
    simplices whose energy pushes the wrong way, every aggregated coefficient
    is nonnegative while the aggregated right side is negative.
    """
    c = system.complex
    s = 1 if below else -1
    y = [Fraction(0)] * (len(system.normalization_rows) + len(system.vertex_rows))
    y[len(system.normalization_rows) + c.vertices.index(v)] = Fraction(s)
    k = 0
    for x in c.simplices:
        if len(x) == 1:
            continue
        hx = system.energy[x]
        if v in x and s * hx < 0:
            y[k] = -s * hx
        k += 1
    return y


def solve_constant(c: SimplicialComplex, h=None, precheck: bool = True,
                   max_pivots: int = lp.DEFAULT_MAX_PIVOTS) -> ConstantResult:
    """Decide whether some family makes the curvature constant."""
    system = assemble(c, h)
    if precheck:
        for v in c.vertices:
            lo, hi = curvature_bounds(c, system.energy, v)
            if not lo <= system.target <= hi:
                y = _bound_certificate(system, v, below=system.target < lo)
                return ConstantResult(False, system, certificate=y, precheck_vertex=v)
    out = lp.solve(system.to_lp(), max_pivots=max_pivots)
    if out.status is lp.Status.INFEASIBLE:
        return ConstantResult(False, system, certificate=out.certificate)
    return ConstantResult(True, system, family=system.family(out.point))


def verify_family(c: SimplicialComplex, h, family: DistributionFamily):
    """Recompute the curvature exactly and test it against ``H(G)/|V|``."""
    h = default_energy(c) if h is None else h
    K = curvature_from_family(c, family, h)
    target = sum((Fraction(h[x]) for x in c.simplices), Fraction(0)) / len(c.vertices)
    return all(k == target for k in K.values()), K


def solve_tree(g: Graph, h=None) -> DistributionFamily:
    """Constant curvature on a tree by peeling leaves.

    Each leaf fixes the share of its stem edge; the rest of that edge's
    energy is credited to the neighbour, which is later peeled in turn.
    """
    if not is_tree(g):
        raise NotATreeError("graph is not a tree")
    c = build_clique_complex(g)
    h = default_energy(c) if h is None else h
    target = sum((Fraction(h[x]) for x in c.simplices), Fraction(0)) / g.n
    residue = {v: Fraction(h[(v,)]) for v in range(g.n)}
    nbrs = {v: set(g.neighbors(v)) for v in range(g.n)}
    leaves = sorted(v for v in range(g.n) if len(nbrs[v]) == 1)
    shares = {}
    while leaves:
        v = leaves.pop()
        if not nbrs[v]:
            continue
        (u,) = nbrs[v]
        e = (v, u) if v < u else (u, v)
        he = Fraction(h[e])
        if he == 0:
            raise ValueError(f"edge {e} carries zero energy")
        p = (target - residue[v]) / he
        if not 0 <= p <= 1:
            raise ShareOutOfRangeError(f"share {p} on edge {e} for leaf {v}")
        shares[e] = (p, 1 - p) if e[0] == v else (1 - p, p)
        residue[u] += (1 - p) * he
        nbrs[u].discard(v)
        nbrs[v].clear()
        if len(nbrs[u]) == 1:
            leaves.append(u)
    return DistributionFamily(shares)


@dataclass
class SolutionPolytope:
    interior_point: DistributionFamily
    affine_dimension: int
    implicit_zero_variables: frozenset[int] = field(default_factory=frozenset)


def solution_polytope(c: SimplicialComplex, h=None,
                      max_pivots: int = lp.DEFAULT_MAX_PIVOTS) -> SolutionPolytope | None:
    """Affine hull dimension of the set of constant-curvature families.

    First maximise a common lower bound ``t`` on all shares.  A positive
    optimum gives a point in the relative interior, so only the equality
    rows constrain the hull.  Otherwise each share that vanished is
    maximised on its own; those whose maximum is zero are implicit
    equalities and join the rank computation.  Returns None when empty.
    """
    system = assemble(c, h)
    N = system.num_vars
    rows = system.rows
    if N == 0:
        if all(b == 0 for _, b in rows):
            return SolutionPolytope(DistributionFamily({}), 0)
        return None
    # shares written as y + t with y >= 0
    shifted = []
    for row, b in rows:
        r = dict(row)
        r[N] = sum(row.values(), Fraction(0))
        shifted.append((r, b))
    tlp = lp.LPProblem(N + 1, shifted, objective={N: 1}, sense="max")
    out = lp.solve(tlp, max_pivots=max_pivots)
    if out.status is lp.Status.INFEASIBLE:
        return None
    t = out.point[N]
    base = [y + t for y in out.point[:N]]
    if t > 0:
        dim = N - lp.rank([r for r, _ in rows])
        return SolutionPolytope(system.family(base), dim)
    witnesses = [base]
    suspects = {j for j, v in enumerate(base) if v == 0}
    zeros = set()
    for j in sorted(suspects):
        if j not in suspects:
            continue
        res = lp.solve(system.to_lp(objective={j: 1}), max_pivots=max_pivots)
        if res.objective_value == 0:
            zeros.add(j)
            suspects.discard(j)
            continue
        witnesses.append(res.point)
        suspects -= {k for k, v in enumerate(res.point) if v > 0}
    aug = [r for r, _ in rows] + [{j: 1} for j in sorted(zeros)]
    dim = N - lp.rank(aug)
    centre = [sum(col, Fraction(0)) / len(witnesses) for col in zip(*witnesses)]
    return SolutionPolytope(system.family(centre), dim, frozenset(zeros))


def solution_dimension(c: SimplicialComplex, h=None, max_pivots: int = lp.DEFAULT_MAX_PIVOTS) -> int:
    """Affine dimension of the solution set, or -1 when no family works."""
    poly = solution_polytope(c, h, max_pivots=max_pivots)
    return -1 if poly is None else poly.affine_dimension


@dataclass
class VarianceResult:
    family: DistributionFamily
    variance: float
    gap_bound: float
    iterations: int
    converged: bool
    curvature: dict[int, float]


STEP_RULES = {"open_loop": kernels.FW_OPEN_LOOP, "line_search": kernels.FW_LINE_SEARCH,
              "away": kernels.FW_AWAY}


def minimize_variance(c: SimplicialComplex, h=None, tol: float = 1e-10, max_iter: int = 10**5,
                      step: str = "away") -> VarianceResult:
    """Frank-Wolfe over the product of simplices, starting from the uniform family.

    The linear subproblem puts unit mass on the vertex of least gradient in
    every simplex (lowest id on ties).  ``step`` is ``"open_loop"`` for the
    ``2/(k+2)`` schedule, ``"line_search"`` for the exact quadratic line
    search, or ``"away"`` for line search with away steps.  ``gap_bound``
    is the final duality gap, an upper bound on ``variance - optimum``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    h = default_energy(c) if h is None else h
    pos = {v: i for i, v in enumerate(c.vertices)}
    n = len(pos)
    k0 = np.zeros(n)
    bptr, bvert, bh, blocks = [0], [], [], []
    for x in c.simplices:
        if len(x) == 1:
            k0[pos[x[0]]] = float(h[x])
            continue
        blocks.append(x)
        for u in x:
            bvert.append(pos[u])
            bh.append(float(h[x]))
        bptr.append(len(bvert))
    m = float(sum((Fraction(h[x]) for x in c.simplices), Fraction(0)) / n)
    x0 = np.concatenate([np.full(len(x), 1.0 / len(x)) for x in blocks]) if blocks else np.zeros(0)
    x, it, gap, var = kernels.frank_wolfe(np.array(bptr), np.array(bvert, dtype=np.int64), np.array(bh),
                                         k0, m, x0, tol, max_iter, STEP_RULES[step])
    fam = DistributionFamily({b: x[bptr[i]:bptr[i + 1]] / x[bptr[i]:bptr[i + 1]].sum()
                              for i, b in enumerate(blocks)}, exact=False)
    K = k0 + np.bincount(np.array(bvert, dtype=np.int64), weights=x * np.array(bh), minlength=n) if blocks else k0
    curv = {v: float(K[i]) for v, i in pos.items()}
    return VarianceResult(fam, var, gap, it, gap <= tol, curv)
