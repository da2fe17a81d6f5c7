"""Curvatures obtained by distributing simplex energies to vertices."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction

import numpy as np

from . import kernels
from .complex import Simplex, SimplicialComplex, omega, unit_sphere
from .errors import MissingSimplexError, TieError, UnknownVertexError


def default_energy(c: SimplicialComplex) -> dict[Simplex, Fraction]:
    return {x: Fraction(omega(x)) for x in c.simplices}


def complete_energy(c: SimplicialComplex, partial: Mapping | None = None) -> dict[Simplex, Fraction]:
    """Fill in ``omega`` wherever ``partial`` has no value."""
    h = default_energy(c)
    if partial:
        for x, v in partial.items():
            key = tuple(sorted(x))
            if key not in c.index:
                raise MissingSimplexError(f"{key} is not a simplex of the complex")
            h[key] = Fraction(v)
    return h


def _energy(c, h):
    return default_energy(c) if h is None else h


class DistributionFamily(Mapping):
    """A probability vector on the vertices of each simplex.

    ``dist[x][k]`` is the share of simplex ``x`` sent to vertex ``x[k]``.
    Vertex simplices may be omitted, their only possible vector is ``(1,)``.
    Entries are exact rationals unless ``exact=False``, in which case floats
    are accepted and sums are checked to ``atol``.
    """

    def __init__(self, dist: Mapping, exact: bool = True, atol: float = 1e-9):
        self.exact = exact
        clean = {}
        for x, p in dist.items():
            x = tuple(x)
            p = tuple(Fraction(v) if exact else float(v) for v in p)
            if len(p) != len(x):
                raise ValueError(f"distribution on {x} has {len(p)} entries")
            if exact:
                if any(v < 0 or v > 1 for v in p) or sum(p) != 1:
                    raise ValueError(f"distribution on {x} is not a probability vector")
            elif any(v < -atol for v in p) or abs(sum(p) - 1.0) > atol:
                raise ValueError(f"distribution on {x} is not a probability vector")
            clean[x] = p
        self.dist = clean

    def __getitem__(self, x):
        x = tuple(x)
        if x in self.dist:
            return self.dist[x]
        if len(x) == 1:
            return (Fraction(1),) if self.exact else (1.0,)
        raise MissingSimplexError(x)

    def __iter__(self):
        return iter(self.dist)

    def __len__(self):
        return len(self.dist)

    def __repr__(self):
        return f"DistributionFamily({len(self.dist)} simplices, exact={self.exact})"

    def share(self, x: Simplex, v: int):
        return self[x][x.index(v)]

    @classmethod
    def uniform(cls, c: SimplicialComplex) -> "DistributionFamily":
        return cls({x: [Fraction(1, len(x))] * len(x) for x in c.simplices if len(x) > 1})

    @classmethod
    def point_mass(cls, c: SimplicialComplex, chooser) -> "DistributionFamily":
        """Unit mass on ``chooser(x)`` for every simplex ``x``."""
        out = {}
        for x in c.simplices:
            if len(x) > 1:
                top = chooser(x)
                out[x] = [Fraction(int(u == top)) for u in x]
        return cls(out)

    @classmethod
    def argmax(cls, c: SimplicialComplex, g) -> "DistributionFamily":
        _check_injective(c, g)
        return cls.point_mass(c, lambda x: max(x, key=lambda u: g[u]))


def curvature_from_family(c: SimplicialComplex, f: DistributionFamily, h=None) -> dict[int, Fraction]:
    """``K(v) = sum over simplices x containing v of p_x(v) h(x)``."""
    h = _energy(c, h)
    zero = Fraction(0) if getattr(f, "exact", True) else 0.0
    K = {v: zero for v in c.vertices}
    for x in c.simplices:
        try:
            hx = h[x]
        except KeyError:
            raise MissingSimplexError(f"energy undefined on {x}") from None
        if len(x) == 1:
            K[x[0]] += hx
            continue
        p = f[x]
        for u, w in zip(x, p):
            if w:
                K[u] += w * hx
    return K


def levitt_curvature(c: SimplicialComplex) -> dict[int, Fraction]:
    """Curvature from the f-vectors of unit spheres.

    A simplex of dimension ``k`` in ``S(v)`` is the face opposite ``v`` of a
    ``(k+1)``-simplex through ``v``, so it contributes ``(-1)^(k+1)/(k+2)``.
    """
    K = {}
    for v in c.vertices:
        fv = unit_sphere(c, v).f_vector()
        K[v] = 1 + sum((Fraction((-1) ** (k + 1), k + 2) * n for k, n in enumerate(fv)), Fraction(0))
    return K


def _check_injective(c: SimplicialComplex, g):
    for x in c.simplices:
        if len(x) == 2 and g[x[0]] == g[x[1]]:
            raise TieError(f"vertices {x[0]} and {x[1]} share the value {g[x[0]]!r}")
        if len(x) > 2:
            break


def poincare_hopf_index(c: SimplicialComplex, g) -> dict[int, int]:
    """Push ``omega`` forward to the vertex where ``g`` is largest on each simplex.

    ``g`` is any mapping or sequence indexed by vertex id; it must be
    injective on every edge.
    """
    _check_injective(c, g)
    idx = {v: 0 for v in c.vertices}
    for x in c.simplices:
        idx[max(x, key=lambda u: g[u])] += omega(x)
    return idx


def _padded(c: SimplicialComplex):
    pos = {v: i for i, v in enumerate(c.vertices)}
    L = max(len(x) for x in c.simplices)
    verts = np.full((len(c.simplices), L), -1, dtype=np.int64)
    for s, x in enumerate(c.simplices):
        verts[s, :len(x)] = [pos[u] for u in x]
    sizes = np.array([len(x) for x in c.simplices], dtype=np.int64)
    w = np.array([omega(x) for x in c.simplices], dtype=np.int64)
    return verts, sizes, w


def _draw_injective(rng, samples, n, edges):
    g = rng.random((samples, n))
    if len(edges):
        while True:
            bad = np.flatnonzero(np.any(g[:, edges[:, 0]] == g[:, edges[:, 1]], axis=1))
            if not len(bad):
                break
            g[bad] = rng.random((len(bad), n))
    return g


def sample_index_maps(c: SimplicialComplex, samples: int, seed: int) -> np.ndarray:
    """Indices for ``samples`` uniformly random vertex orders, shape ``(samples, |V|)``."""
    if samples < 1:
        raise ValueError("samples must be positive")
    pos = {v: i for i, v in enumerate(c.vertices)}
    edges = np.array([[pos[x[0]], pos[x[1]]] for x in c.simplices if len(x) == 2], dtype=np.int64).reshape(-1, 2)
    rng = np.random.default_rng(seed)
    g = _draw_injective(rng, samples, len(c.vertices), edges)
    verts, sizes, w = _padded(c)
    return kernels.ph_index_batch(verts, sizes, w, g)


def index_expectation_mc(c: SimplicialComplex, samples: int, seed: int):
    """Monte-Carlo average of Poincare-Hopf indices over random vertex orders.

    Returns ``(mean, stderr)`` dictionaries keyed by vertex; ``stderr`` is
    the sample standard deviation over ``sqrt(samples)`` (NaN for one sample).
    """
    idx = sample_index_maps(c, samples, seed)
    mean = idx.mean(axis=0)
    if samples > 1:
        se = idx.std(axis=0, ddof=1) / np.sqrt(samples)
    else:
        se = np.full(idx.shape[1], np.nan)
    return ({v: float(mean[i]) for i, v in enumerate(c.vertices)},
            {v: float(se[i]) for i, v in enumerate(c.vertices)})


def curvature_bounds(c: SimplicialComplex, h, v: int) -> tuple[Fraction, Fraction]:
    """Range of ``K(v)`` over all distribution families.

    The vertex simplex always keeps its own energy; every other simplex
    through ``v`` can send all or nothing of its energy to ``v``.
    """
    h = _energy(c, h)
    if (v,) not in c.index:
        raise UnknownVertexError(v)
    lo = hi = Fraction(h[(v,)])
    for x in c.star(v):
        if len(x) > 1:
            hx = h[x]
            if hx < 0:
                lo += hx
            else:
                hi += hx
    return lo, hi


def variance(k: Mapping) -> Fraction:
    """Population variance of the values of ``k`` about their mean."""
    vals = list(k.values())
    if not vals:
        raise ValueError("empty curvature map")
    exact = all(isinstance(v, (int, Fraction)) for v in vals)
    if exact:
        vals = [Fraction(v) for v in vals]
        m = sum(vals, Fraction(0)) / len(vals)
        return sum(((v - m) ** 2 for v in vals), Fraction(0)) / len(vals)
    arr = np.asarray(vals, dtype=float)
    return float(np.mean((arr - arr.mean()) ** 2))
