"""Graphs and their Whitney (clique) complexes.

Vertices are dense integers ``0..n-1``; a simplex is a strictly increasing
tuple of vertex ids.  Original labels, when a graph came from a file, live in
``Graph.labels``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import ResourceLimitError, UnknownVertexError

Simplex = tuple[int, ...]

DEFAULT_MAX_SIMPLICES = 10**7


def dim(x: Simplex) -> int:
    return len(x) - 1


def omega(x: Simplex) -> int:
    return -1 if len(x) % 2 == 0 else 1


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple | None = None
    _adj: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        clean = set()
        adj = [set() for _ in range(self.n)]
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an undeclared endpoint")
            key = (u, v) if u < v else (v, u)
            if key in clean:
                raise ValueError(f"duplicate edge {key}")
            clean.add(key)
            adj[u].add(v)
            adj[v].add(u)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label table must have one entry per vertex")
        object.__setattr__(self, "edges", frozenset(clean))
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), None if labels is None else tuple(labels))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def label(self, v: int):
        return v if self.labels is None else self.labels[v]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabeled densely in increasing order of ``vertices``."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[w]) for u, w in self.edges if u in pos and w in pos]
        return Graph.from_edges(len(vs), edges, labels=[self.label(v) for v in vs])


class SimplicialComplex:
    """A downward closed set of simplices.

    Simplices are ordered by dimension, then lexicographically; ``index``
    gives the position of each simplex in that order, which the linear
    programs use as their column order.
    """

    def __init__(self, simplices: Iterable[Simplex], vertices: Iterable[int] | None = None):
        simp = {tuple(sorted(x)) for x in simplices}
        simp.discard(())
        if vertices is not None:
            simp.update((v,) for v in vertices)
        self.simplices: tuple[Simplex, ...] = tuple(sorted(simp, key=lambda x: (len(x), x)))
        self.vertices: tuple[int, ...] = tuple(x[0] for x in self.simplices if len(x) == 1)
        self.index = {x: i for i, x in enumerate(self.simplices)}
        self._star: dict[int, list[Simplex]] | None = None

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], vertices=None) -> "SimplicialComplex":
        simp = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            for k in range(1, len(f) + 1):
                simp.update(combinations(f, k))
        return cls(simp, vertices)

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, x) -> bool:
        return tuple(sorted(x)) in self.index

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __repr__(self):
        return f"SimplicialComplex(f_vector={self.f_vector()})"

    @property
    def dimension(self) -> int:
        return len(self.simplices[-1]) - 1 if self.simplices else -1

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dimension + 1)
        for x in self.simplices:
            counts[len(x) - 1] += 1
        return tuple(counts)

    def star(self, v: int) -> list[Simplex]:
        """All simplices containing ``v``."""
        if self._star is None:
            st: dict[int, list[Simplex]] = {u: [] for u in self.vertices}
            for x in self.simplices:
                for u in x:
                    st[u].append(x)
            self._star = st
        try:
            return self._star[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def facets(self) -> list[Simplex]:
        out = []
        for x in self.simplices:
            s = set(x)
            if all(not s < set(y) for y in self.star(x[0]) if len(y) > len(x)):
                out.append(x)
        return out

    def one_skeleton(self) -> Graph:
        pos = {v: i for i, v in enumerate(self.vertices)}
        edges = [(pos[x[0]], pos[x[1]]) for x in self.simplices if len(x) == 2]
        return Graph.from_edges(len(pos), edges, labels=self.vertices)

    def is_closed(self) -> bool:
        for x in self.simplices:
            for k in range(1, len(x)):
                for y in combinations(x, k):
                    if y not in self.index:
                        return False
        return True


def _bron_kerbosch(adj, r, p, x, out):
    if not p and not x:
        out.append(r)
        return
    pivot = max(p | x, key=lambda u: len(adj[u] & p))
    for v in list(p - adj[pivot]):
        _bron_kerbosch(adj, r + [v], p & adj[v], x & adj[v], out)
        p = p - {v}
        x = x | {v}


def maximal_cliques(g: Graph) -> list[Simplex]:
    """Bron-Kerbosch with Tomita pivoting."""
    out: list[list[int]] = []
    adj = [set(a) for a in g._adj]
    _bron_kerbosch(adj, [], set(range(g.n)), set(), out)
    return sorted(tuple(sorted(c)) for c in out)


def build_clique_complex(g: Graph, max_dim: int | None = None,
                         max_simplices: int = DEFAULT_MAX_SIMPLICES) -> SimplicialComplex:
    if max_dim is not None and max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    simp: set[Simplex] = set()
    top = None if max_dim is None else max_dim + 1
    for clique in maximal_cliques(g):
        kmax = len(clique) if top is None else min(top, len(clique))
        for k in range(1, kmax + 1):
            simp.update(combinations(clique, k))
            if len(simp) > max_simplices:
                raise ResourceLimitError(f"clique complex exceeds {max_simplices} simplices")
    return SimplicialComplex(simp, vertices=range(g.n))


def euler_characteristic(c: SimplicialComplex, h=None) -> Fraction:
    """Total energy; with ``h`` omitted this is the Euler characteristic."""
    if h is None:
        return Fraction(sum(omega(x) for x in c.simplices))
    return sum((Fraction(h[x]) for x in c.simplices), Fraction(0))


def unit_sphere(c: SimplicialComplex, v: int) -> SimplicialComplex:
    if (v,) not in c.index:
        raise UnknownVertexError(v)
    link = []
    for x in c.star(v):
        if len(x) > 1:
            link.append(tuple(u for u in x if u != v))
    return SimplicialComplex(link)


def betti_1d(g: Graph) -> tuple[int, int]:
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    b0 = g.n
    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            b0 -= 1
    return b0, len(g.edges) - g.n + b0


def is_connected(g: Graph) -> bool:
    return g.n > 0 and betti_1d(g)[0] == 1


def is_tree(g: Graph) -> bool:
    return is_connected(g) and len(g.edges) == g.n - 1


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    off = g1.n
    edges = list(g1.edges) + [(u + off, v + off) for u, v in g2.edges]
    return Graph.from_edges(g1.n + g2.n, edges)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts; ``g2`` is shifted by ``g1.n``."""
    off = g1.n
    edges = list(g1.edges) + [(u + off, v + off) for u, v in g2.edges]
    edges += [(a, b + off) for a in range(g1.n) for b in range(g2.n)]
    return Graph.from_edges(g1.n + g2.n, edges)


def _is_cycle(g: Graph) -> bool:
    return g.n >= 3 and all(g.degree(v) == 2 for v in range(g.n)) and is_connected(g)


def is_two_graph(g: Graph) -> bool:
    """Every unit sphere is a single cycle with at least 4 vertices."""
    if g.n == 0:
        return False
    for v in range(g.n):
        s = g.induced(g.neighbors(v))
        if s.n < 4 or not _is_cycle(s):
            return False
    return True
