"""Named test graphs.

=====================  ======================================  =====
name                   graph                                   chi
=====================  ======================================  =====
path(n)                path on n vertices                      1
cycle(n)               n-cycle, n >= 3 (chi 1 for n = 3)       0
star(n)                centre 0 joined to n leaves             1
tree(seed, n)          uniform random labelled tree            1
complete(n)            K_n                                     1
octahedron             cross_polytope(2)                       2
icosahedron            12 vertices, 30 edges, 20 triangles     2
wheel(n)               hub 0 over the rim cycle 1..n, n >= 3   1
cross_polytope(d)      (d+1)-fold join of S_0                  1+(-1)^d
figure8                two 4-cycles sharing vertex 0           -1
fish                   octahedron, bridge, figure8 tail        0
bipartite(n, m)        K_{n,m}                                 n+m-nm
=====================  ======================================  =====
"""

from __future__ import annotations

import random
import re

from .complex import Graph, disjoint_union, join
from .errors import UnknownFixtureError


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def random_tree(seed: int, n: int) -> Graph:
    """Uniform labelled tree from a random Pruefer sequence."""
    if n < 1:
        raise ValueError("tree needs n >= 1")
    if n <= 2:
        return path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [u for u in range(n) if degree[u] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def zero_sphere() -> Graph:
    return Graph.from_edges(2, [])


def cross_polytope(d: int) -> Graph:
    if d < 0:
        raise ValueError("cross_polytope needs d >= 0")
    g = zero_sphere()
    for _ in range(d):
        g = join(g, zero_sphere())
    return g


def octahedron() -> Graph:
    return cross_polytope(2)


def icosahedron() -> Graph:
    edges = [(0, i) for i in range(1, 6)]
    edges += [(i, i % 5 + 1) for i in range(1, 6)]
    edges += [(5 + i, 5 + i % 5 + 1) for i in range(1, 6)]
    edges += [(i, 5 + i) for i in range(1, 6)] + [(i, 5 + i % 5 + 1) for i in range(1, 6)]
    edges += [(11, 5 + i) for i in range(1, 6)]
    return Graph.from_edges(12, edges)


def wheel(n: int) -> Graph:
    if n < 3:
        raise ValueError("wheel needs a rim of at least 3 vertices")
    return join(Graph.from_edges(1, []), cycle(n))


def figure8() -> Graph:
    return Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)])


def fish() -> Graph:
    """Octahedron body (vertices 0..5) bridged from vertex 0 to the junction 6 of a figure-8 tail."""
    g = disjoint_union(octahedron(), figure8())
    return Graph.from_edges(g.n, list(g.edges) + [(0, 6)])


def bipartite(n: int, m: int) -> Graph:
    return Graph.from_edges(n + m, [(i, n + j) for i in range(n) for j in range(m)])


_BUILDERS = {
    "path": (path, 1), "cycle": (cycle, 1), "star": (star, 1), "tree": (random_tree, 2),
    "complete": (complete, 1), "octahedron": (octahedron, 0), "icosahedron": (icosahedron, 0),
    "wheel": (wheel, 1), "cross_polytope": (cross_polytope, 1), "figure8": (figure8, 0),
    "fish": (fish, 0), "bipartite": (bipartite, 2),
}

FIXTURE_NAMES = tuple(_BUILDERS)

_NAME_RE = re.compile(r"^\s*([a-z_0-9]+?)\s*(?:[(:]\s*([-\d,\s]*?)\s*\)?)?\s*$")


def fixture(name: str) -> Graph:
    """Build a fixture from ``"cycle(5)"``, ``"cycle:5"``, ``"tree(3,40)"`` or ``"fish"``."""
    m = _NAME_RE.match(name)
    if not m or m.group(1) not in _BUILDERS:
        raise UnknownFixtureError(f"unknown fixture {name!r}")
    build, arity = _BUILDERS[m.group(1)]
    raw = m.group(2)
    args = [int(a) for a in raw.split(",") if a.strip()] if raw else []
    if len(args) != arity:
        raise UnknownFixtureError(f"fixture {m.group(1)} takes {arity} integer parameter(s)")
    try:
        return build(*args)
    except ValueError as exc:
        raise UnknownFixtureError(str(exc)) from None
