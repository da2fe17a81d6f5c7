"""Random instances and small utilities shared by the test modules."""

from __future__ import annotations

import random
import subprocess
import sys
from fractions import Fraction
from itertools import combinations

from constcurv import DistributionFamily, Graph, build_clique_complex, is_connected
from constcurv.fixtures import random_tree


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected_triangle_free(rng: random.Random, n: int, extra: int) -> Graph:
    """Random spanning tree plus up to ``extra`` chords that close no triangle."""
    g = random_tree(rng.randrange(10**9), n)
    adj = {v: set(g.neighbors(v)) for v in range(n)}
    edges = set(g.edges)
    attempts = 0
    while extra and attempts < 50 * n:
        attempts += 1
        u, v = rng.sample(range(n), 2)
        if v in adj[u] or adj[u] & adj[v]:
            continue
        adj[u].add(v)
        adj[v].add(u)
        edges.add((min(u, v), max(u, v)))
        extra -= 1
    out = Graph.from_edges(n, sorted(edges))
    assert is_connected(out)
    return out


def random_rational(rng: random.Random, lo: int = -5, hi: int = 5, den: int = 7) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def random_family(rng: random.Random, c) -> DistributionFamily:
    dist = {}
    for x in c.simplices:
        if len(x) > 1:
            w = [rng.randint(0, 6) for _ in x]
            if not any(w):
                w[rng.randrange(len(x))] = 1
            s = sum(w)
            dist[x] = [Fraction(a, s) for a in w]
    return DistributionFamily(dist)


def random_energy(rng: random.Random, c) -> dict:
    return {x: random_rational(rng) for x in c.simplices}


def clique(g: Graph):
    return build_clique_complex(g)


def run_cli(*args: str, cwd=None) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "constcurv.cli", *args], capture_output=True, text=True, cwd=cwd)
