import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from constcurv import (Graph, SimplicialComplex, betti_1d, build_clique_complex, euler_characteristic, fixture,
                       is_two_graph, join, maximal_cliques, unit_sphere)
from constcurv.complex import disjoint_union
from constcurv.errors import ResourceLimitError, UnknownVertexError
from constcurv.fixtures import complete, cycle, path, zero_sphere

from helpers import random_graph


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def test_k4_f_vector():
    assert build_clique_complex(complete(4)).f_vector() == (4, 6, 4, 1)


def test_c4_f_vector():
    assert build_clique_complex(cycle(4)).f_vector() == (4, 4)


def test_k3_complex_listing():
    c = build_clique_complex(complete(3))
    assert c.simplices == ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2))


def test_max_dim_truncates():
    c = build_clique_complex(complete(5), max_dim=1)
    assert c.f_vector() == (5, 10)
    assert euler_characteristic(c) == -5


def test_simplex_cap():
    with pytest.raises(ResourceLimitError):
        build_clique_complex(complete(10), max_simplices=100)


@pytest.mark.parametrize("g, chi", [(path(7), 1), (fixture("octahedron"), 2), (fixture("figure8"), -1)])
def test_euler_characteristic_examples(g, chi):
    assert euler_characteristic(build_clique_complex(g)) == chi


def test_euler_with_energy():
    c = build_clique_complex(path(2))
    h = {(0,): Fraction(1, 2), (1,): Fraction(1, 3), (0, 1): Fraction(1, 6)}
    assert euler_characteristic(c, h) == 1


def test_unit_sphere_examples():
    octa = build_clique_complex(fixture("octahedron"))
    for v in octa.vertices:
        s = unit_sphere(octa, v)
        assert s.f_vector() == (4, 4)
        assert all(s.one_skeleton().degree(u) == 2 for u in range(4))
    p3 = unit_sphere(build_clique_complex(path(3)), 1)
    assert p3.simplices == ((0,), (2,))
    ico = build_clique_complex(fixture("icosahedron"))
    sg = unit_sphere(ico, 0).one_skeleton()
    assert sg.n == 5 and all(sg.degree(v) == 2 for v in range(5))
    with pytest.raises(UnknownVertexError):
        unit_sphere(octa, 99)


def test_betti_examples():
    assert betti_1d(fixture("tree(3,20)")) == (1, 0)
    assert betti_1d(fixture("figure8")) == (1, 2)
    assert betti_1d(disjoint_union(complete(3), complete(3))) == (2, 2)


def test_join_examples():
    c4 = join(zero_sphere(), zero_sphere())
    assert sorted(c4.edges) == [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert betti_1d(c4) == (1, 1)
    cone = join(Graph.from_edges(1, []), cycle(5))
    assert cone.degree(0) == 5 and len(cone.edges) == 10


def test_two_graph_examples():
    assert is_two_graph(fixture("icosahedron"))
    assert is_two_graph(fixture("octahedron"))
    assert not is_two_graph(fixture("wheel(5)"))


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_maximal_cliques_match_brute_force():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 9), rng.random())
        cl = {frozenset(s) for k in range(1, g.n + 1) for s in combinations(range(g.n), k)
              if all(b in g.neighbors(a) for a, b in combinations(s, 2))}
        maximal = {s for s in cl if not any(s < t for t in cl)}
        assert {frozenset(x) for x in maximal_cliques(g)} == maximal


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_downward_closed(g):
    c = build_clique_complex(g)
    assert c.is_closed()
    for x in c.facets():
        for k in range(1, len(x)):
            assert all(s in c for s in combinations(x, k))


@pytest.mark.parametrize("n", range(1, 9))
def test_complete_graphs_contractible(n):
    assert euler_characteristic(build_clique_complex(complete(n))) == 1


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=6), graphs(max_n=6))
def test_join_formula(g1, g2):
    x1 = euler_characteristic(build_clique_complex(g1))
    x2 = euler_characteristic(build_clique_complex(g2))
    assert euler_characteristic(build_clique_complex(join(g1, g2))) == -x1 * x2 + x1 + x2


def test_join_formula_up_to_eight():
    rng = random.Random(11)
    for _ in range(30):
        g1 = random_graph(rng, rng.randint(1, 8), rng.random())
        g2 = random_graph(rng, rng.randint(1, 8), rng.random())
        x1, x2 = (euler_characteristic(build_clique_complex(g)) for g in (g1, g2))
        assert euler_characteristic(build_clique_complex(join(g1, g2))) == -x1 * x2 + x1 + x2


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=10))
def test_betti_matches_one_skeleton(g):
    b0, b1 = betti_1d(g)
    assert b0 - b1 == euler_characteristic(build_clique_complex(g, max_dim=1))


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_unit_sphere_property(g):
    c = build_clique_complex(g)
    for v in c.vertices:
        for x in unit_sphere(c, v).simplices:
            assert v not in x
            assert tuple(sorted(x + (v,))) in c


def test_complex_from_facets_and_star():
    c = SimplicialComplex.from_facets([(0, 1, 2), (2, 3)])
    assert c.f_vector() == (4, 4, 1)
    assert c.star(3) == [(3,), (2, 3)]
    assert c.dimension == 2
