"""Constant curvature on graphs and simplicial complexes.

Exact rational curvature, Gauss-Bonnet and Poincare-Hopf bookkeeping, an exact
simplex solver deciding whether a distribution family makes the curvature
constant, and a few random-graph utilities.  ``CONSTCURV_JIT=0`` switches the
numeric kernels from numba to plain numpy.
"""

from ._jit import backend, set_backend
from .complex import (Graph, SimplicialComplex, betti_1d, build_clique_complex, dim, disjoint_union,
                      euler_characteristic, is_connected, is_tree, is_two_graph, join, maximal_cliques,
                      omega, unit_sphere)
from .curvature import (DistributionFamily, complete_energy, curvature_bounds, curvature_from_family,
                        default_energy, index_expectation_mc, levitt_curvature, poincare_hopf_index,
                        sample_index_maps, variance)
from .errors import (ConstCurvError, EmptyComplexError, MissingSimplexError, NotATreeError, ParseError,
                     ResourceLimitError, ShareOutOfRangeError, SizeError, TieError, UnknownFixtureError,
                     UnknownVertexError)
from .fixtures import FIXTURE_NAMES, fixture
from .random_graphs import ErParams, empirical_chi, expected_chi_enumeration, expected_chi_formula, sample_er
from .solver import (ConstantCurvatureSystem, ConstantResult, SolutionPolytope, VarianceResult, assemble,
                     minimize_variance, solution_dimension, solution_polytope, solve_constant, solve_tree,
                     verify_family)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
