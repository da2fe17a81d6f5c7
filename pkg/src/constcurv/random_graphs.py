"""Euler characteristic of Erdos-Renyi graphs: closed form, enumeration, sampling."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .complex import Graph, build_clique_complex, euler_characteristic
from .errors import SizeError

ENUMERATION_MAX_N = 5


@dataclass(frozen=True)
class ErParams:
    n: int
    p: float | Fraction
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")


def expected_chi_formula(n: int, p) -> Fraction:
    """``sum_{k=1}^n (-1)^(k+1) C(n,k) p^C(k,2)``: every k-set is a clique with probability p^C(k,2)."""
    p = Fraction(p)
    return sum((Fraction((-1) ** (k + 1) * comb(n, k)) * p ** comb(k, 2) for k in range(1, n + 1)),
               Fraction(0))


def expected_chi_enumeration(n: int, p) -> Fraction:
    """Exact expectation by summing over all ``2^C(n,2)`` labelled graphs."""
    if n > ENUMERATION_MAX_N:
        raise SizeError(f"enumeration is limited to n <= {ENUMERATION_MAX_N}")
    p = Fraction(p)
    pairs = list(combinations(range(n), 2))
    total = Fraction(0)
    for mask in range(1 << len(pairs)):
        edges = [e for i, e in enumerate(pairs) if (mask >> i) & 1]
        chi = euler_characteristic(build_clique_complex(Graph.from_edges(n, edges)))
        k = len(edges)
        total += chi * p ** k * (1 - p) ** (len(pairs) - k)
    return total


def _edge_draws(params: ErParams, samples: int) -> np.ndarray:
    rng = np.random.default_rng(params.seed)
    return rng.random((samples, comb(params.n, 2))) < float(params.p)


def sample_er(params: ErParams) -> Graph:
    draws = _edge_draws(params, 1)[0]
    pairs = list(combinations(range(params.n), 2))
    return Graph.from_edges(params.n, [pairs[i] for i in np.flatnonzero(draws)])


def empirical_chi(params: ErParams, samples: int) -> tuple[float, float]:
    """Sample mean and standard error of the clique-complex Euler characteristic."""
    if samples < 1:
        raise ValueError("samples must be positive")
    chi = kernels.clique_chi_batch(_edge_draws(params, samples), params.n)
    se = float(chi.std(ddof=1) / np.sqrt(samples)) if samples > 1 else float("nan")
    return float(chi.mean()), se
