"""Command line interface.

Exit codes: 0 success, 2 parse error, 3 infeasible (``solve``), 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .complex import euler_characteristic
from .curvature import (curvature_from_family, default_energy, index_expectation_mc, levitt_curvature,
                        poincare_hopf_index)
from .errors import ParseError, ResourceLimitError, UnknownFixtureError
from .fixtures import fixture
from .random_graphs import ENUMERATION_MAX_N, ErParams, empirical_chi, expected_chi_enumeration, expected_chi_formula
from .solver import minimize_variance, solution_polytope, solve_constant

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_RESOURCE = 0, 2, 3, 4


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load(args):
    loaded = io.load_input(args.input)
    h = io.load_energy(args.energy, loaded) if getattr(args, "energy", None) else None
    return loaded, h


def cmd_gen(args):
    g = fixture(args.fixture)
    if args.out and args.out.endswith(".json"):
        from .complex import build_clique_complex
        text = io.emit_json(io.complex_to_json(build_clique_complex(g)))
    else:
        text = io.emit_edge_list(g)
    _write(text, args.out)
    return EXIT_OK


def cmd_chi(args):
    loaded, h = _load(args)
    c = loaded.complex
    res = {"command": "chi", "chi": io.format_rational(euler_characteristic(c)),
           "f_vector": list(c.f_vector()), "num_vertices": len(c.vertices)}
    if h is not None:
        res["total_energy"] = io.format_rational(euler_characteristic(c, h))
    _write(io.emit_json(res), None)
    return EXIT_OK


def cmd_curvature(args):
    loaded, h = _load(args)
    c = loaded.complex
    if args.kind == "levitt":
        K = levitt_curvature(c)
    else:
        if not args.family:
            raise ParseError("--kind family requires --family FILE")
        K = curvature_from_family(c, io.load_family(args.family, loaded), h)
    res = {"command": "curvature", "kind": args.kind,
           "curvature": io.vertex_map_json(K, loaded.labels),
           "total": io.format_rational(sum(K.values()))}
    _write(io.emit_json(res), None)
    return EXIT_OK


def cmd_index(args):
    loaded, _ = _load(args)
    c = loaded.complex
    n = len(c.vertices)
    rng = np.random.default_rng(args.seed)
    g = rng.random(n)
    while len(np.unique(g)) < n:
        g = rng.random(n)
    idx = poincare_hopf_index(c, {v: float(g[i]) for i, v in enumerate(c.vertices)})
    res = {"command": "index", "seed": args.seed,
           "order": [loaded.label(c.vertices[i]) for i in np.argsort(g)],
           "index": io.vertex_map_json(idx, loaded.labels, "int"),
           "chi": io.format_rational(euler_characteristic(c))}
    _write(io.emit_json(res), None)
    return EXIT_OK


def cmd_indexexp(args):
    loaded, _ = _load(args)
    mean, se = index_expectation_mc(loaded.complex, args.samples, args.seed)
    res = {"command": "indexexp", "samples": args.samples, "seed": args.seed,
           "approx": {"mean": io.vertex_map_json(mean, loaded.labels, "float"),
                      "stderr": io.vertex_map_json(se, loaded.labels, "float")}}
    _write(io.emit_json(res), None)
    return EXIT_OK


def _row_labels(system, loaded):
    rows = []
    for x in system.complex.simplices:
        if len(x) > 1:
            rows.append({"kind": "normalization", "simplex": [loaded.label(v) for v in x]})
    rows += [{"kind": "vertex", "vertex": loaded.label(v)} for v in system.complex.vertices]
    return rows


def cmd_solve(args):
    loaded, h = _load(args)
    r = solve_constant(loaded.complex, h)
    res = {"command": "solve", "status": "feasible" if r.feasible else "infeasible",
           "target": io.format_rational(r.target)}
    if r.feasible:
        K = curvature_from_family(loaded.complex, r.family, r.system.energy)
        res["family"] = io.family_to_json(r.family, loaded.labels)
        res["curvature"] = io.vertex_map_json(K, loaded.labels)
    else:
        res["certificate"] = [io.format_rational(y) for y in r.certificate]
        res["certificate_rows"] = _row_labels(r.system, loaded)
        res["certificate_verified"] = r.certificate_verifies()
        if r.precheck_vertex is not None:
            res["bound_violation_vertex"] = loaded.label(r.precheck_vertex)
    _write(io.emit_json(res), None)
    return EXIT_OK if r.feasible else EXIT_INFEASIBLE


def cmd_dim(args):
    loaded, h = _load(args)
    poly = solution_polytope(loaded.complex, h)
    from .solver import assemble
    system = assemble(loaded.complex, h)
    res = {"command": "dim", "dimension": -1 if poly is None else poly.affine_dimension,
           "num_variables": system.num_vars}
    if poly is not None:
        res["implicit_zero_variables"] = [
            {"simplex": [loaded.label(u) for u in system.variables[j][0]],
             "vertex": loaded.label(system.variables[j][1])} for j in sorted(poly.implicit_zero_variables)]
        res["interior_point"] = io.family_to_json(poly.interior_point, loaded.labels)
    _write(io.emit_json(res), None)
    return EXIT_OK


def cmd_minvar(args):
    loaded, h = _load(args)
    r = minimize_variance(loaded.complex, h, tol=args.tol, max_iter=args.max_iter)
    energy = h if h is not None else default_energy(loaded.complex)
    target = euler_characteristic(loaded.complex, energy) / len(loaded.complex.vertices)
    res = {"command": "minvar", "target": io.format_rational(target), "iterations": r.iterations,
           "converged": r.converged,
           "approx": {"variance": r.variance, "gap_bound": r.gap_bound,
                      "curvature": io.vertex_map_json(r.curvature, loaded.labels, "float"),
                      "family": io.family_to_json(r.family, loaded.labels, exact=False)}}
    _write(io.emit_json(res), None)
    return EXIT_OK


def cmd_erchi(args):
    p = io.parse_rational(args.p)
    if not 0 <= p <= 1 or args.n < 1:
        raise ParseError("need n >= 1 and 0 <= p <= 1")
    res = {"command": "erchi", "n": args.n, "p": io.format_rational(p),
           "formula": io.format_rational(expected_chi_formula(args.n, p)),
           "enumeration": (io.format_rational(expected_chi_enumeration(args.n, p))
                           if args.n <= ENUMERATION_MAX_N else None)}
    if args.samples:
        mean, se = empirical_chi(ErParams(args.n, float(p), args.seed), args.samples)
        res["approx"] = {"samples": args.samples, "seed": args.seed, "mean": mean, "stderr": se}
    _write(io.emit_json(res), None)
    return EXIT_OK


def _curvature_file(path, loaded):
    obj = io._read_json(path)
    if isinstance(obj, dict) and "curvature" in obj:
        obj = obj["curvature"]
    elif isinstance(obj, dict) and "approx" in obj and "mean" in obj["approx"]:
        obj = obj["approx"]["mean"]
    if not isinstance(obj, dict):
        raise ParseError("curvature file must map vertex labels to values")
    out = {}
    for lab, val in obj.items():
        v = loaded.vertex_id(lab)
        out[v] = float(val) if isinstance(val, float) else io.parse_rational(val)
    return out


def cmd_dot(args):
    loaded, _ = _load(args)
    g = loaded.graph if loaded.graph is not None else loaded.complex.one_skeleton()
    if g.labels is None or list(g.labels) != list(loaded.labels):
        from .complex import Graph
        g = Graph(g.n, g.edges, tuple(loaded.labels))
    K = _curvature_file(args.curvature, loaded) if args.curvature else None
    _write(io.emit_dot(g, K), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="constcurv", description="Constant curvature on simplicial complexes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a fixture edge list (or facet JSON for *.json)")
    p.add_argument("--fixture", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("chi", help="Euler characteristic / total energy")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--energy")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("curvature", help="curvature map")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--kind", choices=("levitt", "family"), required=True)
    p.add_argument("--family")
    p.add_argument("--energy")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("index", help="one Poincare-Hopf index map")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("indexexp", help="Monte-Carlo index expectation")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_indexexp)

    p = sub.add_parser("solve", help="constant-curvature family or infeasibility certificate")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--energy")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("dim", help="dimension of the solution polytope")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--energy")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("minvar", help="Frank-Wolfe variance minimization")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tol", type=float, required=True)
    p.add_argument("--max-iter", dest="max_iter", type=int, required=True)
    p.add_argument("--energy")
    p.set_defaults(func=cmd_minvar)

    p = sub.add_parser("erchi", help="Erdos-Renyi expected Euler characteristic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_erchi)

    p = sub.add_parser("dot", help="DOT export annotated with curvature")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--curvature")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, UnknownFixtureError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
