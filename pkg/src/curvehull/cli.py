"""Command-line interface.

Commands: edge, tritangents, degrees, phi, squares-ideal, pencil, sample.
Results go to standard output as JSON (or CSV for `sample`); progress
heartbeats go to standard error. Exit codes: 0 success, 2 partial results
after a resource limit, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import errors
from .curve import ProjectiveCurve, QuadricPencilSpec, TrigCurveSpec, load_spec
from .degrees import CurveInvariants, report
from .edgesurface import (
    edge_components,
    pencil_edge_surface,
    secant_coordinates,
    stationary_form,
)
from .groebner import DEFAULT_PAIR_BUDGET
from .tritangent import TritangentCurve, chow_form, squares_ideal, tritangent_ideal

EXIT_OK = 0
EXIT_PARTIAL = 2
EXIT_INPUT = 3

log = logging.getLogger("curvehull")


def _load_curve(path):
    spec = load_spec(path)
    if isinstance(spec, TrigCurveSpec):
        from .curve import to_projective

        return to_projective(spec)
    return spec


def _emit(args, payload):
    text = json.dumps(payload, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_edge(args):
    spec = _load_curve(args.spec)
    if isinstance(spec, QuadricPencilSpec):
        return cmd_pencil(args)
    if not isinstance(spec, ProjectiveCurve):
        raise errors.ParseError("edge needs a curve or pencil spec")
    comps = edge_components(spec, route=args.route, budget=args.budget,
                            threads=args.threads)
    partial = any(c.error is not None for c in comps)
    payload = {"degree": spec.degree, "components": [c.as_dict() for c in comps]}
    if args.raw:
        payload["phi"] = str(stationary_form(spec))
        payload["secant_coordinates"] = [str(u) for u in secant_coordinates(spec)]
    _emit(args, payload)
    return EXIT_PARTIAL if partial else EXIT_OK


def cmd_phi(args):
    curve = _load_curve(args.spec)
    if not isinstance(curve, ProjectiveCurve):
        raise errors.ParseError("phi needs a curve spec")
    coords = secant_coordinates(curve)
    payload = {
        "degree": curve.degree,
        "phi": str(stationary_form(curve)),
        "secant_coordinates": {
            name: str(u)
            for name, u in zip(("u01", "u02", "u03", "u12", "u13", "u23"), coords)
        },
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_tritangents(args):
    curve = _load_curve(args.spec)
    if not isinstance(curve, ProjectiveCurve):
        raise errors.ParseError("tritangents needs a curve spec")
    sq = squares_ideal(curve.degree, budget=args.budget)
    ti = tritangent_ideal(curve, sq)
    if not args.chow:
        _emit(args, {"ideal": [str(g) for g in ti.ideal.generators]})
        return EXIT_OK
    result = chow_form(ti, budget=args.budget, seed=args.seed)
    if isinstance(result, TritangentCurve):
        _emit(args, {
            "positive_dimensional": True,
            "ideal": [str(g) for g in result.ideal.generators],
        })
    else:
        _emit(args, {"positive_dimensional": False, "chow_form": str(result),
                     "degree": result.total_degree()})
    return EXIT_OK


def cmd_degrees(args):
    ci = CurveInvariants(args.d, args.g, args.n, args.k)
    _emit(args, report(ci))
    return EXIT_OK


def cmd_squares_ideal(args):
    sq = squares_ideal(args.d, budget=args.budget)
    _emit(args, {"d": args.d, "generators": [str(g) for g in sq.ideal.generators]})
    return EXIT_OK


def cmd_pencil(args):
    spec = load_spec(args.spec)
    if not isinstance(spec, QuadricPencilSpec):
        raise errors.ParseError("pencil needs a quadric_pencil spec")
    surf = pencil_edge_surface(spec)
    _emit(args, {"surface": str(surf), "degree": surf.total_degree()})
    return EXIT_OK


def cmd_sample(args):
    from .rings import Ring

    ring = Ring(("x", "y", "z"))
    with open(args.poly) as fh:
        f = ring.parse(fh.read().strip())
    lo, hi = args.bbox
    n = args.resolution
    steps = [lo + (hi - lo) * i / n for i in range(n + 1)]
    # sample sign on the grid, then report cells where a sign change occurs
    values = {}
    for i, x in enumerate(steps):
        for j, y in enumerate(steps):
            for k, z in enumerate(steps):
                values[i, j, k] = f.evaluate_float((x, y, z))
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                corner = values[i, j, k]
                for di, dj, dk in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    other = values[i + di, j + dj, k + dk]
                    if corner == 0.0 or (corner < 0) != (other < 0):
                        rows.append((steps[i], steps[j], steps[k]))
                        break
    out = sys.stdout if not args.output else open(args.output, "w")
    try:
        out.write("x,y,z\n")
        for x, y, z in rows:
            out.write(f"{x},{y},{z}\n")
    finally:
        if args.output:
            out.close()
    if not rows:
        log.warning("no sign changes found in the box")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvehull",
        description="exact convex-hull boundary computations for rational space curves",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress progress output")
    parser.add_argument("--verbose", action="store_true", help="show heartbeat details")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="curve spec file (JSON)")
        p.add_argument("--output", help="write results to a file instead of stdout")
        p.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET,
                       help="S-pair budget for Groebner runs")
        p.add_argument("--seed", type=int, default=0, help="random seed")

    p = sub.add_parser("edge", help="edge surface components")
    common(p)
    p.add_argument("--route", choices=("auto", "grassmannian", "direct", "interpolation"),
                   default="auto")
    p.add_argument("--raw", action="store_true", help="include phi and the u_ij")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_edge)

    p = sub.add_parser("phi", help="stationary-bisecant form and secant coordinates")
    common(p)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("tritangents", help="tritangent ideal / Chow form")
    common(p)
    p.add_argument("--chow", action="store_true", help="compute the Chow form")
    p.set_defaults(func=cmd_tritangents)

    p = sub.add_parser("degrees", help="closed-form degree table")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-g", type=int, default=0)
    p.add_argument("-n", type=int, default=0)
    p.add_argument("-k", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_degrees)

    p = sub.add_parser("squares-ideal", help="the ideal P_d of squared binary forms")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--output")
    p.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET)
    p.set_defaults(func=cmd_squares_ideal)

    p = sub.add_parser("pencil", help="edge surface of a pencil of quadrics")
    common(p)
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("sample", help="point cloud of sign changes on a grid")
    p.add_argument("poly", help="file holding one polynomial in x,y,z")
    p.add_argument("--bbox", type=float, nargs=2, default=(-3.0, 3.0),
                   metavar=("LO", "HI"))
    p.add_argument("--resolution", type=int, default=50)
    p.add_argument("--output")
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.quiet else (
        logging.DEBUG if args.verbose else logging.INFO)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except errors.ResourceLimit as exc:
        log.error("resource limit: %s", exc)
        return EXIT_PARTIAL
    except (errors.CurveHullError, OSError, json.JSONDecodeError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
