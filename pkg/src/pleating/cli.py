"""Command-line front end.

Exit codes: 0 success, 1 structural/validation failure (bad signature,
malformed or invalid input), 2 numerical residual above tolerance.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import jsonschema

from . import __version__
from .coords import CoordinateTuple, max_relative_error, mutate, random_generic
from .develop import develop, develop_patch, extract_coordinates, monodromy, verify_equivariance
from .exceptions import PleatingError
from .mobius import POINT_TOL, trace_squared
from .render import RenderConfig, render
from .serialize import validate_document, witness_to_json
from .surface import Signature, Triangulation, canonical_triangulation, flip, infer_signature, validate
from .thurston import grafting_data

log = logging.getLogger("pleating")

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2


class UsageFailure(Exception):
    pass


def default_tolerance() -> float:
    raw = os.environ.get("HOLONOMY_TOL")
    if raw is None:
        return POINT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise UsageFailure(f"HOLONOMY_TOL={raw!r} is not a number") from exc
    if not tol > 0:
        raise UsageFailure("HOLONOMY_TOL must be positive")
    return tol


def _emit(doc, path):
    text = doc if isinstance(doc, str) else json.dumps(doc, indent=2, sort_keys=True)
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _read_json(path, kind):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageFailure(f"cannot read {kind} file {path}: {exc}") from exc
    validate_document(kind, doc)
    return doc


def _signature(args, tri=None) -> Signature | None:
    if args.genus is None and args.poles is None:
        return infer_signature(tri) if tri is not None else None
    if args.genus is None or args.poles is None:
        raise UsageFailure("--genus and --poles must be given together")
    return Signature(args.genus, tuple(args.poles))


def _triangulation(args) -> tuple[Triangulation, Signature]:
    if getattr(args, "triangulation", None):
        tri = Triangulation.from_dict(_read_json(args.triangulation, "triangulation"))
        sig = _signature(args, tri)
    else:
        sig = _signature(args)
        if sig is None:
            raise UsageFailure("give --triangulation or --genus/--poles")
        tri = canonical_triangulation(sig)
    report = validate(tri, sig)
    if not report.ok:
        raise PleatingError("; ".join(report.violations))
    return tri, sig


def _coords(args, tri) -> CoordinateTuple:
    if getattr(args, "coords", None):
        return CoordinateTuple.from_dict(_read_json(args.coords, "coords"), tri)
    return random_generic(tri, args.seed, args.bound, positive=getattr(args, "positive", False))


# -- subcommands -------------------------------------------------------------


def cmd_validate(args):
    sig = _signature(args)
    if args.triangulation:
        tri = Triangulation.from_dict(_read_json(args.triangulation, "triangulation"))
        sig = sig or infer_signature(tri)
        report = validate(tri, sig)
    else:
        if sig is None:
            raise UsageFailure("give --triangulation and/or --genus/--poles")
        bad = sig.violations()
        if bad:
            _emit({"valid": False, "signature": str(sig), "violations": bad}, None)
            for msg in bad:
                print(msg, file=sys.stderr)
            return EXIT_INVALID
        report = validate(canonical_triangulation(sig), sig)
    _emit({"valid": report.ok, "signature": str(sig), "violations": report.violations, "counts": report.counts}, None)
    for msg in report.violations:
        print(msg, file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_generate(args):
    sig = _signature(args)
    if sig is None:
        raise UsageFailure("generate needs --genus and --poles")
    tri = canonical_triangulation(sig)
    _emit(tri.to_dict(), args.output)
    return EXIT_OK


def cmd_develop(args):
    tri, sig = _triangulation(args)
    coords = _coords(args, tri)
    witness = grafting_data(tri, coords, sig, tol=args.tol)
    doc = witness_to_json(witness, tri.digest)
    validate_document("witness", doc)
    _emit(doc, args.output)
    if not witness.ok:
        print(f"residuals above tolerance {args.tol}: {witness.residuals}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_flip(args):
    tri, sig = _triangulation(args)
    if args.arc not in tri.arcs:
        raise UsageFailure(f"arc {args.arc} is not an interior arc (0..{tri.n_arcs - 1})")
    new = flip(tri, args.arc)
    doc = {"triangulation": new.to_dict()}
    if args.coords or args.seed is not None:
        coords = _coords(args, tri)
        doc["coords"] = mutate(coords, tri, args.arc).to_dict()
    _emit(doc, args.output)
    return EXIT_OK


def cmd_roundtrip(args):
    tri, sig = _triangulation(args)
    worst_rt = worst_eq = 0.0
    for seed in range(args.seed, args.seed + args.seeds):
        c = random_generic(tri, seed, args.bound)
        dev = develop(tri, c)
        worst_rt = max(worst_rt, max_relative_error(extract_coordinates(dev), c))
        worst_eq = max(worst_eq, verify_equivariance(dev))
    ok = worst_rt < args.tol and worst_eq < args.tol
    _emit({"signature": str(sig), "seeds": args.seeds, "max_relative_error": worst_rt, "max_equivariance_residual": worst_eq, "tolerance": args.tol, "ok": ok}, args.output)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_fuchsian(args):
    tri, sig = _triangulation(args)
    flag_im = trace_im = 0.0
    for seed in range(args.seed, args.seed + args.seeds):
        c = random_generic(tri, seed, args.bound, positive=True)
        dev = develop(tri, c)
        for flags in dev.base_flags:
            for p in flags:
                if p.w != 0:
                    flag_im = max(flag_im, abs(p.to_affine().imag))
        for _, g in monodromy(dev).generators:
            trace_im = max(trace_im, abs(trace_squared(g).imag))
    ok = flag_im < 1e-10 and trace_im < args.tol
    _emit({"signature": str(sig), "seeds": args.seeds, "max_flag_imag": flag_im, "max_trace_squared_imag": trace_im, "ok": ok}, args.output)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_render(args):
    tri, sig = _triangulation(args)
    coords = _coords(args, tri)
    patch = develop_patch(tri, coords, args.depth, budget=args.budget)
    svg = render(patch, tri, coords, RenderConfig(size=args.size, chart_radius=args.radius))
    _emit(svg, args.output)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pleating", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def surface_opts(p, triangulation=True):
        p.add_argument("--genus", type=int)
        p.add_argument("--poles", type=int, nargs="+")
        if triangulation:
            p.add_argument("--triangulation", "-t", help="triangulation JSON file")
        p.add_argument("--output", "-o", default="-")

    def numeric_opts(p, coords=True):
        if coords:
            p.add_argument("--coords", "-c", help="coordinate JSON file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--bound", type=float, default=1.6, help="bound on |log|x_a|| for random tuples")
        p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("validate", help="validate a triangulation (or just a signature)")
    surface_opts(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="emit the canonical triangulation")
    surface_opts(p, triangulation=False)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("develop", help="grafting witness JSON for a tuple")
    surface_opts(p)
    numeric_opts(p)
    p.add_argument("--positive", action="store_true", help="random tuple in the positive (Fuchsian) chart")
    p.set_defaults(func=cmd_develop)

    p = sub.add_parser("flip", help="flip an arc and mutate the tuple")
    surface_opts(p)
    numeric_opts(p)
    p.set_defaults(seed=None)
    p.add_argument("--arc", type=int, required=True)
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("roundtrip", help="max round-trip error over seeds")
    surface_opts(p)
    numeric_opts(p, coords=False)
    p.add_argument("--seeds", type=int, default=100)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("fuchsian", help="positivity report over seeds")
    surface_opts(p)
    numeric_opts(p, coords=False)
    p.add_argument("--seeds", type=int, default=50)
    p.set_defaults(func=cmd_fuchsian)

    p = sub.add_parser("render", help="SVG of a developed patch")
    surface_opts(p)
    numeric_opts(p)
    p.add_argument("--positive", action="store_true")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--size", type=int, default=800)
    p.add_argument("--radius", type=float, default=8.0, help="chart radius for clipping points near infinity")
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(func=cmd_render)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if getattr(args, "tol", "unset") is None:
            args.tol = default_tolerance()
        if getattr(args, "depth", 0) < 0:
            raise UsageFailure("--depth must be non-negative")
        if getattr(args, "tol", 1.0) <= 0:
            raise UsageFailure("--tol must be positive")
        log.debug("running %s", args.command)
        return args.func(args)
    except (PleatingError, UsageFailure, ValueError, jsonschema.ValidationError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else str(exc)
        diag = {"error": type(exc).__name__, "message": msg}
        if hasattr(exc, "violations"):
            diag["violations"] = exc.violations
        print(json.dumps(diag), file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
