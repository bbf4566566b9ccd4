"""Command-line front end: every subcommand writes one JSON report to stdout.

Exit status: 0 on success, 1 on a domain failure (for example a failed
decomposition or a failing verification suite), 2 on usage or
configuration errors.
"""
import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, load_builtin, load_triple, matrix_to_json, parse_matrix_text
from .errors import SymmSpaceError, ValidationFailure
from .liegroup import check_group_membership
from .numkernel import DISTINCT_TOL, MEMBERSHIP_TOL, PROJECTION_TOL, RANK_TOL
from .symmcore import (component_dim, decompose, intersect_coset, membership_P,
                       membership_Q, membership_R, su2_coset_classify, transversal)
from .verify import SUITES, UnsupportedSuite, run_suite

log = logging.getLogger("symmspace.cli")

EXAMPLES = ("su2", "so5", "sl2-minus-identity")


class UsageError(Exception):
    pass


class DomainFailure(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


def _tolerances(args):
    return {"membership": args.tol, "rank": RANK_TOL, "projection": PROJECTION_TOL,
            "distinct": DISTINCT_TOL}


def _report(args, triple_id, payload):
    out = {"tool_version": __version__, "command": args.command, "triple_id": triple_id,
           "seed": getattr(args, "seed", None), "tolerances": _tolerances(args)}
    out.update(payload)
    return out


def _read_element(args, triple, required=True):
    if args.element is not None and args.element_file is not None:
        raise UsageError("give either --element or --element-file, not both")
    if args.element is not None:
        text = args.element
    elif args.element_file is not None:
        try:
            text = Path(args.element_file).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read element file: {exc}") from None
    elif required:
        raise UsageError("this command needs --element or --element-file")
    else:
        return triple.identity()
    m = parse_matrix_text(text)
    if m.shape != (triple.spec.n, triple.spec.n):
        raise UsageError(f"element is {m.shape[0]}x{m.shape[1]}, "
                         f"triple needs {triple.spec.n}x{triple.spec.n}")
    return m.astype(triple.spec.dtype) if triple.spec.is_real else m.astype(complex)


def _require_in_group(triple, g):
    gv = check_group_membership(triple.spec, g)
    if not gv.is_in:
        raise UsageError(f"element is not in {triple.spec.label()}: "
                         f"{gv.relation} (residual {gv.residual:.3e})")


def _verdict_json(v):
    return {"set": v.set_name, "verdict": v.verdict.value, "tier": v.tier,
            "reason": v.reason, "residual": v.residual,
            "certificate": None if v.certificate is None else matrix_to_json(v.certificate),
            "trail": list(v.trail)}


def _triple(args):
    if args.triple is None:
        raise UsageError("--triple is required")
    try:
        return load_triple(args.triple)
    except ValidationFailure as exc:
        raise ConfigError(f"invalid triple {args.triple}: {exc}") from None


def cmd_decompose(args):
    triple = _triple(args)
    g = _read_element(args, triple)
    _require_in_group(triple, g)
    try:
        d = decompose(triple, g, tol=args.tol)
    except SymmSpaceError as exc:
        spectrum = getattr(exc, "spectrum", None)
        payload = {"error": str(exc)}
        if spectrum is not None:
            payload["phi_spectrum"] = [[float(z.real), float(z.imag)] for z in spectrum]
        raise DomainFailure(str(exc), _report(args, triple.triple_id, payload)) from None
    return _report(args, triple.triple_id, {
        "p": matrix_to_json(d.p), "k": matrix_to_json(d.k), "X": matrix_to_json(d.X),
        "residual": d.residual, "sigma_residual": d.sigma_residual})


def cmd_membership(args):
    triple = _triple(args)
    g = _read_element(args, triple)
    gv = check_group_membership(triple.spec, g)
    if not gv.is_in:
        payload = {"set": args.set, "verdict": "Out", "tier": "group",
                   "reason": f"not in {triple.spec.label()}: {gv.relation}",
                   "residual": gv.residual, "certificate": None, "trail": []}
        return _report(args, triple.triple_id, payload)
    fn = {"P": membership_P, "Q": membership_Q, "R": membership_R}[args.set]
    return _report(args, triple.triple_id, _verdict_json(fn(triple, g, tol=args.tol)))


def cmd_component_dim(args):
    triple = _triple(args)
    g = _read_element(args, triple)
    _require_in_group(triple, g)
    rep = component_dim(triple, g, tol=args.tol)
    return _report(args, triple.triple_id, {
        "in_R": rep.in_R, "dim": rep.dim, "meaningful": rep.meaningful,
        "dim_p": triple.p_basis.dim})


def cmd_intersect(args):
    triple = _triple(args)
    g = _read_element(args, triple)
    _require_in_group(triple, g)
    try:
        rep = intersect_coset(triple, g, grid_points=args.grid_points, seed=args.seed or 0)
    except SymmSpaceError as exc:
        raise DomainFailure(str(exc), _report(args, triple.triple_id, {"error": str(exc)})) from None
    return _report(args, triple.triple_id, {
        "points": [matrix_to_json(q) for q in rep.points], "count": len(rep.points),
        "transversal": rep.transversal, "transversal_flags": list(rep.transversal_flags),
        "exhaustive": rep.exhaustive, "bound_K_cap_P": rep.bound_K_cap_P,
        "within_bound": rep.bound_K_cap_P is not None and len(rep.points) <= rep.bound_K_cap_P,
        "undecided": rep.undecided})


def _classification_json(triple, p):
    cls = su2_coset_classify(triple, p)
    return {"kind": cls.kind, "a": cls.a, "b": cls.b, "c": cls.c,
            "points": [matrix_to_json(q) for q in cls.points], "exhaustive": cls.exhaustive,
            "transversal": transversal(triple, p, check=False)}


def cmd_classify_su2(args):
    triple = _triple(args)
    p = _read_element(args, triple, required=False)
    _require_in_group(triple, p)
    try:
        payload = _classification_json(triple, p)
    except SymmSpaceError as exc:
        raise DomainFailure(str(exc), _report(args, triple.triple_id, {"error": str(exc)})) from None
    eye = triple.identity()
    payload["K_cap_P"] = [matrix_to_json(eye), matrix_to_json(-eye)]
    return _report(args, triple.triple_id, payload)


def cmd_verify(args):
    triple = _triple(args)
    if args.suite is None:
        raise UsageError("--suite is required")
    seed = args.seed if args.seed is not None else 0
    try:
        rep = run_suite(triple, args.suite, args.trials, seed=seed, scale=args.scale,
                        grid_points=args.grid_points, workers=args.workers)
    except UnsupportedSuite as exc:
        raise UsageError(str(exc)) from None
    out = _report(args, triple.triple_id, rep.to_dict())
    out["seed"] = seed
    if not rep.passed:
        raise DomainFailure(f"suite {args.suite} did not pass", out)
    return out


def cmd_example(args):
    name = args.name
    if name == "su2":
        triple = load_builtin("su2")
        eye = triple.identity()
        k_cap_p = intersect_coset(triple, eye)
        generic = np.array([[0.6 + 0.0j, 0.8j], [0.8j, 0.6 + 0.0j]])
        antipodal = np.array([[1j, 0], [0, -1j]])
        payload = {"K_cap_P": [matrix_to_json(q) for q in k_cap_p.points],
                   "generic": _classification_json(triple, generic),
                   "antipodal": _classification_json(triple, antipodal)}
    elif name == "so5":
        triple = load_builtin("so5-inner")
        g0 = np.diag([-1.0, -1.0, -1.0, -1.0, 1.0])
        e_rep = component_dim(triple, triple.identity())
        g0_rep = component_dim(triple, g0)
        payload = {"e": {"in_R": e_rep.in_R, "dim": e_rep.dim},
                   "g0": {"element": matrix_to_json(g0), "in_R": g0_rep.in_R,
                          "dim": g0_rep.dim,
                          "membership_P": membership_P(triple, g0).verdict.value}}
    else:
        triple = load_builtin("sl2")
        m = -np.eye(2)
        payload = {"element": matrix_to_json(m),
                   "membership_R": _verdict_json(membership_R(triple, m)),
                   "membership_P": _verdict_json(membership_P(triple, m))}
    payload["example"] = name
    return _report(args, triple.triple_id, payload)


def _add_common(p, element=True):
    p.add_argument("--triple", help="triple JSON file, or a built-in name such as su2.json")
    if element:
        p.add_argument("--element", help="inline JSON matrix, e.g. '[[0.6,0.8i],[0.8i,0.6]]'")
        p.add_argument("--element-file", help="file holding a JSON matrix")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=MEMBERSHIP_TOL)
    p.add_argument("--out", help="also write the report to this path")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symmspace", description="Symmetric spaces G/K realized as P = exp(p) in G.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="factor g = p k")
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("membership", help="decide g in P, Q or R")
    _add_common(p)
    p.add_argument("--set", choices=("P", "Q", "R"), default="P")
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("component-dim", help="dim ker(dsigma + Ad(g))")
    _add_common(p)
    p.set_defaults(func=cmd_component_dim)

    p = sub.add_parser("intersect", help="sample gK n P")
    _add_common(p)
    p.add_argument("--grid-points", type=int, default=64)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("classify-su2", help="closed-form pK n P for SU(2)/SO(2)")
    _add_common(p)
    p.set_defaults(func=cmd_classify_su2)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    _add_common(p, element=False)
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--grid-points", type=int, default=64)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", help="reproduce a built-in worked case")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=MEMBERSHIP_TOL)
    p.add_argument("--out", help="also write the report to this path")
    p.set_defaults(func=cmd_example)
    return parser


def _emit(doc, out_path):
    text = json.dumps(doc, sort_keys=True)
    sys.stdout.write(text + "\n")
    if out_path:
        Path(out_path).write_text(text + "\n")


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        doc = args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"symmspace: error: {exc}", file=sys.stderr)
        return 2
    except DomainFailure as exc:
        print(f"symmspace: {exc}", file=sys.stderr)
        _emit(exc.payload, args.out)
        return 1
    except SymmSpaceError as exc:
        print(f"symmspace: {exc}", file=sys.stderr)
        _emit({"tool_version": __version__, "command": args.command, "error": str(exc)},
              args.out)
        return 1
    _emit(doc, args.out)
    return 0


def main():
    sys.exit(run_cli())
