"""Command-line surface: colouring tables, verification, bounds, scans.

Exit codes are a contract: 0 the requested property holds or the
artifact was produced, 2 the request is inapplicable (no scheme, failed
verification, unmet precondition), 3 a resource cap was exceeded,
1 internal error or malformed input.  All JSON output is sorted and
timestamp-free so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys

from . import bounds as bnd
from . import coloring as col
from . import lattice as lat
from . import verify as ver

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INAPPLICABLE = 2
EXIT_CAP = 3

_WINDOW = re.compile(r"^(-?\d+)\.\.(-?\d+)$")
_SCALED = re.compile(r"^(?P<base>.+)_scaled(?P<scale>\d+)$")


def _parse_window(text: str) -> tuple[int, int]:
    m = _WINDOW.match(text)
    if not m:
        raise ValueError(f"window must look like lo..hi, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ValueError(f"empty window {text!r}")
    return lo, hi


def _vertex_cap(args) -> int:
    if getattr(args, "vertex_cap", None) is not None:
        return args.vertex_cap
    env = os.environ.get("LATCOLOR_VERTEX_CAP")
    return int(env) if env else 200_000


def _json_text(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _payload(command: str, **fields) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "command": command}
    out.update(fields)
    return out


def _emit(args, text: str) -> None:
    path = getattr(args, "output", None)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(args, command: str, reason: str, code: int, **fields) -> int:
    _emit(args, _json_text(_payload(command, error=reason, **fields)))
    return code


def _resolve_scheme(name: str, dim, D, m, alpha) -> col.ColouringScheme:
    scaled = _SCALED.match(name)
    if scaled and D is not None:
        scale = int(scaled.group("scale"))
        reduced = D // (scale * scale)
        base = col.scheme_from_name(scaled.group("base"), dim=dim,
                                    D=reduced, m=m, alpha=alpha)
        return col.scaled_colouring(base, scale, D)
    return col.scheme_from_name(name, dim=dim, D=D, m=m, alpha=alpha)


def _scheme_info(scheme: col.ColouringScheme) -> dict:
    info = scheme.to_json_dict()
    info["provenance"] = {"construction": scheme.name,
                          "params": scheme.params}
    return info


# --- colour ------------------------------------------------------------------


def cmd_colour(args) -> int:
    if args.scheme:
        scheme = _resolve_scheme(args.scheme, args.dim, args.D, args.m,
                                 args.alpha)
        if not scheme.admissible(args.alpha, args.D):
            return _fail(args, "colour", "scheme not admissible",
                         EXIT_INAPPLICABLE, scheme=args.scheme,
                         dim=args.dim, alpha=args.alpha, D=args.D)
    else:
        scheme = col.best_scheme(args.dim, args.alpha, args.D)
        if scheme is None:
            return _fail(args, "colour", "no scheme", EXIT_INAPPLICABLE,
                         dim=args.dim, alpha=args.alpha, D=args.D)
    payload = _payload("colour", scheme=_scheme_info(scheme),
                       colour_bound=scheme.colour_bound,
                       dim=scheme.dim, alpha=args.alpha, D=args.D)
    if args.window is None:
        if args.format == "csv":
            return _fail(args, "colour", "csv output needs --window",
                         EXIT_INAPPLICABLE)
        _emit(args, _json_text(payload))
        return EXIT_OK
    if scheme.domain != "int":
        return _fail(args, "colour", "window tables need an integer-lattice "
                     "scheme", EXIT_INAPPLICABLE, scheme=scheme.name)
    lo, hi = args.window
    count = (hi - lo + 1) ** scheme.dim
    if count > _vertex_cap(args):
        raise lat.VertexCapError(f"{count} window points exceed the cap")
    points = list(itertools.product(range(lo, hi + 1), repeat=scheme.dim))
    if args.format == "csv":
        import io

        buf = io.StringIO()
        col.write_colour_csv(scheme, points, buf)
        _emit(args, buf.getvalue())
        return EXIT_OK
    colours = scheme.colour_window(points)
    payload["window"] = [lo, hi]
    payload["table"] = [list(p) + [c] for p, c in zip(points, colours)]
    _emit(args, _json_text(payload))
    return EXIT_OK


# --- verify -------------------------------------------------------------------


def cmd_verify(args) -> int:
    scheme = _resolve_scheme(args.scheme, args.dim, args.D, args.m, args.alpha)
    if scheme.domain == "int":
        if args.window is None:
            return _fail(args, "verify", "integer-lattice schemes need "
                         "--window", EXIT_INAPPLICABLE)
        lo, hi = args.window
        graph = lat.build_window_graph(lat.Window(scheme.dim, lo, hi),
                                       args.alpha, args.D,
                                       vertex_cap=_vertex_cap(args))
        report = ver.check_properness(scheme, graph)
    elif scheme.domain == "mod":
        modulus = 3 if scheme.name.startswith("z3") else 5
        if modulus ** scheme.dim > _vertex_cap(args):
            raise lat.VertexCapError(
                f"{modulus ** scheme.dim} points exceed the cap")
        residue = args.residue if args.residue is not None \
            else args.D % modulus
        report = ver.check_modular_properness(scheme, modulus, residue)
    else:
        report = ver.check_rational_pairs(scheme, args.D, args.trials,
                                          seed=args.seed)
    payload = _payload("verify", report=report.to_json_dict(),
                       scheme=_scheme_info(scheme))
    _emit(args, _json_text(payload))
    return EXIT_OK if report.proper else EXIT_INAPPLICABLE


def cmd_verify_certificate(args) -> int:
    try:
        with open(args.file) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    kind = obj.get("kind")
    try:
        if kind == "spindle":
            ok = bnd.verify_spindle(bnd.spindle_from_json(obj))
            msg = "spindle verified" if ok else "spindle failed re-check"
        elif kind in ("odd_cycle", "chain"):
            ok, msg = ver.replay_certificate(obj)
        else:
            print(f"error: unknown certificate kind {kind!r}",
                  file=sys.stderr)
            return EXIT_INTERNAL
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(args, _json_text(_payload("verify-certificate", kind=kind,
                                    verified=ok, detail=msg)))
    return EXIT_OK if ok else EXIT_INAPPLICABLE


# --- bounds -------------------------------------------------------------------


def _ratio_fields(ratio) -> dict:
    return {"numerator": ratio.numerator, "denominator": ratio.denominator,
            "bound": str(ratio)}


def cmd_bounds_fw(args) -> int:
    ratio = bnd.frankl_wilson_bound(args.n, args.p)
    cfg = bnd.frankl_wilson_configuration(args.n, args.p)
    _emit(args, _json_text(_payload("bounds fw", n=args.n, p=args.p,
                                    configuration=cfg.to_json_dict(),
                                    **_ratio_fields(ratio))))
    return EXIT_OK


def cmd_bounds_triple(args) -> int:
    ratio = bnd.triple_configuration_bound(args.n)
    cfg = bnd.triple_configuration(args.n)
    _emit(args, _json_text(_payload("bounds triple", n=args.n,
                                    validated=args.n <= 9,
                                    configuration=cfg.to_json_dict(),
                                    **_ratio_fields(ratio))))
    return EXIT_OK


def _window_graph(args) -> lat.DistanceGraph:
    if args.window is None:
        raise ValueError("--window is required")
    lo, hi = args.window
    return lat.build_window_graph(lat.Window(args.dim, lo, hi), args.alpha,
                                  args.D, vertex_cap=_vertex_cap(args))


def cmd_bounds_chromatic(args) -> int:
    graph = _window_graph(args)
    chi = bnd.exact_chromatic(graph, limit=args.limit, cap=args.solver_cap)
    _emit(args, _json_text(_payload(
        "bounds chromatic", dim=args.dim, alpha=args.alpha, D=args.D,
        window=list(args.window), vertices=graph.n_vertices,
        edges=graph.n_edges, chi=chi, limit=args.limit,
        exceeds_limit=chi is None)))
    return EXIT_OK


def cmd_bounds_independence(args) -> int:
    graph = _window_graph(args)
    alpha = bnd.exact_independence(graph, cap=args.solver_cap)
    _emit(args, _json_text(_payload(
        "bounds independence", dim=args.dim, alpha=args.alpha, D=args.D,
        window=list(args.window), vertices=graph.n_vertices,
        edges=graph.n_edges, independence=alpha)))
    return EXIT_OK


def cmd_bounds_spindle(args) -> int:
    if args.search:
        if args.D is None or args.radius is None:
            return _fail(args, "bounds spindle", "--search needs --D and "
                         "--radius", EXIT_INAPPLICABLE)
        cert = bnd.search_spindle(args.dim, args.alpha, args.D, args.radius)
        if cert is None:
            return _fail(args, "bounds spindle", "no spindle in the box",
                         EXIT_INAPPLICABLE, dim=args.dim, D=args.D,
                         radius=args.radius)
    else:
        if args.m is None:
            return _fail(args, "bounds spindle", "--m is required",
                         EXIT_INAPPLICABLE)
        cert = bnd.construct_spindle_z3(args.m, max_len=args.max_len)
        if cert is None:
            return _fail(args, "bounds spindle", "no witness",
                         EXIT_INAPPLICABLE, m=args.m)
    _emit(args, _json_text(_payload("bounds spindle",
                                    certificate=cert.to_json_dict(),
                                    verified=bnd.verify_spindle(cert))))
    return EXIT_INAPPLICABLE if cert.conditional else EXIT_OK


# --- scan and table -----------------------------------------------------------


def cmd_scan(args) -> int:
    rows = bnd.conjecture_scan(args.max)
    _emit(args, _json_text(_payload("scan conjecture", max=args.max,
                                    rows=rows)))
    return EXIT_OK


def _table_row(D: int) -> dict:
    reduced, scale = D, 1
    while reduced % 4 == 0:
        reduced //= 4
        scale *= 2
    row = {"D": D, "reduced": reduced, "scale": scale, "conditional": False}
    refs: list[str] = []
    if reduced % 2 == 1:
        row["claimed"] = "=2"
        if lat.difference_vectors(3, 2, reduced):
            row["certified"] = "=2"
            refs = ["parity scheme", "odd-value bipartite"]
        else:
            row["certified"] = "=1"
            refs = ["no realising vectors"]
    elif reduced % 12 == 10:
        row["claimed"] = row["certified"] = "=3"
        v = ver.two_colourability_verdict(D)
        refs = ["mod6 scheme"]
        if v.certificate is not None:
            refs.append(f"odd_cycle({len(v.certificate.points)})")
    else:
        cert = bnd.construct_spindle_z3(reduced // 2)
        v = ver.two_colourability_verdict(D)
        cyc = None if v.certificate is None \
            else f"odd_cycle({len(v.certificate.points)})"
        if cert is None:
            row["claimed"] = row["certified"] = "in {3,4}"
            refs = ["universal scheme"] + ([cyc] if cyc else [])
        elif cert.conditional:
            row["claimed"] = "=4"
            row["certified"] = "in {3,4}"
            row["conditional"] = True
            refs = ["universal scheme", f"spindle({cert.bridge_kind})"]
            if cyc:
                refs.append(cyc)
        else:
            row["claimed"] = row["certified"] = "=4"
            refs = ["universal scheme", f"spindle({cert.bridge_kind})"]
    row["match"] = row["claimed"] == row["certified"]
    row["certificates"] = refs
    return row


def cmd_table(args) -> int:
    rows = [_table_row(D) for D in range(1, args.max + 1)]
    _emit(args, _json_text(_payload("table", max=args.max, rows=rows)))
    return EXIT_OK


# --- graph export ---------------------------------------------------------------


def _emit_graph(args, graph: lat.DistanceGraph) -> int:
    if args.format == "dimacs":
        _emit(args, graph.to_dimacs())
    else:
        _emit(args, _json_text(_payload("graph", graph=graph.to_json_dict())))
    return EXIT_OK


def cmd_graph_window(args) -> int:
    return _emit_graph(args, _window_graph(args))


def cmd_graph_hamming(args) -> int:
    graph = lat.build_hamming_slice_graph(args.n, args.weight,
                                          args.intersection)
    return _emit_graph(args, graph)


# --- parser -------------------------------------------------------------------


def _add_common(p, *, window=False, seed=False, fmt=None) -> None:
    p.add_argument("--output", help="write the result to this file")
    p.add_argument("--vertex-cap", type=int, default=None,
                   help="max window points (env LATCOLOR_VERTEX_CAP)")
    if window:
        p.add_argument("--window", type=_parse_window, default=None,
                       metavar="LO..HI")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if fmt:
        p.add_argument("--format", choices=fmt, default=fmt[0])


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="latcolor",
        description="Lattice colourings with one forbidden distance: "
                    "constructions, certificates, and verification.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colour", help="emit a colouring table or scheme")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--scheme", default=None)
    _add_common(p, window=True, fmt=("json", "csv"))
    p.set_defaults(fn=cmd_colour)

    p = sub.add_parser("verify", help="re-check a scheme against a graph")
    p.add_argument("--scheme", required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--residue", type=int, default=None)
    p.add_argument("--trials", type=int, default=200)
    _add_common(p, window=True, seed=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("verify-certificate",
                       help="replay a serialised certificate")
    p.add_argument("file")
    p.add_argument("--output", help="write the result to this file")
    p.set_defaults(fn=cmd_verify_certificate)

    b = sub.add_parser("bounds", help="lower bounds and exact solvers")
    bsub = b.add_subparsers(dest="bounds_command", required=True)

    p = bsub.add_parser("fw", help="forbidden-intersection binomial ratio")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_bounds_fw)

    p = bsub.add_parser("triple", help="weight-3 configuration ratio")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_bounds_triple)

    for name, fn in (("chromatic", cmd_bounds_chromatic),
                     ("independence", cmd_bounds_independence)):
        p = bsub.add_parser(name, help=f"exact {name} number of a window")
        p.add_argument("--dim", type=int, required=True)
        p.add_argument("--D", type=int, required=True)
        p.add_argument("--alpha", type=int, default=2)
        p.add_argument("--limit", type=int, default=None)
        p.add_argument("--solver-cap", type=int, default=None,
                       help="max solver vertices (env LATCOLOR_SOLVER_CAP)")
        _add_common(p, window=True)
        p.set_defaults(fn=fn)

    p = bsub.add_parser("spindle", help="seven-point spindle certificates")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--search", action="store_true")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--alpha", type=int, default=2)
    p.add_argument("--D", type=int, default=None)
    p.add_argument("--radius", type=int, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_bounds_spindle)

    s = sub.add_parser("scan", help="status scans over forbidden values")
    ssub = s.add_subparsers(dest="scan_command", required=True)
    p = ssub.add_parser("conjecture", help="even-value status table")
    p.add_argument("--max", type=int, default=50)
    _add_common(p)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("table", help="claimed vs certified status table")
    p.add_argument("--max", type=int, default=50)
    _add_common(p)
    p.set_defaults(fn=cmd_table)

    g = sub.add_parser("graph", help="export distance graphs")
    gsub = g.add_subparsers(dest="graph_command", required=True)
    p = gsub.add_parser("window", help="integer box distance graph")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--alpha", type=int, default=2)
    _add_common(p, window=True, fmt=("json", "dimacs"))
    p.set_defaults(fn=cmd_graph_window)
    p = gsub.add_parser("hamming", help="fixed-weight intersection graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--intersection", type=int, required=True)
    _add_common(p, fmt=("json", "dimacs"))
    p.set_defaults(fn=cmd_graph_hamming)

    return top


def _normalise(argv: list[str]) -> list[str]:
    # argparse rejects "--window -6..6" because the value starts with a dash
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv) \
                and _WINDOW.match(argv[i + 1]):
            out.append(argv[i] + "=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_normalise(argv))
    try:
        return args.fn(args)
    except bnd.SolverCapExceeded as exc:
        print(f"error: solver cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except lat.VertexCapError as exc:
        print(f"error: vertex cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE


if __name__ == "__main__":
    sys.exit(main())
