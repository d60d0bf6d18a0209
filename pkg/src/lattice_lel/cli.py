"""Command-line front end: ``lattice-lel <command> [options]``.

Files are written atomically with 12 significant digits; the human summary
on stdout is rounded to 4 decimals.  Nothing run-dependent (timings,
backend names, dates) reaches an output file.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import audit as audit_mod
from .asymptotics import DEFAULT_GRID, DEFAULT_LEVELS, Rule, Weighting, converge_sweep, kdim_constant, quad_constant
from .errors import (
    CapacityError,
    ContainmentError,
    InvalidSizeError,
    InvalidSpectrumError,
    InvariantError,
    NoClosedFormError,
    ShapeError,
)
from .graph_core import to_edgelist
from .lattice import Boundary, Family, LatticeSpec, build, check_buildable
from .lel import MARGIN_TOL, lel, lel_bounds, perturbation_trials
from .report import csv_text, dumps_json, write_atomic
from .spectral import DEFAULT_CAP, Spectrum, closed_form_spectrum, numeric_spectrum, spectrum_compare

COMMANDS = ("build", "spectrum", "lel", "constant", "kdim", "converge", "audit", "perturb")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SIZE = 3
EXIT_OUTPUT = 4
EXIT_CAPACITY = 5
EXIT_NO_CLOSED_FORM = 6
EXIT_INVARIANT = 7

FORMATS = {
    "build": ("edgelist", "json"),
    "spectrum": ("csv", "json"),
    "lel": ("json", "csv"),
    "constant": ("json", "csv"),
    "kdim": ("json", "csv"),
    "converge": ("csv", "json", "gnuplot"),
    "audit": ("json",),
    "perturb": ("json", "csv"),
}


class CliError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default=None, help="square | hex | j312 | tkl | m3342")
    common.add_argument("--boundary", default="torus", help="torus | cyl | free")
    common.add_argument("--m", type=int, default=None)
    common.add_argument("--n", type=int, default=None)
    common.add_argument("--grid", type=int, default=DEFAULT_GRID, help="quadrature points per axis (power of two)")
    common.add_argument("--rule", default=Rule.MIDPOINT.value, choices=[r.value for r in Rule])
    common.add_argument("--levels", type=int, default=None, help=f"Richardson levels (default {DEFAULT_LEVELS}; kdim 2)")
    common.add_argument("--weighting", default=None, choices=[w.value for w in Weighting],
                        help="j312/tkl integrand weighting (default: spectrum)")
    common.add_argument("--tol", type=float, default=1e-8, help="spectrum comparison tolerance")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="eigensolver vertex cap")
    common.add_argument("--out", default=None, help="output file (default: summary only)")
    common.add_argument("--format", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)

    p = argparse.ArgumentParser(prog="lattice-lel", description="Laplacian-energy-like invariant of lattice graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="write the lattice edge list")
    sp = sub.add_parser("spectrum", parents=[common], help="Laplacian spectrum")
    sp.add_argument("--source", default="closed", choices=["closed", "numeric", "both"])
    sub.add_parser("lel", parents=[common], help="LEL, per-vertex value and universal bounds")
    sub.add_parser("constant", parents=[common], help="asymptotic per-vertex constant")
    kp = sub.add_parser("kdim", parents=[common], help="k-dimensional hypercubic constant")
    kp.add_argument("--k", type=int, default=2)
    cp = sub.add_parser("converge", parents=[common], help="finite-size convergence sweep")
    cp.add_argument("--sizes", default="16,32,64", help="comma list of m=n sizes or MxN pairs")
    cp.add_argument("--boundaries", default="torus,cyl,free")
    sub.add_parser("audit", parents=[common], help="closed-form and constant audit")
    sub.add_parser("perturb", parents=[common], help="seeded subgraph-deletion inequality trials")
    return p


def _family(value, default=None) -> Family:
    value = value or default
    try:
        return Family(value)
    except ValueError:
        raise CliError(f"unknown family {value!r}; expected one of {', '.join(f.value for f in Family)}",
                       EXIT_USAGE) from None


def _boundary(value) -> Boundary:
    try:
        return Boundary(value)
    except ValueError:
        raise CliError(f"unknown boundary {value!r}; expected one of {', '.join(b.value for b in Boundary)}",
                       EXIT_USAGE) from None


def _spec(args, buildable: bool = True) -> LatticeSpec:
    family = _family(args.family, Family.SQUARE.value)
    m = 4 if args.m is None else args.m
    n = 4 if args.n is None else args.n
    try:
        spec = LatticeSpec(family, _boundary(args.boundary), m, n)
        if buildable:
            check_buildable(spec)
    except InvalidSizeError as exc:
        raise CliError(f"invalid size: {exc}", EXIT_SIZE) from None
    return spec


def _format(args) -> str:
    allowed = FORMATS[args.command]
    fmt = args.format or allowed[0]
    if fmt not in allowed:
        raise CliError(f"format {fmt!r} not available for {args.command}; use {' | '.join(allowed)}", EXIT_USAGE)
    return fmt


def _check_out(path) -> None:
    if path is None:
        return
    directory = os.path.dirname(os.path.abspath(path)) or "."
    if not os.path.isdir(directory):
        raise CliError(f"output directory {directory} does not exist", EXIT_OUTPUT)
    if not os.access(directory, os.W_OK) or os.path.isdir(path):
        raise CliError(f"output path {path} is not writable", EXIT_OUTPUT)


def _emit(args, text: str) -> None:
    if args.out is None:
        return
    try:
        write_atomic(args.out, text)
    except OSError as exc:
        raise CliError(f"cannot write {args.out}: {exc.strerror}", EXIT_OUTPUT) from None


def _r4(x: float) -> str:
    return f"{x:.4f}"


def _key_value_csv(doc: dict) -> str:
    return csv_text(["key", "value"], ((k, v) for k, v in sorted(doc.items()) if not isinstance(v, (dict, list))))


def _doc_text(doc: dict, fmt: str) -> str:
    return dumps_json(doc) if fmt == "json" else _key_value_csv(doc)


# -- commands -----------------------------------------------------------------

def cmd_build(args, out) -> int:
    spec = _spec(args)
    g = build(spec)
    if _format(args) == "edgelist":
        text = to_edgelist(g)
    else:
        text = dumps_json({"lattice": spec.tag, "n_vertices": g.n_vertices,
                           "edges": [list(e) for e in g.sorted_edges]})
    _emit(args, text)
    print(f"{spec.tag}: {g.n_vertices} vertices, {g.n_edges} edges", file=out)
    return EXIT_OK


def _numeric(spec: LatticeSpec, cap: int) -> Spectrum:
    if spec.n_vertices() > cap:
        raise CapacityError(f"{spec.tag} has {spec.n_vertices()} vertices, above the eigensolver cap {cap}")
    return numeric_spectrum(build(spec), cap=cap, subject=spec.tag)


def cmd_spectrum(args, out) -> int:
    fmt = _format(args)
    spec = _spec(args, buildable=args.source != "closed")
    closed = closed_form_spectrum(spec) if args.source in ("closed", "both") else None
    numeric = _numeric(spec, args.cap) if args.source in ("numeric", "both") else None
    doc = {"subject": spec.tag, "tolerance": 1e-9}
    if args.source == "both":
        cmp = spectrum_compare(closed, numeric, args.tol)
        doc.update(source="both", max_deviation=cmp.max_deviation, passed=cmp.passed, n=len(closed),
                   closed_form=[float(v) for v in closed.values], numeric=[float(v) for v in numeric.values])
        rows = ((k, float(a), float(b), abs(float(a) - float(b)))
                for k, (a, b) in enumerate(zip(closed.values, numeric.values)))
        header = ["index", "closed_form", "numeric", "abs_diff"]
    else:
        s = closed if closed is not None else numeric
        doc.update(source=s.source, n=len(s), eigenvalues=[float(v) for v in s.values])
        rows = ((k, float(v)) for k, v in enumerate(s.values))
        header = ["index", "eigenvalue"]
    _emit(args, dumps_json(doc) if fmt == "json" else csv_text(header, rows))
    print(f"{spec.tag}: {doc['n']} eigenvalues ({doc['source']})", file=out)
    if args.source == "both":
        print(f"max |closed - numeric| = {doc['max_deviation']:.3e} ({'pass' if doc['passed'] else 'FAIL'} at "
              f"{args.tol:g})", file=out)
        if not doc["passed"]:
            raise InvariantError(f"closed form and eigensolver disagree by {doc['max_deviation']:.3e}")
    return EXIT_OK


def cmd_lel(args, out) -> int:
    fmt = _format(args)
    spec = _spec(args)
    g = build(spec)
    try:
        s, method = closed_form_spectrum(spec), "closed_form"
    except NoClosedFormError:
        s, method = _numeric(spec, args.cap), "numeric"
    v = lel(s)
    lo, hi = lel_bounds(g.n_vertices, g.n_edges)
    if not lo - MARGIN_TOL <= v.value <= hi + MARGIN_TOL:
        raise InvariantError(f"LEL {v.value:.12g} outside [{lo:.12g}, {hi:.12g}]")
    doc = {"lattice": spec.tag, "method": method, "n_vertices": g.n_vertices, "n_edges": g.n_edges,
           "lel": v.value, "per_vertex": v.per_vertex, "lower_bound": lo, "upper_bound": hi}
    _emit(args, _doc_text(doc, fmt))
    print(f"{spec.tag}: LEL = {_r4(v.value)}, per vertex = {_r4(v.per_vertex)}", file=out)
    print(f"bounds: sqrt(2m) = {_r4(lo)} <= LEL <= sqrt(2) m = {_r4(hi)}", file=out)
    return EXIT_OK


def _quad_doc(q) -> dict:
    return {"family": q.family, "constant": q.constant_h, "error_estimate": q.error_estimate,
            "points_per_axis": q.grid_points_per_axis, "rule": q.rule.value, "levels": q.richardson_levels,
            "weighting": q.weighting, "level_values": list(q.level_values)}


def cmd_constant(args, out) -> int:
    fmt = _format(args)
    family = _family(args.family, Family.SQUARE.value)
    try:
        q = quad_constant(family, args.grid, args.rule, args.levels or DEFAULT_LEVELS, args.weighting)
    except InvalidSizeError as exc:
        raise CliError(f"invalid grid: {exc}", EXIT_SIZE) from None
    doc = _quad_doc(q)
    if family in audit_mod.PUBLISHED_PER_VERTEX:
        doc["published"] = audit_mod.PUBLISHED_PER_VERTEX[family]
    _emit(args, _doc_text(doc, fmt))
    print(f"{family.value}: h = {_r4(q.constant_h)} (error estimate {q.error_estimate:.1e})", file=out)
    return EXIT_OK


def cmd_kdim(args, out) -> int:
    fmt = _format(args)
    grid = None if args.grid == DEFAULT_GRID else args.grid
    try:
        q = kdim_constant(args.k, grid, args.levels or 2)
    except InvalidSizeError as exc:
        raise CliError(f"invalid size: {exc}", EXIT_SIZE) from None
    doc = _quad_doc(q)
    doc["k"] = args.k
    _emit(args, _doc_text(doc, fmt))
    print(f"k = {args.k}: h = {_r4(q.constant_h)} (error estimate {q.error_estimate:.1e})", file=out)
    return EXIT_OK


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        try:
            m, _, n = tok.lower().partition("x")
            sizes.append((int(m), int(n or m)))
        except ValueError:
            raise CliError(f"cannot parse size {tok!r}; use N or MxN", EXIT_USAGE) from None
    if not sizes:
        raise CliError("no sizes given", EXIT_USAGE)
    return sizes


def cmd_converge(args, out) -> int:
    fmt = _format(args)
    family = _family(args.family, Family.SQUARE.value)
    sizes = _parse_sizes(args.sizes)
    boundaries = [_boundary(b.strip()) for b in args.boundaries.split(",") if b.strip()]
    try:
        for m, n in sizes:
            for b in boundaries:
                check_buildable(LatticeSpec(family, b, m, n))
    except InvalidSizeError as exc:
        raise CliError(f"invalid size: {exc}", EXIT_SIZE) from None
    constant = quad_constant(family, args.grid, args.rule, args.levels or DEFAULT_LEVELS, args.weighting).constant_h
    rep = converge_sweep(family, sizes, boundaries, constant=constant, cap=args.cap, weighting=args.weighting)
    if fmt == "csv":
        text = rep.to_csv()
    elif fmt == "gnuplot":
        text = rep.to_gnuplot()
    else:
        text = dumps_json({"family": rep.family, "constant": rep.constant_h,
                           "trend_ok": {b.value: rep.trend_ok(b) for b in boundaries},
                           "rows": [r.__dict__ for r in rep.rows]})
    _emit(args, text)
    print(f"{family.value}: h = {_r4(constant)}", file=out)
    for r in rep.rows:
        print(f"  {r.m}x{r.n} {r.boundary:5s} per vertex {_r4(r.per_vertex_lel)}  deviation {_r4(r.deviation)}",
              file=out)
    for b in boundaries:
        print(f"  trend {b.value}: {'ok' if rep.trend_ok(b) else 'not monotone'}", file=out)
    return EXIT_OK


def cmd_audit(args, out) -> int:
    _format(args)
    if args.family is None:
        doc = audit_mod.full_audit(args.grid)
    else:
        family = _family(args.family)
        if (args.m is None) != (args.n is None):
            raise CliError("give both --m and --n or neither", EXIT_USAGE)
        if args.m is not None:
            try:
                check_buildable(LatticeSpec(family, Boundary.TORUS, args.m, args.n))
            except InvalidSizeError as exc:
                raise CliError(f"invalid size: {exc}", EXIT_SIZE) from None
        doc = {family.value: audit_mod.audit_family(family, args.m, args.n, args.grid)}
    _emit(args, dumps_json(doc))
    failed = []
    for name, sec in doc.items():
        status = "pass" if sec["oracle_passed"] else "FAIL"
        print(f"{name}: oracle {status}; {sec['verdict']}", file=out)
        if not sec["oracle_passed"]:
            failed.append(name)
    if failed:
        raise InvariantError(f"oracle check failed for {', '.join(failed)}")
    return EXIT_OK


def cmd_perturb(args, out) -> int:
    fmt = _format(args)
    if args.trials < 1:
        raise CliError("--trials must be positive", EXIT_USAGE)
    reports = perturbation_trials(args.trials, args.seed)
    worst = min(min(r.lower_margin, r.upper_margin) for r in reports)
    bad = sum(not r.holds for r in reports)
    if fmt == "csv":
        text = csv_text(["trial", "n", "lel_g", "lel_h", "lel_g_minus_h", "lower_margin", "upper_margin"],
                        ((k, r.lel_g.n_vertices, r.lel_g.value, r.lel_h.value, r.lel_diff_graph.value,
                          r.lower_margin, r.upper_margin) for k, r in enumerate(reports)))
    else:
        text = dumps_json({"seed": args.seed, "trials": args.trials, "violations": bad, "min_margin": worst,
                           "generator": "numpy.random.default_rng (PCG64)"})
    _emit(args, text)
    print(f"{args.trials} trials (seed {args.seed}): {bad} violations, min margin {worst:.3e}", file=out)
    if bad:
        raise InvariantError(f"{bad} trials violate the deletion inequality")
    return EXIT_OK


HANDLERS = {
    "build": cmd_build, "spectrum": cmd_spectrum, "lel": cmd_lel, "constant": cmd_constant, "kdim": cmd_kdim,
    "converge": cmd_converge, "audit": cmd_audit, "perturb": cmd_perturb,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        _format(args)
        _check_out(args.out)
        if args.cap < 1:
            raise CliError("--cap must be positive", EXIT_USAGE)
        if not math.isfinite(args.tol) or args.tol <= 0:
            raise CliError("--tol must be a positive number", EXIT_USAGE)
        return HANDLERS[args.command](args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status
    except CapacityError as exc:
        print(f"error: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NoClosedFormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CLOSED_FORM
    except (InvariantError, InvalidSpectrumError, ContainmentError, ShapeError) as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except InvalidSizeError as exc:
        print(f"error: invalid size: {exc}", file=sys.stderr)
        return EXIT_SIZE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
