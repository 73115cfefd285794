"""Command-line front end.

Exit codes: 0 success, 1 verify found a failing invariant, 2 invalid
arguments, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .checks import FAULTS, TREND_HEADER, run_checks, trend_rows
from .common import UNITS, NumericalError
from .metrics import thread_count, trend_report, wkb_comparison
from .morse import bound_state_count
from .ortho import gram_schmidt, quadrature_spec
from .output import to_csv, to_json
from .quadrature import ConvergenceError, gauss_legendre
from .registry import MODELS, model_setup
from .synth import contour_coefficient, default_order, series_coefficient, synthesize_family
from .wkb import INTERIOR_MARGIN, NORMALIZATION, bohr_sommerfeld_energy, wkb_wavefunction

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
ORTHO_POINTS = 400
CONTOUR_SAMPLES = 5


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: str
    coupling: float | None
    n: int
    grid: tuple
    order: int
    radius: float | None
    fmt: str
    output: str | None
    wkb: bool


def parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be lo:hi:points, got {text!r}")
    lo, hi, pts = float(parts[0]), float(parts[1]), int(parts[2])
    return lo, hi, pts


def parse_couplings(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _validate_model(model, coupling, errors):
    if model not in MODELS:
        errors.append(f"--model must be one of {', '.join(MODELS)}")
        return
    if model != "harmonic":
        if coupling is None:
            errors.append(f"--lambda is required for {model}")
        elif not (math.isfinite(coupling) and coupling > 0):
            errors.append("--lambda must be positive")


def build_run_config(args):
    """Validate everything up front; raise one ValidationError listing every problem."""
    errors = []
    _validate_model(args.model, args.coupling, errors)
    if args.n < 0:
        errors.append("--n must be >= 0")
    elif args.model == "morse" and args.coupling and args.coupling > 0:
        if not args.n < args.coupling - 0.5:
            errors.append(
                f"n={args.n} exceeds bound-state count Λ̃-1/2 = {args.coupling - 0.5:g} "
                f"({bound_state_count(args.coupling)} bound states)"
            )
    grid = None
    try:
        grid = parse_grid(args.grid)
    except ValueError as exc:
        errors.append(f"--grid: {exc}")
    if grid is not None:
        lo, hi, pts = grid
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            errors.append("--grid needs finite lo < hi")
        if pts < 2:
            errors.append("--grid needs at least 2 points")
        if args.model == "poschl-teller" and (lo <= -math.pi / 2 or hi >= math.pi / 2):
            errors.append("--grid must lie strictly inside (-pi/2, pi/2) for poschl-teller")
    order = args.order if args.order is not None else default_order(max(args.n, 0))
    if order < max(args.n, 0) // 2:
        errors.append(f"--order {order} is below n//2 = {args.n // 2}")
    if args.radius is not None and not 0 < args.radius < 1:
        errors.append("--radius must lie in (0, 1)")
    if args.wkb and args.model == "morse":
        errors.append("--wkb is available for harmonic and poschl-teller only")
    if errors:
        raise ValidationError("invalid arguments: " + "; ".join(errors))
    coupling = None if args.model == "harmonic" else float(args.coupling)
    return RunConfig(args.model, coupling, args.n, grid, order, args.radius, args.format, args.output, args.wkb)


def _metadata(setup, cfg, extra):
    units = {"hbar": UNITS["hbar"], "mass": UNITS["mass"], "convention": UNITS[setup.name]}
    meta = {"units": units, "order": cfg.order}
    meta.update(extra)
    return meta


def wavefunction_payload(cfg):
    setup = model_setup(cfg.model, cfg.coupling)
    lo, hi, pts = cfg.grid
    grid = np.linspace(lo, hi, pts)
    family = synthesize_family(setup.kernel, cfg.n, grid, cfg.order)
    # the change of basis is a property of the family, so it is computed once
    # under an accurate quadrature over the whole domain and applied to the output grid
    rule = gauss_legendre(ORTHO_POINTS, *setup.domain(cfg.n))
    ref_family = synthesize_family(setup.kernel, cfg.n, rule.nodes, cfg.order)
    _, T = gram_schmidt(ref_family, quadrature_spec(rule.weights))
    orth = T[cfg.n] @ family
    exact = setup.exact(cfg.n, grid)

    m, rho = cfg.n // 2, cfg.n % 2
    probe = grid[np.linspace(0, pts - 1, min(CONTOUR_SAMPLES, pts)).astype(int)]
    series = np.array([complex(series_coefficient(setup.kernel, m, rho, c, cfg.order)) for c in probe])
    contour = []
    for c in probe:
        r = cfg.radius if cfg.radius is not None else setup.kernel.safe_radius(c)
        contour.append(contour_coefficient(setup.kernel, m, rho, c, r))
    scale = float(np.max(np.abs(series)))
    contour_diff = float(np.max(np.abs(np.array(contour) - series)) / scale) if scale > 0 else 0.0

    payload = {
        "model": cfg.model,
        "lambda": cfg.coupling,
        "n": cfg.n,
        "grid": grid,
        "psi_nonorthogonal": family[cfg.n],
        "psi_orthonormalized": orth,
        "psi_exact": exact.values,
    }
    extra = {
        "exact_energy": exact.metadata.get("energy"),
        "contour_check": {"samples": len(probe), "radius": cfg.radius, "max_rel_diff": contour_diff},
    }
    if cfg.wkb:
        state = bohr_sommerfeld_energy(setup.wkb, cfg.n)
        a, b = state.turning_points
        margin = INTERIOR_MARGIN * (b - a)
        inside = (grid >= a + margin) & (grid <= b - margin)
        values = np.full(pts, np.nan)
        if inside.any():
            values[inside] = wkb_wavefunction(state, grid[inside]).values
        payload["psi_wkb"] = values
        extra["wkb"] = {"energy": state.energy, "turning_points": [a, b],
                        "interior_margin": INTERIOR_MARGIN, "normalization": NORMALIZATION}
    payload["metadata"] = _metadata(setup, cfg, extra)
    return payload


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_wavefn(args):
    cfg = build_run_config(args)
    payload = wavefunction_payload(cfg)
    if cfg.fmt == "json":
        _emit(to_json(payload), cfg.output)
        return EXIT_OK
    cols = ["grid", "psi_nonorthogonal", "psi_orthonormalized", "psi_exact"]
    if cfg.wkb:
        cols.append("psi_wkb")
    rows = zip(*[payload[c] for c in cols])
    _emit(to_csv(cols, [[float(v) for v in row] for row in rows]), cfg.output)
    if cfg.output is not None:
        meta = {k: payload[k] for k in ("model", "lambda", "n")}
        meta["metadata"] = payload["metadata"]
        _emit(to_json(meta), cfg.output + ".meta.json")
    return EXIT_OK


def cmd_report(args):
    errors = []
    couplings = []
    try:
        couplings = parse_couplings(args.coupling) if args.coupling else []
    except ValueError:
        errors.append("--lambda must be a comma-separated list of numbers")
    if args.model not in MODELS:
        errors.append(f"--model must be one of {', '.join(MODELS)}")
    elif args.model != "harmonic":
        if not couplings:
            errors.append(f"--lambda is required for {args.model}")
        elif any(not c > 0 for c in couplings):
            errors.append("--lambda values must be positive")
        elif args.model == "morse":
            bad = [c for c in couplings if not args.nmax < c - 0.5]
            if bad:
                errors.append(f"n={args.nmax} exceeds bound-state count Λ̃-1/2 for Λ̃ = {bad}")
    if args.nmax < 0:
        errors.append("--nmax must be >= 0")
    if errors:
        raise ValidationError("invalid arguments: " + "; ".join(errors))
    reports = trend_report(args.model, couplings, args.nmax)
    _emit(to_csv(TREND_HEADER, trend_rows(reports)), args.output)
    if args.wkb_comparison:
        header = ["model", "coupling", "n", "l2_wkb_interior", "l2_nonorth_interior", "winner"]
        rows = [[row[k] for k in header] for row in wkb_comparison(reports)]
        _emit(to_csv(header, rows), args.wkb_comparison)
    return EXIT_OK


def cmd_verify(args):
    results, files = run_checks(args.inject_fault)
    for r in results:
        print(r.line())
    os.makedirs(args.out, exist_ok=True)
    for name, text in sorted(files.items()):
        _emit(text, os.path.join(args.out, name))
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} invariant(s) failed: {', '.join(failed)}")
        return EXIT_FAIL
    print(f"all {len(results)} invariants passed; reports in {args.out}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="actionwave", description="Wave functions from classical generating functions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wavefn", help="synthesize one wave function with orthonormalized, exact and WKB companions")
    w.add_argument("--model", required=True)
    w.add_argument("--lambda", dest="coupling", type=float, help="Lambda (Poschl-Teller) or Lambda~ (Morse)")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--grid", required=True, help="lo:hi:points, uniform")
    w.add_argument("--order", type=int, help="series truncation order (default n+4)")
    w.add_argument("--radius", type=float, help="contour radius for the coefficient cross-check")
    w.add_argument("--format", choices=("json", "csv"), default="json")
    w.add_argument("--output", help="output file (default stdout)")
    w.add_argument("--wkb", action="store_true", help="add the WKB wave function on the allowed interior")
    w.set_defaults(func=cmd_wavefn)

    r = sub.add_parser("report", help="L2 error / overlap trend table as CSV")
    r.add_argument("--model", required=True)
    r.add_argument("--lambda", dest="coupling", help="comma-separated couplings")
    r.add_argument("--nmax", type=int, required=True)
    r.add_argument("--output", help="CSV file (default stdout)")
    r.add_argument("--wkb-comparison", help="also write the WKB vs nonorthogonal comparison CSV here")
    r.set_defaults(func=cmd_report)

    v = sub.add_parser("verify", help="run the invariant suite; exit 0 iff all pass")
    v.add_argument("--out", default="actionwave-verify", help="directory for the report files")
    v.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def _join_grid(argv):
    # "--grid -1.5:1.5:401" would otherwise read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--grid":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--grid={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = _join_grid(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        thread_count()
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
