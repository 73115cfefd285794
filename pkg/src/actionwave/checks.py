"""The invariant suite behind ``actionwave verify``.

Each check returns (passed, detail). :func:`run_checks` also returns the
report files (trend table and WKB comparison) so the caller can write them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .harmonic import harmonic_kernel, ho_exact, ho_kernel_series, ho_operator_kernel_series, ho_potential
from .jetseries import GradedSeries, gs_exp, gs_log, gs_sqrt
from .metrics import rayleigh_residual, trend_report, wkb_comparison
from .morse import morse_F, morse_exact, morse_family, morse_kernel, morse_potential, morse_reformulated
from .ortho import gram_schmidt, inner_product, morse_gamma_spec, overlap_matrix, pt_moment_spec
from .output import to_csv
from .poschl_teller import (
    pt_exact,
    pt_exact_energy,
    pt_family,
    pt_kernel,
    pt_overlap02_closed_form,
    pt_potential,
    pt_psi_nonorth,
)
from .quadrature import gauss_legendre
from .special import gegenbauer_poly
from .synth import contour_coefficient, series_coefficient, synthesize
from .wkb import bohr_sommerfeld_energy, pt_wkb_model

__all__ = ["CheckResult", "run_checks", "FAULTS", "TREND_HEADER", "trend_rows"]

FAULTS = ("morse-branch",)
TREND_HEADER = ["model", "coupling", "n", "l2_nonorth", "l2_orth", "l2_wkb", "overlap_max"]
MORSE_POINTS = [(0.3, 1.2), (-0.1, 2.3), (0.5, 2.0), (0.1, 0.9), (0.05, 1.6), (-0.2, 2.6)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def trend_rows(reports):
    return [[r.model, r.coupling, r.n, r.l2_nonorth, r.l2_orth, r.l2_wkb, r.overlap_offdiag_max]
            for r in reports]


def _collinearity(a, b, w):
    return 1.0 - abs(np.dot(w, a * b)) / math.sqrt(np.dot(w, a * a) * np.dot(w, b * b))


def check_series_roundtrip(fault):
    a = GradedSeries.make([2.0, -0.5, 0.25, 1.5, -1.0, 0.3, 0.7])
    r = gs_sqrt(a)
    e1 = max(abs(x - y) for x, y in zip((r * r).coeffs, a.coeffs))
    e2 = max(abs(x - y) for x, y in zip(gs_exp(gs_log(a)).coeffs, a.coeffs))
    err = max(e1, e2)
    return err <= 1e-13, f"sqrt^2 and exp(log) round trips, max deviation {err:.2e}"


def check_harmonic_realization(fault):
    y = np.linspace(-6.0, 6.0, 401)
    w = np.full(y.size, y[1] - y[0])
    kb = harmonic_kernel()
    worst = max(_collinearity(synthesize(kb, n, y).values, ho_exact(n, y).values, w) for n in range(13))
    return worst <= 1e-10, f"n <= 12 synthesized vs Hermite functions, max 1-|overlap| {worst:.2e}"


def check_harmonic_dual_route(fault):
    y = np.linspace(-4.0, 4.0, 41)
    worst = 0.0
    for rho in (0, 1):
        direct = ho_kernel_series(rho, y, 8)
        operator = ho_operator_kernel_series(rho, y, 8)
        for m in range(9):
            d, o = np.asarray(direct.coeffs[m]), np.asarray(operator.coeffs[m])
            worst = max(worst, float(np.max(np.abs(d - o)) / np.max(np.abs(d))))
    return worst <= 1e-12, f"direct vs operator kernel coefficients m <= 8, max rel diff {worst:.2e}"


def check_pt_routes(fault):
    L = 10.0
    q = np.linspace(-1.4, 1.4, 57)
    worst = 0.0
    for n in range(9):
        a = pt_psi_nonorth(n, L, q, route="kernel").values
        b = pt_psi_nonorth(n, L, q).values * 2.0 ** (L + 0.5 + n % 2)
        worst = max(worst, float(np.max(np.abs(a - b)) / np.max(np.abs(b))))
    parity = all(
        np.all(p.coeffs[(1 - n % 2)::2] == 0.0) for n, p in enumerate(pt_family(L, 10))
    )
    ok = worst <= 1e-10 and parity
    return ok, f"kernel vs Rodrigues route n <= 8 max rel diff {worst:.2e}; parity slots zero: {parity}"


def check_gegenbauer(fault):
    worst = 0.0
    for L in (5.0, 10.0, 20.0):
        spec = pt_moment_spec(L)
        Q, _ = gram_schmidt(pt_family(L, 10), spec)
        for n in range(11):
            g = gegenbauer_poly(n, L + 0.5)
            ov = inner_product(Q[n], g, spec) / math.sqrt(inner_product(g, g, spec))
            worst = max(worst, 1.0 - abs(ov))
    return worst <= 1e-10, f"Gram-Schmidt of P-T family vs Gegenbauer, max 1-|overlap| {worst:.2e}"


def check_overlap(fault):
    s10 = overlap_matrix(pt_family(10.0, 2), pt_moment_spec(10.0))[0, 2]
    s40 = overlap_matrix(pt_family(40.0, 2), pt_moment_spec(40.0))[0, 2]
    ref = pt_overlap02_closed_form(10.0)
    ok = abs(s10 - ref) <= 1e-6 and abs(s40) < abs(s10) / 3
    return ok, f"<psi0,psi2> at Lambda=10 {s10:.8f} (closed form {ref:.8f}), at 40 {s40:.6f}"


def check_morse_identity(fault):
    L = 12.0
    branch = "alternative" if fault == "morse-branch" else "principal"
    worst = 0.0
    for q, t in MORSE_POINTS:
        ref = np.exp(1j * morse_F(q, t, L))
        worst = max(worst, abs(morse_reformulated(q, t, L, branch) / ref - 1.0))
    return worst <= 1e-12, f"{len(MORSE_POINTS)} (q, theta) points, max rel diff {worst:.2e}"


def check_morse_exactness(fault):
    L, n_max = 12.0, 6
    a, polys = morse_family(L, n_max)
    _, T = gram_schmidt(polys, morse_gamma_spec(L, a))
    rule = gauss_legendre(300, -1.5, 8.0)
    q, w = rule.nodes, rule.weights
    u = np.exp(-q)
    vals = np.array([u**a * np.exp(-L * u) * p(u) for p in polys])
    orth = T @ vals
    worst = max(_collinearity(orth[n], morse_exact(n, L, q).values, w) for n in range(n_max + 1))
    return worst <= 1e-8, f"Lambda~=12 Gram-Schmidt of psi~_0..6 vs Laguerre states, max 1-|overlap| {worst:.2e}"


def check_contour(fault):
    cases = [
        (harmonic_kernel(), [-2.0, -0.7, 0.0, 0.9, 2.5]),
        (pt_kernel(10.0), [-1.2, -0.4, 0.0, 0.5, 1.3]),
        (morse_kernel(12.0), [-0.5, 0.0, 0.4, 1.2, 1.6]),
    ]
    worst = 0.0
    for kb, coords in cases:
        for n in range(9):
            m, rho = n // 2, n % 2
            series = np.array([complex(series_coefficient(kb, m, rho, c)) for c in coords])
            scale = np.max(np.abs(series))
            for shrink in (1.0, 0.5):
                for c, s in zip(coords, series):
                    r = shrink * kb.safe_radius(c)
                    worst = max(worst, abs(contour_coefficient(kb, m, rho, c, r) - s) / scale)
    return worst <= 1e-9, f"3 models, n <= 8, 5 coordinates, two radii, max rel diff {worst:.2e}"


def check_rayleigh(fault):
    worst = 0.0
    q = np.linspace(-1.5, 1.5, 1001)
    for L in (5.0, 10.0):
        for n in range(5):
            worst = max(worst, rayleigh_residual(pt_exact(n, L, q), pt_potential(L))[1])
    q = np.linspace(-1.2, 7.0, 1001)
    for n in range(7):
        worst = max(worst, rayleigh_residual(morse_exact(n, 12.0, q), morse_potential(12.0))[1])
    y = np.linspace(-7.0, 7.0, 1001)
    e_err = max(abs(rayleigh_residual(ho_exact(n, y), ho_potential)[0] - (n + 0.5)) for n in range(6))
    ok = worst <= 1e-6 and e_err <= 1e-8
    return ok, f"local-energy rel std {worst:.2e} (P-T, Morse); harmonic energy error {e_err:.2e}"


def check_wkb_energies(fault):
    ok = True
    worst_ratio = 0.0
    for n in range(5):
        errs = []
        for L in (5.0, 10.0, 20.0, 40.0):
            e = bohr_sommerfeld_energy(pt_wkb_model(L), n).energy
            exact = pt_exact_energy(n, L)
            errs.append(abs(e - exact) / exact)
        ok &= all(b < a for a, b in zip(errs, errs[1:]))
        worst_ratio = max(worst_ratio, errs[-1] / errs[0])
    return ok, f"P-T WKB energy error strictly decreasing Lambda 5 -> 40 for n <= 4 (worst ratio {worst_ratio:.3f})"


def check_trend(reports):
    by = {(r.coupling, r.n): r for r in reports}
    decay = all(by[(40.0, n)].l2_orth < by[(5.0, n)].l2_orth / 4 for n in range(5))
    improve = all(by[(10.0, n)].l2_orth < by[(10.0, n)].l2_nonorth for n in range(2, 7))
    return decay and improve, (
        f"l2_orth(40) < l2_orth(5)/4 for n <= 4: {decay}; "
        f"l2_orth < l2_nonorth at Lambda=10, n=2..6: {improve}"
    )


CHECKS = [
    ("series round trip", check_series_roundtrip),
    ("harmonic realization", check_harmonic_realization),
    ("harmonic dual-route kernel", check_harmonic_dual_route),
    ("Poschl-Teller kernel vs Rodrigues polynomials", check_pt_routes),
    ("orthogonalization gives Gegenbauer", check_gegenbauer),
    ("overlap closed form", check_overlap),
    ("Morse reformulation identity", check_morse_identity),
    ("Morse exactness after orthonormalization", check_morse_exactness),
    ("contour vs series coefficients", check_contour),
    ("Rayleigh local energy", check_rayleigh),
    ("WKB energy convergence", check_wkb_energies),
]


def run_checks(fault=None):
    """Run every check; returns (results, files) with files = {name: text}."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn(fault)
        except Exception as exc:  # a crash is a failed invariant, not a crashed suite
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    files = {}
    try:
        reports = trend_report("poschl-teller", [5.0, 10.0, 20.0, 40.0], 6)
        ok, detail = check_trend(reports)
        files["poschl-teller_trend.csv"] = to_csv(TREND_HEADER, trend_rows(reports))
        comp = wkb_comparison(reports)
        header = ["model", "coupling", "n", "l2_wkb_interior", "l2_nonorth_interior", "winner"]
        files["wkb_comparison.csv"] = to_csv(header, [[row[k] for k in header] for row in comp])
        ok = ok and len(comp) == len(reports)
    except Exception as exc:
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    results.append(CheckResult("accuracy trend and WKB comparison report", ok, detail))
    return results, files
