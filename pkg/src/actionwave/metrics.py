"""Error measures, local-energy residuals and trend reports."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .common import WaveFunctionTable
from .ortho import gram_schmidt, overlap_matrix, quadrature_spec
from .quadrature import gauss_legendre
from .registry import model_setup
from .synth import synthesize_family
from .wkb import INTERIOR_MARGIN, bohr_sommerfeld_energy, wkb_wavefunction

__all__ = [
    "ErrorReport",
    "l2_error",
    "rayleigh_residual",
    "trend_report",
    "wkb_comparison",
    "thread_count",
    "REPORT_POINTS",
]

REPORT_POINTS = 400
AMPLITUDE_FLOOR = 1e-6


@dataclass(frozen=True)
class ErrorReport:
    model: str
    n: int
    coupling: float | None
    l2_nonorth: float
    l2_orth: float
    l2_wkb: float | None
    overlap_offdiag_max: float
    # nonorthogonal error restricted to the WKB interior, for a like-for-like comparison
    l2_nonorth_interior: float | None = None


def _values(f):
    return f.values if isinstance(f, WaveFunctionTable) else np.asarray(f, dtype=float)


def _trapezoid_weights(grid):
    w = np.zeros_like(grid)
    d = np.diff(grid)
    w[:-1] += 0.5 * d
    w[1:] += 0.5 * d
    return w


def l2_error(f, g, weights=None):
    """min over s = +-1 of |s f^ - g^| with both functions normalized.

    ``weights`` are the quadrature weights of the measure on the shared
    grid (trapezoid weights of the table grid by default).
    """
    if isinstance(f, WaveFunctionTable) and isinstance(g, WaveFunctionTable):
        if f.grid.shape != g.grid.shape or not np.array_equal(f.grid, g.grid):
            raise ValueError("tables live on different grids")
        if weights is None:
            weights = _trapezoid_weights(f.grid)
    a, b = _values(f), _values(g)
    if a.shape != b.shape:
        raise ValueError("tables live on different grids")
    if weights is None:
        raise ValueError("plain arrays need explicit quadrature weights")
    w = np.asarray(weights, dtype=float)
    na, nb = math.sqrt(np.dot(w, a * a)), math.sqrt(np.dot(w, b * b))
    if na == 0 or nb == 0:
        raise ValueError("zero function has no direction")
    a, b = a / na, b / nb
    s = 1.0 if np.dot(w, a * b) >= 0 else -1.0
    d = a - s * b
    return math.sqrt(float(np.dot(w, d * d)))


def rayleigh_residual(psi, potential, margin=INTERIOR_MARGIN, floor=AMPLITUDE_FLOOR):
    """Local energy (-psi''/2 + V psi)/psi on a uniform grid.

    psi'' comes from 5-point stencils at spacings h and 2h combined by
    Richardson extrapolation. Returns (mean, std/|mean|) over interior
    points (``margin`` of the domain from each end) where |psi| exceeds
    ``floor`` times its maximum.
    """
    q, v = psi.grid, np.asarray(psi.values, dtype=float)
    if q.ndim != 1 or q.size < 9:
        raise ValueError("need a 1-d grid with at least 9 points")
    h = q[1] - q[0]
    if not np.allclose(np.diff(q), h, rtol=1e-9, atol=0):
        raise ValueError("rayleigh_residual needs a uniform grid")
    i = np.arange(4, q.size - 4)

    def d2(step):
        k = step
        return (-v[i - 2 * k] + 16 * v[i - k] - 30 * v[i] + 16 * v[i + k] - v[i + 2 * k]) / (12.0 * (k * h) ** 2)

    second = (16.0 * d2(1) - d2(2)) / 15.0
    qi, vi = q[i], v[i]
    span = q[-1] - q[0]
    keep = (qi >= q[0] + margin * span) & (qi <= q[-1] - margin * span)
    keep &= np.abs(vi) > floor * np.max(np.abs(v))
    if keep.sum() < 5:
        raise ValueError("too few interior points above the amplitude floor")
    eps = (-0.5 * second[keep] + potential(qi[keep]) * vi[keep]) / vi[keep]
    mean = float(np.mean(eps))
    return mean, float(np.std(eps) / abs(mean))


def thread_count():
    raw = os.environ.get("ACTIONWAVE_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise ValueError(f"ACTIONWAVE_THREADS must be an integer >= 1, got {raw!r}") from None
    if k < 1:
        raise ValueError(f"ACTIONWAVE_THREADS must be an integer >= 1, got {raw!r}")
    return k


def _cell(model, coupling, n_max, points):
    setup = model_setup(model, coupling)
    setup.check_n(n_max)
    lo, hi = setup.domain(n_max)
    rule = gauss_legendre(points, lo, hi)
    grid, w = rule.nodes, rule.weights
    family = synthesize_family(setup.kernel, n_max, grid)
    spec = quadrature_spec(w)
    _, T = gram_schmidt(family, spec)
    orth = T @ family
    overlaps = np.abs(overlap_matrix(family, spec))
    np.fill_diagonal(overlaps, 0.0)
    out = []
    for n in range(n_max + 1):
        exact = setup.exact(n, grid).values
        l2_wkb = l2_int = None
        if setup.wkb is not None:
            state = bohr_sommerfeld_energy(setup.wkb, n)
            a, b = state.turning_points
            m = INTERIOR_MARGIN * (b - a)
            inner = gauss_legendre(points, a + m, b - m)
            wkb = wkb_wavefunction(state, inner.nodes).values
            l2_wkb = l2_error(wkb, setup.exact(n, inner.nodes).values, inner.weights)
            nonorth_inner = synthesize_family(setup.kernel, n, inner.nodes)[n]
            l2_int = l2_error(nonorth_inner, setup.exact(n, inner.nodes).values, inner.weights)
        out.append(ErrorReport(
            model, n, setup.coupling,
            l2_error(family[n], exact, w),
            l2_error(orth[n], exact, w),
            l2_wkb,
            float(np.max(overlaps[n])) if n_max > 0 else 0.0,
            l2_int,
        ))
    return out


def trend_report(model, Lambda_list, n_max, points=REPORT_POINTS):
    """ErrorReport rows for every coupling (one set for the harmonic model) and n <= n_max.

    Each cell synthesizes psi_0..psi_{n_max} on a Gauss-Legendre grid,
    orthonormalizes them under the same quadrature, and compares against
    the exact states; WKB errors use the classically allowed interior.
    Cells run on up to ACTIONWAVE_THREADS threads; row order is fixed.
    """
    couplings = [None] if model == "harmonic" else list(Lambda_list)
    jobs = [(model, c, n_max, points) for c in couplings]
    k = min(thread_count(), len(jobs))
    if k > 1:
        with ThreadPoolExecutor(max_workers=k) as pool:
            cells = list(pool.map(lambda job: _cell(*job), jobs))
    else:
        cells = [_cell(*job) for job in jobs]
    return [row for cell in cells for row in cell]


def wkb_comparison(reports):
    """Per (coupling, n): interior errors of WKB and the nonorthogonal state, and the winner."""
    rows = []
    for r in reports:
        if r.l2_wkb is None:
            continue
        winner = "wkb" if r.l2_wkb < r.l2_nonorth_interior else "nonorthogonal"
        rows.append({
            "model": r.model,
            "coupling": r.coupling,
            "n": r.n,
            "l2_wkb_interior": r.l2_wkb,
            "l2_nonorth_interior": r.l2_nonorth_interior,
            "winner": winner,
        })
    return rows
