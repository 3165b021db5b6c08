"""Canonical figures: eigenfunction galleries, W heatmaps, uncertainty curves.

Each figure is produced as a CSV data file (the authoritative artifact) plus
an SVG rendering. Axis windows are chosen from probability-mass scans and
reported back to the caller for the run manifest.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .eigenstates import (Case, QuantumState, effective_potential,
                          eigenfunction, energy)
from .massmodel import Branch, MassProfile
from .moments import default_working_digits, uncertainty_product
from .output import atomic_write_text, series_csv
from .wigner import choose_p_max, evaluate_grid, support_x_range

_EIGEN_PANELS = ((0.5, 1.5), (1.2, 2.5), (5.0, 3.5))
_EIGEN_N_MAX = 8
_HEATMAP_L = (0.5, 2.0, 3.5, 5.0, 6.5)
_HEATMAP_N = (0, 1, 2)
_HEATMAP_ALPHA = 1.0
_PRODUCT_L = (0.0, 1.0, 10.0, 1e2, 1e5)
_PRODUCT_N_MAX = 15

_BLUE = "#1f4e9c"
_RED = "#c03a2b"


def _plt():
    import matplotlib
    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "pdem-wigner"
    return plt


def _save(fig, path):
    # same temp-then-rename discipline as the CSV writers
    tmp = path + ".tmp~"
    fig.savefig(tmp, format="svg", metadata={"Date": None}, dpi=150)
    os.replace(tmp, path)


def _even_window(case: Case, l: float, alpha: float, tail: float = 1e-6) -> float:
    """Half-width of a symmetric x window for the signed-|x| branch.

    The density decays like exp(-alpha (2l+3) x) up to bounded factors, so a
    direct scan over the largest level is cheap and safe.
    """
    profile = MassProfile(alpha, Branch.PIECEWISE_ABS)
    cap = 140.0 / (alpha * (2.0 * l + 3.0)) + 18.0 / alpha
    xs = np.linspace(0.0, cap, 4000)
    half = 0.0
    for n in (0, _EIGEN_N_MAX):
        dens = np.square(eigenfunction(QuantumState(case, n, l, profile), xs))
        keep = np.where(dens >= tail * float(dens.max()))[0]
        half = max(half, float(xs[keep[-1]]))
    return half + 0.5 + 1.5 / alpha


def _figure1(out_dir: str):
    plt = _plt()
    fig, axes = plt.subplots(2, 3, figsize=(12.5, 7.2))
    rows = []
    notes = []
    for row, case in enumerate((Case.LI, Case.LIII)):
        for col, (alpha, l) in enumerate(_EIGEN_PANELS):
            ax = axes[row][col]
            profile = MassProfile(alpha, Branch.PIECEWISE_ABS)
            half = _even_window(case, l, alpha)
            xs = np.linspace(-half, half, 401)
            states = [QuantumState(case, n, l, profile)
                      for n in range(_EIGEN_N_MAX + 1)]
            energies = [energy(s) for s in states]
            gaps = np.diff(energies)
            vmin = math.inf
            for n, state in enumerate(states):
                lo = gaps[n - 1] if n > 0 else gaps[0]
                hi = gaps[n] if n < len(gaps) else gaps[-1]
                amp = 0.42 * min(lo, hi)
                psi = eigenfunction(state, xs)
                curve = energies[n] + amp * psi / float(np.max(np.abs(psi)))
                ax.plot(xs, curve, color=_BLUE, lw=0.9)
                for x, v in zip(xs, curve):
                    rows.append((case.value, alpha, l, "eigenfunction",
                                 n, float(x), float(v)))
                if case is Case.LIII or n == 0:
                    pot = np.asarray(effective_potential(state, xs))
                    vmin = min(vmin, float(np.nanmin(pot)))
                    ax.plot(xs, pot, color=_RED, lw=1.1,
                            alpha=0.45 if case is Case.LIII else 1.0)
                    for x, v in zip(xs, pot):
                        rows.append((case.value, alpha, l, "potential",
                                     n, float(x), float(v)))
            top = energies[-1] + 1.4 * gaps[-1]
            bottom = min(vmin, energies[0] - 0.8 * gaps[0])
            ax.set_ylim(bottom - 0.04 * (top - bottom), top)
            ax.set_xlim(-half, half)
            ax.set_title(f"{case.value}:  alpha={alpha}, l={l}", fontsize=10)
            if row == 1:
                ax.set_xlabel("x")
            if col == 0:
                ax.set_ylabel("energy offset")
            notes.append(f"figure1 panel case={case.value} alpha={alpha} "
                         f"l={l} window=[-{half:.3f},{half:.3f}]")
    fig.tight_layout()
    csv_path = os.path.join(out_dir, "figure1.csv")
    svg_path = os.path.join(out_dir, "figure1.svg")
    atomic_write_text(csv_path, series_csv(
        {"figure": 1, "branch": "piecewise-abs", "n_max": _EIGEN_N_MAX},
        ["case", "alpha", "l", "kind", "n", "x", "value"], rows))
    _save(fig, svg_path)
    plt.close(fig)
    return [csv_path, svg_path], notes


def _figure_heatmap(fig_id: int, case: Case, out_dir: str,
                    points: int = 101):
    plt = _plt()
    fig, axes = plt.subplots(len(_HEATMAP_N), len(_HEATMAP_L),
                             figsize=(15, 8.2), sharex="col")
    profile = MassProfile(_HEATMAP_ALPHA, Branch.MONOTONE)
    rows = []
    notes = []
    bound = 1.0 / math.pi
    mesh = None
    for col, l in enumerate(_HEATMAP_L):
        # widest level of the column fixes the shared window: a coarse probe
        # grid is cropped to the region holding visible weight
        widest = QuantumState(case, max(_HEATMAP_N), l, profile)
        x_lo, x_hi = support_x_range(widest, tail=1e-8, pad=0.3)
        p_max = choose_p_max(widest, threshold=1e-8)
        probe = evaluate_grid(widest, (x_lo, x_hi), (-p_max, p_max), 61, 61)
        visible = 1e-5 * bound
        xs = probe.x_axis[np.max(np.abs(probe.values), axis=1) >= visible]
        ps = probe.p_axis[np.max(np.abs(probe.values), axis=0) >= visible]
        span = float(xs[-1] - xs[0])
        x_lo, x_hi = float(xs[0]) - 0.08 * span, float(xs[-1]) + 0.08 * span
        p_max = 1.15 * float(np.max(np.abs(ps)))
        notes.append(f"figure{fig_id} column l={l}: x=[{x_lo:.3f},{x_hi:.3f}] "
                     f"p=[-{p_max:.3f},{p_max:.3f}]")
        for rix, n in enumerate(_HEATMAP_N):
            state = QuantumState(case, n, l, profile)
            grid = evaluate_grid(state, (x_lo, x_hi), (-p_max, p_max),
                                 points, points)
            for i, x in enumerate(grid.x_axis):
                for j, p in enumerate(grid.p_axis):
                    rows.append((case.value, _HEATMAP_ALPHA, l, n,
                                 float(x), float(p),
                                 float(grid.values[i, j])))
            ax = axes[rix][col]
            # rasterized: the mesh becomes an embedded image, not 10^4 paths
            mesh = ax.pcolormesh(grid.x_axis, grid.p_axis, grid.values.T,
                                 cmap="RdBu_r", vmin=-bound, vmax=bound,
                                 shading="auto", rasterized=True)
            ax.set_title(f"l={l}, n={n}", fontsize=9)
            if rix == len(_HEATMAP_N) - 1:
                ax.set_xlabel("x")
            if col == 0:
                ax.set_ylabel("p")
    fig.colorbar(mesh, ax=axes, shrink=0.8, label="W(x, p)")
    csv_path = os.path.join(out_dir, f"figure{fig_id}.csv")
    svg_path = os.path.join(out_dir, f"figure{fig_id}.svg")
    atomic_write_text(csv_path, series_csv(
        {"figure": fig_id, "case": case.value, "alpha": _HEATMAP_ALPHA,
         "branch": "monotone"},
        ["case", "alpha", "l", "n", "x", "p", "W"], rows))
    _save(fig, svg_path)
    plt.close(fig)
    return [csv_path, svg_path], notes


def _figure4(out_dir: str):
    plt = _plt()
    fig, axes = plt.subplots(1, 2, figsize=(11, 4.6), sharey=True)
    profile = MassProfile(1.0, Branch.MONOTONE)
    ns = list(range(_PRODUCT_N_MAX + 1))
    rows = []
    notes = []
    markers = ("o", "s", "^", "v", "D")
    for ax, case in zip(axes, (Case.LI, Case.LIII)):
        for l, mark in zip(_PRODUCT_L, markers):
            prods = []
            for n in ns:
                state = QuantumState(case, n, l, profile)
                value = uncertainty_product(state)
                prods.append(value)
                rows.append((case.value, l, n, value, n + 0.5))
            ax.plot(ns, prods, marker=mark, ms=4, lw=1.0, label=f"l={l:g}")
        ax.plot(ns, [n + 0.5 for n in ns], "k--", lw=1.0, label="n + 1/2")
        ax.set_title(f"case {case.value}", fontsize=10)
        ax.set_xlabel("n")
        ax.legend(fontsize=8)
    axes[0].set_ylabel("uncertainty product")
    digits = max(default_working_digits(
        QuantumState(c, _PRODUCT_N_MAX, max(_PRODUCT_L), profile))
        for c in (Case.LI, Case.LIII))
    notes.append(f"figure4 peak working digits {digits}")
    fig.tight_layout()
    csv_path = os.path.join(out_dir, "figure4.csv")
    svg_path = os.path.join(out_dir, "figure4.svg")
    atomic_write_text(csv_path, series_csv(
        {"figure": 4, "branch": "monotone", "n_max": _PRODUCT_N_MAX},
        ["case", "l", "n", "product", "asymptote"], rows))
    _save(fig, svg_path)
    plt.close(fig)
    return [csv_path, svg_path], notes


def render_figure(fig_id: int, out_dir: str, heatmap_points: int = 101):
    """Produce one canonical figure; returns (paths, manifest notes)."""
    os.makedirs(out_dir, exist_ok=True)
    if fig_id == 1:
        return _figure1(out_dir)
    if fig_id == 2:
        return _figure_heatmap(2, Case.LI, out_dir, heatmap_points)
    if fig_id == 3:
        return _figure_heatmap(3, Case.LIII, out_dir, heatmap_points)
    if fig_id == 4:
        return _figure4(out_dir)
    raise ValueError(f"unknown figure id {fig_id}")
