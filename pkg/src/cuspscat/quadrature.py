"""Composite Gauss-Legendre panels and finite-difference helpers."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import InputError

__all__ = [
    "panel_edges",
    "gauss_panels",
    "oscillation_panel_width",
    "fd_weights",
    "fd_apply",
    "thread_count",
    "run_indexed",
]


def panel_edges(lo, hi, max_width):
    """Uniform panel edges covering [lo, hi] with width <= max_width."""
    if not (hi > lo):
        raise InputError("empty interval [%g, %g]" % (lo, hi))
    n = max(1, int(np.ceil((hi - lo) / max_width)))
    return np.linspace(lo, hi, n + 1)


def gauss_panels(edges, order):
    """Nodes and weights of composite Gauss-Legendre quadrature.

    Returns flat arrays (nodes, weights) over the panels described by
    ``edges`` (increasing), ``order`` points per panel.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise InputError("edges must be increasing with at least two entries")
    xg, wg = np.polynomial.legendre.leggauss(int(order))
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    weights = (half[:, None] * wg[None, :]).ravel()
    return nodes, weights


def oscillation_panel_width(freq, cap=np.inf):
    """Panel width pi / (4 freq) resolving an oscillation of frequency freq."""
    freq = abs(float(freq))
    if freq <= 0:
        return cap
    return min(cap, np.pi / (4.0 * freq))


def fd_weights(x, x0, m):
    """Finite-difference weights for the m-th derivative at x0 on nodes x.

    Fornberg's recurrence; works on arbitrary (distinct) nodes.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if n < m + 1:
        raise InputError("need at least m+1 nodes for the m-th derivative")
    c = np.zeros((n, m + 1))
    c1 = 1.0
    c4 = x[0] - x0
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, m]


def fd_apply(grid, values, deriv, acc_points=5):
    """Apply a finite-difference derivative on an arbitrary grid.

    Uses sliding stencils of ``acc_points`` nodes (shifted near the
    ends); 5 points give 4th-order interior accuracy for deriv <= 2 on
    smooth grids.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values)
    n = grid.size
    if values.shape[0] != n:
        raise InputError("grid/value length mismatch")
    if n < acc_points:
        raise InputError("grid too short for the requested stencil")
    out = np.empty_like(values, dtype=complex if np.iscomplexobj(values) else float)
    half = acc_points // 2
    for i in range(n):
        j0 = min(max(i - half, 0), n - acc_points)
        sl = slice(j0, j0 + acc_points)
        w = fd_weights(grid[sl], grid[i], deriv)
        out[i] = w @ values[sl]
    return out


def thread_count(default=1):
    """Worker count; the CUSPSCAT_THREADS environment variable overrides."""
    raw = os.environ.get("CUSPSCAT_THREADS", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise InputError("CUSPSCAT_THREADS must be an integer, got %r" % raw)
    return default


def run_indexed(fn, items, workers=None):
    """Map fn over items, possibly in threads; results in input order.

    Output order (and hence any later reduction order) is independent of
    the worker count, keeping runs deterministic.
    """
    workers = thread_count() if workers is None else max(1, int(workers))
    items = list(items)
    if workers == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
