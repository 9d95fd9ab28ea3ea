"""Figures rendered next to the delimited output of reporting commands."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["kernel_figure", "pole_figure", "sweep_figure", "spectrum_figure",
           "convergence_figure", "ladder_figure"]

_META = {"Software": "cuspscat"}


def _save(fig, path):
    fig.savefig(path, dpi=110, metadata=_META)
    plt.close(fig)


def kernel_figure(path, x, values, label):
    values = np.asarray(values)
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(x, values.real, lw=1.2, label="re")
    ax.plot(x, values.imag, lw=1.2, label="im")
    ax.plot(x, np.abs(values), lw=0.9, ls="--", color="k", label="abs")
    ax.set_xlabel("x")
    ax.set_ylabel(label)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def pole_figure(path, poles, rect):
    fig, ax = plt.subplots(figsize=(4.6, 4.2))
    if poles:
        zs = np.asarray([p.z for p in poles])
        ax.plot(zs.real, zs.imag, "x", ms=7, color="crimson")
    ax.axhspan(0.0, 2.0 * np.pi, color="0.92", zorder=0)
    ax.set_xlim(rect[0], rect[1])
    ax.set_ylim(rect[2], rect[3])
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title("%d pole(s); shaded: physical sheet" % len(poles), fontsize=9)
    fig.tight_layout()
    _save(fig, path)


def sweep_figure(path, rows):
    """rows: (re_z, im_z, sector, i, j, re_C, im_C, defect)."""
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(6.4, 5.0), sharex=True)
    series = {}
    for re_z, im_z, sector, i, j, re_c, im_c, defect in rows:
        key = (sector, round(im_z, 9))
        series.setdefault(key, {}).setdefault(re_z, [0.0, defect])
        series[key][re_z][0] = max(series[key][re_z][0], abs(complex(re_c, im_c)))
    for (sector, im_z), data in sorted(series.items()):
        xs = sorted(data)
        ax0.plot(xs, [data[x][0] for x in xs], lw=1.1,
                 label="%s, Im z = %.3g" % (sector, im_z))
        ax1.semilogy(xs, [max(data[x][1], 1e-17) for x in xs], lw=1.1)
    ax0.set_ylabel("max |C entry|")
    ax0.legend(frameon=False, fontsize=8)
    ax1.set_ylabel("unitarity defect")
    ax1.set_xlabel("Re z")
    fig.tight_layout()
    _save(fig, path)


def ladder_figure(path, ladder, t_norms, products):
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(7.4, 3.2))
    ax0.loglog(ladder, t_norms, "o-", ms=4, lw=1.0)
    ax0.axhline(1.0, color="k", lw=0.8, ls="--")
    ax0.set_xlabel("Im(e^z)")
    ax0.set_ylabel("||T||")
    ax1.semilogx(ladder, products, "o-", ms=4, lw=1.0, color="seagreen")
    ax1.set_xlabel("Im(e^z)")
    ax1.set_ylabel("||T|| * Im(e^z)")
    ax1.set_ylim(0.0, 1.1 * max(products))
    fig.tight_layout()
    _save(fig, path)


def convergence_figure(path, eps, values, limit, label):
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.semilogx(eps, np.real(values), "o-", ms=4, lw=1.0)
    ax.axhline(float(np.real(limit)), color="k", lw=0.8, ls="--",
               label="extrapolated")
    ax.set_xlabel("eps")
    ax.set_ylabel(label)
    ax.invert_xaxis()
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def spectrum_figure(path, values, errors=None):
    values = np.asarray(values, dtype=float)
    fig, ax = plt.subplots(figsize=(5.6, 3.4))
    idx = np.arange(values.size)
    if errors is not None:
        ax.errorbar(idx, values, yerr=np.asarray(errors, dtype=float),
                    fmt="o", ms=3.5, lw=0.8, capsize=2)
    else:
        ax.plot(idx, values, "o", ms=3.5)
    ax.set_xlabel("index")
    ax.set_ylabel("eigenvalue")
    fig.tight_layout()
    _save(fig, path)
