"""Config ingestion and deterministic tabular output.

Model files are INI-style with sections [geometry] (a, n, p, mu, m_p,
m_pm1), [interior] (x0, warp, spline_knots, coupling/coupling_beta
polynomial matrices with a support window, mode_coupling vector) and
[bc] (inner).  Complex numbers in text interfaces read and print as
"a+bi" with no spaces; tables split them into re/im columns.

Every emitted table starts with a provenance header (config hash,
library and dependency versions, tolerances in effect) and is written
with fixed ordering and fixed float formatting, so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import configparser
import hashlib
import os
import re

import numpy as np
import scipy

from .errors import InputError
from .geometry import CuspGeometry
from .scattering import ModelManifold, PowerWarp, SplineLogWarp
from .weber import smooth_bump

__all__ = [
    "parse_complex",
    "format_complex",
    "format_float",
    "parse_model_file",
    "tolerance_scale",
    "provenance",
    "write_table",
]

_COMPLEX_RE = re.compile(r"^[0-9eE.+\-ij]+$")


def parse_complex(text):
    """Parse 'a+bi' (no spaces); plain reals and pure imaginaries allowed."""
    s = str(text).strip()
    if not s or " " in s or not _COMPLEX_RE.match(s):
        raise InputError("cannot parse complex number %r" % (text,))
    try:
        return complex(s.replace("i", "j"))
    except ValueError as exc:
        raise InputError("cannot parse complex number %r" % (text,)) from exc


def format_float(v):
    v = float(v)
    if v != v:
        return "nan"
    return "%.17g" % v


def format_complex(z):
    z = complex(z)
    return "%s%s%si" % (format_float(z.real),
                        "+" if z.imag >= 0 or z.imag != z.imag else "-",
                        format_float(abs(z.imag)))


def tolerance_scale():
    """Global tolerance multiplier from CUSPSCAT_TOL_SCALE (default 1)."""
    raw = os.environ.get("CUSPSCAT_TOL_SCALE", "")
    if not raw.strip():
        return 1.0
    try:
        scale = float(raw)
    except ValueError as exc:
        raise InputError("CUSPSCAT_TOL_SCALE must be a number, got %r"
                         % raw) from exc
    if not scale > 0:
        raise InputError("CUSPSCAT_TOL_SCALE must be positive")
    return scale


def _floats(text):
    items = [t for t in str(text).replace(";", ",").split(",") if t.strip()]
    try:
        return [float(t) for t in items]
    except ValueError as exc:
        raise InputError("expected a comma-separated number list, got %r"
                         % (text,)) from exc


def _matrix(text, m):
    rows = [r for r in str(text).split(";") if r.strip()]
    try:
        mat = np.array([[float(v) for v in r.split(",")] for r in rows])
    except ValueError as exc:
        raise InputError("bad matrix block %r" % (text,)) from exc
    if mat.shape != (m, m):
        raise InputError("coupling matrix must be %d x %d, got %r"
                         % (m, m, mat.shape))
    return mat


def _poly_coupling(poly_text, window_text, m, x0):
    mats = [_matrix(t, m) for t in str(poly_text).split("|")]
    win = _floats(window_text)
    if len(win) != 2 or not x0 <= win[0] < win[1] <= 1.0:
        raise InputError("coupling window must be lo,hi inside [x0, 1]")
    bump = smooth_bump(win[0], win[1])

    def coupling(x, _mats=mats, _bump=bump):
        acc = np.zeros((m, m))
        xf = float(x)
        for k, mat in enumerate(_mats):
            acc = acc + mat * xf ** k
        return float(_bump(xf)) * acc

    return coupling


def _vector_coupling(vec_text, window_text, m, x0):
    vec = np.asarray(_floats(vec_text))
    if vec.shape != (m,):
        raise InputError("mode coupling must have one entry per channel")
    win = _floats(window_text)
    if len(win) != 2 or not x0 <= win[0] < win[1] <= 1.0:
        raise InputError("coupling window must be lo,hi inside [x0, 1]")
    bump = smooth_bump(win[0], win[1])
    return lambda x: float(bump(float(x))) * vec


def parse_model_file(path):
    """Read a model config file into (ModelManifold, extras dict)."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path) as fh:
            text = fh.read()
        cp.read_string(text)
    except OSError as exc:
        raise InputError("cannot read model file %s: %s" % (path, exc)) from exc
    except configparser.Error as exc:
        raise InputError("model file %s does not parse: %s" % (path, exc)) from exc

    if "geometry" not in cp:
        raise InputError("model file needs a [geometry] section")
    g = cp["geometry"]
    try:
        geo = CuspGeometry(
            a=g.getfloat("a"), n=g.getint("n"), p=g.getint("p"),
            mu=tuple(_floats(g.get("mu", ""))) if g.get("mu", "").strip() else (),
            m_p=g.getint("m_p", 1), m_pm1=g.getint("m_pm1", 0))
    except (TypeError, ValueError) as exc:
        raise InputError("bad [geometry] section: %s" % exc) from exc

    x0 = 1.0
    warp = None
    coupling = None
    coupling_beta = None
    mode_coupling = None
    if "interior" in cp:
        it = cp["interior"]
        x0 = it.getfloat("x0", 1.0)
        kind = it.get("warp", "power").strip().lower()
        if kind == "power":
            warp = PowerWarp(geo.a)
        elif kind == "spline":
            knot_text = it.get("spline_knots", "").strip()
            if not knot_text:
                raise InputError("spline warp needs spline_knots = x:w,...")
            knots = []
            for piece in knot_text.split(","):
                try:
                    xk, wk = piece.split(":")
                    knots.append((float(xk), float(wk)))
                except ValueError as exc:
                    raise InputError("bad spline knot %r" % piece) from exc
            warp = SplineLogWarp(knots, geo.a, x0)
        else:
            raise InputError("warp must be 'power' or 'spline', got %r" % kind)
        if it.get("coupling", "").strip():
            coupling = _poly_coupling(it["coupling"],
                                      it.get("coupling_window", "%g,1.0" % x0),
                                      geo.m_p, x0)
        if it.get("coupling_beta", "").strip():
            coupling_beta = _poly_coupling(it["coupling_beta"],
                                           it.get("coupling_beta_window",
                                                  it.get("coupling_window",
                                                         "%g,1.0" % x0)),
                                           geo.m_pm1, x0)
        if it.get("mode_coupling", "").strip():
            mode_coupling = _vector_coupling(it["mode_coupling"],
                                             it.get("mode_coupling_window",
                                                    it.get("coupling_window",
                                                           "%g,1.0" % x0)),
                                             geo.m_p, x0)

    inner_bc = "Dirichlet"
    if "bc" in cp:
        inner_bc = cp["bc"].get("inner", "Dirichlet").strip()

    mm = ModelManifold(geo, x0=x0, interior_warp=warp,
                       interior_coupling=coupling,
                       interior_coupling_beta=coupling_beta,
                       inner_bc=inner_bc)
    extras = {"config_text": text, "mode_coupling": mode_coupling}
    if "run" in cp:
        extras.update({k: v for k, v in cp["run"].items()})
    return mm, extras


def provenance(config_text, tolerances=None):
    """Deterministic provenance mapping for output headers."""
    from . import __version__
    digest = hashlib.sha256(str(config_text).encode()).hexdigest()[:16]
    out = [("config_sha256", digest),
           ("cuspscat", __version__),
           ("numpy", np.__version__),
           ("scipy", scipy.__version__)]
    for key in sorted(tolerances or {}):
        out.append(("tol_" + key, format_float(tolerances[key])))
    return out


def _cell(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return "%d" % v
    if isinstance(v, (complex, np.complexfloating)):
        raise InputError("complex values must be split into re/im columns")
    return format_float(v)


def write_table(path, columns, rows, provenance_pairs):
    """Write a provenance-headed CSV, deterministically formatted."""
    lines = ["# %s: %s" % (k, v) for k, v in provenance_pairs]
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise InputError("row arity %d does not match %d columns"
                             % (len(row), len(columns)))
        lines.append(",".join(_cell(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path in (None, "-"):
        return text
    with open(path, "w") as fh:
        fh.write(text)
    return text
