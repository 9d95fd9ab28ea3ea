"""Coupled radial systems on the non-harmonic mode subspaces.

For a fixed cross-section eigenvalue mu = nu^2 the form Laplacian
restricts to a pair of coupled half-line operators acting on the
two-component coefficient vector (w, v).  After the flattening
substitution the static operator is

    L = [[-d2/dx2 + nu^2 x^{2a} + gp(gp+2)/(4x^2),  q(x)              ],
         [ q(x), -d2/dx2 + nu^2 x^{2a} + gm(gm-2)/(4x^2)             ]]

with gp = gamma_p, gm = gamma_{p-1} and coupling q = 2 a nu x^{a-1} on
one invariant subspace family (sector V) and q = 0 on the other
(sector W).  The x^{2a} confinement makes the spectrum discrete; the
first-order reduction Y = (w, v, w', v') has eigenvalue rates +-nu x^a
at large x, which in the stretched time t = x^{a+1}/(a+1) become the
constant Perron rates +-nu.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as _si
from scipy import linalg as _sla

from .cover import as_cover_z
from .errors import DomainError, InputError, TruncationError
from .geometry import CuspGeometry

__all__ = [
    "ModeSystem",
    "FirstOrderState",
    "ModeOperator",
    "PerronReport",
    "effective_potentials",
    "f_matrix_eigenvalues",
    "first_order_matrix",
    "f_matrix_diagonalizer",
    "assemble_mode_operator",
    "discrete_spectrum",
    "perron_decay_check",
]


@dataclass(frozen=True)
class ModeSystem:
    """One non-harmonic mode block: geometry, nu = sqrt(mu), sector, grid."""

    geometry: CuspGeometry
    nu: float
    sector: str
    grid: np.ndarray

    def __post_init__(self):
        if self.nu <= 0:
            raise InputError("nu must be positive (it is sqrt of a nonzero "
                             "cross-section eigenvalue)")
        if self.sector not in ("V", "W"):
            raise InputError("sector must be 'V' or 'W'")
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or grid.size < 8:
            raise InputError("grid must be a 1-d array with at least 8 nodes")
        if abs(grid[0] - 1.0) > 1e-12:
            raise DomainError("mode systems live on [1, X_max]; grid must start at 1")
        steps = np.diff(grid)
        if np.any(steps <= 0):
            raise InputError("grid must be strictly increasing")
        if np.max(steps) - np.min(steps) > 1e-10 * np.max(steps):
            raise InputError("grid must be uniform (banded discretization)")
        object.__setattr__(self, "grid", grid)

    @classmethod
    def uniform(cls, geometry, nu, sector, x_max, n_points=1601):
        return cls(geometry, float(nu), sector,
                   np.linspace(1.0, float(x_max), int(n_points)))

    @property
    def x_max(self):
        return float(self.grid[-1])

    @property
    def step(self):
        return float(self.grid[1] - self.grid[0])


@dataclass
class FirstOrderState:
    """(w, v, w', v') at radius x, with the norm carried in log space."""

    x: float
    Y: np.ndarray
    log_scale: float = 0.0

    def __post_init__(self):
        self.Y = np.asarray(self.Y, dtype=complex)
        if self.Y.shape != (4,):
            raise InputError("state vector must have 4 components")
        if not np.all(np.isfinite(self.Y)):
            raise InputError("state vector must be finite")

    def normalized(self):
        scale = float(np.linalg.norm(self.Y))
        if scale == 0.0:
            return self
        return FirstOrderState(self.x, self.Y / scale,
                               self.log_scale + np.log(scale))

    @property
    def log_norm(self):
        return self.log_scale + float(np.log(np.linalg.norm(self.Y)))


def _static_potentials(ms, x):
    """Real parts of the diagonal potentials and the coupling, no spectral shift."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0 - 1e-12):
        raise DomainError("mode potentials are defined on [1, X_max]")
    geo = ms.geometry
    a = geo.a
    gp = geo.gamma(geo.p)
    gm = geo.gamma(geo.p - 1)
    confine = (ms.nu ** 2) * x ** (2.0 * a)
    p_stat = confine + gp * (gp + 2.0) / (4.0 * x * x)
    r_stat = confine + gm * (gm - 2.0) / (4.0 * x * x)
    if ms.sector == "V":
        q = 2.0 * a * ms.nu * x ** (a - 1.0)
    else:
        q = np.zeros_like(x)
    return p_stat, r_stat, q


def effective_potentials(ms, x, z):
    """(P, R, q) at radius x and cover point z: P = nu^2 x^{2a} + cfl - e^z."""
    u = np.exp(complex(as_cover_z(z)))
    p_stat, r_stat, q = _static_potentials(ms, x)
    return p_stat - u, r_stat - u, q


def f_matrix_eigenvalues(P, R, q):
    """The four rates (+s+, -s+, +s-, -s-) of the first-order reduction.

    s_pm = sqrt(((P+R) +- sqrt((P-R)^2 + 4q^2))/2), principal branches.
    """
    P = np.asarray(P, dtype=complex)
    R = np.asarray(R, dtype=complex)
    q = np.asarray(q, dtype=float)
    inner = np.sqrt((P - R) ** 2 + 4.0 * q * q + 0j)
    s_plus = np.sqrt((P + R + inner) / 2.0)
    s_minus = np.sqrt((P + R - inner) / 2.0)
    return s_plus, -s_plus, s_minus, -s_minus


def first_order_matrix(P, R, q):
    """System matrix F of Y' = F Y for the state Y = (w, v, w', v').

    Carries the sign gauge in which the published eigenvector columns
    (1, (P - s^2)/q, s, s (P - s^2)/q) are exact: the coupling enters as
    -q, which is the v -> -v relabeling of the symmetric form used by
    assemble_mode_operator.  Eigenvalues and growth rates agree between
    the two gauges.
    """
    P = complex(P)
    R = complex(R)
    q = float(q)
    return np.array([
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [P, -q, 0.0, 0.0],
        [-q, R, 0.0, 0.0],
    ], dtype=complex)


def f_matrix_diagonalizer(P, R, q):
    """(S, rates): columns of S diagonalize first_order_matrix(P, R, q).

    Columns follow (1, (P - s^2)/q, s, s (P - s^2)/q) normalized to unit
    length; the decoupled q = 0 case uses the single-component limits.
    """
    rates = np.array(f_matrix_eigenvalues(P, R, q), dtype=complex)
    P = complex(P)
    R = complex(R)
    q = float(q)
    cols = np.empty((4, 4), dtype=complex)
    for j, s in enumerate(rates):
        s2 = s * s
        if q != 0.0:
            c = (P - s2) / q
            col = np.array([1.0, c, s, s * c])
        elif abs(s2 - P) <= abs(s2 - R):
            col = np.array([1.0, 0.0, s, 0.0])
        else:
            col = np.array([0.0, 1.0, 0.0, s])
        cols[:, j] = col / np.linalg.norm(col)
    return cols, rates


@dataclass(frozen=True)
class ModeOperator:
    """Symmetric banded discretization of the static coupled operator.

    Interleaved unknowns (w_1, v_1, w_2, v_2, ...) on the interior
    nodes, Dirichlet at both ends; `band` is lower-band storage with
    bandwidth 2 as used by scipy.linalg.eig_banded.
    """

    band: np.ndarray
    nodes: np.ndarray
    step: float

    @property
    def size(self):
        return self.band.shape[1]

    def to_dense(self):
        n = self.size
        dense = np.zeros((n, n))
        for k in range(self.band.shape[0]):
            for i in range(n - k):
                dense[i + k, i] = self.band[k, i]
                dense[i, i + k] = self.band[k, i]
        return dense

    def eigenvalues(self, count):
        count = int(count)
        if count <= 0:
            return np.array([])
        count = min(count, self.size)
        return _sla.eig_banded(self.band, lower=True, eigvals_only=True,
                               select="i", select_range=(0, count - 1))


def assemble_mode_operator(ms, z_shift=None):
    """Banded symmetric matrix of L on ms.grid with Dirichlet ends.

    z_shift is accepted for interface symmetry but must be None: the
    spectral parameter is the eigenvalue being solved for, never baked
    into the matrix.
    """
    if z_shift is not None:
        raise InputError("z_shift must be None; the operator is assembled unshifted")
    interior = ms.grid[1:-1]
    h = ms.step
    p_stat, r_stat, q = _static_potentials(ms, interior)
    n = interior.size
    band = np.zeros((3, 2 * n))
    band[0, 0::2] = 2.0 / h ** 2 + p_stat
    band[0, 1::2] = 2.0 / h ** 2 + r_stat
    band[1, 0:-1:2] = q  # couples w_i to v_i; the v_i -> w_{i+1} slot stays 0
    band[2, : 2 * (n - 1)] = -1.0 / h ** 2
    return ModeOperator(band, interior, h)


def discrete_spectrum(ms, count, with_errors=False):
    """Lowest `count` eigenvalues, Richardson-extrapolated over h -> h/2.

    Second-order differences give lam(h) = lam + c h^2, so the
    extrapolant is (4 lam_{h/2} - lam_h)/3 with error estimate
    |lam_{h/2} - lam_h| / 3.  Requested eigenvalues beyond the window
    confined by nu^2 X_max^{2a} are flagged with a warning.
    """
    count = int(count)
    if count < 0:
        raise InputError("count must be nonnegative")
    if count == 0:
        return ([], []) if with_errors else []
    coarse = assemble_mode_operator(ms).eigenvalues(count)
    if coarse.size < count:
        raise TruncationError("grid too small for the requested eigenvalue count")
    fine_grid = np.linspace(1.0, ms.x_max, 2 * ms.grid.size - 1)
    fine_ms = ModeSystem(ms.geometry, ms.nu, ms.sector, fine_grid)
    fine = assemble_mode_operator(fine_ms).eigenvalues(count)
    values = (4.0 * fine - coarse) / 3.0
    errors = np.abs(fine - coarse) / 3.0
    window = (ms.nu ** 2) * ms.x_max ** (2.0 * ms.geometry.a)
    if values[-1] > 0.5 * window:
        warnings.warn("highest requested eigenvalues approach the truncation "
                      "window; treat their tail as partial", RuntimeWarning)
    if with_errors:
        return list(map(float, values)), list(map(float, errors))
    return list(map(float, values))


@dataclass(frozen=True)
class PerronReport:
    """Fitted exponential rates of the first-order system in t = x^{a+1}/(a+1)."""

    nu: float
    growth_rate: float
    decay_rate: float
    growth_deviation: float
    decay_deviation: float
    edge_rate_ratio: float
    t_samples: np.ndarray = field(repr=False)
    growth_log_norms: np.ndarray = field(repr=False)
    decay_log_norms: np.ndarray = field(repr=False)


def _integrate_chunked(ms, u, x_checkpoints, y0):
    """Renormalized sweep of Y' = F(x) Y through the checkpoint ladder.

    Returns log ||Y|| at each checkpoint (first entry 0 by normalization
    of y0); the direction is renormalized at every checkpoint so the
    integrator never sees norms outside [1, e^{chunk growth}].
    """

    def rhs(x, y):
        p_stat, r_stat, q = _static_potentials(ms, x)
        w, v, dw, dv = y[0], y[1], y[2], y[3]
        pp = p_stat - u
        rr = r_stat - u
        return [dw, dv, pp * w - q * v, -q * w + rr * v]

    state = FirstOrderState(x_checkpoints[0], y0).normalized()
    base = state.log_norm
    logs = [0.0]
    for x_next in x_checkpoints[1:]:
        sol = _si.solve_ivp(rhs, (state.x, x_next), state.Y, method="DOP853",
                            rtol=1e-11, atol=1e-13, dense_output=False)
        if not sol.success:
            raise TruncationError("stiff integration failed: " + sol.message)
        state = FirstOrderState(x_next, sol.y[:, -1], state.log_scale)
        logs.append(state.log_norm - base)
        state = state.normalized()
    return np.array(logs)


def perron_decay_check(ms, z):
    """Fit the +-nu rates of growing and decaying solutions in t.

    The growing solution is produced by a forward sweep (any generic
    direction converges onto the dominant one); the decaying solution by
    a backward sweep from X_max, whose dominant direction is the forward-
    decaying one.  Rates are least-squares slopes of log ||Y|| against
    t = x^{a+1}/(a+1) over the last decade of t.
    """
    zc = complex(as_cover_z(z))
    u = np.exp(zc)
    a = ms.geometry.a
    t_of = lambda x: x ** (a + 1.0) / (a + 1.0)
    n_chunks = 72
    # checkpoints uniform in t so each chunk carries comparable growth
    t_lo, t_hi = t_of(1.0), t_of(ms.x_max)
    t_pts = np.linspace(t_lo, t_hi, n_chunks + 1)
    x_pts = ((a + 1.0) * t_pts) ** (1.0 / (a + 1.0))
    x_pts[0], x_pts[-1] = 1.0, ms.x_max

    p0, r0, q0 = _static_potentials(ms, 1.0)
    s_grow, _, _, _ = f_matrix_eigenvalues(p0 - u, r0 - u, q0)
    cols, _ = f_matrix_diagonalizer(p0 - u, r0 - u, float(q0))
    grow_logs = _integrate_chunked(ms, u, x_pts, cols[:, 0])

    pX, rX, qX = _static_potentials(ms, ms.x_max)
    colsX, ratesX = f_matrix_diagonalizer(pX - u, rX - u, float(qX))
    # most negative real rate marks the forward-decaying direction
    j_dec = int(np.argmin(ratesX.real))
    decay_logs = _integrate_chunked(ms, u, x_pts[::-1], colsX[:, j_dec])[::-1]
    decay_logs = decay_logs - decay_logs[0]

    window = t_pts >= t_hi / 10.0
    if np.count_nonzero(window) < 4:
        raise InputError("grid too short to isolate the last decade of t")
    tw = t_pts[window]
    # solutions carry an algebraic prefactor t^alpha on top of e^{+-nu t};
    # a pure-linear fit would absorb it as an O(alpha/t) rate bias.  The
    # eigenvalue also shifts the local rate by O(x^-a), which integrates
    # to t^{(1-a)/(1+a)}; that term grows when a < 1 and must be modeled
    cols = [tw, np.log(tw), np.ones_like(tw)]
    p_u = (1.0 - a) / (1.0 + a)
    if 1e-9 < abs(p_u) < 0.999:
        cols.insert(1, tw ** p_u)
    design = np.column_stack(cols)
    growth_rate = float(np.linalg.lstsq(design, grow_logs[window],
                                        rcond=None)[0][0])
    decay_rate = float(np.linalg.lstsq(design, decay_logs[window],
                                       rcond=None)[0][0])

    edge = np.max(np.abs(np.real(np.array(
        f_matrix_eigenvalues(pX - u, rX - u, qX))))) / (
            ms.nu * ms.x_max ** a)
    return PerronReport(
        nu=ms.nu,
        growth_rate=growth_rate,
        decay_rate=decay_rate,
        growth_deviation=abs(growth_rate - ms.nu) / ms.nu,
        decay_deviation=abs(decay_rate + ms.nu) / ms.nu,
        edge_rate_ratio=float(edge),
        t_samples=t_pts,
        growth_log_norms=grow_logs,
        decay_log_norms=decay_logs,
    )
