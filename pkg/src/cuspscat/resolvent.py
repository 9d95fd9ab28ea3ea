"""Explicit resolvent of the radial cusp operator on a harmonic sector.

For order b the sector operator is the x^b-conjugate of the Bessel
operator B_b of the weber module; its outgoing resolvent kernel on the
logarithmic cover (s = exp(z/2), spectral parameter u = exp(z)) is

    r_b(z, x, t) = (pi sqrt(x t) / (2 H1_b(s))) G_b(s, x_<) H1_b(s x_>),

symmetric in (x, t), meromorphic in z with poles exactly at the zeros
of H1_b(exp(z/2)).  The operator action uses the reduced kernel
rho = -r / sqrt(x t):

    ((Delta - e^z)^{-1} f)(x) = int_1^X x^b t^{1-b} rho(z, x, t) f(t) dt,

equivalently the B_b resolvent conjugated by x^b.  The sign and the
t-power follow from the constant Wronskian of sqrt(x) G_b(s x) and
sqrt(x) H1_b(s x); the equivalent spectral form

    rho(z, x, t) = int_0^inf lam G(lam,x) G(lam,t)
                   / ((lam^2 - e^z)(J_b(lam)^2 + Y_b(lam)^2)) dlam

is implemented independently in spectral_route_kernel and the two are
cross-checked in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _si
from scipy import special as _sp

from .cover import TWO_PI, as_cover_z
from .errors import AccuracyError, DomainError, InputError, PoleError, WindingError
from .quadrature import gauss_panels, oscillation_panel_width, panel_edges
from .special import cylinder_g, cylinder_g_cover, hankel, hankel_deriv_x, validate_order
from .weber import RadialFunction
from .zeros import find_zeros

__all__ = [
    "resolvent_kernel",
    "reduced_kernel",
    "apply_cusp_resolvent",
    "find_resolvent_poles",
    "PoleReport",
    "limiting_absorption_check",
    "LimitingAbsorptionReport",
    "spectral_route_kernel",
    "WeightedNorm",
    "weighted_norm",
]

_POLE_GUARD = 1e-12


def _h1_at_one(b, zc):
    h1 = complex(hankel(1, b, zc, 1.0))
    scale = abs(complex(hankel(2, b, zc, 1.0))) + 1.0
    if abs(h1) < _POLE_GUARD * scale:
        raise PoleError(
            "resolvent evaluated at or too close to a pole of the continuation "
            "(|H1_b(e^{z/2})| = %.3e)" % abs(h1))
    return h1


def _check_radial(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0 - 1e-12):
        raise DomainError("kernel coordinates live on [1, inf)")
    return x


def resolvent_kernel(b, z, x, t):
    """Symmetric outgoing kernel r_b(z, x, t); broadcasts over x and t."""
    b = validate_order(b)
    zc = as_cover_z(z)
    x, t = np.broadcast_arrays(_check_radial(x), _check_radial(t))
    h1 = _h1_at_one(b, zc)
    lo = np.minimum(x, t)
    hi = np.maximum(x, t)
    g_lo = cylinder_g_cover(b, zc, lo)
    h1_hi = hankel(1, b, zc, hi)
    out = (np.pi * np.sqrt(x * t) / (2.0 * h1)) * g_lo * h1_hi
    return out if out.ndim else complex(out)


def reduced_kernel(b, z, x, t):
    """Operator-normalized kernel rho = -r / sqrt(x t) (acts against t dt)."""
    b = validate_order(b)
    zc = as_cover_z(z)
    x, t = np.broadcast_arrays(_check_radial(x), _check_radial(t))
    h1 = _h1_at_one(b, zc)
    lo = np.minimum(x, t)
    hi = np.maximum(x, t)
    out = -(np.pi / (2.0 * h1)) * cylinder_g_cover(b, zc, lo) * hankel(1, b, zc, hi)
    return out if out.ndim else complex(out)


def apply_cusp_resolvent(f, b, z, allow_truncation=False):
    """Apply the sector resolvent to a RadialFunction sampled on [1, X].

    Returns out(x) = int x^b t^{1-b} rho(z, x, t) f(t) dt on f's grid by
    cumulative trapezoid sums split at the diagonal (the kernel has a
    derivative jump at x = t, and every grid node is a split point, so
    the composite rule keeps its O(h^2) order).  For g = x^{-b} * out
    the Bessel-operator residual (B_b - e^z) g = x^{-b} f holds to grid
    order; the tests drive that check.
    """
    b = validate_order(b)
    zc = as_cover_z(z)
    if not isinstance(f, RadialFunction):
        raise InputError("expected a RadialFunction")
    if not f.compact_support and not allow_truncation:
        raise InputError("input is not flagged compactly supported; pass "
                         "allow_truncation=True to accept the domain truncation")
    grid = _check_radial(f.grid)
    im_s = abs(np.imag(np.exp(complex(zc) / 2.0)))
    if im_s * grid[-1] > 600.0:
        raise AccuracyError("dynamic range e^{|Im s| X} exceeds float64")
    h1_1 = _h1_at_one(b, zc)
    g = cylinder_g_cover(b, zc, grid)
    h1 = hankel(1, b, zc, grid)
    wt = grid ** (1.0 - b) * np.asarray(f.values)
    low = _si.cumulative_trapezoid(g * wt, grid, initial=0.0)
    high_all = _si.cumulative_trapezoid(h1 * wt, grid, initial=0.0)
    high = high_all[-1] - high_all
    out = -(np.pi / (2.0 * h1_1)) * grid ** b * (h1 * low + g * high)
    return RadialFunction(grid, out, f.weights)


@dataclass(frozen=True)
class PoleReport:
    """A located pole of the continued resolvent (zero of H1_b(e^{z/2}))."""

    z: complex
    residual: float
    newton_iters: int
    winding: int

    @property
    def sqrt_u(self):
        return np.exp(self.z / 2.0)


def find_resolvent_poles(b, region, samples_per_side=24):
    """All poles in a cover rectangle region = (re_lo, re_hi, im_lo, im_hi).

    Zeros of H1_b(e^{z/2}) located by the argument principle with Newton
    refinement; the count is validated against the boundary winding.
    Raises WindingError with partial results attached on a mismatch.
    """
    b = validate_order(b)

    def fn(z):
        return complex(hankel(1, b, z, 1.0))

    def dfn(z):
        # d/dz H1_b(e^{z/2}) = (1/2) d/dx H1_b(e^{z/2} x) at x=1
        return 0.5 * complex(hankel_deriv_x(1, b, z, 1.0))

    try:
        hits = find_zeros(fn, region, fprime=dfn)
    except WindingError as exc:
        exc.partial = tuple(
            PoleReport(h["z"], h["residual"], h["iters"], h["multiplicity"])
            for h in exc.partial)
        raise
    reports = [PoleReport(h["z"], h["residual"], h["iters"], h["multiplicity"])
               for h in hits]
    return sorted(reports, key=lambda r: (r.z.real, r.z.imag))


@dataclass(frozen=True)
class LimitingAbsorptionReport:
    """Jump of the reduced kernel across the continuous spectrum."""

    lambda0: float
    x: float
    t: float
    eps: tuple
    jumps: tuple
    extrapolated: complex
    reference: float
    deviation: float
    conj_symmetry_defect: float


def _neville_at_zero(xs, ys):
    tab = list(ys)
    n = len(xs)
    for m in range(1, n):
        for i in range(n - m):
            tab[i] = (xs[i + m] * tab[i] - xs[i] * tab[i + 1]) / (xs[i + m] - xs[i])
    return tab[0]


def limiting_absorption_check(b, lambda0, x, t, eps_ladder):
    """Check (1/2 pi i)[rho(u0+i eps) - rho(u0-i eps)] -> spectral density.

    u0 = lambda0 > 0 sits on the continuous spectrum; the two boundary
    values are taken on the physical sheet (Im z -> 0+ and Im z -> 2pi-)
    so the second one exercises the continuation across the cut.  The
    limit is (1/2) G_b(s0,x) G_b(s0,t) / (J_b(s0)^2 + Y_b(s0)^2) with
    s0 = sqrt(lambda0); the factor 1/2 is the lam dlam -> (1/2) du
    Jacobian of the spectral measure in the u variable.  The ladder is
    Richardson-extrapolated to eps = 0.
    """
    b = validate_order(b)
    lambda0 = float(lambda0)
    if lambda0 <= 0:
        raise DomainError("lambda0 must lie in the continuous spectrum (> 0)")
    eps = [float(e) for e in eps_ladder]
    if not eps or any(e <= 0 for e in eps) or any(
            e2 >= e1 for e1, e2 in zip(eps, eps[1:])):
        raise InputError("eps ladder must be positive and strictly decreasing")
    x = float(x)
    t = float(t)
    jumps = []
    sym = 0.0
    for e in eps:
        phi = math.atan2(e, lambda0)
        mod = 0.5 * math.log(lambda0 * lambda0 + e * e)
        z_up = complex(mod, phi)
        z_dn = complex(mod, TWO_PI - phi)
        r_up = reduced_kernel(b, z_up, x, t)
        r_dn = reduced_kernel(b, z_dn, x, t)
        jumps.append((r_up - r_dn) / (2j * np.pi))
        denom = max(abs(r_up), 1e-300)
        sym = max(sym, abs(r_dn - np.conj(r_up)) / denom)
    extrap = complex(_neville_at_zero(eps, jumps))
    s0 = math.sqrt(lambda0)
    g_x = cylinder_g(b, s0, x)
    g_t = cylinder_g(b, s0, t)
    dens = float(_sp.jv(b, s0) ** 2 + _sp.yv(b, s0) ** 2)
    reference = 0.5 * float(g_x * g_t) / dens
    return LimitingAbsorptionReport(
        lambda0=lambda0, x=x, t=t, eps=tuple(eps), jumps=tuple(jumps),
        extrapolated=extrap, reference=reference,
        deviation=abs(extrap - reference),
        conj_symmetry_defect=float(sym))


def spectral_route_kernel(b, z, x, t, lam_max=400.0, order=12):
    """rho(z, x, t) by the spectral-theorem integral (independent route).

    Integrates lam G(lam,x) G(lam,t) / ((lam^2-u)(J^2+Y^2)) on
    [0, lam_max] against the closed-form tail of its large-lam envelope
    (2/pi) sin(lam(x-1)) sin(lam(t-1)) / (sqrt(xt)(lam^2-u)), whose
    [0, inf) integral is known in closed form.  The remainder after the
    subtraction decays like lam^{-3}, so lam_max = 400 reaches ~1e-6.
    Used as the oracle against reduced_kernel on the physical sheet.
    """
    b = validate_order(b)
    zc = complex(as_cover_z(z))
    u = np.exp(zc)
    if abs(u.imag) < 1e-9 and u.real >= -1e-9:
        raise DomainError("spectral route needs u off the nonnegative real axis")
    x = float(x)
    t = float(t)
    if min(x, t) < 1.0 - 1e-12:
        raise DomainError("kernel coordinates live on [1, inf)")
    width = oscillation_panel_width(max(x + t, 2.0), cap=0.25)
    lam, wq = gauss_panels(panel_edges(1e-8, lam_max, width), order)
    jl = _sp.jv(b, lam)
    yl = _sp.yv(b, lam)
    g_x = yl * _sp.jv(b, lam * x) - jl * _sp.yv(b, lam * x)
    g_t = yl * _sp.jv(b, lam * t) - jl * _sp.yv(b, lam * t)
    full = lam * g_x * g_t / ((lam * lam - u) * (jl * jl + yl * yl))
    envelope = (2.0 / (np.pi * math.sqrt(x * t))) * (
        np.sin(lam * (x - 1.0)) * np.sin(lam * (t - 1.0)) / (lam * lam - u))
    head = np.sum(wq * (full - envelope))
    # closed form of the envelope over [0, inf): q = sqrt(-u), Re q > 0
    q = np.sqrt(-u)
    aa = abs(x - t)
    cc = x + t - 2.0
    tail = (2.0 / (np.pi * math.sqrt(x * t))) * (np.pi / (4.0 * q)) * (
        np.exp(-q * aa) - np.exp(-q * cc))
    return complex(head + tail)


@dataclass(frozen=True)
class WeightedNorm:
    """The decaying (+) or growing (-) Gaussian cusp weight.

    weight(x) = exp(-sign x^2 / 2) on the cusp x >= 1, extended by 1 on
    the compact part; the two weights multiply to 1.
    """

    sign: str

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise InputError("sign must be '+' or '-'")

    def log_weight(self, x):
        x = np.asarray(x, dtype=float)
        expo = np.where(x >= 1.0, -x * x / 2.0, 0.0)
        return expo if self.sign == "+" else -expo


def weighted_norm(f, w, gamma=0.0):
    """L2 norm of weight*f over the grid with measure x^{-gamma} dx.

    The growing weight is handled in log space (no overflow for large
    X); quadrature weights come from the RadialFunction, trapezoid on
    its grid otherwise.
    """
    if not isinstance(f, RadialFunction):
        raise InputError("expected a RadialFunction")
    if not isinstance(w, WeightedNorm):
        w = WeightedNorm(str(w))
    grid = f.grid
    vals = np.abs(np.asarray(f.values))
    if f.weights is not None:
        qw = f.weights
    else:
        qw = np.empty_like(grid)
        qw[1:-1] = 0.5 * (grid[2:] - grid[:-2])
        qw[0] = 0.5 * (grid[1] - grid[0])
        qw[-1] = 0.5 * (grid[-1] - grid[-2])
    # |weight f|^2 x^{-gamma} dx summed in log space
    with np.errstate(divide="ignore"):
        logs = 2.0 * (np.log(vals, out=np.full_like(vals, -np.inf),
                             where=vals > 0) + w.log_weight(grid))
    logs = logs - gamma * np.log(grid) + np.log(qw)
    peak = np.max(logs)
    if peak == -np.inf:
        return 0.0
    return float(np.exp(0.5 * (peak + np.log(np.sum(np.exp(logs - peak))))))
