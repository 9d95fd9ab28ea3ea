"""Bessel and Hankel functions on the logarithmic cover.

Principal-branch values (argument in (-pi, pi]) are delegated to the
AMOS-backed routines in scipy.special, which meet the 1e-10 relative
target on the core box |w| <= 50, |order| <= 10.  Two independent
evaluation routes are kept alongside and cross-checked in the tests:

* an ascending power series (float64 below ``SERIES_FLOAT_CUTOFF``,
  arbitrary-precision otherwise), and
* the large-argument asymptotic expansion with coefficients
  a_k(b) = prod_{j=1..k} (4 b^2 - (2j-1)^2) / (k! 8^k),

with switchover radius ``switch_radius(b) = max(12, 2 b^2)``.  Their
overlap agreement at the switchover radius is a mandatory test.

Off the principal sheet, values are lifted with the half-turn
connection formulas (one application per pi of argument rotation,
with -w entering as e^{-i pi} w):

    H1_b(e^{-i pi} w) = 2 cos(pi b) H1_b(w) + e^{-i pi b} H2_b(w)
    H2_b(e^{-i pi} w) = -e^{i pi b} H1_b(w)

The cover point is z with w = exp(z/2) * x; Im(z) is never reduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np
from scipy import special as _sp

from .cover import as_cover_z
from .errors import AccuracyError, DomainError, InputError, TruncationError

__all__ = [
    "validate_order",
    "switch_radius",
    "bessel_j",
    "bessel_y",
    "hankel_h1",
    "hankel_h2",
    "bessel_j_series",
    "bessel_y_series",
    "hankel_asymptotic",
    "hankel_series_asymptotic",
    "AsymptoticValue",
    "hankel",
    "hankel_pair",
    "bessel_jy_cover",
    "hankel_deriv_x",
    "hankel_weight_deriv",
    "cylinder_g",
    "cylinder_g_cover",
    "eval_accuracy",
]

SERIES_FLOAT_CUTOFF = 10.0  # beyond this the ascending series cancels too hard for float64
_SERIES_MAX_TERMS = 600


def validate_order(b) -> float:
    """Check that an order is a finite real number and return it as float."""
    try:
        bf = float(b)
    except (TypeError, ValueError) as exc:
        raise InputError("order must be a real number, got %r" % (b,)) from exc
    if not math.isfinite(bf):
        raise InputError("order must be finite, got %r" % (b,))
    return bf


def switch_radius(b) -> float:
    """Series/asymptotic switchover radius max(12, 2 b^2)."""
    b = validate_order(b)
    return max(12.0, 2.0 * b * b)


def _as_complex_array(w):
    arr = np.asarray(w, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise InputError("argument must be finite")
    return arr


def _guard_zero_argument(b, arr, allow_zero_j=False):
    zero = arr == 0
    if not np.any(zero):
        return None
    if not allow_zero_j:
        raise DomainError("argument 0 is outside the domain (singular limit)")
    if b < 0 and b != round(b):
        raise DomainError("J_b at 0 is singular for negative non-integer order")
    return zero


def bessel_j(b, w):
    """Principal-branch J_b(w) for real order b and complex w."""
    b = validate_order(b)
    arr = _as_complex_array(w)
    zero = _guard_zero_argument(b, arr, allow_zero_j=True)
    out = _sp.jv(b, arr)
    if zero is not None:
        out = np.where(zero, 1.0 + 0j if b == 0 else 0.0 + 0j, out)
    if not np.all(np.isfinite(out)):
        raise AccuracyError("J_%g evaluation failed (overflow or argument too large)" % b)
    return out if np.ndim(w) else complex(out)


def bessel_y(b, w):
    """Principal-branch Y_b(w) for real order b and complex w != 0."""
    b = validate_order(b)
    arr = _as_complex_array(w)
    _guard_zero_argument(b, arr)
    out = _sp.yv(b, arr)
    if not np.all(np.isfinite(out)):
        raise AccuracyError("Y_%g evaluation failed (overflow or argument too large)" % b)
    return out if np.ndim(w) else complex(out)


def hankel_h1(b, w):
    """Principal-branch H^(1)_b(w)."""
    b = validate_order(b)
    arr = _as_complex_array(w)
    _guard_zero_argument(b, arr)
    out = _sp.hankel1(b, arr)
    if not np.all(np.isfinite(out)):
        raise AccuracyError("H1_%g evaluation failed" % b)
    return out if np.ndim(w) else complex(out)


def hankel_h2(b, w):
    """Principal-branch H^(2)_b(w)."""
    b = validate_order(b)
    arr = _as_complex_array(w)
    _guard_zero_argument(b, arr)
    out = _sp.hankel2(b, arr)
    if not np.all(np.isfinite(out)):
        raise AccuracyError("H2_%g evaluation failed" % b)
    return out if np.ndim(w) else complex(out)


# ----------------------------------------------------------------------
# Route 1: ascending series.


def _series_j_float(b, w):
    """Ascending series for J_b in float64.  Valid for moderate |w| only."""
    half = w / 2.0
    q = half * half
    try:
        prefac = np.exp(b * np.log(complex(half))) / _sp.gamma(b + 1.0)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError("cannot form (w/2)^b at w=%r" % (w,)) from exc
    term = 1.0 + 0j
    total = term
    for k in range(1, _SERIES_MAX_TERMS):
        term *= -q / (k * (b + k))
        total += term
        if abs(term) <= 1e-17 * abs(total) and k > 3:
            return prefac * total
    raise TruncationError("J series did not converge at |w|=%g" % abs(w))


def _series_j_mp(b, w, dps):
    half = mp.mpc(w) / 2
    q = half * half
    prefac = mp.power(half, b) / mp.gamma(b + 1)
    term = mp.mpc(1)
    total = term
    tol = mp.mpf(10) ** (-dps + 3)
    bm = mp.mpf(b)
    for k in range(1, _SERIES_MAX_TERMS * 4):
        # the denominator must stay in mp: terms overshoot the sum by
        # e^|w| before cancelling, so float rounding here is fatal
        term *= -q / (mp.mpf(k) * (bm + k))
        total += term
        if abs(term) <= tol * abs(total) and k > 3:
            return prefac * total
    raise TruncationError("J series (mp) did not converge at |w|=%g" % abs(complex(w)))


def _series_dps(w):
    return 25 + int(0.5 * abs(complex(w)))


def bessel_j_series(b, w):
    """J_b(w) by the ascending series route.

    Uses float64 for |w| <= SERIES_FLOAT_CUTOFF and arbitrary-precision
    arithmetic above it (the series cancellation grows like e^|w|).
    """
    b = validate_order(b)
    w = complex(w)
    if w == 0:
        if b < 0 and b != round(b):
            raise DomainError("J_b at 0 is singular for negative non-integer order")
        return 1.0 + 0j if b == 0 else 0.0 + 0j
    if abs(w) <= SERIES_FLOAT_CUTOFF:
        return complex(_series_j_float(b, w))
    dps = _series_dps(w)
    with mp.workdps(dps):
        return complex(_series_j_mp(b, w, dps))


def _digamma_int(n, use_mp):
    # psi(n) for integer n >= 1: -gamma + H_{n-1}
    if use_mp:
        return mp.digamma(n)
    return -float(mp.euler) + sum(1.0 / j for j in range(1, n))


def _series_y_int(n, w, use_mp, dps=0):
    """Integer-order Y_n by the logarithmic series (limit formula in the order)."""
    sign = 1.0
    if n < 0:
        n = -n
        sign = (-1.0) ** n
    if use_mp:
        half = mp.mpc(w) / 2
        q = half * half
        ln = mp.log(half)
        jn = _series_j_mp(n, w, dps)
        pi = mp.pi
        tol = mp.mpf(10) ** (-dps + 3)
    else:
        half = complex(w) / 2
        q = half * half
        ln = np.log(half)
        jn = _series_j_float(n, complex(w))
        pi = np.pi
        tol = 1e-17
    # finite sum of negative powers
    fin = 0
    if n > 0:
        coef = math.factorial(n - 1)
        powq = 1
        for k in range(n):
            fin += coef * powq
            if k < n - 1:
                coef = coef / ((k + 1) * (n - k - 1))
                powq = powq * q
        fin = fin * half ** (-n)
    # psi series
    term = 1
    psum = 0
    for k in range(0, _SERIES_MAX_TERMS * (4 if use_mp else 1)):
        if k > 0:
            term = term * (-q) / (k * (n + k))
        contrib = term * (_digamma_int(k + 1, use_mp) + _digamma_int(n + k + 1, use_mp))
        psum += contrib
        if k > 3 and abs(contrib) <= tol * max(1e-300, abs(psum)):
            break
    psum = psum * half ** n / math.factorial(n)
    y = (2 / pi) * ln * jn - fin / pi - psum / pi
    return sign * y


def bessel_y_series(b, w):
    """Y_b(w) by the ascending series route.

    Non-integer order uses (J_b cos(pi b) - J_{-b}) / sin(pi b); integer
    order uses the limiting logarithmic series.
    """
    b = validate_order(b)
    w = complex(w)
    if w == 0:
        raise DomainError("Y is singular at 0")
    use_mp = abs(w) > SERIES_FLOAT_CUTOFF
    dps = _series_dps(w) if use_mp else 0
    if b == round(b):
        if use_mp:
            with mp.workdps(dps):
                return complex(_series_y_int(int(round(b)), w, True, dps))
        return complex(_series_y_int(int(round(b)), w, False))
    if use_mp:
        with mp.workdps(dps):
            jp = _series_j_mp(b, w, dps)
            jm = _series_j_mp(-b, w, dps)
            val = (jp * mp.cos(mp.pi * b) - jm) / mp.sin(mp.pi * b)
            return complex(val)
    jp = _series_j_float(b, w)
    jm = _series_j_float(-b, w)
    return complex((jp * np.cos(np.pi * b) - jm) / np.sin(np.pi * b))


# ----------------------------------------------------------------------
# Route 2: large-argument asymptotics.


@dataclass(frozen=True)
class AsymptoticValue:
    """Value of an asymptotic sum plus its internal accuracy estimate."""

    value: complex
    error_estimate: float
    terms_used: int
    marginal: bool = False


def _asymptotic_coefficients(b, k_max):
    """a_k(b) = prod_{j=1..k} (4 b^2 - (2j-1)^2) / (k! 8^k), a_0 = 1."""
    a = [1.0]
    num = 1.0
    for k in range(1, k_max + 1):
        num *= 4.0 * b * b - (2.0 * k - 1.0) ** 2
        a.append(num / (math.factorial(k) * 8.0 ** k))
    return a


def hankel_asymptotic(kind, b, w, k_max=30):
    """H^(kind)_b(w) by the asymptotic expansion, with an error estimate.

    The sum is truncated at the smallest term (at most ``k_max`` terms);
    the magnitude of the first omitted term, relative to the sum, is
    returned as the error estimate.  Valid on the principal sector away
    from the switchover radius; a ``marginal`` flag is set when |w| is
    within 15% of switch_radius(b).
    """
    if kind not in (1, 2):
        raise InputError("kind must be 1 or 2")
    b = validate_order(b)
    w = complex(w)
    if w == 0:
        raise DomainError("asymptotic expansion undefined at 0")
    sgn = 1j if kind == 1 else -1j
    coeffs = _asymptotic_coefficients(b, k_max + 1)
    total = 0.0 + 0j
    best = None
    prev_mag = np.inf
    used = 0
    for k in range(k_max + 1):
        term = coeffs[k] * sgn ** k / w ** k
        mag = abs(term)
        if mag > prev_mag:
            break
        total += term
        prev_mag = mag
        used = k + 1
    omitted = abs(coeffs[used] * (1.0 / abs(w)) ** used) if used <= k_max else prev_mag
    omega = w - b * np.pi / 2.0 - np.pi / 4.0
    phase = np.exp(sgn * omega)
    prefac = np.sqrt(2.0 / (np.pi * w))
    value = prefac * phase * total
    rel = omitted / max(abs(total), 1e-300)
    marg = abs(abs(w) - switch_radius(b)) <= 0.15 * switch_radius(b)
    return AsymptoticValue(complex(value), float(rel), used, marg)


def hankel_series_asymptotic(kind, b, w):
    """Principal H^(kind)_b(w) by the series/asymptotic switch (reference route).

    Dispatches on switch_radius(b); this is the slow documented route used
    for cross-checks, not the production evaluator.
    """
    if kind not in (1, 2):
        raise InputError("kind must be 1 or 2")
    b = validate_order(b)
    w = complex(w)
    if abs(w) <= switch_radius(b):
        j = bessel_j_series(b, w)
        y = bessel_y_series(b, w)
        return j + 1j * y if kind == 1 else j - 1j * y
    return hankel_asymptotic(kind, b, w).value


def eval_accuracy(b, w):
    """Best-effort relative accuracy estimate for principal-branch values.

    Inside the core box (|w| <= 50, |b| <= 10) the backend meets 1e-10;
    outside, the estimate degrades with |w| and b^2.
    """
    b = validate_order(b)
    aw = np.max(np.abs(np.asarray(w)))
    est = 1e-13 * max(1.0, aw / 50.0) * max(1.0, (b / 10.0) ** 2)
    return float(min(est * 1e3, 1.0)) if (aw > 50 or abs(b) > 10) else float(est * 1e3)


# ----------------------------------------------------------------------
# Lifts to the logarithmic cover.


def _principal_pair(b, s, x):
    w = s * np.asarray(x, dtype=complex)
    if np.any(w == 0):
        raise DomainError("Hankel functions are singular at 0")
    h1 = _sp.hankel1(b, w)
    h2 = _sp.hankel2(b, w)
    if not (np.all(np.isfinite(h1)) and np.all(np.isfinite(h2))):
        raise AccuracyError("Hankel evaluation failed at |w| up to %g" % np.max(np.abs(w)))
    return h1, h2


def hankel_pair(b, z, x=1.0):
    """Lifted pair (H1_b, H2_b) at argument exp(z/2)*x on the cover.

    z may be a LogCoverPoint or complex; x is a positive scalar or array.
    One connection-formula application per pi of argument rotation.
    """
    b = validate_order(b)
    zc = as_cover_z(z)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("radial coordinate must be positive")
    theta = zc.imag / 2.0
    k = 0
    while theta > np.pi:
        theta -= np.pi
        k += 1
    while theta <= -np.pi:
        theta += np.pi
        k -= 1
    base = complex(zc.real, 2.0 * theta)
    h1, h2 = _principal_pair(b, np.exp(base / 2.0), x)
    if k == 0:
        return h1, h2
    c = 2.0 * np.cos(np.pi * b)
    em = np.exp(-1j * np.pi * b)
    ep = np.exp(1j * np.pi * b)
    for _ in range(abs(k)):
        if k > 0:
            h1, h2 = -em * h2, ep * h1 + c * h2
        else:
            h1, h2 = c * h1 + em * h2, -ep * h1
    return h1, h2


def hankel(kind, b, z, x=1.0):
    """Lifted H^(kind)_b at exp(z/2)*x; branch carried by Im(z).

    For 0 < Im z < 2 pi this agrees with the principal branch composed
    with the principal square root.
    """
    if kind not in (1, 2):
        raise InputError("kind must be 1 or 2")
    h1, h2 = hankel_pair(b, z, x)
    return h1 if kind == 1 else h2


def bessel_jy_cover(b, z, x=1.0):
    """Lifted (J_b, Y_b) at exp(z/2)*x, recombined from the Hankel pair."""
    h1, h2 = hankel_pair(b, z, x)
    return (h1 + h2) / 2.0, (h1 - h2) / 2j


def hankel_deriv_x(kind, b, z, x):
    """d/dx of the lifted H^(kind)_b(exp(z/2) x).

    Uses H'_b(w) = H_{b-1}(w) - (b/w) H_b(w); the identity continues
    sheetwise, with 1/w = exp(-z/2)/x single valued on the cover.
    """
    if kind not in (1, 2):
        raise InputError("kind must be 1 or 2")
    b = validate_order(b)
    zc = as_cover_z(z)
    s = np.exp(complex(zc) / 2.0)
    hm = hankel(kind, b - 1.0, zc, x)
    h = hankel(kind, b, zc, x)
    x = np.asarray(x, dtype=float)
    return s * (hm - (b / (s * x)) * h)


def hankel_weight_deriv(kind, b, z, x):
    """d/dx [ (exp(z/2) x)^b H^(kind)_b(exp(z/2) x) ].

    Equals exp(z/2) (exp(z/2) x)^b H^(kind)_{b-1}(exp(z/2) x); on the
    cover the weight is exp(b z / 2) x^b, single valued by construction
    (the power's branch cut is tied to the Hankel one).
    """
    if kind not in (1, 2):
        raise InputError("kind must be 1 or 2")
    b = validate_order(b)
    zc = as_cover_z(z)
    s = np.exp(complex(zc) / 2.0)
    x = np.asarray(x, dtype=float)
    weight = np.exp(b * zc / 2.0) * x.astype(complex) ** b
    return s * weight * hankel(kind, b - 1.0, zc, x)


# ----------------------------------------------------------------------
# The cylinder combination G_b.


def cylinder_g(b, lam, x):
    """G_b(lam, x) = Y_b(lam) J_b(lam x) - J_b(lam) Y_b(lam x), lam > 0.

    Vanishes at x = 1; this is the Dirichlet solution of the radial
    Bessel problem on [1, inf).  lam <= 0 is a domain error (callers
    handle lam -> 0 as a limit).
    """
    b = validate_order(b)
    lam = float(lam)
    if lam <= 0:
        raise DomainError("cylinder function needs lam > 0")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("radial coordinate must be positive")
    jl = _sp.jv(b, lam)
    yl = _sp.yv(b, lam)
    return yl * _sp.jv(b, lam * x) - jl * _sp.yv(b, lam * x)


def cylinder_g_cover(b, z, x):
    """The cylinder combination at lam = exp(z/2) on the cover.

    Computed through the Hankel pair as
    (1/2i) [H1_b(s) H2_b(s x) - H2_b(s) H1_b(s x)], s = exp(z/2);
    invariant under sheet shifts z -> z +- 2 pi i (the connection
    matrices have unit determinant), i.e. a function of u alone.
    """
    h1_1, h2_1 = hankel_pair(b, z, 1.0)
    h1_x, h2_x = hankel_pair(b, z, x)
    return (h1_1 * h2_x - h2_1 * h1_x) / 2j
