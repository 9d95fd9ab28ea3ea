"""Transform layer: quadrature oracle, measure facts, fast roundtrip."""

import numpy as np
import pytest
from scipy.integrate import quad

from cuspscat.errors import AccuracyError, DomainError, InputError
from cuspscat.special import cylinder_g
from cuspscat.weber import (LAMBDA_FLOOR, RadialFunction, SpectralFunction,
                            apply_bessel_operator, c2_bump, radial_grid,
                            smooth_bump, spectral_density, spectral_grid,
                            weber_forward, weber_inverse)


def _gauss_profile(lo, hi):
    mid, sig = 0.5 * (lo + hi), (hi - lo) / 9.0
    return lambda x: np.exp(-(((x - mid) / sig) ** 2))


def test_forward_matches_adaptive_quadrature():
    # independent oracle: scipy adaptive quadrature of f(x) G_b(lam, x) x dx
    prof = c2_bump(2.0, 4.0)
    f = RadialFunction.from_callable(prof, 2.0, 4.0, max_width=0.125)
    for b, lam in [(1.0, 1.0), (1.0, 3.7), (0.5, 2.2), (2.0, 1.3)]:
        got = complex(weber_forward(f, b, np.array([lam, lam + 0.5])).values[0])
        want, quad_err = quad(lambda x: prof(x) * cylinder_g(b, lam, x) * x,
                              2.0, 4.0, epsabs=1e-13, epsrel=1e-13, limit=200)
        assert quad_err < 1e-11
        assert got.imag == 0.0
        assert abs(got.real - want) <= 1e-8 * max(abs(want), 1.0)


def test_forward_of_zero_is_zero():
    grid = np.linspace(1.5, 3.0, 200)
    w = np.full_like(grid, (grid[1] - grid[0]))
    f = RadialFunction(grid, np.zeros_like(grid), weights=w,
                       compact_support=True)
    out = weber_forward(f, 1.0, np.array([0.5, 1.0, 2.0]))
    assert np.all(out.values == 0)


def test_forward_continuous_at_small_lambda():
    # the transform extends continuously to lam -> 0
    prof = c2_bump(2.0, 4.0)
    f = RadialFunction.from_callable(prof, 2.0, 4.0, max_width=0.125)
    v = weber_forward(f, 1.0, np.array([1e-5, 1e-3])).values
    assert abs(v[0] - v[1]) <= 1e-4 * abs(v[1])


def test_density_closed_form_half_integer():
    for lam in (1.0, 2.0, 5.0):
        want = np.pi * lam ** 2 / 2.0
        assert spectral_density(0.5, lam) == pytest.approx(want, rel=1e-10)


def test_density_positive_and_large_lambda_envelope():
    for b in (0.0, 1.0, 3.0):
        lams = np.linspace(0.2, 60.0, 111)
        dens = np.array([spectral_density(b, l) for l in lams])
        assert np.all(dens > 0)
        ratio = spectral_density(b, 50.0) / (np.pi * 50.0 ** 2 / 2.0)
        assert abs(ratio - 1.0) <= 0.01


def test_roundtrip_and_isometry_fast():
    # single well-conditioned profile; the full profile/order matrix runs
    # in the acceptance suite
    b = 1.0
    prof = _gauss_profile(2.0, 4.0)
    f = RadialFunction.from_callable(prof, 2.0, 4.0, max_width=0.125)
    lam, lw = spectral_grid(40.0, x_extent=5.0)
    fwd = weber_forward(f, b, lam, lam_weights=lw)
    back = weber_inverse(fwd, b, f.grid, x_weights=f.weights)
    meas = f.weights * f.grid
    scale = np.sqrt(np.sum(meas * np.abs(f.values) ** 2))
    fwd_defect = np.sqrt(np.sum(meas * np.abs(back.values - f.values) ** 2)) / scale
    assert fwd_defect <= 1e-6

    dens = spectral_density(b, lam)
    spec_norm2 = np.sum(lw * dens * np.abs(fwd.values) ** 2)
    assert abs(spec_norm2 - scale ** 2) / scale ** 2 <= 1e-6


def test_operator_diagonalization_fast():
    # W(B_b f) = lam^2 W(f) for a compactly supported smooth f
    b = 1.0
    fd = RadialFunction.from_callable(_gauss_profile(2.0, 4.0), 2.0, 4.0,
                                      max_width=0.02)
    lam, lw = spectral_grid(40.0, x_extent=5.0)
    dens = spectral_density(b, lam)
    fwd = weber_forward(fd, b, lam, lam_weights=lw)
    op = apply_bessel_operator(fd, b)
    fwd_op = weber_forward(op, b, lam, lam_weights=lw, allow_truncation=True)
    ref = np.sqrt(np.sum(lw * dens * np.abs(lam ** 2 * fwd.values) ** 2))
    defect = np.sqrt(np.sum(
        lw * dens * np.abs(fwd_op.values - lam ** 2 * fwd.values) ** 2)) / ref
    assert defect <= 1e-6


def test_bessel_operator_on_eigenfunction():
    # plateau * G_b(lam0, x) is an exact eigenfunction where the plateau
    # is identically 1; check B f = lam0^2 f there
    b, lam0 = 1.0, 2.0

    def step(t):
        t = np.clip(t, 0.0, 1.0)
        num = np.where(t > 0, np.exp(-1.0 / np.maximum(t, 1e-12)), 0.0)
        den = num + np.where(t < 1, np.exp(-1.0 / np.maximum(1.0 - t, 1e-12)), 0.0)
        return num / den

    def fn(x):
        x = np.asarray(x, dtype=float)
        plateau = step((x - 1.4) / 1.4) * step((6.8 - x) / 1.6)
        return plateau * cylinder_g(b, lam0, x)

    f = RadialFunction.from_callable(fn, 1.2, 7.0, max_width=0.02)
    out = apply_bessel_operator(f, b)
    inner = (f.grid >= 3.0) & (f.grid <= 5.0)
    resid = np.max(np.abs(out.values[inner] - lam0 ** 2 * f.values[inner]))
    assert resid <= 1e-6 * lam0 ** 2 * np.max(np.abs(f.values))


def test_grid_generators_basic_properties():
    x, w = radial_grid(1.0, 20.0, lam_max=10.0)
    assert np.all(np.diff(x) > 0) and np.all(w > 0)
    assert x[0] >= 1.0 and x[-1] <= 20.0
    # spacing must resolve the fastest oscillation
    assert np.max(np.diff(x)) < np.pi / 10.0
    lam, lw = spectral_grid(30.0, x_extent=10.0)
    assert lam[0] >= LAMBDA_FLOOR and lam[-1] <= 30.0
    assert np.all(np.diff(lam) > 0) and np.all(lw > 0)


def test_input_guards():
    grid = np.linspace(2.0, 4.0, 50)
    w = np.full_like(grid, grid[1] - grid[0])
    f_plain = RadialFunction(grid, np.ones_like(grid), weights=w)
    with pytest.raises(InputError):
        # truncation of a non-compact f must be acknowledged
        weber_forward(f_plain, 1.0, np.array([1.0, 2.0]))
    out = weber_forward(f_plain, 1.0, np.array([1.0, 2.0]),
                        allow_truncation=True)
    assert np.all(np.isfinite(out.values))

    with pytest.raises(InputError):
        RadialFunction(grid[::-1], np.ones_like(grid))
    with pytest.raises(InputError):
        # compact_support with visibly non-zero boundary samples
        RadialFunction(grid, np.ones_like(grid), weights=w,
                       compact_support=True)
    with pytest.raises(DomainError):
        spectral_density(1.0, -1.0)
    with pytest.raises(DomainError):
        # kernel coordinates live on [1, inf)
        bad = np.linspace(0.5, 2.0, 50)
        vals = c2_bump(0.6, 1.9)(bad)
        weber_forward(RadialFunction(bad, vals,
                                     weights=np.full_like(bad, 0.03),
                                     compact_support=True),
                      1.0, np.array([1.0, 2.0]))


def test_coarse_grid_rejected():
    # ~1 node per oscillation: the 4th-order stencil would silently junk
    grid = np.linspace(1.0, 20.0, 64)
    vals = np.sin(6.6 * grid)  # ~3 nodes per oscillation
    f = RadialFunction(grid, vals, weights=np.full_like(grid, grid[1] - grid[0]))
    with pytest.raises(AccuracyError):
        apply_bessel_operator(f, 1.0)


def test_inverse_warns_at_lambda_floor():
    lam = np.concatenate([[LAMBDA_FLOOR / 2.0], np.linspace(0.05, 1.5, 60)])
    g = SpectralFunction(lam, np.ones_like(lam),
                         weights=np.full_like(lam, 0.025))
    with pytest.warns(RuntimeWarning):
        weber_inverse(g, 1.0, np.linspace(1.0, 3.0, 40))


def test_bump_profiles_shape():
    for maker in (smooth_bump, c2_bump):
        fn = maker(2.0, 4.0)
        assert fn(2.0) == 0.0 and fn(4.0) == 0.0
        assert fn(3.0) == pytest.approx(1.0)
        assert fn(1.5) == 0.0 and fn(4.5) == 0.0
