"""Sector resolvent: dual-route kernel checks, poles, boundary values."""

import numpy as np
import pytest

from cuspscat.errors import AccuracyError, InputError, PoleError
from cuspscat.quadrature import fd_apply
from cuspscat.resolvent import (apply_cusp_resolvent, find_resolvent_poles,
                                limiting_absorption_check, reduced_kernel,
                                resolvent_kernel, spectral_route_kernel)
from cuspscat.weber import RadialFunction, c2_bump

# zeros of H1_{5/2}(w) = prefactor * e^{iw} (w^2 + 3iw - 3) / w^2 lie at
# w = (+-sqrt(3) - 3i)/2, i.e. |w| = sqrt(3), arg w = -pi/3 and -2pi/3;
# on the sheet Im z in (2pi, 4pi) that is z = ln 3 + i 10pi/3 (and 8pi/3)
POLE_B25 = complex(np.log(3.0), 10.0 * np.pi / 3.0)

# located numerically once and frozen; independently confirmed by the
# winding count and the Newton residual below
POLE_B0 = 1.7742056491898168 + 12.284973374899771j
POLE_B1 = 2.695544036295955 + 12.38168665056712j


def test_apply_residual_halving():
    # (B_b - e^z) applied to x^{-b} * out must reproduce x^{-b} f at the
    # composite-trapezoid order O(h^2)
    b, z = 1.0, 0.4 + 1.1j
    u = np.exp(z)
    prof = c2_bump(2.0, 4.0)
    sups = []
    for n in (801, 1601, 3201):
        x = np.linspace(1.0, 6.0, n)
        f = RadialFunction(x, prof(x), compact_support=True)
        g = x ** (-b) * apply_cusp_resolvent(f, b, z).values
        resid = (-fd_apply(x, g, 2) - fd_apply(x, g, 1) / x
                 + (b * b / x ** 2) * g - u * g - x ** (-b) * f.values)
        sups.append(np.max(np.abs(resid[4:-4])))
    order1 = np.log2(sups[0] / sups[1])
    order2 = np.log2(sups[1] / sups[2])
    assert order1 >= 1.8 and order2 >= 1.8
    assert sups[-1] < 1e-5


def test_kernel_symmetry_and_reduction():
    b, z = 1.3, 0.7 + 2.1j
    for x, t in [(1.5, 3.0), (2.2, 1.1), (4.0, 4.0)]:
        r_xt = complex(resolvent_kernel(b, z, x, t))
        r_tx = complex(resolvent_kernel(b, z, t, x))
        assert abs(r_xt - r_tx) <= 1e-13 * max(abs(r_xt), 1.0)
        rho = complex(reduced_kernel(b, z, x, t))
        assert rho == pytest.approx(-r_xt / np.sqrt(x * t), rel=1e-14)


@pytest.mark.parametrize("b,z,x,t", [
    (1.0, 0.4 + 1.1j, 2.0, 3.0),
    (0.5, 1.0 + 2.0j, 1.5, 1.5),
    (2.5, -0.3 + 3.1j, 4.0, 2.2),
    (0.0, 0.2 + 0.9j, 1.2, 5.0),
])
def test_reduced_kernel_vs_spectral_route(b, z, x, t):
    # fully independent route: numerical spectral-theorem integral
    direct = complex(reduced_kernel(b, z, x, t))
    spectral = spectral_route_kernel(b, z, x, t)
    assert abs(direct - spectral) <= 1e-5 * abs(direct)


@pytest.mark.parametrize("b,lam0,x,t", [
    (0.5, 2.0, 1.4, 2.2),
    (1.0, 1.21, 2.0, 2.0),
    (2.5, 3.5, 1.8, 3.0),
])
def test_limiting_absorption(b, lam0, x, t):
    eps = (0.1, 0.05, 0.025, 0.0125, 0.00625)
    rep = limiting_absorption_check(b, lam0, x, t, eps)
    assert rep.deviation <= 1e-6
    assert rep.conj_symmetry_defect <= 1e-12
    assert len(rep.jumps) == len(eps)


@pytest.mark.parametrize("b", [0.0, 1.0, 2.5])
def test_physical_sheet_pole_free(b):
    rect = (0.5, 3.5, 0.1, 2.0 * np.pi - 0.1)
    assert find_resolvent_poles(b, rect) == []


@pytest.mark.parametrize("b,rect,want", [
    (0.0, (1.2, 2.4, 11.8, 12.8), POLE_B0),
    (1.0, (2.2, 3.2, 11.9, 12.9), POLE_B1),
    (2.5, (0.6, 1.6, 9.9, 11.0), POLE_B25),
])
def test_lower_sheet_poles(b, rect, want):
    reports = find_resolvent_poles(b, rect)
    assert len(reports) == 1
    r = reports[0]
    assert abs(r.z - want) <= 1e-9
    assert r.residual <= 1e-12
    assert r.winding == 1
    # outgoing condition: continued square root in the lower half plane
    assert r.sqrt_u.imag < 0.0


def test_pole_winding_matches_count():
    # one rectangle holding both known b=2.5 zeros
    reports = find_resolvent_poles(2.5, (0.6, 1.6, 7.9, 11.0))
    assert len(reports) == 2
    assert sum(r.winding for r in reports) == 2


def test_kernel_pole_error_near_pole():
    with pytest.raises(PoleError):
        reduced_kernel(1.0, POLE_B1, 1.5, 2.0)


def test_apply_guards():
    x = np.linspace(1.0, 6.0, 200)
    f_noncompact = RadialFunction(x, np.exp(-x), weights=None)
    with pytest.raises(InputError):
        apply_cusp_resolvent(f_noncompact, 1.0, 0.4 + 1.1j)
    out = apply_cusp_resolvent(f_noncompact, 1.0, 0.4 + 1.1j,
                               allow_truncation=True)
    assert np.all(np.isfinite(out.values))
    # exp(Im(s) X) overflows the kernel split: refuse, don't produce junk
    f = RadialFunction(x, c2_bump(2.0, 4.0)(x), compact_support=True)
    with pytest.raises(AccuracyError):
        apply_cusp_resolvent(f, 1.0, 9.6 + 2.8j)
