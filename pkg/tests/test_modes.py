"""Non-harmonic mode systems: closed-form rates, spectra, Perron fits."""

import numpy as np
import pytest

from cuspscat.errors import InputError
from cuspscat.geometry import CuspGeometry
from cuspscat.modes import (ModeSystem, assemble_mode_operator,
                            discrete_spectrum, effective_potentials,
                            f_matrix_diagonalizer, f_matrix_eigenvalues,
                            first_order_matrix, perron_decay_check)

GEO = CuspGeometry(1.0, 3, 1, mu=(1.0,))


def _greedy_match_defect(analytic, dense):
    dense = list(dense)
    worst = 0.0
    for v in analytic:
        k = int(np.argmin([abs(v - d) for d in dense]))
        worst = max(worst, abs(v - dense.pop(k)))
    return worst


def test_rate_eigenvalues_match_dense_solver():
    rng = np.random.default_rng(20240817)
    scalepool = (0.3, 1.0, 7.0)
    for trial in range(200):
        s = scalepool[trial % 3]
        P = complex(rng.normal(scale=s), rng.normal(scale=s))
        R = complex(rng.normal(scale=s), rng.normal(scale=s))
        q = float(rng.normal(scale=s))
        rates = f_matrix_eigenvalues(P, R, q)
        dense = np.linalg.eigvals(first_order_matrix(P, R, q))
        assert len(rates) == 4
        scale = max(1.0, max(abs(r) for r in rates))
        assert _greedy_match_defect(rates, dense) <= 1e-12 * scale


def test_rate_diagonalizer_columns():
    rng = np.random.default_rng(7)
    cases = [(complex(rng.normal(), rng.normal()),
              complex(rng.normal(), rng.normal()),
              float(rng.normal())) for _ in range(20)]
    cases.append((1.7 + 0.3j, -0.4 + 1.1j, 0.0))  # decoupled limit
    for P, R, q in cases:
        S, rates = f_matrix_diagonalizer(P, R, q)
        F = first_order_matrix(P, R, q)
        defect = np.max(np.abs(F @ S - S @ np.diag(rates)))
        assert defect <= 1e-10 * max(1.0, np.max(np.abs(F)))
        assert abs(np.linalg.det(S)) > 1e-12  # genuinely diagonalizing


def test_effective_potentials_enter_as_shift():
    P1, R1, q1 = effective_potentials(
        ModeSystem.uniform(GEO, 1.5, "V", 8.0, n_points=101), 2.0, 0.0 + 1j)
    P2, R2, q2 = effective_potentials(
        ModeSystem.uniform(GEO, 1.5, "V", 8.0, n_points=101), 2.0, 0.3 + 1j)
    du = np.exp(0.3 + 1j) - np.exp(0.0 + 1j)
    assert P1 - P2 == pytest.approx(du, rel=1e-12)
    assert R1 - R2 == pytest.approx(du, rel=1e-12)
    assert q1 == q2


def test_spectrum_stable_under_domain_doubling():
    # identical grid step on both domains, so the finite-difference bias
    # cancels exactly and the comparison isolates the truncation error
    vals = {}
    for x_max, n in ((30.0, 29 * 64 + 1), (60.0, 59 * 64 + 1)):
        ms = ModeSystem.uniform(GEO, 1.5, "V", x_max, n_points=n)
        vals[x_max] = np.array(discrete_spectrum(ms, 4))
    assert np.max(np.abs(vals[30.0] - vals[60.0])) <= 1e-8


def test_spectrum_richardson_errors_reported():
    ms = ModeSystem.uniform(GEO, 1.5, "V", 12.0, n_points=801)
    vals, errs = discrete_spectrum(ms, 3, with_errors=True)
    assert len(vals) == len(errs) == 3
    assert np.all(np.diff(vals) > 0)
    assert np.all(np.asarray(errs) >= 0)


@pytest.mark.parametrize("a,nu", [(0.5, 1.0), (1.0, 2.0), (2.0, 1.0)])
def test_perron_rates(a, nu):
    geo = CuspGeometry(a, 3, 1, mu=(1.0,))
    ms = ModeSystem.uniform(geo, nu, "V", 18.0, n_points=1601)
    rep = perron_decay_check(ms, complex(np.log(2.0)))
    assert rep.nu == pytest.approx(nu)
    assert rep.growth_deviation <= 0.02
    assert rep.decay_deviation <= 0.02
    assert np.all(np.isfinite(rep.growth_log_norms))
    assert np.all(np.isfinite(rep.decay_log_norms))


def test_spectrum_lower_bound_ladder():
    # lam_min >= nu^2 - k' nu with one ladder-wide constant; here the
    # mode potential never dips below nu^2, so k' = 0 certifies it
    lam_min = {}
    for nu in (1.0, 2.0, 4.0, 8.0, 16.0):
        ms = ModeSystem.uniform(GEO, nu, "V", 6.0, n_points=3201)
        lam_min[nu] = discrete_spectrum(ms, 1)[0]
    k_prime = max(0.0, max((nu * nu - lam) / nu for nu, lam in lam_min.items()))
    assert np.isfinite(k_prime)
    for nu, lam in lam_min.items():
        assert lam >= nu * nu - k_prime * nu - 1e-9


def test_mode_operator_band_structure():
    ms = ModeSystem.uniform(GEO, 1.5, "V", 10.0, n_points=401)
    op = assemble_mode_operator(ms)
    assert op.band.ndim == 2
    assert np.all(np.isfinite(op.band))
    with pytest.raises(InputError):
        assemble_mode_operator(ms, z_shift=0.4 + 1.0j)


def test_mode_system_guards():
    with pytest.raises(InputError):
        ModeSystem.uniform(GEO, 1.5, "alpha", 10.0, n_points=101)
    with pytest.raises(InputError):
        ModeSystem.uniform(GEO, -2.0, "V", 10.0, n_points=101)
