"""Stationary scattering matrices for a radial model with a cusp end.

The model manifold is a warped interval: a compact piece [x0, 1] with a
user-chosen positive warp (C^1-matched to the cusp at x = 1, optionally
carrying a symmetric channel coupling supported there) glued to the
exact generalized cusp [1, infinity).  Each harmonic sector reduces to
an m-channel half-line system

    u'' = -(gamma/a) (log w)' u' + [A(x) - e^z] u + V(x) u,

with A = 0 on the degree-p sector (order b_p) and
A = -gamma (log w)'' / a on the degree-(p-1) sector (order b_{p-1}-1).
On the cusp the two-dimensional solution space per channel is spanned
by f_k = x^we Hk~(z, x) built from the lifted Hankel functions; the
scattering matrix C is the outgoing (H1) coefficient block when the
incoming (H2) block is normalized to the identity.

Conventions that the checks rely on:
  * the cover coordinate is never reduced mod 2 pi i; functional
    equation checks evaluate on adjacent sheets explicitly;
  * conjugation pairs z with its plain conjugate zbar (the cover lift
    of the reflected spectral parameter), under which the lifted Hankel
    kinds swap;
  * coefficient extraction is invariant under right-multiplication of
    the solution frame, which QR renormalization at checkpoints
    exploits to keep the frame conditioned for complex z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as _si
from scipy import interpolate as _interp
from scipy import linalg as _sla

from .cover import TWO_PI, as_cover_z
from .errors import (AccuracyError, InputError, MatchingError, PoleError,
                     WindingError)
from .geometry import CuspGeometry
from .resolvent import PoleReport
from .special import hankel, hankel_deriv_x, validate_order
from .zeros import find_zeros

__all__ = [
    "PowerWarp",
    "SplineLogWarp",
    "ModelManifold",
    "SectorParams",
    "sector_params",
    "ScatteringMatrix",
    "EigenformExpansion",
    "default_matching_radius",
    "solve_generalized_eigenform",
    "scattering_matrix",
    "pure_cusp_coefficient",
    "dynamical_matrix",
    "check_unitarity",
    "UnitarityReport",
    "check_functional_equation",
    "FunctionalEquationReport",
    "check_hodge_commutation",
    "HodgeReport",
    "hodge_dual_model",
    "find_resonances",
    "resonance_residue",
    "ResidueReport",
    "tail_decay_check",
    "TailDecayReport",
]


class PowerWarp:
    """w(x) = x^{-a}: the cusp warp continued through the compact side."""

    is_power = True

    def __init__(self, a):
        self.a = float(a)

    def value(self, x):
        return np.asarray(x, dtype=float) ** (-self.a)

    def dlog(self, x):
        return -self.a / np.asarray(x, dtype=float)

    def dlog2(self, x):
        return self.a / np.asarray(x, dtype=float) ** 2


class SplineLogWarp:
    """log w interpolated by a cubic spline on [x0, 1].

    knots are (x_k, w_k) pairs with x_k in (x0, 1) and w_k > 0; the
    spline is clamped at x = 1 to value 0 and slope -a (the C^1 cusp
    match) and left-natural at the first knot.
    """

    is_power = False

    def __init__(self, knots, a, x0):
        a = float(a)
        x0 = float(x0)
        pts = sorted((float(x), float(w)) for x, w in knots)
        if not pts:
            raise InputError("spline warp needs at least one interior knot")
        if any(w <= 0 for _, w in pts):
            raise InputError("warp values must be positive")
        if pts[0][0] < x0 - 1e-12 or pts[-1][0] >= 1.0:
            raise InputError("warp knots must lie inside [x0, 1)")
        xs = [x for x, _ in pts] + [1.0]
        ys = [math.log(w) for _, w in pts] + [0.0]
        self.a = a
        self._spline = _interp.CubicSpline(xs, ys, bc_type=((2, 0.0), (1, -a)))
        self._d1 = self._spline.derivative(1)
        self._d2 = self._spline.derivative(2)

    def value(self, x):
        return np.exp(self._spline(x))

    def dlog(self, x):
        return self._d1(x)

    def dlog2(self, x):
        return self._d2(x)


def _check_coupling(fn, m, what):
    if fn is None:
        return
    for x in (1.0 + 1e-6, 1.5, 3.0):
        v = np.asarray(fn(x))
        if v.shape != (m, m):
            raise InputError("%s must map x to a %d x %d matrix" % (what, m, m))
        if np.max(np.abs(v)) > 1e-12:
            raise InputError("%s must be supported inside [x0, 1]" % what)
    for x in (0.999,):
        v = np.asarray(fn(x))
        if np.max(np.abs(v - v.T)) > 1e-10 * (1.0 + np.max(np.abs(v))):
            raise InputError("%s must be symmetric" % what)


@dataclass(frozen=True)
class ModelManifold:
    """Radial stand-in for a manifold with one generalized cusp end.

    x0 = 1 degenerates the compact piece to a pure boundary condition
    (the bare cusp).  interior_coupling acts on the degree-p harmonic
    channels (m_p of them), interior_coupling_beta on the degree-(p-1)
    channels; both must be real symmetric and supported in [x0, 1].
    """

    geometry: CuspGeometry
    x0: float = 1.0
    interior_warp: object = None
    interior_coupling: object = None
    interior_coupling_beta: object = None
    inner_bc: str = "Dirichlet"
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "x0", float(self.x0))
        if not 0.0 < self.x0 <= 1.0:
            raise InputError("inner radius x0 must lie in (0, 1]")
        if self.inner_bc not in ("Dirichlet", "Neumann"):
            raise InputError("inner_bc must be 'Dirichlet' or 'Neumann'")
        warp = self.interior_warp
        if warp is None:
            warp = PowerWarp(self.geometry.a)
            object.__setattr__(self, "interior_warp", warp)
        if abs(float(warp.value(1.0)) - 1.0) > 1e-8:
            raise InputError("interior warp must equal 1 at x = 1")
        if abs(float(warp.dlog(1.0)) + self.geometry.a) > 1e-8:
            raise InputError("interior warp must match the cusp slope -a at x = 1")
        _check_coupling(self.interior_coupling, self.geometry.m_p,
                        "interior_coupling")
        _check_coupling(self.interior_coupling_beta, self.geometry.m_pm1,
                        "interior_coupling_beta")


@dataclass(frozen=True)
class SectorParams:
    """Radial data of one harmonic sector (orders, weight, channels)."""

    name: str
    gamma: float
    weight: float
    order: float
    channels: int
    coupling: object
    curvature: bool


def sector_params(mm, sector):
    sector = str(sector).lower()
    geo = mm.geometry
    if sector == "alpha":
        if geo.m_p == 0:
            raise InputError("degree-p sector has no harmonic channels")
        return SectorParams("alpha", geo.gamma(geo.p), geo.b(geo.p),
                            validate_order(geo.b(geo.p)), geo.m_p,
                            mm.interior_coupling, False)
    if sector == "beta":
        if geo.m_pm1 == 0:
            raise InputError("degree-(p-1) sector has no harmonic channels")
        return SectorParams("beta", geo.gamma(geo.p - 1), geo.b(geo.p - 1),
                            validate_order(geo.b(geo.p - 1) - 1.0), geo.m_pm1,
                            mm.interior_coupling_beta, True)
    raise InputError("sector must be 'alpha' or 'beta'")


def _basis(order, weight, zc, x):
    """Values and x-derivatives of f_k = x^weight Hk~(z, x), k = 1, 2."""
    h1 = complex(hankel(1, order, zc, x))
    h2 = complex(hankel(2, order, zc, x))
    d1 = complex(hankel_deriv_x(1, order, zc, x))
    d2 = complex(hankel_deriv_x(2, order, zc, x))
    xw = x ** weight
    f1 = xw * h1
    f2 = xw * h2
    f1p = xw / x * (weight * h1 + x * d1)
    f2p = xw / x * (weight * h2 + x * d2)
    return f1, f2, f1p, f2p


def default_matching_radius(z):
    """Matching radius: asymptotic when affordable, capped for complex s.

    The target |s| X >= 30 is used on and near the real spectral axis;
    off it the one-sided shoot amplifies coefficient error like
    e^{2 |Im s| (X-1)}, so X is capped to keep that factor within the
    extraction budget.
    """
    s = np.exp(complex(as_cover_z(z)) / 2.0)
    x = 30.0 / abs(s)
    x = min(x, 1.0 + 4.2 / max(abs(s.imag), 1e-9))
    return float(min(max(x, 2.0), 240.0))


def _initial_frame(mm, m):
    if mm.inner_bc == "Dirichlet":
        return np.vstack([np.zeros((m, m)), np.eye(m)]).astype(complex)
    return np.vstack([np.eye(m), np.zeros((m, m))]).astype(complex)


def _integrate_frame(mm, sp, zc, x_match, keep_dense=False):
    """March the m-column solution frame from x0 to x_match.

    Returns (segments, end_frame, P) where every stored segment holds
    the frame flow Psi_k and the accumulated right factor P_k with
    U_true(x) = Psi_k(x) P_k; end_frame is QR-orthonormal with
    U_true(x_match) = end_frame @ P.
    """
    geo = mm.geometry
    a = geo.a
    m = sp.channels
    u_spec = np.exp(zc)
    warp = mm.interior_warp
    g_over_a = sp.gamma / a
    coupling = sp.coupling
    curvature = sp.curvature
    gamma = sp.gamma

    def rhs(x, y):
        U = y.reshape(2 * m, m)
        if x < 1.0:
            dl = float(warp.dlog(x))
            dl2 = float(warp.dlog2(x))
        else:
            dl = -a / x
            dl2 = a / (x * x)
        pot = -u_spec
        if curvature:
            pot = pot - gamma * dl2 / a
        top, bot = U[:m], U[m:]
        acc = (-g_over_a * dl) * bot + pot * top
        if coupling is not None and x < 1.0:
            acc = acc + np.asarray(coupling(x)) @ top
        return np.concatenate([bot, acc]).ravel()

    sigma = abs(np.imag(np.exp(zc / 2.0)))
    n_seg = int(min(64, max(4, math.ceil((x_match - 1.0) * max(sigma, 0.5)))))
    xs = list(np.linspace(1.0, x_match, n_seg + 1))
    if mm.x0 < 1.0:
        xs = [mm.x0] + xs

    frame = _initial_frame(mm, m)
    P = np.eye(m, dtype=complex)
    segments = []
    for x_lo, x_hi in zip(xs[:-1], xs[1:]):
        sol = _si.solve_ivp(rhs, (x_lo, x_hi), frame.ravel(), method="DOP853",
                            rtol=1e-12, atol=1e-14, dense_output=keep_dense)
        if not sol.success:
            raise AccuracyError("frame integration failed on [%g, %g]: %s"
                                % (x_lo, x_hi, sol.message))
        end = sol.y[:, -1].reshape(2 * m, m)
        if keep_dense:
            segments.append((x_lo, x_hi, sol.sol, P))
        q, r = np.linalg.qr(end)
        if np.min(np.abs(np.diag(r))) < 1e-280:
            raise AccuracyError("solution frame degenerated during the march")
        frame = q
        P = r @ P
    return segments, frame, P


def _extract_blocks(sp, zc, x, frame):
    """Wronskian pairing of a frame against (f1, f2) at radius x."""
    m = sp.channels
    f1, f2, f1p, f2p = _basis(sp.order, sp.weight, zc, x)
    wr = f1 * f2p - f1p * f2
    if abs(wr) < 1e-280:
        raise MatchingError("basis Wronskian vanished at the matching radius")
    U, Up = frame[:m], frame[m:]
    A = (U * f2p - Up * f2) / wr
    B = -(U * f1p - Up * f1) / wr
    return A, B


def _solve_sector(mm, sp, zc, x_match, keep_dense=False):
    if x_match <= 1.05:
        raise MatchingError("matching radius must clear the coupling support "
                            "and the cusp collar")
    segments, end_frame, P = _integrate_frame(mm, sp, zc, x_match, keep_dense)
    A, B = _extract_blocks(sp, zc, x_match, end_frame)
    sv = np.linalg.svd(B, compute_uv=False)
    if sv[-1] < 1e-12 * max(sv[0], 1e-300):
        raise PoleError("incoming coefficient block is singular: z sits at "
                        "or near a resonance", nearest=complex(zc))
    C = A @ np.linalg.inv(B)
    return C, A, B, segments, P


@dataclass(frozen=True)
class ScatteringMatrix:
    """Outgoing coefficient matrix at cover point z for one sector."""

    z: complex
    p: int
    C: np.ndarray
    sector: str


def scattering_matrix(mm, z, sector="alpha", x_match=None):
    """The m x m stationary scattering matrix; cached by (z, sector)."""
    zc = complex(as_cover_z(z))
    sp = sector_params(mm, sector)
    xm = default_matching_radius(zc) if x_match is None else float(x_match)
    key = (sp.name, round(zc.real, 12), round(zc.imag, 12), round(xm, 9))
    hit = mm.cache.get(key)
    if hit is not None:
        return hit
    C, _, _, _, _ = _solve_sector(mm, sp, zc, xm)
    out = ScatteringMatrix(z=zc, p=mm.geometry.p, C=C, sector=sp.name)
    mm.cache[key] = out
    return out


@dataclass
class EigenformExpansion:
    """One generalized eigenform column in the (H2, H1) cusp basis.

    incoming is the identity by normalization; outgoing is the full C
    block, with `column` marking the basis vector this expansion
    excites.  evaluate() reconstructs the channel values (and
    derivatives) anywhere in [x0, x_match].
    """

    incoming: np.ndarray
    outgoing: np.ndarray
    x_match: float
    column: int
    tail_constant: float = None
    tail_rate: float = None
    _segments: list = field(default_factory=list, repr=False)
    _multipliers: list = field(default_factory=list, repr=False)

    @property
    def outgoing_column(self):
        return self.outgoing[:, self.column]

    def evaluate(self, x, deriv=False):
        x = float(x)
        for (x_lo, x_hi, flow, _), mult in zip(self._segments, self._multipliers):
            if x_lo - 1e-12 <= x <= x_hi + 1e-12:
                m = mult.shape[0]
                full = flow(min(max(x, x_lo), x_hi)).reshape(2 * m, m) @ mult
                block = full[m:, self.column] if deriv else full[:m, self.column]
                return block
        raise InputError("x = %g outside the integrated range" % x)


def solve_generalized_eigenform(mm, z, column, sector="alpha", x_match=None):
    """Eigenform normalized to unit incoming coefficient on `column`."""
    zc = complex(as_cover_z(z))
    sp = sector_params(mm, sector)
    if not 0 <= int(column) < sp.channels:
        raise InputError("column must index a harmonic channel")
    xm = default_matching_radius(zc) if x_match is None else float(x_match)
    C, A, B, segments, P = _solve_sector(mm, sp, zc, xm, keep_dense=True)
    b_inv = np.linalg.inv(B)
    p_inv = np.linalg.inv(P)
    mults = [seg[3] @ p_inv @ b_inv for seg in segments]
    return EigenformExpansion(
        incoming=np.eye(sp.channels), outgoing=C, x_match=xm,
        column=int(column), _segments=segments, _multipliers=mults)


def pure_cusp_coefficient(mm, z, sector="alpha"):
    """Closed-form scalar C for the uncoupled model (V = 0, power warp).

    The inner-boundary solution is a fixed combination of f1 and f2, so
    C = -f2(x0)/f1(x0) (Dirichlet) or -f2'(x0)/f1'(x0) (Neumann), the
    same value in every channel.
    """
    zc = complex(as_cover_z(z))
    sp = sector_params(mm, sector)
    f1, f2, f1p, f2p = _basis(sp.order, sp.weight, zc, mm.x0)
    if mm.inner_bc == "Dirichlet":
        return -f2 / f1
    return -f2p / f1p


def dynamical_matrix(mm, z, x_match=None):
    """Block-diagonal dynamical matrix over the two harmonic sectors.

    Each block is -H1~(z, 1)/H2~(z, 1) (at the sector order) times the
    sector's stationary matrix; sectors with no channels are omitted.
    """
    zc = complex(as_cover_z(z))
    blocks = []
    geo = mm.geometry
    for name, channels in (("alpha", geo.m_p), ("beta", geo.m_pm1)):
        if channels == 0:
            continue
        sp = sector_params(mm, name)
        C = scattering_matrix(mm, zc, name, x_match=x_match).C
        h1 = complex(hankel(1, sp.order, zc, 1.0))
        h2 = complex(hankel(2, sp.order, zc, 1.0))
        blocks.append(-(h1 / h2) * C)
    if not blocks:
        raise InputError("model has no harmonic channels in either sector")
    return _sla.block_diag(*blocks)


@dataclass(frozen=True)
class UnitarityReport:
    """Defects of the adjoint and conjugation identities at (z, zbar)."""

    z: complex
    adjoint_defect: float
    conjugation_defect: float


def check_unitarity(mm, z, sector="alpha", x_match=None):
    """Defects of C*_{zbar} C_z = I and conj(C_{zbar}) C_z = I.

    zbar is the plain conjugate of the cover coordinate; for real z the
    two identities coincide with unitarity and symmetry of C.
    """
    zc = complex(as_cover_z(z))
    C_z = scattering_matrix(mm, zc, sector, x_match=x_match).C
    C_b = scattering_matrix(mm, np.conj(zc), sector, x_match=x_match).C
    eye = np.eye(C_z.shape[0])
    return UnitarityReport(
        z=zc,
        adjoint_defect=float(np.linalg.norm(C_b.conj().T @ C_z - eye, 2)),
        conjugation_defect=float(np.linalg.norm(C_b.conj() @ C_z - eye, 2)))


@dataclass(frozen=True)
class FunctionalEquationReport:
    """Defect of ((1 + e^{2 pi i nu}) I - C_z) C_{z - 2 pi i} = e^{2 pi i nu} I."""

    z: complex
    phase: complex
    defect: float
    cylinder_defect: float


def check_functional_equation(mm, z, sector="alpha", x_match=None):
    """Cross-sheet functional equation; adds the cylinder form when

    the sector phase e^{2 pi i nu} is -1 (middle-degree b = 1/2), where
    the relation collapses to C_z C_{z - 2 pi i} = I.
    """
    zc = complex(as_cover_z(z))
    sp = sector_params(mm, sector)
    C0 = scattering_matrix(mm, zc, sector, x_match=x_match).C
    C1 = scattering_matrix(mm, zc - 1j * TWO_PI, sector, x_match=x_match).C
    eye = np.eye(C0.shape[0])
    phase = np.exp(2j * np.pi * sp.order)
    defect = float(np.linalg.norm(((1.0 + phase) * eye - C0) @ C1 - phase * eye, 2))
    cylinder = float("nan")
    if abs(phase + 1.0) < 1e-10:
        cylinder = float(np.linalg.norm(C0 @ C1 - eye, 2))
    return FunctionalEquationReport(z=zc, phase=complex(phase), defect=defect,
                                    cylinder_defect=cylinder)


@dataclass(frozen=True)
class HodgeReport:
    """Defect of S C_p(z) = e^{2 pi i b_p} C_dual(z) S."""

    z: complex
    phase: complex
    defect: float


def hodge_dual_model(mm, star=None):
    """The degree-(n-p) model whose beta sector pairs with mm's alpha.

    The pairing multiplier w^{gamma_p/a} maps Dirichlet data to
    Dirichlet data, so only Dirichlet inner conditions transport; the
    coupling conjugates by the orthogonal star matrix.
    """
    if mm.inner_bc != "Dirichlet":
        raise InputError("only Dirichlet models transport to the dual degree")
    geo = mm.geometry
    dual_geo = CuspGeometry(geo.a, geo.n, geo.n - geo.p, mu=geo.mu,
                            m_p=0, m_pm1=geo.m_p)
    coupling = mm.interior_coupling
    if coupling is None:
        beta = None
    elif star is None:
        beta = coupling
    else:
        S = np.asarray(star, dtype=float)
        beta = lambda x, _c=coupling, _S=S: _S @ np.asarray(_c(x)) @ _S.T
    return ModelManifold(dual_geo, mm.x0, mm.interior_warp,
                         interior_coupling=None, interior_coupling_beta=beta,
                         inner_bc="Dirichlet")


def check_hodge_commutation(mm_p, mm_dual, z, star=None, x_match=None):
    """Hodge commutation between the degree-p alpha sector and the dual.

    mm_dual must be the degree-(n-p) model with the star-conjugated
    coupling (see hodge_dual_model); its beta sector carries order
    b_{n-p-1} - 1 = -b_p.  Defect of S C_p - e^{2 pi i b_p} C_dual S.
    """
    geo = mm_p.geometry
    if geo.p > (geo.n - 1) / 2.0:
        raise InputError("Hodge check needs p <= (n-1)/2")
    dual = mm_dual.geometry
    if (dual.n != geo.n or dual.p != geo.n - geo.p
            or abs(dual.a - geo.a) > 1e-15):
        raise InputError("dual model must share (a, n) and have degree n - p")
    zc = complex(as_cover_z(z))
    C_p = scattering_matrix(mm_p, zc, "alpha", x_match=x_match).C
    C_d = scattering_matrix(mm_dual, zc, "beta", x_match=x_match).C
    m = C_p.shape[0]
    S = np.eye(m) if star is None else np.asarray(star, dtype=float)
    if S.shape != (m, m) or np.linalg.norm(S.T @ S - np.eye(m), 2) > 1e-10:
        raise InputError("star must be an orthogonal matrix on the channels")
    phase = np.exp(2j * np.pi * geo.b(geo.p))
    defect = float(np.linalg.norm(S @ C_p - phase * (C_d @ S), 2))
    return HodgeReport(z=zc, phase=complex(phase), defect=defect)


def find_resonances(mm, region, sector="alpha"):
    """Zeros of det B(z) in a cover rectangle (re0, re1, im0, im1).

    B is the incoming coefficient block with the QR right factor folded
    back in, so det B is analytic and its zeros are the resonances; the
    matching radius is frozen over the region to keep analyticity.
    """
    sp = sector_params(mm, sector)
    re0, re1, im0, im1 = (float(v) for v in region)
    corners = [complex(re0, im0), complex(re1, im0),
               complex(re0, im1), complex(re1, im1),
               complex(0.5 * (re0 + re1), 0.5 * (im0 + im1))]
    xm = min(default_matching_radius(c) for c in corners)

    def fn(z):
        _, end_frame, P = _integrate_frame(mm, sp, complex(z), xm)
        _, B = _extract_blocks(sp, complex(z), xm, end_frame)
        return complex(np.linalg.det(B @ P))

    try:
        hits = find_zeros(fn, region)
    except WindingError as exc:
        exc.partial = tuple(
            PoleReport(h["z"], h["residual"], h["iters"], h["multiplicity"])
            for h in exc.partial)
        raise
    reports = [PoleReport(h["z"], h["residual"], h["iters"], h["multiplicity"])
               for h in hits]
    return sorted(reports, key=lambda r: (r.z.real, r.z.imag))


@dataclass(frozen=True)
class ResidueReport:
    """Contour residue of C at a resonance and its singular values."""

    z: complex
    residue: np.ndarray
    singular_values: np.ndarray

    @property
    def rank_ratio(self):
        sv = self.singular_values
        if sv.size < 2 or sv[0] == 0.0:
            return 0.0
        return float(sv[1] / sv[0])


def resonance_residue(mm, z0, sector="alpha", radius=0.08, n_points=32):
    """Residue of z -> C(z) at a simple resonance by a trapezoid contour.

    Keep the radius well under the distance to the nearest other
    resonance: trapezoid leakage from a neighbor at distance d decays
    like (radius/d)^n_points and pollutes the small singular values.
    """
    z0 = complex(as_cover_z(z0))
    sp = sector_params(mm, sector)
    xm = default_matching_radius(z0)
    theta = 2.0 * np.pi * np.arange(int(n_points)) / int(n_points)
    acc = np.zeros((sp.channels, sp.channels), dtype=complex)
    for t in theta:
        w = np.exp(1j * t)
        C, _, _, _, _ = _solve_sector(mm, sp, z0 + radius * w, xm)
        acc += C * w
    residue = acc * (radius / int(n_points))
    sv = np.linalg.svd(residue, compute_uv=False)
    return ResidueReport(z=z0, residue=residue, singular_values=sv)


@dataclass(frozen=True)
class TailDecayReport:
    """Fitted decay of the non-harmonic component of an eigenform."""

    kappa: float
    kappa_required: float
    prefactor_power: float
    window: tuple
    passed: bool
    trivial: bool
    max_component: float


def _smoothstep(t):
    t = np.clip(t, 0.0, 1.0)
    return t ** 3 * (10.0 + t * (6.0 * t - 15.0))


def tail_decay_check(mm, z, mode_coupling=None, x_end=None,
                     nodes_per_unit=220, window=(0.5, 0.95)):
    """Excite the first non-harmonic mode and fit its cusp decay rate.

    Solves the (m+1)-channel boundary value problem for the remainder
    psi = E - omega, omega = chi(x) f2 e_0 a cutoff incoming wave in
    harmonic channel 0, with outgoing Robin conditions on the harmonic
    channels and Dirichlet on the mode channel at x_end.  The source is
    the discrete operator applied to omega, so E solves the discrete
    eigenform equation exactly.  The mode magnitude is then fitted as
    x^{b_{p-1} - 1/2} e^{-kappa x^{a+1}}; the pass bar is
    kappa >= 0.95 nu_1/(a+1).

    mode_coupling optionally maps x to the length-m vector coupling the
    harmonic channels to the mode, supported in [x0, 1]; with no
    coupling the mode block is decoupled and the report is a flagged
    trivial pass (the component vanishes identically).
    """
    geo = mm.geometry
    if not geo.mu:
        raise InputError("geometry carries no nonzero cross-section eigenvalue")
    sp = sector_params(mm, "alpha")
    zc = complex(as_cover_z(z))
    u_spec = np.exp(zc)
    a = geo.a
    nu1 = math.sqrt(geo.mu[0])
    rate = nu1 / (a + 1.0)
    required = 0.95 * rate
    prefactor = geo.b(geo.p - 1) - 0.5
    if x_end is None:
        x_end = ((a + 1.0) * 30.0 / nu1) ** (1.0 / (a + 1.0))
        x_end = float(min(max(x_end, 5.0), 14.0))
    m = sp.channels
    nch = m + 1
    n_nodes = max(600, int(round((x_end - mm.x0) * nodes_per_unit))) + 1
    xs = np.linspace(mm.x0, x_end, n_nodes)
    h = xs[1] - xs[0]
    warp = mm.interior_warp

    if mode_coupling is not None:
        for probe in (1.0 + 1e-6, 1.5):
            g = np.asarray(mode_coupling(probe), dtype=float)
            if g.shape != (m,):
                raise InputError("mode_coupling must map x to a length-m vector")
            if np.max(np.abs(g)) > 1e-12:
                raise InputError("mode_coupling must be supported inside [x0, 1]")

    def dlog_at(x):
        return float(warp.dlog(x)) if x < 1.0 else -a / x

    def warp_at(x):
        return float(warp.value(x)) if x < 1.0 else x ** (-a)

    # incoming cutoff wave in harmonic channel 0
    chi_lo, chi_hi = 1.05, 1.45
    omega = np.zeros(nch * n_nodes, dtype=complex)
    for i, x in enumerate(xs):
        if x <= chi_lo:
            continue
        f2 = _basis(sp.order, sp.weight, zc, float(x))[1]
        omega[i * nch] = _smoothstep((x - chi_lo) / (chi_hi - chi_lo)) * f2

    size = nch * n_nodes
    half = 2 * nch
    ab = np.zeros((2 * half + 1, size), dtype=complex)
    rhs = np.zeros(size, dtype=complex)

    def add(r, c, v):
        ab[half + r - c, c] += v

    f1X, _, f1pX, _ = _basis(sp.order, sp.weight, zc, float(x_end))
    robin = f1pX / f1X

    for i, x in enumerate(xs):
        base = i * nch
        if i == 0:
            for c in range(nch):
                if mm.inner_bc == "Dirichlet":
                    add(base + c, base + c, 1.0)
                else:
                    add(base + c, base + c, -3.0 / (2.0 * h))
                    add(base + c, base + nch + c, 4.0 / (2.0 * h))
                    add(base + c, base + 2 * nch + c, -1.0 / (2.0 * h))
            continue
        if i == n_nodes - 1:
            for c in range(m):
                add(base + c, base + c, 3.0 / (2.0 * h) - robin)
                add(base + c, base - nch + c, -4.0 / (2.0 * h))
                add(base + c, base - 2 * nch + c, 1.0 / (2.0 * h))
            add(base + m, base + m, 1.0)
            continue
        x = float(x)
        dl = dlog_at(x)
        drift = (sp.gamma / a) * dl
        if mm.interior_coupling is not None and x < 1.0:
            vblock = np.asarray(mm.interior_coupling(x), dtype=float)
        else:
            vblock = None
        if mode_coupling is not None and x < 1.0:
            gvec = np.asarray(mode_coupling(x), dtype=float)
        else:
            gvec = None
        mode_pot = geo.mu[0] * warp_at(x) ** (-2.0)
        for c in range(nch):
            r = base + c
            add(r, r - nch, 1.0 / h ** 2 - drift / (2.0 * h))
            add(r, r + nch, 1.0 / h ** 2 + drift / (2.0 * h))
            diag = -2.0 / h ** 2 + u_spec
            if c == m:
                diag -= mode_pot
            add(r, r, diag)
            if vblock is not None and c < m:
                for d in range(m):
                    add(r, base + d, -vblock[c, d])
            if gvec is not None:
                if c < m:
                    add(r, base + m, -gvec[c])
                else:
                    for d in range(m):
                        add(r, base + d, -gvec[d])

    # source: minus the assembled interior rows applied to omega
    interior = np.ones(size, dtype=bool)
    interior[:nch] = False
    interior[-nch:] = False
    for c_idx in range(size):
        col = ab[:, c_idx]
        nz = np.nonzero(col)[0]
        for band_idx in nz:
            r_idx = band_idx - half + c_idx
            if 0 <= r_idx < size and interior[r_idx]:
                rhs[r_idx] -= col[band_idx] * omega[c_idx]

    if mode_coupling is None:
        trivial = True
        mode_vals = np.zeros(n_nodes)
    else:
        psi = _sla.solve_banded((half, half), ab, rhs)
        trivial = False
        mode_vals = np.abs(psi[m::nch])

    w_lo = max(1.6, window[0] * x_end)
    w_hi = window[1] * x_end
    sel = (xs >= w_lo) & (xs <= w_hi)
    peak = float(np.max(mode_vals[sel])) if np.any(sel) else 0.0
    if trivial or peak < 1e-280:
        return TailDecayReport(kappa=float("inf"), kappa_required=required,
                               prefactor_power=prefactor, window=(w_lo, w_hi),
                               passed=True, trivial=True, max_component=peak)
    ys = np.log(mode_vals[sel]) - prefactor * np.log(xs[sel])
    slope = np.polyfit(xs[sel] ** (a + 1.0), ys, 1)[0]
    kappa = -float(slope)
    return TailDecayReport(kappa=kappa, kappa_required=required,
                           prefactor_power=prefactor, window=(w_lo, w_hi),
                           passed=bool(kappa >= required), trivial=False,
                           max_component=peak)
