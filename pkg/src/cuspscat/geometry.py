"""Geometry data for a generalized cusp end dx^2 + x^(-2a) h.

The cross-section is an (n-1)-manifold; on coclosed p-forms the radial
part of the Laplacian is controlled by the two constants

    gamma_p = a (n - 2p - 1),    b_p = (gamma_p + 1) / 2,

with the duality b_p + b_{n-p-1} = 1 and b_p - gamma_p = 1 - b_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


def geometry_constants(a, n, p):
    """Return (gamma_p, b_p) for warp exponent a, dimension n, degree p."""
    a = float(a)
    if a <= 0 or not np.isfinite(a):
        raise InputError("warp exponent a must be positive and finite")
    n = int(n)
    p = int(p)
    if n < 1:
        raise InputError("total dimension n must be >= 1")
    if not (0 <= p <= n):
        raise InputError("degree p must lie in [0, n]")
    gamma = a * (n - 2 * p - 1)
    return gamma, (gamma + 1.0) / 2.0


@dataclass(frozen=True)
class CuspGeometry:
    """A cusp end with warp exponent a, dimension n, working degree p.

    ``mu`` lists the nonzero cross-section eigenvalues feeding the
    non-harmonic modes (increasing); m_p and m_pm1 are the harmonic
    multiplicities dim H^p and dim H^{p-1} of the cross-section.
    """

    a: float
    n: int
    p: int
    mu: tuple = field(default=())
    m_p: int = 1
    m_pm1: int = 0

    def __post_init__(self):
        geometry_constants(self.a, self.n, self.p)  # validates a, n, p
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "mu", tuple(float(m) for m in self.mu))
        if any(m <= 0 for m in self.mu):
            raise InputError("mode eigenvalues mu must be positive")
        if list(self.mu) != sorted(self.mu):
            raise InputError("mode eigenvalues mu must be increasing")
        if self.m_p < 0 or self.m_pm1 < 0:
            raise InputError("multiplicities must be nonnegative")

    def gamma(self, q=None):
        q = self.p if q is None else q
        return self.a * (self.n - 2 * q - 1)

    def b(self, q=None):
        q = self.p if q is None else q
        return (self.gamma(q) + 1.0) / 2.0

    @property
    def nu(self):
        """Decay parameters sqrt(mu_i) of the non-harmonic modes."""
        return tuple(np.sqrt(m) for m in self.mu)
