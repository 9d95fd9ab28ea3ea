"""Points on the logarithmic cover of the punctured plane.

The spectral parameter z lives on the logarithmic cover: u = exp(z) and
sqrt(u) = exp(z/2), but Im(z) is never reduced modulo 2*pi.  Two points
whose z differ by 2*pi*i project to the same u while lying on adjacent
sheets; cylinder functions take different values there.  The sheet with
Im(z) in (0, 2*pi) is the physical one.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import InputError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class LogCoverPoint:
    """A point z on the logarithmic cover of C \\ {0}."""

    z: complex

    def __post_init__(self):
        zc = complex(self.z)
        if not (np.isfinite(zc.real) and np.isfinite(zc.imag)):
            raise InputError("cover point must be finite, got %r" % (self.z,))
        object.__setattr__(self, "z", zc)

    @property
    def u(self) -> complex:
        """The projection u = exp(z) to the punctured plane."""
        return cmath.exp(self.z)

    @property
    def sqrt_u(self) -> complex:
        """exp(z/2); the argument carried by the cover, collapsed to C."""
        return cmath.exp(self.z / 2.0)

    @property
    def sheet(self) -> int:
        """Index k with Im(z) in [2*pi*k, 2*pi*(k+1)); physical sheet is k=0."""
        return int(np.floor(self.z.imag / TWO_PI))

    def shift(self, sheets: int) -> "LogCoverPoint":
        """Move by `sheets` full turns; projects to the same u."""
        return LogCoverPoint(self.z + 2j * np.pi * sheets)

    def on_physical_sheet(self, margin: float = 0.0) -> bool:
        return margin < self.z.imag < TWO_PI - margin


def as_cover_z(z) -> complex:
    """Accept a LogCoverPoint or a plain complex number, return z."""
    if isinstance(z, LogCoverPoint):
        return z.z
    zc = complex(z)
    if not (np.isfinite(zc.real) and np.isfinite(zc.imag)):
        raise InputError("cover point must be finite, got %r" % (z,))
    return zc
