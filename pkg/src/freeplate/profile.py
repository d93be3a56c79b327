"""Radial part of the trial function built from the ball's fundamental mode."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .special_functions import UltraIndex, ultra_i, ultra_j

__all__ = ["RadialProfile"]


@lru_cache(maxsize=256)
def _edge_values(p):
    return float(p._inside(0, 1.0)), float(p._inside(1, 1.0))


@dataclass(frozen=True)
class RadialProfile:
    """rho(r) = j_1(a r) + gamma i_1(b r) on [0, 1], extended linearly past r = 1.

    All evaluators accept scalars or arrays of r >= 0.
    """

    d: int
    tau: float
    a: float
    b: float
    gamma: float

    @property
    def _idx(self) -> UltraIndex:
        return UltraIndex(self.d, 1)

    def _inside(self, m, r):
        idx = self._idx
        return self.a**m * ultra_j(idx, m, self.a * r) + self.gamma * self.b**m * ultra_i(idx, m, self.b * r)

    def _edge(self):
        return _edge_values(self)

    def _split(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r < 0):
            raise ValueError("radius must be nonnegative")
        return r, np.minimum(r, 1.0), r > 1.0

    def rho(self, r):
        if np.ndim(r) == 0 and r >= 0:
            return self._scalar_parts(float(r))[0]
        r, rin, out = self._split(r)
        val = np.asarray(self._inside(0, rin))
        if np.any(out):
            r1, d1 = self._edge()
            val = np.where(out, r1 + (r - 1.0) * d1, val)
        return val[()] if val.ndim == 0 else val

    def drho(self, r):
        if np.ndim(r) == 0 and r >= 0:
            return self._scalar_parts(float(r))[1]
        r, rin, out = self._split(r)
        val = np.asarray(self._inside(1, rin))
        # for r > 1 the clamp already gives rho'(1)
        return val[()] if val.ndim == 0 else val

    def d2rho(self, r):
        if np.ndim(r) == 0 and r >= 0:
            return self._scalar_parts(float(r))[2]
        r, rin, out = self._split(r)
        val = np.where(out, 0.0, self._inside(2, rin))
        return val[()] if val.ndim == 0 else val

    @property
    def slope_at_zero(self) -> float:
        """rho'(0), also the limit of rho(r)/r at 0."""
        return float(self._inside(1, 0.0))

    def rho_over_r(self, r):
        if np.ndim(r) == 0 and r >= 0:
            return self._scalar_parts(float(r))[4]
        r = np.asarray(r, dtype=float)
        safe = np.where(r > 0, r, 1.0)
        val = np.where(r > 0, self.rho(safe) / safe, self.slope_at_zero)
        return val[()] if val.ndim == 0 else val

    def inner(self, r):
        """(rho - r rho') / r**2, evaluated without cancellation.

        Inside the ball this uses the three-term recurrences to rewrite the
        quotient as (a^2 (j_1 + j_3)(a r) + gamma b^2 (i_3 - i_1)(b r)) / (d + 2).
        Past r = 1 the numerator is the constant rho(1) - rho'(1).
        """
        r, rin, out = self._split(r)
        j3 = UltraIndex(self.d, 3)
        idx = self._idx
        a, b = self.a, self.b
        val = (
            a * a * (ultra_j(idx, 0, a * rin) + ultra_j(j3, 0, a * rin))
            + self.gamma * b * b * (ultra_i(j3, 0, b * rin) - ultra_i(idx, 0, b * rin))
        ) / (self.d + 2)
        val = np.asarray(val)
        if np.any(out):
            r1, d1 = self._edge()
            val = np.where(out, (r1 - d1) / np.where(out, r, 1.0) ** 2, val)
        return val[()] if val.ndim == 0 else val

    def inner_direct(self, r):
        """(rho - r rho') / r**2 straight from the definition (r > 0)."""
        r = np.asarray(r, dtype=float)
        return (self.rho(r) - r * self.drho(r)) / r**2

    def _scalar_parts(self, r: float):
        # (rho, rho', rho'', inner, rho/r) at one radius, plain floats
        if r > 1.0:
            r1, d1 = self._edge()
            return r1 + (r - 1) * d1, d1, 0.0, (r1 - d1) / (r * r), (r1 + (r - 1) * d1) / r
        idx, j3 = self._idx, UltraIndex(self.d, 3)
        a, b, g = self.a, self.b, self.gamma
        za, zb = a * r, b * r
        j0, i0 = ultra_j(idx, 0, za), ultra_i(idx, 0, zb)
        rho = j0 + g * i0
        d1 = a * ultra_j(idx, 1, za) + g * b * ultra_i(idx, 1, zb)
        d2 = a * a * ultra_j(idx, 2, za) + g * b * b * ultra_i(idx, 2, zb)
        inner = (a * a * (j0 + ultra_j(j3, 0, za)) + g * b * b * (ultra_i(j3, 0, zb) - i0)) / (self.d + 2)
        return rho, d1, d2, inner, (rho / r if r > 0 else d1)

    def N(self, r, tau: float | None = None):
        """Numerator density (rho'')^2 + 3(d-1) inner^2 + tau rho'^2 + tau (d-1) (rho/r)^2."""
        t = self.tau if tau is None else tau
        d = self.d
        if np.ndim(r) == 0:
            if r < 0:
                raise ValueError("radius must be nonnegative")
            _, d1, d2, inner, ror = self._scalar_parts(float(r))
            return d2 * d2 + 3 * (d - 1) * inner * inner + t * d1 * d1 + t * (d - 1) * ror * ror
        return (
            self.d2rho(r) ** 2
            + 3 * (d - 1) * self.inner(r) ** 2
            + t * self.drho(r) ** 2
            + t * (d - 1) * self.rho_over_r(r) ** 2
        )
