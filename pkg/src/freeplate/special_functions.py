"""Ultraspherical Bessel functions j_l, i_l and their derivatives.

For dimension ``d >= 2`` and order ``l >= 0`` with ``s = (d - 2) / 2``::

    j_l(z) = z**-s * J_{s+l}(z),      i_l(z) = z**-s * I_{s+l}(z)

Both are evaluated from their power series; derivatives up to fourth order
are obtained by differentiating the series term by term, so the classical
recurrences (see :func:`recurrence_residuals`) remain an independent check.
Note that for ``d = 3`` these differ from the textbook spherical Bessel
functions by a factor ``sqrt(2/pi)``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass, field

import numpy as np

from .errors import BracketNotFoundError, ConvergenceError, DomainError
from .numerics_core import bracket_roots, refine_root

__all__ = [
    "UltraIndex",
    "SeriesPolicy",
    "DEFAULT_POLICY",
    "gamma_half_integer",
    "ultra_j",
    "ultra_i",
    "first_deriv_zero",
    "RecurrenceResiduals",
    "recurrence_residuals",
]


@dataclass(frozen=True)
class UltraIndex:
    """Dimension ``d`` and angular order ``l`` of a Bessel family."""

    d: int
    l: int
    s: float = field(init=False)

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.d}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"order must be an integer >= 0, got {self.l}")
        object.__setattr__(self, "s", (self.d - 2) / 2)


@dataclass(frozen=True)
class SeriesPolicy:
    rel_tol: float = 1e-15
    max_terms: int = 400
    z_max: float = 200.0

    def __post_init__(self):
        if not 0 < self.rel_tol < 1e-6:
            raise DomainError("rel_tol must lie in (0, 1e-6)")
        if self.max_terms < 50:
            raise DomainError("max_terms must be >= 50")


DEFAULT_POLICY = SeriesPolicy()


@lru_cache(maxsize=4096)
def gamma_half_integer(x: float) -> float:
    """Gamma(x) for positive integer or half-integer ``x`` by upward recursion."""
    twice = 2 * x
    if twice <= 0 or abs(twice - round(twice)) > 1e-12:
        raise DomainError(f"gamma_half_integer needs a positive (half-)integer, got {x}")
    twice = int(round(twice))
    if twice % 2 == 0:
        g, t = 1.0, 1.0          # Gamma(1)
    else:
        g, t = math.sqrt(math.pi), 0.5
    while t < x - 1e-12:
        g *= t
        t += 1.0
    return g


def _falling(p: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= p - i
    return out


def _series(idx: UltraIndex, m: int, z, alternating: bool, policy: SeriesPolicy):
    if m not in (0, 1, 2, 3, 4):
        raise DomainError(f"derivative order must be 0..4, got {m}")
    zarr = np.asarray(z, dtype=float)
    scalar = zarr.ndim == 0
    zarr = np.atleast_1d(zarr)
    if not np.all(np.isfinite(zarr)):
        raise DomainError("argument must be finite")
    if np.any(zarr < 0) or np.any(zarr > policy.z_max):
        raise DomainError(
            f"argument outside [0, {policy.z_max}]: "
            f"min={zarr.min():.6g}, max={zarr.max():.6g}"
        )

    d, l = idx.d, idx.l
    half_d = d / 2
    prefactor = 2.0 ** (1 - half_d)
    # first term whose power 2k+l survives m differentiations
    k = max(0, -(-(m - l) // 2))
    p = 2 * k + l
    if scalar:
        return _series_scalar(float(zarr[0]), d, l, m, k, alternating, policy)
    # base_k = (z/2)^(p-m) / (k! Gamma(k + d/2 + l))
    base = (zarr / 2) ** (p - m) / (math.factorial(k) * gamma_half_integer(k + half_d + l))
    scale = prefactor / 2.0 ** m

    total = np.zeros_like(zarr)
    small_run = np.zeros(zarr.shape, dtype=int)
    guard = math.ceil(float(zarr.max()) / 2)
    quarter_z2 = (zarr / 2) ** 2
    for n_terms in range(policy.max_terms):
        sign = -1.0 if (alternating and k % 2) else 1.0
        term = sign * scale * _falling(p, m) * base
        total += term
        small = np.abs(term) <= policy.rel_tol * np.abs(total)
        small_run = np.where(small, small_run + 1, 0)
        if k >= guard and np.all(small_run >= 3):
            break
        base = base * quarter_z2 / ((k + 1) * (k + half_d + l))
        k += 1
        p += 2
    else:
        raise ConvergenceError(
            f"series for d={d}, l={l}, m={m} did not converge in {policy.max_terms} terms"
        )
    return float(total[0]) if scalar else total


def _series_scalar(z, d, l, m, k, alternating, policy):
    # same recursion as the array path, in plain floats (hot path for quadrature)
    half_d = d / 2
    p = 2 * k + l
    base = (z / 2) ** (p - m) / (math.factorial(k) * gamma_half_integer(k + half_d + l))
    scale = 2.0 ** (1 - half_d) / 2.0**m
    quarter_z2 = (z / 2) ** 2
    guard = math.ceil(z / 2)
    total = 0.0
    run = 0
    for _ in range(policy.max_terms):
        term = scale * _falling(p, m) * base
        if alternating and k % 2:
            term = -term
        total += term
        run = run + 1 if abs(term) <= policy.rel_tol * abs(total) else 0
        if k >= guard and run >= 3:
            return total
        base = base * quarter_z2 / ((k + 1) * (k + half_d + l))
        k += 1
        p += 2
    raise ConvergenceError(
        f"series for d={d}, l={l}, m={m} did not converge in {policy.max_terms} terms"
    )


def ultra_j(idx: UltraIndex, m: int, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """m-th derivative of j_l at ``z`` (scalar or array, 0 <= z <= z_max)."""
    return _series(idx, m, z, True, policy)


def ultra_i(idx: UltraIndex, m: int, z, policy: SeriesPolicy = DEFAULT_POLICY):
    """m-th derivative of i_l at ``z``; strictly positive for z > 0."""
    return _series(idx, m, z, False, policy)


def first_deriv_zero(idx: UltraIndex, tol: float = 1e-12, grid_n: int = 2000) -> float:
    """Smallest positive zero p_{l,1} of j_l'.

    The search interval is (0, 2*sqrt(l*(d+2l))), which contains p_{l,1}
    comfortably since p_{l,1}**2 < l*(d+2l).
    """
    if idx.l < 1:
        raise DomainError("first_deriv_zero needs l >= 1 (j_0' vanishes at 0)")
    hi = 2 * math.sqrt(idx.l * (idx.d + 2 * idx.l))
    lo = hi / grid_n

    def f(z):
        return ultra_j(idx, 1, z)

    brackets = bracket_roots(f, (lo, hi), grid_n, vectorized=True)
    if not brackets:
        raise BracketNotFoundError(
            f"no sign change of j_{idx.l}' on (0, {hi:.6g}) for d={idx.d}"
        )
    return refine_root(f, brackets[0], tol)


@dataclass
class RecurrenceResiduals:
    """|LHS - RHS| for each recurrence; ``None`` where it does not apply."""

    z: float
    residuals: dict[str, float | None]
    scales: dict[str, float | None]

    def relative(self) -> dict[str, float | None]:
        return {
            key: (None if val is None else val / max(1.0, self.scales[key]))
            for key, val in self.residuals.items()
        }

    def max_relative(self) -> float:
        vals = [v for v in self.relative().values() if v is not None]
        return max(vals) if vals else 0.0

    @property
    def not_applicable(self) -> list[str]:
        return [key for key, val in self.residuals.items() if val is None]


def recurrence_residuals(idx: UltraIndex, z: float) -> RecurrenceResiduals:
    """Check the eight j/i recurrences at ``z`` using the series values.

    Recurrences needing order ``l - 1`` are reported as not applicable at
    ``l = 0``.
    """
    if not z > 0:
        raise DomainError("recurrence check needs z > 0")
    d, l = idx.d, idx.l
    up = UltraIndex(d, l + 1)
    jl, jl1, jl2 = ultra_j(idx, 0, z), ultra_j(idx, 1, z), ultra_j(idx, 2, z)
    il, il1, il2 = ultra_i(idx, 0, z), ultra_i(idx, 1, z), ultra_i(idx, 2, z)
    jup, iup = ultra_j(up, 0, z), ultra_i(up, 0, z)

    pairs: dict[str, tuple[float, float] | None] = {}
    if l >= 1:
        down = UltraIndex(d, l - 1)
        jdn, idn = ultra_j(down, 0, z), ultra_i(down, 0, z)
        pairs["j1"] = ((d - 2 + 2 * l) / z * jl, jdn + jup)
        pairs["j3"] = (jl1, jdn - (l + d - 2) / z * jl)
        pairs["i1"] = ((d - 2 + 2 * l) / z * il, idn - iup)
        pairs["i3"] = (il1, idn - (l + d - 2) / z * il)
    else:
        pairs["j1"] = pairs["j3"] = pairs["i1"] = pairs["i3"] = None
    pairs["j2"] = (jl1, l / z * jl - jup)
    pairs["i2"] = (il1, l / z * il + iup)
    pairs["j4"] = (jl2, ((l * l - l) / z**2 - 1) * jl + (d - 1) / z * jup)
    pairs["i4"] = (il2, ((l * l - l) / z**2 + 1) * il - (d - 1) / z * iup)

    order = ["j1", "j2", "j3", "j4", "i1", "i2", "i3", "i4"]
    residuals = {}
    scales = {}
    for key in order:
        pair = pairs[key]
        if pair is None:
            residuals[key] = scales[key] = None
        else:
            lhs, rhs = pair
            residuals[key] = abs(lhs - rhs)
            scales[key] = abs(lhs)
    return RecurrenceResiduals(z=z, residuals=residuals, scales=scales)
