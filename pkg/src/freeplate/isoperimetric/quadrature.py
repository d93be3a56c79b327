"""Integrals of radial functions over a region, centring, and the quotient bound.

For a radial F, integrating along rays from the centre c gives

    int_Omega F(|x - c|) dx = sigma_{d-1} * mean_u sum_crossings sign * G(t),
    G(R) = int_0^R F(r) r^(d-1) dr,

which is the shell formula int F(r) r^(d-1) sigma frac(r) dr with frac(r)
integrated exactly along each sampled direction. G is tabulated once per F
with adaptive quadrature and interpolated with cubic Hermite splines using
the exact derivative F(r) r^(d-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..ball_spectrum import fundamental_tone, radial_profile
from ..errors import ConvergenceError, DomainError
from ..numerics_core import QuadraturePolicy, integrate_1d
from ..profile import RadialProfile
from .domains import DomainSpec, unit_ball_volume

__all__ = [
    "DirectionSampler",
    "RadialTable",
    "sphere_area",
    "normalize_volume",
    "radial_integral",
    "center_translate",
    "CenterResult",
    "QuotientResult",
    "quotient_bound",
    "profile_tables",
]

TABLE_STEP = 1.0 / 128
TABLE_POLICY = QuadraturePolicy(abs_tol=1e-13, max_depth=40)


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere in R^d."""
    return d * unit_ball_volume(d)


@dataclass(frozen=True)
class DirectionSampler:
    """Deterministic, antipodally symmetric direction sets on S^{d-1} (d = 2, 3).

    d = 2: equispaced angles with a seeded rotation.
    d = 3: Fibonacci lattice with a seeded random rotation, plus antipodes.
    ``half`` is the analogous set with n_dirs/2 points, used for the error
    estimate eps_mc = |Q(n) - Q(n/2)|.
    """

    d: int
    seed: int = 0
    n_dirs: int = 2**14

    def __post_init__(self):
        if self.d not in (2, 3):
            raise DomainError("direction sampling supports d = 2 and d = 3")
        if self.n_dirs < 8 or self.n_dirs % 4:
            raise DomainError("n_dirs must be a multiple of 4 and >= 8")

    def _rng(self):
        return np.random.default_rng(np.uint64(self.seed % 2**64))

    def _build(self, n: int) -> np.ndarray:
        rng = self._rng()
        if self.d == 2:
            shift = rng.random()
            theta = 2 * np.pi * (np.arange(n) + shift) / n
            return np.stack([np.cos(theta), np.sin(theta)], 1)
        m = n // 2
        i = np.arange(m) + 0.5
        z = 1 - 2 * i / m
        phi = np.pi * (1 + math.sqrt(5)) * i
        rad = np.sqrt(1 - z * z)
        pts = np.stack([rad * np.cos(phi), rad * np.sin(phi), z], 1)
        q, r = np.linalg.qr(rng.standard_normal((3, 3)))
        q = q * np.sign(np.diag(r))
        pts = pts @ q.T
        return np.concatenate([pts, -pts])

    @property
    def directions(self) -> np.ndarray:
        return _cached_dirs(self.d, self.seed, self.n_dirs)

    @property
    def half(self) -> np.ndarray:
        return _cached_dirs(self.d, self.seed, self.n_dirs // 2)


@lru_cache(maxsize=32)
def _cached_dirs(d, seed, n):
    arr = DirectionSampler.__new__(DirectionSampler)
    object.__setattr__(arr, "d", d)
    object.__setattr__(arr, "seed", seed)
    object.__setattr__(arr, "n_dirs", n)
    out = arr._build(n)
    out.setflags(write=False)
    return out


class RadialTable:
    """G(R) = int_0^R F(r) r^(d-1) dr on [0, r_max], with a node at r = 1."""

    def __init__(self, F, d: int, r_max: float, step: float = TABLE_STEP,
                 policy: QuadraturePolicy = TABLE_POLICY):
        if not r_max > 0:
            raise DomainError("r_max must be positive")
        self.d = d
        inner = np.linspace(0.0, min(1.0, r_max), max(2, int(round(min(1.0, r_max) / step)) + 1))
        if r_max > 1.0:
            n_out = max(2, int(math.ceil((r_max - 1.0) / step)) + 1)
            nodes = np.concatenate([inner, np.linspace(1.0, r_max, n_out)[1:]])
        else:
            nodes = inner
        self.nodes = nodes
        self.r_max = float(nodes[-1])

        def integrand(r):
            return float(F(r)) * r ** (d - 1)

        self.deriv = np.array([integrand(float(r)) for r in nodes])
        cum = [0.0]
        for lo, hi in zip(nodes[:-1], nodes[1:]):
            cum.append(cum[-1] + integrate_1d(integrand, (float(lo), float(hi)), policy))
        self.values = np.array(cum)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t > self.r_max * (1 + 1e-12)) or np.any(t < 0):
            raise DomainError(f"radius outside tabulated range [0, {self.r_max}]")
        i = np.clip(np.searchsorted(self.nodes, t, side="right") - 1, 0, len(self.nodes) - 2)
        x0, x1 = self.nodes[i], self.nodes[i + 1]
        h = x1 - x0
        s = (t - x0) / h
        h00 = (1 + 2 * s) * (1 - s) ** 2
        h10 = s * (1 - s) ** 2
        h01 = s * s * (3 - 2 * s)
        h11 = s * s * (s - 1)
        return (h00 * self.values[i] + h10 * h * self.deriv[i]
                + h01 * self.values[i + 1] + h11 * h * self.deriv[i + 1])


def normalize_volume(spec: DomainSpec) -> DomainSpec:
    """Uniformly rescaled copy with the volume of the unit ball."""
    vol = spec.volume
    if not vol > 0:
        raise DomainError("region has nonpositive volume")
    return spec.scaled((unit_ball_volume(spec.d) / vol) ** (1.0 / spec.d))


def _ray_sum(spec, center, table, dirs, vector=False):
    t, sign = spec.crossings(center, dirs)
    per_dir = np.sum(sign * table(np.where(sign != 0, t, 0.0)), axis=1)
    if vector:
        return sphere_area(spec.d) * (per_dir[:, None] * dirs).mean(axis=0)
    return sphere_area(spec.d) * per_dir.mean()


def _r_needed(spec, center):
    return spec.bounding_radius + float(np.linalg.norm(np.asarray(center) - np.asarray(spec.offset)))


def radial_integral(spec: DomainSpec, center, F, sampler: DirectionSampler, half: bool = False) -> float:
    """int_Omega F(|x - center|) dx; F is a callable or a prebuilt RadialTable."""
    if sampler.d != spec.d:
        raise DomainError("sampler and domain dimensions differ")
    table = F if isinstance(F, RadialTable) else RadialTable(F, spec.d, _r_needed(spec, center) * 1.01)
    dirs = sampler.half if half else sampler.directions
    return float(_ray_sum(spec, center, table, dirs))


@lru_cache(maxsize=64)
def profile_tables(profile: RadialProfile, r_max: float) -> dict:
    """Cached G tables for the integrands used by centring and the quotient."""
    d = profile.d
    return {
        "rho": RadialTable(profile.rho, d, r_max),
        "jac": RadialTable(lambda r: (profile.drho(r) + (d - 1) * profile.rho_over_r(r)) / d, d, r_max),
        "num": RadialTable(profile.N, d, r_max),
        "den": RadialTable(lambda r: profile.rho(r) ** 2, d, r_max),
    }


def _table_radius(spec):
    # centres stay in the convex hull, so |c - offset| <= bounding radius
    return round(2 * spec.bounding_radius + 1e-6, 6)


@dataclass(frozen=True)
class CenterResult:
    center: np.ndarray
    residual: float
    scale: float
    iterations: int


def center_translate(spec: DomainSpec, rho: RadialProfile, sampler: DirectionSampler,
                     rel_tol: float = 1e-6, max_iter: int = 500) -> CenterResult:
    """Find v with X(v) = int_Omega rho(|x-v|) (x-v)/|x-v| dx = 0.

    Damped Newton-like iteration v <- v + eta X(v) / J(v), where
    J = (1/d) int_Omega (rho' + (d-1) rho / r) dx is the mean diagonal of
    -dX/dv. eta starts at 1 and is halved whenever |X| fails to decrease.
    """
    tabs = profile_tables(rho, _table_radius(spec))
    dirs = sampler.directions

    def X(v):
        return _ray_sum(spec, v, tabs["rho"], dirs, vector=True)

    v = spec.reference_point
    x = X(v)
    nx = float(np.linalg.norm(x))
    eta = 1.0
    for it in range(max_iter):
        scale = float(_ray_sum(spec, v, tabs["rho"], dirs))
        if nx <= rel_tol * scale:
            return CenterResult(v, nx, scale, it)
        jac = float(_ray_sum(spec, v, tabs["jac"], dirs))
        trial = v + eta * x / jac
        xt = X(trial)
        nt = float(np.linalg.norm(xt))
        if nt < nx:
            v, x, nx = trial, xt, nt
            eta = min(1.0, 2 * eta)
        else:
            eta /= 2
            if eta < 1e-12:
                break
    raise ConvergenceError(
        f"centring did not converge after {max_iter} iterations; last |X| = {nx:.3g}"
    )


@dataclass(frozen=True)
class QuotientResult:
    qhat: float
    tone_ball: float
    gap: float
    eps_mc: float
    center: tuple
    numerator: float
    denominator: float


def quotient_bound(spec: DomainSpec, tau: float, d: int | None = None,
                   sampler: DirectionSampler | None = None, center=None) -> QuotientResult:
    """Qhat = int_Omega N[rho] / int_Omega rho^2 after centring, against omega*."""
    d = spec.d if d is None else d
    if d != spec.d:
        raise DomainError("dimension does not match the domain")
    sampler = sampler or DirectionSampler(d)
    tone = fundamental_tone(d, tau)
    prof = radial_profile(tone)
    if center is None:
        center = center_translate(spec, prof, sampler).center
    center = np.asarray(center, dtype=float)
    tabs = profile_tables(prof, _table_radius(spec))
    num = _ray_sum(spec, center, tabs["num"], sampler.directions)
    den = _ray_sum(spec, center, tabs["den"], sampler.directions)
    num_h = _ray_sum(spec, center, tabs["num"], sampler.half)
    den_h = _ray_sum(spec, center, tabs["den"], sampler.half)
    q = num / den
    eps = abs(q - num_h / den_h)
    return QuotientResult(
        qhat=float(q), tone_ball=tone.omega, gap=float(tone.omega - q), eps_mc=float(eps),
        center=tuple(float(c) for c in center), numerator=float(num), denominator=float(den),
    )
