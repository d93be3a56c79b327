"""Free plate under tension on the d-ball: boundary determinant, tones, bounds.

A separated eigenfunction has radial part ``j_l(a r) + gamma i_l(b r)`` with
``b**2 - a**2 = tau`` and eigenvalue ``omega = a**2 b**2``. The two natural
boundary conditions at ``r = R`` give a 2x2 system whose determinant ``W_l(a)``
vanishes at eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundViolation, BracketNotFoundError, DomainError
from .numerics_core import bracket_roots, integrate_1d, QuadraturePolicy, refine_root
from .profile import RadialProfile
from .special_functions import UltraIndex, first_deriv_zero, gamma_half_integer, ultra_i, ultra_j

__all__ = [
    "BallTone",
    "ball_volume",
    "W",
    "tone_at",
    "fundamental_tone",
    "tone_for_order",
    "radial_profile",
    "boundary_residuals",
    "scaled_tone",
    "curve",
    "CurveResult",
    "inertia_bound_check",
    "membrane_constant",
    "GRID_N",
    "ROOT_TOL",
]

GRID_N = 4000
ROOT_TOL = 1e-14


def ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / gamma_half_integer(d / 2 + 1)


def _check_tau(tau):
    if not (math.isfinite(tau) and tau > 0):
        raise DomainError(f"tension must be positive, got tau={tau}")


@dataclass(frozen=True)
class _Parts:
    gamma: float
    Vj: float
    Vi: float
    M: float
    scale: float


def _parts(d, l, tau, a, radius=1.0):
    """gamma, boundary terms and residual scale at radius R (scalar or array a)."""
    idx = UltraIndex(d, l)
    k = l * (l + d - 2)
    R = radius
    a = np.asarray(a, dtype=float)
    b = np.sqrt(a * a + tau)
    ja, ja1, ja2 = (ultra_j(idx, m, a * R) for m in (0, 1, 2))
    ib, ib1, ib2 = (ultra_i(idx, m, b * R) for m in (0, 1, 2))
    gamma = -(a * a * ja2) / (b * b * ib2)
    Vj = tau * a * ja1 + k / R**2 * (a * ja1 - ja / R) + a**3 * ja1
    Vi = tau * b * ib1 + k / R**2 * (b * ib1 - ib / R) - b**3 * ib1
    M = a * a * ja2 + gamma * b * b * ib2
    scale = np.abs(tau * a * ja1) + np.abs(a**3 * ja1) + np.abs(gamma) * (
        np.abs(tau * b * ib1) + np.abs(b**3 * ib1)
    )
    return _Parts(gamma, Vj, Vi, M, scale)


def W(d: int, l: int, tau: float, a, radius: float = 1.0):
    """Boundary determinant divided by b^2 i_l''(b R) (same sign, same roots).

    At R = 1 this is ``W_l(a) / (b^2 i_l''(b))`` with
    ``W_l = a^2 j''(a) (-a^2 b i'(b) + k (b i'(b) - i(b)))
    - b^2 i''(b) (a b^2 j'(a) + k (a j'(a) - j(a)))``, which equals
    ``-(Vj + gamma Vi)``.
    """
    _check_tau(tau)
    p = _parts(d, l, tau, a, radius)
    out = -(p.Vj + p.gamma * p.Vi)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class BallTone:
    d: int
    l: int
    tau: float
    a: float
    b: float
    omega: float
    gamma: float
    k: int
    residual_M: float
    residual_V: float
    residual_scale: float = field(default=1.0, repr=False)
    radius: float = 1.0

    @property
    def relative_residual_V(self) -> float:
        return abs(self.residual_V) / self.residual_scale

    def as_row(self) -> dict:
        return {"tau": self.tau, "a": self.a, "b": self.b, "omega": self.omega, "gamma": self.gamma}


def tone_at(d: int, l: int, tau: float, a: float, radius: float = 1.0) -> BallTone:
    """Assemble a BallTone at a given wavenumber (a need not be a root)."""
    _check_tau(tau)
    p = _parts(d, l, tau, float(a), radius)
    b = math.sqrt(a * a + tau)
    return BallTone(
        d=d, l=l, tau=tau, a=float(a), b=b, omega=a * a * b * b,
        gamma=float(p.gamma), k=l * (l + d - 2),
        residual_M=float(p.M), residual_V=float(p.Vj + p.gamma * p.Vi),
        residual_scale=float(p.scale), radius=radius,
    )


def _first_root(d, l, tau, hi, radius=1.0, grid_n=GRID_N):
    def f(a):
        return W(d, l, tau, a, radius)

    brackets = bracket_roots(f, (hi / grid_n, hi), grid_n, vectorized=True)
    if not brackets:
        return None
    return refine_root(f, brackets[0], ROOT_TOL)


def fundamental_tone(d: int, tau: float, radius: float = 1.0, grid_n: int = GRID_N) -> BallTone:
    """Lowest tone: first root of W_1 on (0, p_{1,1}/R).

    On the unit ball, raises BoundViolation unless
    ``tau p11^2 <= omega <= tau (d+2)``.
    """
    _check_tau(tau)
    if not radius > 0:
        raise DomainError("radius must be positive")
    p11 = first_deriv_zero(UltraIndex(d, 1))
    a = _first_root(d, 1, tau, p11 / radius, radius, grid_n)
    if a is None:
        raise BracketNotFoundError(
            f"W_1 has no sign change on (0, p11) for d={d}, tau={tau}"
        )
    tone = tone_at(d, 1, tau, a, radius)
    if radius == 1.0:
        slack = 1e-12 * tone.omega
        if not (tau * p11 * p11 - slack <= tone.omega <= tau * (d + 2) + slack):
            raise BoundViolation(
                f"omega={tone.omega!r} outside [{tau * p11 * p11!r}, {tau * (d + 2)!r}]"
            )
    return tone


def tone_for_order(d: int, l: int, tau: float, grid_n: int = GRID_N) -> BallTone | None:
    """First root of W_l below a_cap = 3 p_{1,1}, or None if there is none."""
    _check_tau(tau)
    p11 = first_deriv_zero(UltraIndex(d, 1))
    a = _first_root(d, l, tau, 3 * p11, 1.0, grid_n)
    return None if a is None else tone_at(d, l, tau, a)


def radial_profile(tone: BallTone) -> RadialProfile:
    if tone.l != 1:
        raise DomainError("radial profile needs an l = 1 tone")
    return RadialProfile(d=tone.d, tau=tone.tau, a=tone.a, b=tone.b, gamma=tone.gamma)


def boundary_residuals(tone: BallTone) -> tuple[float, float]:
    """(M, V) boundary residuals recomputed from the tone's a."""
    p = _parts(tone.d, tone.l, tone.tau, tone.a, tone.radius)
    return float(p.M), float(p.Vj + p.gamma * p.Vi)


def scaled_tone(d: int, tau: float, radius: float) -> float:
    """Fundamental tone of the radius-R ball, solved directly on that ball."""
    return fundamental_tone(d, tau, radius=radius).omega


@dataclass
class CurveResult:
    rows: list[BallTone]
    errors: list[tuple[float, str]]

    @property
    def omegas(self) -> np.ndarray:
        return np.array([t.omega for t in self.rows])


def curve(d: int, tau_grid) -> CurveResult:
    taus = [float(t) for t in tau_grid]
    if any(t2 <= t1 for t1, t2 in zip(taus, taus[1:])):
        raise DomainError("tau grid must be strictly increasing")
    rows, errors = [], []
    for t in taus:
        try:
            rows.append(fundamental_tone(d, t))
        except Exception as exc:  # noqa: BLE001 - collected per row
            errors.append((t, f"{type(exc).__name__}: {exc}"))
    return CurveResult(rows, errors)


def inertia_bound_check(d: int, tau: float) -> tuple[float, float, bool]:
    """tau |B| d / omega* >= |B| d / (d + 2), the d-fold l = 1 tone on the ball."""
    omega = fundamental_tone(d, tau).omega
    vol = ball_volume(d)
    lhs = tau * vol * d / omega
    rhs = vol * d / (d + 2)
    return lhs, rhs, lhs >= rhs


def membrane_constant(d: int, policy: QuadraturePolicy = QuadraturePolicy(abs_tol=1e-12)) -> float:
    """Hessian quotient of the ball's free-membrane mode v = j_1(p11 r).

    Returns int (v''^2 + 3(d-1)(v - r v')^2 / r^4) r^(d-1) / int v^2 r^(d-1)
    over [0, 1].
    """
    idx = UltraIndex(d, 1)
    p = first_deriv_zero(idx)
    prof = RadialProfile(d=d, tau=0.0, a=p, b=1.0, gamma=0.0)

    def num(r):
        return float(prof.N(r, tau=0.0)) * r ** (d - 1)

    def den(r):
        return float(ultra_j(idx, 0, p * r)) ** 2 * r ** (d - 1)

    return integrate_1d(num, (0.0, 1.0), policy) / integrate_1d(den, (0.0, 1.0), policy)
