"""Free rod on [-1, 1]: u'''' - tau u'' = omega u, u'' = 0 and tau u' - u''' = 0 at x = +-1.

Eigenfunctions split into odd and even parts. Depending on the signs of
omega and of tau, u is built from trigonometric, hyperbolic or polynomial
pieces; each case below states its own ansatz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .numerics_core import bracket_roots, refine_root, Bracket

__all__ = [
    "RodMode",
    "ZeroModeInfo",
    "HyperbolicResidual",
    "det_odd_pos",
    "det_even_pos",
    "positive_modes",
    "zero_mode_degeneracy",
    "det_odd_trig",
    "det_even_trig",
    "trig_modes",
    "degenerate_root",
    "degenerate_mode",
    "hyperbolic_residual",
    "hyperbolic_candidates",
    "branch_curves",
    "crossing_taus",
    "zero_mode_taus",
    "CSV_HEADER",
]

ROOT_TOL = 1e-14
GRID_N = 4000
DEGENERATE_WINDOW = 1e-6
ZERO_MODE_TOL = 1e-9
CSV_HEADER = ("tau", "omega", "parity", "regime", "a", "b", "coeff_ratio", "residual")

_REGIME_CSV = {
    "positive": "positive",
    "zero": "zero",
    "trigonometric": "trig",
    "degenerate": "degenerate",
    "hyperbolic-candidate": "hyperbolic_candidate",
}


@dataclass(frozen=True)
class RodMode:
    """One rod eigenstate (or hyperbolic candidate).

    ``coeff_ratio`` follows the ansatz of each regime: B/A and D/C in the
    positive regime, A/B and C/D in the trigonometric, degenerate and
    hyperbolic regimes. ``None`` means the ratio is free.
    """

    parity: str
    regime: str
    tau: float
    a: float
    b: float
    omega: float
    coeff_ratio: float | None
    residual: float
    kind: str = field(default="", compare=False)

    def as_row(self) -> dict:
        return {
            "tau": self.tau,
            "omega": self.omega,
            "parity": self.parity,
            "regime": _REGIME_CSV[self.regime],
            "a": self.a,
            "b": self.b,
            "coeff_ratio": "free" if self.coeff_ratio is None else self.coeff_ratio,
            "residual": self.residual,
        }

    def evaluate(self, x):
        """Eigenfunction value at x (unnormalized)."""
        x = np.asarray(x, dtype=float)
        a, b, c = self.a, self.b, self.coeff_ratio
        odd = self.parity == "odd"
        if self.regime == "positive":
            return np.sin(a * x) + c * np.sinh(b * x) if odd else np.cos(a * x) + c * np.cosh(b * x)
        if self.regime == "trigonometric":
            return c * np.sin(a * x) + np.sin(b * x) if odd else c * np.cos(a * x) + np.cos(b * x)
        if self.regime == "degenerate":
            return c * np.cos(a * x) + x * np.sin(a * x)
        if self.regime == "zero":
            if self.kind == "constant":
                return np.ones_like(x)
            if self.kind == "linear":
                return x
            return np.sin(a * x) if odd else np.cos(a * x)
        raise DomainError("hyperbolic candidates carry no assembled eigenfunction")


def _rel(val, scale):
    return abs(val) / scale if scale > 0 else abs(val)


# positive eigenvalues: u_o = A sin ax + B sinh bx, u_e = C cos ax + D cosh bx,
# with b^2 - a^2 = tau, omega = a^2 b^2

def _b_pos(tau, a):
    a = np.asarray(a, dtype=float)
    b2 = a * a + tau
    if np.any(b2 <= 0):
        raise DomainError("positive regime needs a^2 + tau > 0")
    return np.sqrt(b2)


def det_odd_pos(tau: float, a):
    """(a^3 sin a cosh b - b^3 cos a sinh b) / cosh b."""
    b = _b_pos(tau, a)
    return a**3 * np.sin(a) - b**3 * np.cos(a) * np.tanh(b)


def det_even_pos(tau: float, a):
    """(a^3 cos a sinh b + b^3 sin a cosh b) / cosh b."""
    b = _b_pos(tau, a)
    return a**3 * np.cos(a) * np.tanh(b) + b**3 * np.sin(a)


def _pos_mode(tau, a, parity):
    b = math.sqrt(a * a + tau)
    tb = math.tanh(b)
    if parity == "odd":
        # A = 1; Bs = B sinh b, Bc = B cosh b
        bs = a * a * math.sin(a) / (b * b)
        bc = bs / tb
        ratio = bs / math.sinh(b) if b < 700 else 0.0
        r1 = _rel(a * a * math.sin(a) - b * b * bs, a * a + b * b * abs(bs))
        r2 = _rel(a * b * b * math.cos(a) - a * a * b * bc, a * b * b + a * a * b * abs(bc))
    else:
        dc = a * a * math.cos(a) / (b * b)
        ds = dc * tb
        ratio = dc / math.cosh(b) if b < 700 else 0.0
        r1 = _rel(a * a * math.cos(a) - b * b * dc, a * a + b * b * abs(dc))
        r2 = _rel(-a * b * b * math.sin(a) - a * a * b * ds, a * b * b + a * a * b * abs(ds))
    return RodMode(parity, "positive", tau, a, b, a * a * b * b, ratio, max(r1, r2))


def positive_modes(tau: float, count: int, grid_n: int | None = None) -> list[RodMode]:
    """First ``count`` positive eigenvalues over both parities, ascending."""
    if count < 1:
        raise DomainError("count must be >= 1")
    a_lo = math.sqrt(-tau) * (1 + 1e-9) + 1e-9 if tau < 0 else 0.0
    a_hi = a_lo + (count // 2 + 2) * math.pi
    n = grid_n or max(GRID_N, 400 * count)
    lo = a_lo + (a_hi - a_lo) / n
    modes = []
    for parity, f in (("odd", det_odd_pos), ("even", det_even_pos)):
        def g(a, f=f):
            return f(tau, a)

        for br in bracket_roots(g, (lo, a_hi), n, vectorized=True):
            modes.append(_pos_mode(tau, refine_root(g, br, ROOT_TOL), parity))
    modes.sort(key=lambda m: (m.omega, m.parity))
    return modes[:count]


@dataclass(frozen=True)
class ZeroModeInfo:
    tau: float
    constant_mode: bool
    degenerate: bool
    parity: str | None
    kind: str | None
    residual: float

    def modes(self) -> list[RodMode]:
        out = [RodMode("even", "zero", self.tau, 0.0, 0.0, 0.0, None, 0.0, kind="constant")]
        if self.degenerate:
            a = math.sqrt(abs(self.tau))
            out.append(RodMode(self.parity, "zero", self.tau, a, 0.0, 0.0, None, self.residual, kind=self.kind))
        return out


def zero_mode_degeneracy(tau: float, tol: float = ZERO_MODE_TOL) -> ZeroModeInfo:
    """Classify omega = 0: always the constant, plus at most one extra mode."""
    if tau > 0:
        return ZeroModeInfo(tau, True, False, None, None, 0.0)
    if tau == 0:
        return ZeroModeInfo(tau, True, True, "odd", "linear", 0.0)
    a = math.sqrt(-tau)
    s, c = abs(math.sin(a)), abs(math.cos(a))
    if s <= tol:
        return ZeroModeInfo(tau, True, True, "odd", "sin", s)
    if c <= tol:
        return ZeroModeInfo(tau, True, True, "even", "cos", c)
    return ZeroModeInfo(tau, True, False, None, None, min(s, c))


def zero_mode_taus(lo: float, hi: float) -> list[tuple[float, str]]:
    """Exact tau in [lo, hi] where omega = 0 is degenerate."""
    out = []
    if lo <= 0 <= hi:
        out.append((0.0, "odd"))
    k = 1
    while (k * math.pi / 2) ** 2 <= -lo:
        t = -((k * math.pi / 2) ** 2)
        if t <= hi:
            out.append((t, "odd" if k % 2 == 0 else "even"))
        k += 1
    return sorted(out)


# trigonometric regime: u_o = A sin ax + B sin bx, u_e = C cos ax + D cos bx,
# with a^2 + b^2 = -tau, omega = -a^2 b^2, a <= b

def _b_trig(tau, a):
    a = np.asarray(a, dtype=float)
    b2 = -tau - a * a
    if np.any(b2 < 0):
        raise DomainError("trigonometric regime needs a^2 <= |tau|")
    return np.sqrt(b2)


def det_odd_trig(tau: float, a):
    b = _b_trig(tau, a)
    return a**3 * np.sin(a) * np.cos(b) - b**3 * np.sin(b) * np.cos(a)


def det_even_trig(tau: float, a):
    b = _b_trig(tau, a)
    return b**3 * np.cos(b) * np.sin(a) - a**3 * np.cos(a) * np.sin(b)


def _trig_mode(tau, a, parity):
    b = math.sqrt(-tau - a * a)
    sa, ca, sb, cb = math.sin(a), math.cos(a), math.sin(b), math.cos(b)
    if parity == "odd":
        # B = 1
        if abs(a * a * sa) >= abs(b * ca):
            ratio = -b * b * sb / (a * a * sa)
        else:
            ratio = -a * cb / (b * ca)
        r1 = _rel(-a * a * ratio * sa - b * b * sb, a * a * abs(ratio) + b * b)
        r2 = _rel(-a * b * b * ratio * ca - a * a * b * cb, a * b * b * abs(ratio) + a * a * b)
    else:
        # D = 1
        if abs(a * a * ca) >= abs(b * sa):
            ratio = -b * b * cb / (a * a * ca)
        else:
            ratio = -a * sb / (b * sa)
        r1 = _rel(-a * a * ratio * ca - b * b * cb, a * a * abs(ratio) + b * b)
        r2 = _rel(a * b * b * ratio * sa + a * a * b * sb, a * b * b * abs(ratio) + a * a * b)
    return RodMode(parity, "trigonometric", tau, a, b, -a * a * b * b, ratio, max(r1, r2))


def trig_modes(tau: float, count: int | None = None, grid_n: int = GRID_N) -> list[RodMode]:
    """Trigonometric-regime modes, sorted by omega ascending.

    The scan runs over a in (0, sqrt(|tau|/2)) with b = sqrt(|tau| - a^2).
    Both determinants are antisymmetric under a <-> b and vanish identically
    on the diagonal a = b, so they are divided by (b - a) and the diagonal
    itself is left out (that point is the degenerate regime).
    """
    if not tau < 0:
        raise DomainError("trigonometric regime needs tau < 0")
    a_max = math.sqrt(-tau / 2) * (1 - 1e-6)
    lo = a_max / grid_n
    modes = []
    for parity, f in (("odd", det_odd_trig), ("even", det_even_trig)):
        def g(a, f=f):
            return f(tau, a) / (_b_trig(tau, a) - a)

        for br in bracket_roots(g, (lo, a_max), grid_n, vectorized=True):
            modes.append(_trig_mode(tau, refine_root(g, br, ROOT_TOL), parity))
    modes.sort(key=lambda m: (m.omega, m.parity))
    return modes if count is None else modes[:count]


def crossing_taus(lo: float, hi: float) -> list[tuple[float, float, float]]:
    """(tau, a, b) in [lo, hi] where odd and even trig branches share a root."""
    out = []
    kmax = int(math.sqrt(max(-lo, 0)) / math.pi) + 2
    for k in range(1, kmax + 1):
        for l in range(k + 1, kmax + 2):
            t = -math.pi**2 * (k * k + l * l)
            if lo <= t <= hi:
                out.append((t, k * math.pi, l * math.pi))
    for k in range(0, 2 * kmax):
        for l in range(k + 1, 2 * kmax + 1):
            a, b = (2 * k + 1) * math.pi / 2, (2 * l + 1) * math.pi / 2
            t = -(a * a + b * b)
            if lo <= t <= hi:
                out.append((t, a, b))
    return sorted(out)


# degenerate regime: omega = -tau^2/4, u_e = C cos ax + D x sin ax, a = sqrt(|tau|/2)

def degenerate_root(tol: float = 1e-15) -> float:
    """Positive root of sin 2a - 2a/3."""
    def f(a):
        return math.sin(2 * a) - 2 * a / 3

    return refine_root(f, Bracket(1.0, 1.3, f(1.0), f(1.3)), tol)


def degenerate_mode(tau: float, window: float = DEGENERATE_WINDOW) -> RodMode | None:
    if not tau < 0:
        raise DomainError("degenerate regime needs tau < 0")
    a_deg = degenerate_root()
    tau_deg = -2 * a_deg * a_deg
    if abs(tau - tau_deg) > window:
        return None
    a = a_deg
    s, c = math.sin(a), math.cos(a)
    ratio = (2 * c - a * s) / (a * c)
    r1 = _rel(-a * a * ratio * c + 2 * a * c - a * a * s, a * a * abs(ratio) + 2 * a + a * a)
    r2 = _rel(a**3 * ratio * s + a * a * s - a**3 * c, a**3 * abs(ratio) + a * a + a**3)
    return RodMode("even", "degenerate", tau_deg, a, a, -(a**4), ratio, max(r1, r2))


# hyperbolic regime: u_o = A cos ax sinh bx + B sin ax cosh bx,
# u_e = C sin ax sinh bx + D cos ax cosh bx, tau = 2(b^2 - a^2), omega = -(a^2+b^2)^2

@dataclass(frozen=True)
class HyperbolicResidual:
    det_odd: float
    det_even: float
    tanh2: float
    single_term_rhs: float
    excluded_forms: dict


def _hyp_rows(tau, a, b):
    """Boundary rows (M, V) for both parities, divided by cosh b."""
    sa, ca, t = np.sin(a), np.cos(a), np.tanh(b)
    m_odd = (tau * ca * t - 4 * a * b * sa, tau * sa + 4 * a * b * ca * t)
    v_odd = (a * sa * t + b * ca, -a * ca + b * sa * t)
    m_even = (tau * sa * t + 4 * a * b * ca, tau * ca - 4 * a * b * sa * t)
    v_even = (-a * ca * t + b * sa, a * sa + b * ca * t)
    return m_odd, v_odd, m_even, v_even


def hyperbolic_residual(tau: float, a: float, b: float) -> HyperbolicResidual:
    """2x2 boundary determinants in the hyperbolic regime (necessary condition only).

    Rows are divided by cosh b and the V rows by a^2 + b^2.
    """
    if not tau < 0:
        raise DomainError("hyperbolic regime needs tau < 0")
    if not (a > 0 and b > 0):
        raise DomainError("a and b must be positive")
    if abs(2 * (b * b - a * a) - tau) > 1e-12 * max(1.0, abs(tau)):
        raise DomainError(f"inconsistent pair: 2(b^2 - a^2) = {2 * (b * b - a * a)!r} != tau = {tau!r}")
    mo, vo, me, ve = _hyp_rows(tau, a, b)
    det_odd = float(mo[0] * vo[1] - mo[1] * vo[0])
    det_even = float(me[0] * ve[1] - me[1] * ve[0])
    tanh2 = math.tanh(b) ** 2
    rhs = 2 + 4 * b * b / abs(tau)
    # tanh^2 b rounds to 1.0 in double precision for b > ~19
    excluded = tanh2 <= 1.0 < rhs
    return HyperbolicResidual(
        det_odd, det_even, tanh2, rhs, {"B=0": excluded, "D=0": excluded}
    )


def hyperbolic_candidates(tau: float, count: int, grid_n: int = GRID_N) -> list[RodMode]:
    """Sign changes of the hyperbolic determinants, flagged as candidates."""
    if not tau < 0:
        raise DomainError("hyperbolic regime needs tau < 0")
    a_lo = math.sqrt(-tau / 2)
    a_hi = a_lo + (count + 1) * math.pi
    lo = a_lo + (a_hi - a_lo) / grid_n

    def b_of(a):
        return np.sqrt(a * a + tau / 2)

    out = []
    for parity, pick in (("odd", 0), ("even", 2)):
        def g(a, pick=pick):
            b = b_of(a)
            rows = _hyp_rows(tau, a, b)
            m, v = rows[pick], rows[pick + 1]
            return m[0] * v[1] - m[1] * v[0]

        for br in bracket_roots(g, (lo, a_hi), grid_n, vectorized=True):
            a = refine_root(g, br, ROOT_TOL)
            b = float(b_of(a))
            rows = _hyp_rows(tau, a, b)
            m = rows[pick]
            ratio = float(-m[1] / m[0]) if m[0] != 0 else None
            scale = sum(abs(x) for x in m) * sum(abs(x) for x in rows[pick + 1])
            out.append(
                RodMode(parity, "hyperbolic-candidate", tau, a, b, -((a * a + b * b) ** 2),
                        ratio, _rel(float(g(a)), scale))
            )
    out.sort(key=lambda m: (-m.omega, m.parity))
    return out[:count]


def branch_curves(tau_range, n_tau: int, max_modes: int) -> tuple[list[RodMode], list[tuple[float, str]]]:
    """Rows for every grid tau plus analytic events inside the range.

    Returns (modes sorted by (tau, omega, parity), per-tau errors).
    """
    lo, hi = float(tau_range[0]), float(tau_range[1])
    if not lo < hi:
        raise DomainError("tau range must satisfy lo < hi")
    if n_tau < 2:
        raise DomainError("n_tau must be >= 2")
    rows: list[RodMode] = []
    errors: list[tuple[float, str]] = []

    def collect(t, fn):
        try:
            rows.extend(fn())
        except Exception as exc:  # noqa: BLE001 - collected per row
            errors.append((t, f"{type(exc).__name__}: {exc}"))

    for t in np.linspace(lo, hi, n_tau):
        t = float(t)
        collect(t, lambda: positive_modes(t, max_modes))
        if t < 0:
            collect(t, lambda: trig_modes(t, max_modes))
            collect(t, lambda: hyperbolic_candidates(t, max_modes))
    for t, _ in zero_mode_taus(lo, hi):
        collect(t, lambda: zero_mode_degeneracy(t).modes()[1:])
    a_deg = degenerate_root()
    t_deg = -2 * a_deg * a_deg
    if lo <= t_deg <= hi:
        collect(t_deg, lambda: [degenerate_mode(t_deg)])
    for t, _, _ in crossing_taus(lo, hi):
        collect(t, lambda: trig_modes(t))
    rows.sort(key=lambda m: (m.tau, m.omega, m.parity, m.regime))
    return rows, errors
