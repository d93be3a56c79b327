"""Pointwise and polynomial checks behind the quotient comparison."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..numerics_core import fd_derivative
from ..profile import RadialProfile
from ..report import CheckResult, status_of
from ..special_functions import UltraIndex, first_deriv_zero

__all__ = [
    "N_of_rho",
    "monotonicity_report",
    "branch_factor",
    "inner_identity_error",
    "P_coeffs",
    "P_value",
    "g_poly",
    "g_prime",
    "Q_poly",
    "critical_value",
    "polynomial_lemma_check",
    "sums_closed_form",
    "sums_finite_difference",
    "GaussPolyProfile",
    "calculus_identity_check",
    "ptwise_identity_holds",
]


def N_of_rho(rho: RadialProfile, tau: float, d: int, r):
    """Numerator density N[rho](r); at r = 0 its limit tau d rho'(0)^2."""
    if d != rho.d:
        raise DomainError("dimension does not match the profile")
    if np.any(np.asarray(r) < 0):
        raise DomainError("radius must be nonnegative")
    return rho.N(r, tau=tau)


def branch_factor(rho: RadialProfile, tau: float, d: int) -> tuple[str, float]:
    """The factor that must stay positive: large-tau or small-tau form."""
    a, b, g = rho.a, rho.b, rho.gamma
    if tau > 9 / (d + 5):
        return "largetau", tau - 3 * a * a / (d + 2)
    return "smalltau", tau - 3 * a * a / (d + 2) + g * (tau + 3 * b * b / (d + 2))


def inner_identity_error(rho: RadialProfile, r_lo: float = 0.02, n: int = 500) -> float:
    """max relative gap between the recurrence form of (rho - r rho')/r^2 and the direct one."""
    r = np.linspace(r_lo, 1.0, n)
    fast, direct = rho.inner(r), rho.inner_direct(r)
    return float(np.max(np.abs(fast - direct) / np.abs(direct)))


def monotonicity_report(rho: RadialProfile, tau: float, d: int, r_max: float = 2.0,
                        n: int = 2000, delta: float = 1e-3) -> list[CheckResult]:
    """Sign checks on a grid: (rho^2)' > 0, N drops across r = 1, rho'' < 0, inner factor > 0."""
    if not r_max > 1:
        raise DomainError("r_max must exceed 1")
    if n < 100:
        raise DomainError("n must be >= 100")
    r = np.linspace(r_max / n, r_max, n)
    inside = r <= 1.0
    out = []
    dsq = 2 * rho.rho(r) * rho.drho(r)
    out.append(CheckResult("mondenom", status_of(bool(np.min(dsq) > 0)), float(np.min(dsq)), 0.0))
    r_in = np.concatenate([r[inside], [1.0]])
    N = rho.N(r, tau=tau)
    gap = float(np.min(rho.N(r_in, tau=tau)) - np.max(N[~inside]))
    out.append(CheckResult("monnum", status_of(gap > 0), gap, 0.0))
    core = np.linspace(delta, 1 - delta, n)
    top = float(np.max(rho.d2rho(core)))
    out.append(CheckResult("gppneg", status_of(top < 0), top, 0.0))
    ri = r[inside]
    q = 6 * rho.inner(ri) + 3 * rho.d2rho(ri) + tau * rho.rho(ri)
    out.append(CheckResult("quantinterest", status_of(bool(np.min(q) > 0)), float(np.min(q)), 0.0))
    name, val = branch_factor(rho, tau, d)
    out.append(CheckResult(name, status_of(val > 0), val, 0.0))
    return out


# polynomial lemmas

def P_coeffs(d: int) -> list[int]:
    """Integer coefficients of P(x, d) in increasing powers of x."""
    return [
        24 * d**4 + 60 * d**3 - 120 * d**2 - 432 * d,
        -40 * d**3 - 119 * d**2 - 6 * d + 432,
        43 * d**2 + 113 * d + 54,
        -15 * d - 30,
    ]


def P_value(x, d: int):
    return np.polynomial.polynomial.polyval(x, P_coeffs(d))


def g_poly(d: int) -> int:
    return 24 * d**4 - 60 * d**3 - 477 * d**2 - 855 * d - 810


def g_prime(d: int) -> int:
    return 96 * d**3 - 180 * d**2 - 954 * d - 855


def Q_poly(p11_sq: float) -> np.polynomial.Polynomial:
    X = np.polynomial.Polynomial([0.0, 1.0])
    A = p11_sq
    return (1 - 3 * X / (2 * A)) * (A - X) * (36 - 5 * X) * (12 + 4 * X) - (36 * A + (6 * A - 36) * X) * (12 - 7 * X)


def critical_value(poly: np.polynomial.Polynomial, lo: float, hi: float) -> tuple[float, float]:
    """(c, poly(c)) for the interior critical point with the smallest value."""
    crit = [r.real for r in poly.deriv().roots() if abs(r.imag) < 1e-12 and lo < r.real < hi]
    if not crit:
        raise DomainError("no interior critical point")
    c = min(crit, key=lambda x: poly(x))
    return float(c), float(poly(c))


def polynomial_lemma_check(n: int = 10_000, d_max: int = 50) -> list[CheckResult]:
    out = []
    out.append(CheckResult("poly1-g7", status_of(g_poly(7) == 6876), g_poly(7), 6876))
    out.append(CheckResult("poly1-gprime5", status_of(g_prime(5) == 1875), g_prime(5), 1875))
    worst = math.inf
    for d in range(3, d_max + 1):
        hi = 3 * (d + 2) / (d + 5)
        x = np.linspace(0, hi, n + 2)[1:-1]
        worst = min(worst, float(np.min(P_value(x, d))))
    out.append(CheckResult("poly1", status_of(worst >= 0), worst, 0.0))
    c, val = critical_value(np.polynomial.Polynomial(P_coeffs(3)), 0.0, 15 / 8)
    out.append(CheckResult("poly1-P3crit", status_of(abs(val - 79) <= 0.05 * 79), val, 0.05 * 79))
    a2 = first_deriv_zero(UltraIndex(2, 1)) ** 2
    Q = Q_poly(a2)
    x = np.linspace(0, 12 / 7, n + 1)[1:]
    qmin = float(np.min(Q(x)))
    out.append(CheckResult("poly2", status_of(qmin > 0), qmin, 0.0))
    return out


# sums over k for u_k = x_k rho(r) / r

def sums_closed_form(rho, drho, d2rho, r: float, d: int) -> dict:
    A = rho - r * drho
    return {
        "u2": rho**2,
        "Du2": (d - 1) * rho**2 / r**2 + drho**2,
        "D2u2": d2rho**2 + 3 * (d - 1) * A**2 / r**4,
        "lap2": ((d - 1) * A / r**2 - d2rho) ** 2,
    }


def sums_finite_difference(rho_fn, x, h0: float = 1e-2) -> dict:
    """The same four sums from central differences of u_k = x_k rho(|x|)/|x|."""
    x = np.asarray(x, dtype=float)
    d = len(x)
    eye = np.eye(d)

    def u(k, y):
        r = math.sqrt(float(np.dot(y, y)))
        return y[k] * rho_fn(r) / r

    u2 = sum(u(k, x) ** 2 for k in range(d))
    Du2 = D2u2 = lap2 = 0.0
    for k in range(d):
        def along(e, k=k):
            return lambda t: u(k, x + t * e)

        grad = [fd_derivative(along(eye[i]), 0.0, 1, h0).value for i in range(d)]
        Du2 += sum(gi * gi for gi in grad)
        hess = np.zeros((d, d))
        for i in range(d):
            hess[i, i] = fd_derivative(along(eye[i]), 0.0, 2, h0).value
            for j in range(i + 1, d):
                plus = fd_derivative(along((eye[i] + eye[j])), 0.0, 2, h0).value
                minus = fd_derivative(along((eye[i] - eye[j])), 0.0, 2, h0).value
                hess[i, j] = hess[j, i] = (plus - minus) / 4
        D2u2 += float(np.sum(hess * hess))
        lap2 += float(np.trace(hess)) ** 2
    return {"u2": u2, "Du2": Du2, "D2u2": D2u2, "lap2": lap2}


class GaussPolyProfile:
    """rho(r) = r (c0 + c1 r + c2 r^2) exp(-alpha r^2) with exact derivatives."""

    def __init__(self, c, alpha):
        self.c = np.asarray(c, dtype=float)
        self.alpha = float(alpha)
        # p(r) = r (c0 + c1 r + c2 r^2)
        self.p = np.polynomial.Polynomial(np.concatenate([[0.0], self.c]))

    def __call__(self, r):
        return self.derivs(r)[0]

    def derivs(self, r):
        p, al = self.p, self.alpha
        e = math.exp(-al * r * r)
        p0, p1, p2 = p(r), p.deriv(1)(r), p.deriv(2)(r)
        q1 = -2 * al * r
        q2 = -2 * al + q1 * q1
        return e * p0, e * (p1 + q1 * p0), e * (p2 + 2 * q1 * p1 + q2 * p0)


def calculus_identity_check(seed: int = 0, n_pairs: int = 20, rel_tol: float = 1e-6) -> list[CheckResult]:
    """Finite-difference sums vs closed forms, and the pointwise Hessian identity."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(n_pairs):
        d = 2 + i % 2
        prof = GaussPolyProfile(rng.uniform(-1, 1, 3) + np.array([1.5, 0, 0]), rng.uniform(0.1, 0.6))
        direction = rng.standard_normal(d)
        x = direction / np.linalg.norm(direction) * rng.uniform(0.4, 1.5)
        r = float(np.linalg.norm(x))
        closed = sums_closed_form(*prof.derivs(r), r, d)
        fd = sums_finite_difference(prof, x)
        for key, val in closed.items():
            denom = max(abs(val), 1e-3 * closed["u2"])
            worst = max(worst, abs(fd[key] - val) / denom)
    out = [CheckResult("derivs", status_of(worst <= rel_tol), worst, rel_tol)]
    ok, count = ptwise_identity_holds(seed)
    out.append(CheckResult("ptwise", status_of(ok), count, 0))
    return out


def ptwise_identity_holds(seed: int = 0, trials: int = 6, degree: int = 4) -> tuple[bool, int]:
    """|D^2u|^2 = 1/2 (Lap|Du|^2 - 2 D(Lap u).Du) = 1/2 div(D|Du|^2 - 2 Lap u Du) + (Lap u)^2.

    Checked symbolically on random integer polynomials in 2 and 3 variables.
    Returns (all held, number of polynomials checked).
    """
    import sympy as sp

    rng = np.random.default_rng(seed)
    n_checked = 0
    for t in range(trials):
        d = 2 + t % 2
        xs = sp.symbols(f"x0:{d}")
        monos = sorted(sp.itermonomials(xs, degree), key=sp.default_sort_key)
        u = sum(int(c) * m for c, m in zip(rng.integers(-5, 6, len(monos)), monos))
        grad = [sp.diff(u, v) for v in xs]
        lap = sum(sp.diff(u, v, 2) for v in xs)
        hess2 = sum(sp.diff(u, v, w) ** 2 for v in xs for w in xs)
        du2 = sum(g * g for g in grad)
        lap_du2 = sum(sp.diff(du2, v, 2) for v in xs)
        dlap_du = sum(sp.diff(lap, v) * g for v, g in zip(xs, grad))
        first = sp.Rational(1, 2) * (lap_du2 - 2 * dlap_du)
        flux = [sp.diff(du2, v) - 2 * lap * g for v, g in zip(xs, grad)]
        second = sp.Rational(1, 2) * sum(sp.diff(f, v) for f, v in zip(flux, xs)) + lap**2
        if sp.expand(hess2 - first) != 0 or sp.expand(hess2 - second) != 0:
            return False, n_checked + 1
        n_checked += 1
    return True, n_checked
