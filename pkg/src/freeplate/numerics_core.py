"""Root bracketing/refinement, adaptive Simpson quadrature, finite differences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, EvaluationError, QuadratureError

__all__ = [
    "Bracket",
    "QuadraturePolicy",
    "bracket_roots",
    "refine_root",
    "integrate_1d",
    "FDResult",
    "fd_derivative",
]


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class QuadraturePolicy:
    abs_tol: float = 1e-10
    max_depth: int = 40

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")


def _checked(f, x):
    try:
        y = f(x)
    except Exception as exc:  # noqa: BLE001 - re-raised with the abscissa attached
        raise EvaluationError(f"evaluation failed at x={x!r}: {exc}", x=x) from exc
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        bad = x if np.ndim(x) == 0 else np.asarray(x)[~np.isfinite(y)][0]
        raise EvaluationError(f"non-finite value at x={bad!r}", x=bad)
    return y


def bracket_roots(
    f: Callable, interval: tuple[float, float], grid_n: int, vectorized: bool = False
) -> list[Bracket]:
    """All sign-change brackets of ``f`` on a uniform grid, in increasing order.

    With ``vectorized=True`` ``f`` is called once on the whole grid array.
    A grid point where ``f`` is exactly zero yields a bracket one grid step
    wide centred on it.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise DomainError(f"empty interval [{lo}, {hi}]")
    if grid_n < 2:
        raise DomainError("grid_n must be >= 2")
    xs = np.linspace(lo, hi, grid_n)
    if vectorized:
        ys = _checked(f, xs)
    else:
        ys = np.array([float(_checked(f, float(x))) for x in xs])
    step = (hi - lo) / (grid_n - 1)
    signs = np.sign(ys)
    out: list[Bracket] = []
    for i in range(grid_n):
        if signs[i] == 0:
            a, b = float(xs[i] - step / 2), float(xs[i] + step / 2)
            out.append(Bracket(a, b, float(_checked(f, a)), float(_checked(f, b))))
        elif i + 1 < grid_n and signs[i] * signs[i + 1] < 0:
            out.append(Bracket(float(xs[i]), float(xs[i + 1]), float(ys[i]), float(ys[i + 1])))
    return out


def refine_root(f: Callable, b: Bracket, tol: float, max_iter: int = 300) -> float:
    """Bisection with guarded secant steps; deterministic.

    A secant candidate is used only if it falls strictly inside the current
    bracket, and every other iteration is a plain bisection, so the bracket
    at least halves every two steps.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    lo, hi, flo, fhi = float(b.lo), float(b.hi), float(b.f_lo), float(b.f_hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        mid = 0.5 * (lo + hi)
        if float(_checked(f, mid)) == 0:
            return mid
        raise DomainError(f"not a sign-change bracket: [{lo}, {hi}]")
    for it in range(max_iter):
        if hi - lo <= tol:
            break
        x = 0.5 * (lo + hi)
        if it % 2 == 0:
            cand = hi - fhi * (hi - lo) / (fhi - flo)
            if lo < cand < hi:
                x = cand
        fx = float(_checked(f, x))
        if fx == 0:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    return lo if abs(flo) <= abs(fhi) else hi


def integrate_1d(
    f: Callable[[float], float],
    interval: tuple[float, float],
    policy: QuadraturePolicy = QuadraturePolicy(),
) -> float:
    """Adaptive Simpson quadrature with Richardson correction per panel."""
    a, b = float(interval[0]), float(interval[1])
    if a == b:
        return 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0

    def fx(x):
        return float(_checked(f, x))

    fa, fm, fb = fx(a), fx(0.5 * (a + b)), fx(b)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    total = 0.0
    stack = [(a, b, fa, fm, fb, whole, policy.abs_tol, 0)]
    worst = None
    while stack:
        lo, hi, flo, fmid, fhi, s, tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl, fr = fx(0.5 * (lo + mid)), fx(0.5 * (mid + hi))
        left = (mid - lo) / 6 * (flo + 4 * fl + fmid)
        right = (hi - mid) / 6 * (fmid + 4 * fr + fhi)
        err = left + right - s
        if abs(err) <= 15 * tol:
            total += left + right + err / 15
            continue
        if depth >= policy.max_depth:
            if worst is None or abs(err) > worst[2]:
                worst = (lo, hi, abs(err))
            total += left + right + err / 15
            continue
        stack.append((mid, hi, fmid, fr, fhi, right, tol / 2, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, tol / 2, depth + 1))
    if worst is not None:
        raise QuadratureError(
            f"max depth {policy.max_depth} exceeded; worst subinterval "
            f"[{worst[0]!r}, {worst[1]!r}] error estimate {worst[2]:.3g}",
            worst_interval=(worst[0], worst[1]),
        )
    return sign * total


class FDResult(NamedTuple):
    value: float
    error: float


def fd_derivative(f: Callable[[float], float], x: float, order: int = 1, h0: float = 1e-2) -> FDResult:
    """Central difference of order 1 or 2, Richardson-extrapolated over h0, h0/2, h0/4."""
    if order not in (1, 2):
        raise DomainError("order must be 1 or 2")

    def central(h):
        if order == 1:
            return (f(x + h) - f(x - h)) / (2 * h)
        return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)

    d0, d1, d2 = central(h0), central(h0 / 2), central(h0 / 4)
    r1 = (4 * d1 - d0) / 3
    r2 = (4 * d2 - d1) / 3
    best = (16 * r2 - r1) / 15
    return FDResult(best, abs(best - r2))


def sign_changes(values) -> int:
    """Number of strict sign changes along a 1-D sequence (zeros skipped)."""
    s = np.sign(np.asarray(values, dtype=float))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def isclose_rel(a: float, b: float, rel: float) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=0.0)
