"""Acceptance criteria 1-13, each at its stated tolerance."""

from __future__ import annotations

import io
import math
import subprocess
import sys

import numpy as np
import pytest

from freeplate import ball_spectrum as ball
from freeplate import rod_spectrum as rod
from freeplate.cli import run
from freeplate.isoperimetric import (
    calculus_identity_check,
    make_domain,
    monotonicity_report,
    normalize_volume,
    polynomial_lemma_check,
    quotient_bound,
)
from freeplate.isoperimetric.lemmas import P_value, Q_poly, g_poly, g_prime
from freeplate.special_functions import (
    UltraIndex,
    first_deriv_zero,
    gamma_half_integer,
    recurrence_residuals,
    ultra_i,
    ultra_j,
)

PI = math.pi
DS = (2, 3, 4, 5)
TAUS = (0.1, 1.0, 10.0, 100.0)


def p11(d):
    return first_deriv_zero(UltraIndex(d, 1))


def test_criterion_01_bessel_engine(acceptance):
    p = p11(2)
    ok_p = abs(p - 1.84118) <= 1e-4
    ok_ls = all(d < p11(d) ** 2 < d + 2 for d in range(2, 11))
    rec = max(
        recurrence_residuals(UltraIndex(d, l), float(z)).max_relative()
        for d in range(2, 11) for l in range(0, 6) for z in np.linspace(0.05, 10, 25)
    )
    signs = True
    taylor = True
    for d in range(2, 11):
        pd = p11(d)
        z = np.linspace(pd / 1e4, pd, 10_000)
        one = UltraIndex(d, 1)
        signs &= all(np.all(ultra_j(UltraIndex(d, l), 0, z) > 0) for l in range(1, 6))
        signs &= bool(np.all(ultra_j(one, 1, z[:-1]) > 0))
        signs &= bool(np.all(ultra_j(UltraIndex(d, 2), 1, z) > 0))
        signs &= bool(np.all(ultra_j(one, 2, z) < 0))
        signs &= bool(np.all(ultra_j(one, 4, z) > 0))

        def dk(k):
            return (2 * k + 1) * 2.0 ** (1 - 2 * k - d / 2) / (math.factorial(k - 1) * gamma_half_integer(k + 1 + d / 2))

        zj = np.linspace(0, math.sqrt(3 * (d + 2) / (d + 5)), 10_000)
        zi = np.linspace(0, math.sqrt(3), 10_000)
        # equality at z = 0; allow one rounding unit there
        taylor &= bool(np.all(-dk(1) * zj + dk(2) * zj**3 - ultra_j(one, 2, zj) >= -1e-15))
        taylor &= bool(np.all(dk(1) * zi + 1.2 * dk(2) * zi**3 - ultra_i(one, 2, zi) >= -1e-15))
    ok = ok_p and ok_ls and rec <= 1e-11 and signs and taylor
    acceptance(1, ok, f"p11(2)={p:.8f}, propLS={ok_ls}, max recurrence={rec:.2e}, fact1-4={signs}, ijbounds={taylor}")


def test_criterion_02_tone_bounds(acceptance):
    bounds, decreasing = True, True
    for d in DS:
        ratios = []
        for tau in TAUS:
            w = ball.fundamental_tone(d, tau).omega
            bounds &= tau * p11(d) ** 2 <= w <= tau * (d + 2)
            ratios.append(w / tau)
        decreasing &= all(r2 < r1 for r1, r2 in zip(ratios, ratios[1:]))
    cstar = ball.membrane_constant(2)
    excess = ball.fundamental_tone(2, 1e4).omega / 1e4 - p11(2) ** 2
    limit = 0 <= excess <= cstar / 1e4
    acceptance(2, bounds and decreasing and limit,
               f"bounds={bounds}, omega/tau decreasing={decreasing}, excess={excess:.3e} <= C*/tau={cstar / 1e4:.3e}")


def test_criterion_03_ordering_and_residuals(acceptance, tone_grid):
    ordered, worst = True, 0.0
    for (d, tau), t1 in tone_grid.items():
        for l in (0, 2):
            other = ball.tone_for_order(d, l, tau)
            ordered &= other is None or t1.a < other.a
        m, v = ball.boundary_residuals(t1)
        worst = max(worst, abs(m), abs(v) / t1.residual_scale)
    acceptance(3, ordered and worst <= 1e-8, f"W1 root first={ordered}, max relative residual={worst:.2e}")


def test_criterion_04_scaling(acceptance):
    worst = 0.0
    for d in (2, 3):
        for s in (0.5, 2.0):
            for tau in (1.0, 4.0):
                w = ball.scaled_tone(d, tau, s)
                worst = max(worst, abs(w - s**-4 * ball.fundamental_tone(d, s * s * tau).omega) / w)
    acceptance(4, worst <= 1e-8, f"max relative scaling error={worst:.2e}")


def test_criterion_05_quotient(acceptance):
    eq = quotient_bound(make_domain("ball", 2, (1.0,)), 1.0)
    ok = abs(eq.qhat - eq.tone_ball) <= max(1e-6 * eq.tone_ball, eq.eps_mc)
    parts = [f"ball |Q-w*|={abs(eq.qhat - eq.tone_ball):.1e}"]
    for tau in (1.0, 10.0):
        for name, spec in (("ellipse", make_domain("ellipsoid", 2, (2.0, 1.0))), ("square", make_domain("box", 2, (1.0, 1.0)))):
            q = quotient_bound(normalize_volume(spec), tau)
            ok &= q.qhat < q.tone_ball and q.gap > 3 * q.eps_mc
            parts.append(f"{name} tau={tau:g} gap={q.gap:.3g} eps={q.eps_mc:.1e}")
    acceptance(5, ok, "; ".join(parts))


def test_criterion_06_monotonicity(acceptance):
    ok, branches = True, set()
    for d in (2, 3, 5):
        for tau in (0.5, 5.0):
            prof = ball.radial_profile(ball.fundamental_tone(d, tau))
            rep = monotonicity_report(prof, tau, d)
            ok &= all(c.passed for c in rep)
            branches |= {c.check for c in rep} & {"smalltau", "largetau"}
    ok &= branches == {"smalltau", "largetau"}
    acceptance(6, ok, f"all monotonicity checks pass for d in (2,3,5) x tau in (0.5,5); branches={sorted(branches)}")


def test_criterion_07_polynomials(acceptance):
    exact = g_poly(7) == 6876 and g_prime(5) == 1875
    pmin = min(float(np.min(P_value(np.linspace(0, 3 * (d + 2) / (d + 5), 10_002)[1:-1], d))) for d in range(3, 51))
    Q = Q_poly(p11(2) ** 2)
    qmin = float(np.min(Q(np.linspace(0, 12 / 7, 10_001)[1:])))
    crit = {c.check: c for c in polynomial_lemma_check()}["poly1-P3crit"].value
    ok = exact and pmin >= 0 and qmin > 0 and abs(crit - 79) <= 0.05 * 79
    acceptance(7, ok, f"g(7), g'(5) exact={exact}; min P={pmin:.3g}; min Q on (0,12/7]={qmin:.3g}; P3(c)={crit:.2f}")


def test_criterion_08_rod_interlacing(acceptance):
    ok = True
    for tau in (0.5, 2.0, 10.0):
        modes = rod.positive_modes(tau, 20)
        odd = [m.a for m in modes if m.parity == "odd"]
        even = [m.a for m in modes if m.parity == "even"]
        ok &= len(odd) >= 10 and len(even) >= 10
        for k in range(10):
            ok &= k * PI < odd[k] < k * PI + PI / 2 and k * PI + PI / 2 < even[k] < (k + 1) * PI
        ok &= modes[0].parity == "odd" and 0 < modes[0].a < PI / 2
    acceptance(8, ok, "odd zeros in (k pi, k pi + pi/2), even in (k pi + pi/2, (k+1) pi), k=0..9; first mode odd")


def test_criterion_09_degenerate_point(acceptance):
    a = rod.degenerate_root()
    m = rod.degenerate_mode(-2 * a * a)
    ok = (abs(m.a - 1.13943) <= 1e-4 and abs(m.tau + 2.5966) <= 1e-3
          and abs(m.omega + 1.6856) <= 1e-3 and abs(m.coeff_ratio + 0.4174) <= 1e-3)
    acceptance(9, ok, f"a={m.a:.6f}, tau={m.tau:.5f}, omega={m.omega:.5f}, C/D={m.coeff_ratio:.5f}")


def test_criterion_10_zero_modes_and_crossings(acceptance):
    ok, worst = True, 0.0
    for k in (1, 2, 3):
        odd = rod.zero_mode_degeneracy(-((k * PI) ** 2))
        even = rod.zero_mode_degeneracy(-(((2 * k + 1) * PI / 2) ** 2))
        ok &= odd.degenerate and odd.parity == "odd" and even.degenerate and even.parity == "even"
        worst = max(worst, odd.residual, even.residual)
    ok &= worst <= 1e-9
    for tau, a in ((-5 * PI**2, PI), (-10 * PI**2 / 4, PI / 2)):
        modes = rod.trig_modes(tau)
        for parity in ("odd", "even"):
            ok &= any(m.parity == parity and abs(m.a - a) <= 1e-8 for m in modes)
    acceptance(10, ok, f"zero-mode residual max={worst:.1e}; crossings at -5 pi^2 and -10 pi^2/4 found for both parities")


def test_criterion_11_hyperbolic_exclusion(acceptance):
    ok, margin = True, math.inf
    for tau in np.linspace(-100, -0.01, 80):
        for b in np.linspace(0.01, 40, 80):
            h = rod.hyperbolic_residual(float(tau), math.sqrt(b * b - tau / 2), float(b))
            ok &= h.tanh2 < h.single_term_rhs and all(h.excluded_forms.values())
            margin = min(margin, h.single_term_rhs - h.tanh2)
    acceptance(11, ok, f"tanh^2 b < 2 + 4b^2/|tau| on 80x80 grid, min margin={margin:.3g}")


def test_criterion_12_derivative_identities(acceptance):
    rep = {c.check: c for c in calculus_identity_check(seed=0, n_pairs=20)}
    ok = rep["derivs"].passed and rep["derivs"].value <= 1e-6 and rep["ptwise"].passed
    acceptance(12, ok, f"max FD relative error={rep['derivs'].value:.2e} over 20 pairs; ptwise exact on {rep['ptwise'].value} quartics")


def test_criterion_13_determinism(acceptance):
    # one cold run in a fresh interpreter, one in-process (warm caches)
    argv = ["verify", "--all", "--seed", "0"]
    cold = subprocess.run([sys.executable, "-m", "freeplate", *argv], capture_output=True, check=False)
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    warm = buf.getvalue().encode()
    ok = cold.returncode == code == 0 and cold.stdout == warm
    acceptance(13, ok, f"cold and warm verify --all runs byte-identical ({len(warm)} bytes), exit {code}")
