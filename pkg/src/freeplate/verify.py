"""One-shot verification suite: every invariant check as a report entry."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import ball_spectrum as ball
from . import rod_spectrum as rod
from .errors import DomainError
from .isoperimetric import lemmas
from .isoperimetric.domains import make_domain
from .isoperimetric.quadrature import (
    DirectionSampler,
    _ray_sum,
    _table_radius,
    center_translate,
    normalize_volume,
    profile_tables,
    quotient_bound,
)
from .report import FAIL, PASS, CheckResult, status_of
from .special_functions import (
    UltraIndex,
    first_deriv_zero,
    gamma_half_integer,
    recurrence_residuals,
    ultra_i,
    ultra_j,
)

__all__ = [
    "SUITES",
    "LEMMA_OF",
    "IN_SCOPE",
    "ReportEntry",
    "VerificationReport",
    "verify_suite",
]

# Lemma and fact labels the suite is allowed to cite.
IN_SCOPE = frozenset({
    "propLS", "recurrences", "fact1", "fact1.5", "fact2", "fact3", "fact4", "ijbounds", "domination",
    "ballBC", "wbounds", "wbounds2", "thm2", "scaling", "minertia",
    "posclass", "zeroclass", "negclass", "fefo", "crossings", "hyperbolic",
    "trialfcn", "lemmaboundRC", "monint", "mondenom", "monnum", "gppneg", "largetau", "smalltau",
    "poly1", "poly2", "derivs", "ptwise",
})

# check_id -> (lemma label, short statement of what is checked)
LEMMA_OF: dict[str, tuple[str, str]] = {
    "p11-d2": ("propLS", "p11(d=2) = 1.84118 +- 1e-4"),
    "propLS": ("propLS", "d < p11^2 < d + 2 for d = 2..10"),
    "recurrences": ("recurrences", "eight j/i recurrences to 1e-11 relative"),
    "domination": ("domination", "|j_l^(m)| < i_l^(m) for z in (0, 20]"),
    "fact1": ("fact1", "j_l > 0 on (0, p11], l = 1..5"),
    "fact1.5": ("fact1.5", "j_1' > 0 on (0, p11)"),
    "fact2": ("fact2", "j_2' > 0 on (0, p11]"),
    "fact3": ("fact3", "j_1'' < 0 on (0, p11]"),
    "fact4": ("fact4", "j_1'''' > 0 on (0, p11]"),
    "ijbounds": ("ijbounds", "cubic Taylor bounds on j_1'' and i_1''"),
    "ballBC": ("ballBC", "M and V boundary residuals <= 1e-8 relative"),
    "wbounds": ("wbounds", "tau p11^2 <= omega* <= tau (d + 2)"),
    "wbounds2": ("wbounds2", "omega*/tau decreasing; |omega*/tau - p11^2| <= C*/tau at tau = 1e4"),
    "thm2-ordering": ("thm2", "first root of W_1 below those of W_0 and W_2"),
    "scaling": ("scaling", "omega(tau, B_s) = s^-4 omega(s^2 tau, B_1) to 1e-8"),
    "inertiabound": ("minertia", "tau |B| d / omega* >= |B| d / (d + 2)"),
    "fefo": ("fefo", "odd/even rod zeros interlace for k = 0..9"),
    "fefo-first": ("posclass", "lowest positive rod mode is odd with a < pi/2"),
    "negclass-degenerate": ("negclass", "degenerate even mode a = 1.13943 +- 1e-4"),
    "negclass-degenerate-tau": ("negclass", "degenerate tau = -2.5966 +- 1e-3"),
    "negclass-degenerate-omega": ("negclass", "degenerate omega = -1.6856 +- 1e-3"),
    "negclass-degenerate-ratio": ("negclass", "degenerate C/D = -0.4174 +- 1e-3"),
    "zeroclass": ("zeroclass", "extra zero modes at -k^2 pi^2 (odd), -(2k+1)^2 pi^2/4 (even)"),
    "crossings": ("crossings", "odd and even trig roots coincide at -5 pi^2 and -10 pi^2/4"),
    "trig-residuals": ("negclass", "trig-regime boundary residuals <= 1e-9"),
    "hyperbolic-exclusion": ("hyperbolic", "tanh^2 b < 2 + 4 b^2/|tau| over a grid"),
    "lemmaboundRC-equality": ("lemmaboundRC", "Qhat(ball) = omega* to max(1e-6 omega*, eps_mc)"),
    "lemmaboundRC-strict": ("lemmaboundRC", "Qhat < omega* with gap > 3 eps_mc off the ball"),
    "translation": ("trialfcn", "Qhat invariant under translating the region"),
    "monint": ("monint", "int N over region <= over ball; int rho^2 over region >= over ball"),
    "mondenom": ("mondenom", "(rho^2)' > 0"),
    "monnum": ("monnum", "min N inside > max N outside the unit ball"),
    "inner-identity": ("monnum", "recurrence form of (rho - r rho')/r^2 to 1e-10"),
    "gppneg": ("gppneg", "rho'' < 0 on (0, 1)"),
    "quantinterest": ("monnum", "6 (rho - r rho')/r^2 + 3 rho'' + tau rho > 0 on (0, 1]"),
    "largetau": ("largetau", "tau - 3a^2/(d+2) > 0 above the threshold"),
    "smalltau": ("smalltau", "tau - 3a^2/(d+2) + gamma (tau + 3b^2/(d+2)) > 0 below it"),
    "poly1": ("poly1", "P(x, d) >= 0 on its interval, d = 3..50"),
    "poly1-g7": ("poly1", "g(7) = 6876"),
    "poly1-gprime5": ("poly1", "g'(5) = 1875"),
    "poly1-P3crit": ("poly1", "interior critical value of P_3 within 5% of 79"),
    "poly2": ("poly2", "Q(x) > 0 on (0, 12/7]"),
    "derivs": ("derivs", "finite-difference sums match closed forms to 1e-6"),
    "ptwise": ("ptwise", "Hessian identity exact on random quartics"),
}

SWEEP_D = (2, 3, 4, 5)
SWEEP_TAU = (0.1, 1.0, 10.0, 100.0)
N_SAMPLES = 10_000


@dataclass
class ReportEntry:
    check_id: str
    reference: str
    status: str
    value: object
    tolerance: object
    runtime_ms: float = field(default=0.0, compare=False)

    def to_json(self, timings: bool = False) -> dict:
        base = CheckResult(self.check_id, self.status, self.value, self.tolerance).to_json()
        out = {
            "check_id": self.check_id,
            "reference": self.reference,
            "status": self.status,
            "value": base["value"],
            "tolerance": base["tolerance"],
        }
        if timings:
            out["runtime_ms"] = round(self.runtime_ms, 3)
        return out


@dataclass
class VerificationReport:
    selection: str
    seed: int
    entries: list[ReportEntry]

    @property
    def passed(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    def by_id(self) -> dict[str, list[ReportEntry]]:
        out: dict[str, list[ReportEntry]] = {}
        for e in self.entries:
            out.setdefault(e.check_id, []).append(e)
        return out

    def to_json(self, timings: bool = False) -> dict:
        return {
            "selection": self.selection,
            "seed": self.seed,
            "passed": self.passed,
            "entries": [e.to_json(timings) for e in self.entries],
        }

    def rows(self, timings: bool = False) -> list[dict]:
        return [e.to_json(timings) for e in self.entries]


def _entry(res: CheckResult, ms: float) -> ReportEntry:
    label, text = LEMMA_OF[res.check]
    return ReportEntry(res.check, f"{label}: {text}", res.status, res.value, res.tolerance, ms)


# special functions

def _p11(d):
    return first_deriv_zero(UltraIndex(d, 1))


def _sf_checks(seed: int):
    p = _p11(2)
    yield CheckResult("p11-d2", status_of(abs(p - 1.84118) <= 1e-4), p, 1e-4)
    worst = math.inf
    for d in range(2, 11):
        p2 = _p11(d) ** 2
        worst = min(worst, p2 - d, d + 2 - p2)
    yield CheckResult("propLS", status_of(worst > 0), worst, 0.0)

    zs = np.linspace(0.05, 10.0, 40)
    rec = 0.0
    for d in (2, 3, 4, 5, 7, 10):
        for l in range(0, 6):
            idx = UltraIndex(d, l)
            for z in zs:
                rec = max(rec, recurrence_residuals(idx, float(z)).max_relative())
    yield CheckResult("recurrences", status_of(rec <= 1e-11), rec, 1e-11)

    z = np.linspace(0.0, 20.0, 401)[1:]
    margin = math.inf
    for d in range(2, 11):
        for l in range(0, 6):
            idx = UltraIndex(d, l)
            for m in range(5):
                jv, iv = np.abs(ultra_j(idx, m, z)), ultra_i(idx, m, z)
                good = iv > 0
                margin = min(margin, float(np.min((iv[good] - jv[good]) / iv[good])))
    yield CheckResult("domination", status_of(margin > 0), margin, 0.0)

    worst = {"fact1": math.inf, "fact1.5": math.inf, "fact2": math.inf, "fact3": math.inf, "fact4": math.inf}
    ij = math.inf
    for d in range(2, 11):
        p = _p11(d)
        z = np.linspace(p / N_SAMPLES, p, N_SAMPLES)
        one = UltraIndex(d, 1)
        for l in range(1, 6):
            worst["fact1"] = min(worst["fact1"], float(np.min(ultra_j(UltraIndex(d, l), 0, z))))
        worst["fact1.5"] = min(worst["fact1.5"], float(np.min(ultra_j(one, 1, z[:-1]))))
        worst["fact2"] = min(worst["fact2"], float(np.min(ultra_j(UltraIndex(d, 2), 1, z))))
        worst["fact3"] = min(worst["fact3"], float(np.min(-ultra_j(one, 2, z))))
        worst["fact4"] = min(worst["fact4"], float(np.min(ultra_j(one, 4, z))))

        def dk(k):
            return (2 * k + 1) * 2.0 ** (1 - 2 * k - d / 2) / (math.factorial(k - 1) * gamma_half_integer(k + 1 + d / 2))

        d1, d2 = dk(1), dk(2)
        zj = np.linspace(0, math.sqrt(3 * (d + 2) / (d + 5)), N_SAMPLES)
        zi = np.linspace(0, math.sqrt(3), N_SAMPLES)
        ij = min(ij, float(np.min(-d1 * zj + d2 * zj**3 - ultra_j(one, 2, zj))))
        ij = min(ij, float(np.min(d1 * zi + 1.2 * d2 * zi**3 - ultra_i(one, 2, zi))))
    for key, val in worst.items():
        yield CheckResult(key, status_of(val > 0), val, 0.0)
    yield CheckResult("ijbounds", status_of(ij >= -1e-15), ij, -1e-15)


# ball spectrum

def _ball_checks(seed: int):
    res = 0.0
    bounds = math.inf
    ordering = math.inf
    monotone = True
    for d in SWEEP_D:
        p2 = _p11(d) ** 2
        prev = math.inf
        for tau in SWEEP_TAU:
            tone = ball.fundamental_tone(d, tau)
            res = max(res, abs(tone.residual_M), tone.relative_residual_V)
            bounds = min(bounds, (tone.omega - tau * p2) / tone.omega, (tau * (d + 2) - tone.omega) / tone.omega)
            for l in (0, 2):
                other = ball.tone_for_order(d, l, tau)
                gap = math.inf if other is None else other.a - tone.a
                ordering = min(ordering, gap)
            monotone = monotone and tone.omega / tau < prev
            prev = tone.omega / tau
    yield CheckResult("ballBC", status_of(res <= 1e-8), res, 1e-8)
    yield CheckResult("wbounds", status_of(bounds >= -1e-12), bounds, -1e-12)
    yield CheckResult("thm2-ordering", status_of(ordering > 0), ordering, 0.0)

    tau = 1e4
    cstar = ball.membrane_constant(2)
    excess = ball.fundamental_tone(2, tau).omega / tau - _p11(2) ** 2
    ok = monotone and 0 <= excess <= cstar / tau
    yield CheckResult("wbounds2", status_of(ok), excess, cstar / tau, detail=f"C*={cstar!r}")

    worst = 0.0
    for d in (2, 3):
        for s in (0.5, 2.0):
            for tau in (1.0, 4.0):
                direct = ball.scaled_tone(d, tau, s)
                ref = s**-4 * ball.fundamental_tone(d, s * s * tau).omega
                worst = max(worst, abs(direct - ref) / direct)
    yield CheckResult("scaling", status_of(worst <= 1e-8), worst, 1e-8)

    margin = math.inf
    for d in SWEEP_D:
        for tau in (0.01,) + SWEEP_TAU:
            lhs, rhs, _ = ball.inertia_bound_check(d, tau)
            margin = min(margin, lhs / rhs - 1)
    yield CheckResult("inertiabound", status_of(margin >= -1e-12), margin, -1e-12)


# rod spectrum

def _rod_checks(seed: int):
    worst = math.inf
    first_ok = True
    for tau in (0.5, 2.0, 10.0):
        modes = rod.positive_modes(tau, 20)
        odd = sorted(m.a for m in modes if m.parity == "odd")[:10]
        even = sorted(m.a for m in modes if m.parity == "even")[:10]
        if len(odd) < 10 or len(even) < 10:
            worst = -math.inf
            continue
        for k in range(10):
            lo = k * math.pi
            worst = min(worst, odd[k] - lo, lo + math.pi / 2 - odd[k])
            worst = min(worst, even[k] - lo - math.pi / 2, lo + math.pi - even[k])
        first = modes[0]
        first_ok = first_ok and first.parity == "odd" and 0 < first.a < math.pi / 2
    yield CheckResult("fefo", status_of(worst > 0), worst, 0.0)
    yield CheckResult("fefo-first", status_of(first_ok), first_ok, True)

    a = rod.degenerate_root()
    mode = rod.degenerate_mode(-2 * a * a)
    yield CheckResult("negclass-degenerate", status_of(abs(mode.a - 1.13943) <= 1e-4), mode.a, 1e-4)
    yield CheckResult("negclass-degenerate-tau", status_of(abs(mode.tau + 2.5966) <= 1e-3), mode.tau, 1e-3)
    yield CheckResult("negclass-degenerate-omega", status_of(abs(mode.omega + 1.6856) <= 1e-3), mode.omega, 1e-3)
    yield CheckResult("negclass-degenerate-ratio", status_of(abs(mode.coeff_ratio + 0.4174) <= 1e-3),
                      mode.coeff_ratio, 1e-3)

    res, ok = 0.0, True
    for k in (1, 2, 3):
        for tau, parity in ((-(k * math.pi) ** 2, "odd"), (-((2 * k + 1) * math.pi / 2) ** 2, "even")):
            info = rod.zero_mode_degeneracy(tau)
            ok = ok and info.degenerate and info.parity == parity
            res = max(res, info.residual)
    yield CheckResult("zeroclass", status_of(ok and res <= 1e-9), res, 1e-9)

    gap, tres = 0.0, 0.0
    for tau, a, b in ((-5 * math.pi**2, math.pi, 2 * math.pi), (-10 * math.pi**2 / 4, math.pi / 2, 3 * math.pi / 2)):
        listed = any(abs(t - tau) <= 1e-12 * abs(tau) for t, _, _ in rod.crossing_taus(tau - 1, tau + 1))
        modes = rod.trig_modes(tau)
        tres = max([tres] + [m.residual for m in modes])
        for parity in ("odd", "even"):
            near = [abs(m.a - a) for m in modes if m.parity == parity]
            gap = max(gap, min(near) if near and listed else math.inf)
    yield CheckResult("crossings", status_of(gap <= 1e-8), gap, 1e-8)
    for tau in (-3.0, -12.0, -30.0):
        tres = max([tres] + [m.residual for m in rod.trig_modes(tau)])
    yield CheckResult("trig-residuals", status_of(tres <= 1e-9), tres, 1e-9)

    margin = math.inf
    for tau in np.linspace(-50.0, -0.1, 60):
        for b in np.linspace(0.05, 20.0, 60):
            a = math.sqrt(b * b - tau / 2)
            h = rod.hyperbolic_residual(float(tau), a, float(b))
            margin = min(margin, h.single_term_rhs - h.tanh2)
    yield CheckResult("hyperbolic-exclusion", status_of(margin > 0), margin, 0.0)


# isoperimetric

def _iso_checks(seed: int):
    sampler2 = DirectionSampler(2, seed=seed)
    sampler3 = DirectionSampler(3, seed=seed)
    worst_eq = 0.0
    ok_eq = True
    for d, sampler in ((2, sampler2), (3, sampler3)):
        unit = make_domain("ball", d, (1.0,))
        for tau in (1.0, 10.0):
            q = quotient_bound(unit, tau, sampler=sampler)
            tol = max(1e-6 * q.tone_ball, q.eps_mc)
            err = abs(q.qhat - q.tone_ball)
            ok_eq = ok_eq and err <= tol
            worst_eq = max(worst_eq, err / q.tone_ball)
    yield CheckResult("lemmaboundRC-equality", status_of(ok_eq), worst_eq, 1e-6)

    shapes = [
        normalize_volume(make_domain("ellipsoid", 2, (2.0, 1.0))),
        normalize_volume(make_domain("box", 2, (1.0, 1.0))),
    ]
    strict = math.inf
    monint = math.inf
    trans = 0.0
    for tau in (1.0, 10.0):
        tone = ball.fundamental_tone(2, tau)
        prof = ball.radial_profile(tone)
        unit = make_domain("ball", 2, (1.0,))
        for spec in shapes:
            q = quotient_bound(spec, tau, sampler=sampler2)
            strict = min(strict, q.gap - 3 * q.eps_mc)
            tabs = profile_tables(prof, _table_radius(spec))
            btabs = profile_tables(prof, _table_radius(unit))
            c = np.asarray(q.center)
            dirs = sampler2.directions
            f_dom = _ray_sum(spec, c, tabs["num"], dirs)
            f_ball = _ray_sum(unit, np.zeros(2), btabs["num"], dirs)
            g_dom = _ray_sum(spec, c, tabs["den"], dirs)
            g_ball = _ray_sum(unit, np.zeros(2), btabs["den"], dirs)
            monint = min(monint, (f_ball - f_dom) / f_ball, (g_dom - g_ball) / g_ball)
        moved = shapes[1].translated((0.37, -1.21))
        q0 = quotient_bound(shapes[1], tau, sampler=sampler2)
        q1 = quotient_bound(moved, tau, sampler=sampler2)
        trans = max(trans, abs(q1.qhat - q0.qhat) / q0.qhat)
    yield CheckResult("lemmaboundRC-strict", status_of(strict > 0), strict, 0.0)
    yield CheckResult("monint", status_of(monint > 0), monint, 0.0)
    yield CheckResult("translation", status_of(trans <= 1e-6), trans, 1e-6)

    agg: dict[str, CheckResult] = {}
    inner_err = 0.0
    for d in (2, 3, 5):
        for tau in (0.5, 5.0):
            prof = ball.radial_profile(ball.fundamental_tone(d, tau))
            inner_err = max(inner_err, lemmas.inner_identity_error(prof))
            for res in lemmas.monotonicity_report(prof, tau, d):
                prev = agg.get(res.check)
                if prev is None or (res.status == FAIL and prev.status != FAIL) or (
                    res.status == prev.status and _worse(res, prev)
                ):
                    agg[res.check] = res
    yield CheckResult("inner-identity", status_of(inner_err <= 1e-10), inner_err, 1e-10)
    for key in ("mondenom", "monnum", "gppneg", "quantinterest", "largetau", "smalltau"):
        yield agg[key]

    yield from lemmas.polynomial_lemma_check()
    yield from lemmas.calculus_identity_check(seed)


def _worse(a: CheckResult, b: CheckResult) -> bool:
    # gppneg wants negative values; all other sign checks want positive ones
    if a.check == "gppneg":
        return a.value > b.value
    return a.value < b.value


SUITES = {
    "special_functions": _sf_checks,
    "ball_spectrum": _ball_checks,
    "rod_spectrum": _rod_checks,
    "isoperimetric": _iso_checks,
}


def verify_suite(selection: str = "all", seed: int = 0) -> VerificationReport:
    """Run one named suite or all of them; failures are report content."""
    if selection == "all":
        names = list(SUITES)
    elif selection in SUITES:
        names = [selection]
    else:
        raise DomainError(f"unknown suite {selection!r}; choose all or one of {sorted(SUITES)}")
    entries = []
    for name in names:
        gen = SUITES[name](seed)
        while True:
            t0 = time.perf_counter()
            try:
                res = next(gen)
            except StopIteration:
                break
            except Exception as exc:  # noqa: BLE001 - a crash is a failed check
                entries.append(ReportEntry(f"{name}-error", f"{name}: {type(exc).__name__}: {exc}",
                                           FAIL, None, None, 0.0))
                break
            entries.append(_entry(res, 1000 * (time.perf_counter() - t0)))
    return VerificationReport(selection, seed, entries)
