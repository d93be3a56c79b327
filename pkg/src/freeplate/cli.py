"""Command-line front end.

Exit codes: 0 success, 1 a check failed (or a computation did not
converge), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import ball_spectrum as ball
from . import rod_spectrum as rod
from .emit import emit
from .errors import BoundViolation, DomainError, FreePlateError
from .isoperimetric import lemmas
from .isoperimetric.domains import make_domain, parse_domain
from .isoperimetric.quadrature import DirectionSampler, normalize_volume, quotient_bound
from .report import FAIL
from .special_functions import UltraIndex, ultra_i, ultra_j
from .verify import SUITES, verify_suite

__all__ = ["run", "main", "build_parser", "RunConfig", "load_config"]

BALL_HEADER = ("tau", "a", "b", "omega", "gamma")
CHECK_HEADER = ("check", "status", "value", "tolerance")
REPORT_HEADER = ("check_id", "reference", "status", "value", "tolerance")
QUOTIENT_HEADER = ("domain", "d", "tau", "qhat", "tone_ball", "gap", "eps_mc", "center")
BESSEL_HEADER = ("kind", "d", "l", "m", "z", "value")

# flag dest -> type, for values read from --config
CONFIG_KEYS = {
    "dim": int, "tau": float, "l": int, "tau_min": float, "tau_max": float, "steps": int,
    "modes": int, "domain": str, "aspect": float, "seed": int, "format": str, "output": str,
    "z": float, "deriv": int, "kind": str, "suite": str,
}
DEFAULTS = {
    "dim": 2, "tau": 1.0, "l": 1, "tau_min": 0.1, "tau_max": 10.0, "steps": 100, "modes": 6,
    "domain": "ball", "aspect": 2.0, "seed": 0, "format": None, "output": None,
    "z": 1.0, "deriv": 0, "kind": "j", "suite": None,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage().rstrip()}\n{self.prog}: error: {message}")


def _common(p: argparse.ArgumentParser, *names: str):
    # defaults stay None so that config entries can fill them in
    spec = {
        "dim": (("--dim",), dict(type=int, help="dimension d >= 2")),
        "tau": (("--tau",), dict(type=float, help="tension parameter")),
        "l": (("--l",), dict(type=int, help="angular order")),
        "tau_min": (("--tau-min",), dict(type=float)),
        "tau_max": (("--tau-max",), dict(type=float)),
        "steps": (("--steps",), dict(type=int, help="number of grid intervals")),
        "modes": (("--modes",), dict(type=int, help="modes per tau")),
        "domain": (("--domain",), dict(help="ball|ellipse|box|square|lshape or a key=value file")),
        "aspect": (("--aspect",), dict(type=float, help="axis ratio for ellipse/box")),
        "z": (("--z",), dict(type=float, help="argument z >= 0")),
        "deriv": (("--deriv",), dict(type=int, help="derivative order 0..4")),
        "kind": (("--kind",), dict(choices=("j", "i"))),
    }
    for name in names:
        flags, kw = spec[name]
        p.add_argument(*flags, dest=name, default=None, **kw)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("-o", dest="output", default=None, help="output path (default stdout)")
    p.add_argument("--config", default=None, help="key=value file; explicit flags win")
    p.add_argument("--timings", action="store_true", help="include runtime_ms in reports")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="freeplate", allow_abbrev=False, description="Free-plate spectra and lemma checks.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bessel = sub.add_parser("bessel", allow_abbrev=False).add_subparsers(dest="action", required=True,
                                                                         parser_class=_Parser)
    _common(bessel.add_parser("eval", allow_abbrev=False), "dim", "l", "z", "deriv", "kind")

    b = sub.add_parser("ball", allow_abbrev=False).add_subparsers(dest="action", required=True,
                                                                  parser_class=_Parser)
    _common(b.add_parser("tone", allow_abbrev=False), "dim", "tau", "l")
    _common(b.add_parser("curve", allow_abbrev=False), "dim", "tau_min", "tau_max", "steps")

    r = sub.add_parser("rod", allow_abbrev=False).add_subparsers(dest="action", required=True,
                                                                 parser_class=_Parser)
    _common(r.add_parser("modes", allow_abbrev=False), "tau", "modes")
    _common(r.add_parser("curve", allow_abbrev=False), "tau_min", "tau_max", "steps", "modes")

    iso = sub.add_parser("iso", allow_abbrev=False).add_subparsers(dest="action", required=True,
                                                                   parser_class=_Parser)
    _common(iso.add_parser("quotient", allow_abbrev=False), "dim", "tau", "domain", "aspect")
    _common(iso.add_parser("monotonicity", allow_abbrev=False), "dim", "tau")

    v = sub.add_parser("verify", allow_abbrev=False)
    group = v.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every suite (default)")
    group.add_argument("--suite", choices=sorted(SUITES), default=None)
    _common(v)
    return top


def load_config(path) -> dict:
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = {"o": "output", "tau-min": "tau_min", "tau-max": "tau_max"}.get(key, key.replace("-", "_"))
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown config key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](val)
        except ValueError as exc:
            raise UsageError(f"{path}:{n}: bad value for {key}: {val!r}") from exc
    return out


class RunConfig(argparse.Namespace):
    """Parsed flags merged over config entries and defaults."""


def _resolve(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else {}
    out = RunConfig(**vars(args))
    for key, default in DEFAULTS.items():
        if getattr(out, key, None) is None:
            setattr(out, key, cfg.get(key, default))
    if out.format not in (None, "csv", "json"):
        raise UsageError(f"unknown format {out.format!r}")
    return out


def _write(cfg, payload, header, default_fmt, stdout):
    fmt = cfg.format or default_fmt
    if fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        text = emit(rows, "csv", cfg.output, header)
    else:
        text = emit(payload, "json", cfg.output)
    if cfg.output in (None, "-"):
        stdout.write(text)


# subcommands

def _bessel_eval(cfg, stdout):
    idx = UltraIndex(cfg.dim, cfg.l)
    fn = ultra_j if cfg.kind == "j" else ultra_i
    row = {"kind": cfg.kind, "d": cfg.dim, "l": cfg.l, "m": cfg.deriv, "z": cfg.z,
           "value": float(fn(idx, cfg.deriv, cfg.z))}
    _write(cfg, row, BESSEL_HEADER, "json", stdout)
    return 0


def _ball_tone(cfg, stdout):
    if cfg.l == 1:
        tone = ball.fundamental_tone(cfg.dim, cfg.tau)
    else:
        tone = ball.tone_for_order(cfg.dim, cfg.l, cfg.tau)
        if tone is None:
            raise FreePlateError(f"no root of W_{cfg.l} below 3 p11 for d={cfg.dim}, tau={cfg.tau}")
    _write(cfg, tone.as_row(), BALL_HEADER, "json", stdout)
    return 0


def _grid(cfg):
    if cfg.steps < 1:
        raise DomainError("--steps must be >= 1")
    if not cfg.tau_min < cfg.tau_max:
        raise DomainError("--tau-min must be below --tau-max")
    return np.linspace(cfg.tau_min, cfg.tau_max, cfg.steps + 1)


def _ball_curve(cfg, stdout):
    res = ball.curve(cfg.dim, _grid(cfg))
    for t, msg in res.errors:
        print(f"tau={t!r}: {msg}", file=sys.stderr)
    _write(cfg, [t.as_row() for t in res.rows], BALL_HEADER, "csv", stdout)
    return 1 if res.errors else 0


def _rod_rows_at(tau, count):
    rows = rod.positive_modes(tau, count)
    if tau <= 0:
        rows += rod.zero_mode_degeneracy(tau).modes()[1:]
    if tau < 0:
        rows += rod.trig_modes(tau, count)
        deg = rod.degenerate_mode(tau)
        if deg is not None:
            rows.append(deg)
        rows += rod.hyperbolic_candidates(tau, count)
    rows.sort(key=lambda m: (m.omega, m.parity, m.regime))
    return rows


def _rod_modes(cfg, stdout):
    if cfg.modes < 1:
        raise DomainError("--modes must be >= 1")
    rows = [m.as_row() for m in _rod_rows_at(cfg.tau, cfg.modes)]
    _write(cfg, rows, rod.CSV_HEADER, "csv", stdout)
    return 0


def _rod_curve(cfg, stdout):
    if cfg.modes < 1:
        raise DomainError("--modes must be >= 1")
    grid = _grid(cfg)
    rows, errors = rod.branch_curves((grid[0], grid[-1]), len(grid), cfg.modes)
    for t, msg in errors:
        print(f"tau={t!r}: {msg}", file=sys.stderr)
    _write(cfg, [m.as_row() for m in rows], rod.CSV_HEADER, "csv", stdout)
    return 1 if errors else 0


def named_domain(name: str, d: int, aspect: float):
    """Unit-volume test regions by name, or a key=value domain file."""
    path = Path(name)
    if path.is_file():
        return normalize_volume(parse_domain(path.read_text(encoding="utf-8")))
    if not aspect > 0:
        raise DomainError("--aspect must be positive")
    if name == "ball":
        spec = make_domain("ball", d, (1.0,))
    elif name == "ellipse":
        spec = make_domain("ellipsoid", d, (aspect,) + (1.0,) * (d - 1))
    elif name in ("box", "square"):
        spec = make_domain("box", d, ((aspect if name == "box" else 1.0),) + (1.0,) * (d - 1))
    elif name == "lshape":
        if d != 2:
            raise DomainError("lshape needs --dim 2")
        spec = make_domain("polygon2d", 2, ((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)))
    else:
        raise DomainError(f"unknown domain {name!r}")
    return normalize_volume(spec)


def _iso_quotient(cfg, stdout):
    spec = named_domain(cfg.domain, cfg.dim, cfg.aspect)
    q = quotient_bound(spec, cfg.tau, sampler=DirectionSampler(spec.d, seed=cfg.seed))
    row = {"domain": cfg.domain, "d": spec.d, "tau": cfg.tau, "qhat": q.qhat, "tone_ball": q.tone_ball,
           "gap": q.gap, "eps_mc": q.eps_mc, "center": list(q.center)}
    if (cfg.format or "json") == "csv":
        row["center"] = " ".join(format(c, ".17g") for c in q.center)
    _write(cfg, row, QUOTIENT_HEADER, "json", stdout)
    return 0


def _iso_monotonicity(cfg, stdout):
    prof = ball.radial_profile(ball.fundamental_tone(cfg.dim, cfg.tau))
    checks = lemmas.monotonicity_report(prof, cfg.tau, cfg.dim)
    rows = [c.to_json() for c in checks]
    _write(cfg, rows, CHECK_HEADER, "json", stdout)
    return 1 if any(c.status == FAIL for c in checks) else 0


def _verify(cfg, stdout):
    report = verify_suite(cfg.suite or "all", seed=cfg.seed)
    fmt = cfg.format or "json"
    header = REPORT_HEADER + (("runtime_ms",) if cfg.timings else ())
    if fmt == "csv":
        _write(cfg, report.rows(cfg.timings), header, "csv", stdout)
    else:
        _write(cfg, report.to_json(cfg.timings), None, "json", stdout)
    return 0 if report.passed else 1


HANDLERS = {
    ("bessel", "eval"): _bessel_eval,
    ("ball", "tone"): _ball_tone,
    ("ball", "curve"): _ball_curve,
    ("rod", "modes"): _rod_modes,
    ("rod", "curve"): _rod_curve,
    ("iso", "quotient"): _iso_quotient,
    ("iso", "monotonicity"): _iso_monotonicity,
    ("verify", None): _verify,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _resolve(args)
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    handler = HANDLERS[(cfg.command, getattr(cfg, "action", None))]
    t0 = time.perf_counter()
    try:
        code = handler(cfg, stdout)
    except (DomainError, ValueError) as exc:
        print(f"usage error: {exc}", file=stderr)
        print(parser.format_usage().rstrip(), file=stderr)
        return 2
    except BoundViolation as exc:
        print(f"check failed: {exc}", file=stderr)
        return 1
    except (FreePlateError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if cfg.timings:
        print(f"runtime_ms={1000 * (time.perf_counter() - t0):.3f}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())
