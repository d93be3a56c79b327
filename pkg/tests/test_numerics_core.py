from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freeplate.errors import DomainError, EvaluationError, QuadratureError
from freeplate.numerics_core import (
    Bracket,
    QuadraturePolicy,
    bracket_roots,
    fd_derivative,
    integrate_1d,
    refine_root,
    sign_changes,
)


def test_bracket_cos():
    (br,) = bracket_roots(math.cos, (1, 2), 64)
    assert br.lo < math.pi / 2 < br.hi


def test_bracket_sqrt2():
    (br,) = bracket_roots(lambda x: x * x - 2, (0, 2), 64)
    assert br.lo < math.sqrt(2) < br.hi


def test_bracket_sine_two_roots_in_order():
    brs = bracket_roots(np.sin, (0.1, 9), 256, vectorized=True)
    assert len(brs) == 2
    assert brs[0].lo < math.pi < brs[0].hi and brs[1].lo < 2 * math.pi < brs[1].hi


def test_exact_grid_zero_gives_centred_bracket():
    (br,) = bracket_roots(lambda x: x - 1.0, (0.0, 2.0), 3)
    assert br.lo == pytest.approx(0.5) and br.hi == pytest.approx(1.5)


def test_bracket_validation_and_evaluation_errors():
    with pytest.raises(DomainError):
        bracket_roots(math.cos, (2, 1), 10)
    with pytest.raises(DomainError):
        bracket_roots(math.cos, (0, 1), 1)
    with pytest.raises(EvaluationError) as err:
        bracket_roots(lambda x: 1 / (x - 0.5) if x != 0.5 else float("inf"), (0, 1), 3)
    assert err.value.x == 0.5


def test_refine_examples():
    br = bracket_roots(math.cos, (1, 2), 64)[0]
    assert refine_root(math.cos, br, 1e-12) == pytest.approx(math.pi / 2, abs=1e-12)
    f = lambda x: x**3 - 8  # noqa: E731
    assert refine_root(f, Bracket(1, 3, f(1), f(3)), 1e-12) == pytest.approx(2, abs=1e-12)
    g = lambda a: math.sin(2 * a) - 2 * a / 3  # noqa: E731
    assert refine_root(g, Bracket(1, 1.3, g(1), g(1.3)), 1e-10) == pytest.approx(1.13943, abs=1e-5)


def test_refine_rejects_non_bracket():
    with pytest.raises(DomainError):
        refine_root(math.cos, Bracket(0, 1, 1.0, math.cos(1)), 1e-10)


@given(n=st.integers(50, 5000))
def test_refined_root_independent_of_grid(n):
    f = lambda x: np.cos(x) - x  # noqa: E731
    br = bracket_roots(f, (0, 2), n, vectorized=True)[0]
    assert refine_root(f, br, 1e-14) == pytest.approx(0.7390851332151607, abs=1e-13)


def test_integrate_examples():
    assert integrate_1d(lambda r: r**2, (0, 1)) == pytest.approx(1 / 3, abs=1e-10)
    assert integrate_1d(math.sin, (0, math.pi)) == pytest.approx(2, abs=1e-10)
    val = integrate_1d(lambda r: r * math.exp(-r * r), (0, 5))
    assert val == pytest.approx((1 - math.exp(-25)) / 2, abs=1e-10)
    assert integrate_1d(math.sin, (math.pi, 0)) == pytest.approx(-2, abs=1e-10)


@given(c=st.lists(st.floats(-5, 5), min_size=4, max_size=4), lo=st.floats(-2, 0), hi=st.floats(0.1, 2))
def test_integrate_exact_on_cubics(c, lo, hi):
    p = np.polynomial.Polynomial(c)
    exact = p.integ()(hi) - p.integ()(lo)
    assert integrate_1d(lambda x: p(x), (lo, hi)) == pytest.approx(exact, abs=1e-10)


def test_integrate_depth_error_reports_interval():
    with pytest.raises(QuadratureError) as err:
        integrate_1d(lambda x: math.copysign(1.0, x - 0.3), (0, 1), QuadraturePolicy(abs_tol=1e-14, max_depth=6))
    lo, hi = err.value.worst_interval
    assert lo <= 0.3 <= hi


def test_fd_examples():
    r = fd_derivative(lambda x: x**3, 2.0, 1)
    assert r.value == pytest.approx(12, abs=1e-10)
    assert abs(r.value - 12) <= max(r.error, 1e-12)
    assert fd_derivative(math.sin, 0.0, 2).value == pytest.approx(0, abs=1e-10)
    assert fd_derivative(math.exp, 1.0, 2).value == pytest.approx(math.e, rel=1e-9)
    with pytest.raises(DomainError):
        fd_derivative(math.sin, 0.0, 3)


def test_sign_changes():
    assert sign_changes([1, 0, -1, -2, 3]) == 2
