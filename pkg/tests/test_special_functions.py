"""Series evaluation of j_l, i_l against mpmath values frozen in oracle_data."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freeplate.errors import ConvergenceError, DomainError
from freeplate.special_functions import (
    SeriesPolicy,
    UltraIndex,
    first_deriv_zero,
    gamma_half_integer,
    recurrence_residuals,
    ultra_i,
    ultra_j,
)

from oracle_data import BESSEL, P11


@pytest.mark.parametrize("d,l,m,z,j_ref,i_ref", BESSEL)
def test_series_matches_oracle(d, l, m, z, j_ref, i_ref):
    idx = UltraIndex(d, l)
    if z <= 10:
        assert ultra_j(idx, m, z) == pytest.approx(j_ref, rel=1e-11, abs=1e-14)
    else:
        # alternating-series cancellation: the error scales with i_l, not j_l
        assert abs(ultra_j(idx, m, z) - j_ref) <= 1e-15 * i_ref
    assert ultra_i(idx, m, z) == pytest.approx(i_ref, rel=1e-11)


@pytest.mark.parametrize("d", sorted(P11))
def test_first_derivative_zero_matches_oracle(d):
    assert first_deriv_zero(UltraIndex(d, 1)) == pytest.approx(P11[d], abs=1e-11)


def test_values_at_origin():
    idx = UltraIndex(2, 1)
    assert ultra_j(idx, 0, 0.0) == 0.0
    assert ultra_j(idx, 1, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert ultra_i(idx, 1, 0.0) == pytest.approx(0.5, abs=1e-15)


def test_three_dimensional_normalisation():
    # z^(-1/2) J_{3/2}(z) = sqrt(2/pi) * spherical j_1(z)
    z = 1.3
    sph = math.sin(z) / z**2 - math.cos(z) / z
    assert ultra_j(UltraIndex(3, 1), 0, z) == pytest.approx(math.sqrt(2 / math.pi) * sph, rel=1e-14)


def test_array_and_scalar_paths_agree():
    idx = UltraIndex(4, 2)
    z = np.linspace(0, 30, 61)
    for m in range(5):
        vec = ultra_j(idx, m, z)
        one = np.array([ultra_j(idx, m, float(x)) for x in z])
        np.testing.assert_allclose(vec, one, rtol=1e-14, atol=1e-300)


def test_gamma_half_integer():
    assert gamma_half_integer(5) == 24.0
    assert gamma_half_integer(2.5) == pytest.approx(0.75 * math.sqrt(math.pi), rel=1e-15)
    with pytest.raises(DomainError):
        gamma_half_integer(1.3)


@pytest.mark.parametrize("d,l,z", [(2, 1, 1.0), (7, 3, 0.5), (3, 0, 2.0), (10, 5, 12.0)])
def test_recurrences(d, l, z):
    rec = recurrence_residuals(UltraIndex(d, l), z)
    assert rec.max_relative() <= 1e-11


def test_recurrences_not_applicable_at_order_zero():
    rec = recurrence_residuals(UltraIndex(2, 0), 1e-8)
    assert set(rec.not_applicable) == {"j1", "j3", "i1", "i3"}
    assert rec.max_relative() <= 1e-11


@pytest.mark.parametrize("bad", [dict(d=1, l=0), dict(d=2, l=-1), dict(d=2.5, l=1)])
def test_index_validation(bad):
    with pytest.raises(DomainError):
        UltraIndex(**bad)


def test_argument_and_order_validation():
    idx = UltraIndex(2, 1)
    with pytest.raises(DomainError):
        ultra_j(idx, 0, -0.1)
    with pytest.raises(DomainError):
        ultra_j(idx, 0, 201.0)
    with pytest.raises(DomainError):
        ultra_j(idx, 5, 1.0)
    with pytest.raises(DomainError):
        ultra_i(idx, 0, float("nan"))
    with pytest.raises(DomainError):
        SeriesPolicy(rel_tol=1e-3)
    with pytest.raises(DomainError):
        first_deriv_zero(UltraIndex(2, 0))


def test_truncation_failure_is_reported():
    policy = SeriesPolicy(max_terms=50)
    with pytest.raises(ConvergenceError):
        ultra_i(UltraIndex(2, 1), 0, 150.0, policy)


@given(
    d=st.integers(2, 10), l=st.integers(0, 5), m=st.integers(0, 4),
    z=st.floats(1e-3, 20.0),
)
def test_i_dominates_j(d, l, m, z):
    idx = UltraIndex(d, l)
    iv = ultra_i(idx, m, z)
    assert iv > 0 or (m > l and iv >= 0)
    assert abs(ultra_j(idx, m, z)) <= iv * (1 + 1e-14)


@given(d=st.integers(2, 10), l=st.integers(1, 5), z=st.floats(0.05, 15.0))
def test_recurrences_hold_everywhere(d, l, z):
    assert recurrence_residuals(UltraIndex(d, l), z).max_relative() <= 1e-11


@given(d=st.integers(2, 10))
def test_p11_squared_bracket(d):
    p = first_deriv_zero(UltraIndex(d, 1))
    assert d < p * p < d + 2
