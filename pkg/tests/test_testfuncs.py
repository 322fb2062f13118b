"""Test-function catalog: parsing, evaluation and exact integrals."""

import math

import numpy as np
import pytest

from intident.quadrature import AxisSpec, QuadPolicy, integrate_1d
from intident.testfuncs import (CONTINUOUS_CATALOG, DEFAULT_CATALOG,
                                get_test_function)


def test_default_catalog_resolves():
    for fid in DEFAULT_CATALOG:
        F = get_test_function(fid)
        assert F.fid == fid
        assert np.isfinite(F(np.array([0.2, 0.5]))).all()


def test_parametrized_ids():
    assert get_test_function("power:2")(np.array([3.0]))[0] == 9.0
    step = get_test_function("heaviside:0.4")
    assert step(np.array([0.39, 0.41])).tolist() == [0.0, 1.0]
    assert not step.continuous


def test_unknown_ids_raise():
    for bad in ("nosuch", "power:x", "heaviside:2", "heaviside:0"):
        with pytest.raises((KeyError, ValueError)):
            get_test_function(bad)


@pytest.mark.parametrize("fid,x", [
    ("exp_neg", 3.0),
    ("power:2", 1.7),
    ("rational_one_over_one_plus_t", 4.0),
    ("rational_one_over_one_minus_t", 0.8),
    ("cosine", 2.0),
    ("heaviside:0.4", 1.5),
    ("elliptic_k", 0.9),
    ("inv_sqrt_one_minus_t2", 0.95),
])
def test_exact_integral_against_quadrature(fid, x):
    F = get_test_function(fid)
    assert F.integral_0_to_x is not None
    res = integrate_1d(lambda t: F(x * t), AxisSpec(0.0, 1.0),
                       QuadPolicy(abs_tol=1e-11, rel_tol=1e-11))
    assert x * res.value == pytest.approx(F.integral_0_to_x(x), abs=1e-9)


def test_validity_ranges():
    assert get_test_function("elliptic_k").x_max == 1.0
    assert get_test_function("inv_sqrt_one_minus_t2").singular_at_one
    assert math.isinf(get_test_function("exp_neg").x_max)
    assert "heaviside:0.4" not in CONTINUOUS_CATALOG
    assert set(CONTINUOUS_CATALOG) < set(DEFAULT_CATALOG)
