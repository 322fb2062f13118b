"""Catalog of test functions F fed to the angular-reduction identities.

Members are addressed by a string id.  Parametrized families use a colon
syntax (``power:2``, ``heaviside:0.4``); the remaining ids are fixed.  Each
entry carries a vectorized evaluator, the exact value of
integral_0^x F(t) dt where one is known (used as a closed-form reference by
the benchmarks), and the open interval of scale parameters x for which
F(x * t) stays evaluable on t in [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .specfun import ellip_k, hyp3f2_half

__all__ = ["TestFunction", "get_test_function", "DEFAULT_CATALOG", "CONTINUOUS_CATALOG"]


@dataclass(frozen=True)
class TestFunction:
    fid: str
    label: str
    evaluator: Callable
    integral_0_to_x: Callable | None  # exact integral_0^x F(t) dt, or None
    x_max: float  # scales must satisfy 0 < x <= x_max (inf if unrestricted)
    continuous: bool = True
    singular_at_one: bool = False  # integrable singularity at t = 1

    def __call__(self, t):
        return self.evaluator(t)


def _power(p: float) -> TestFunction:
    if p < 0:
        raise ValueError("power exponent must be >= 0")
    return TestFunction(
        fid=f"power:{p:g}",
        label=f"t^{p:g}",
        evaluator=(lambda t: np.ones_like(np.asarray(t, dtype=float))) if p == 0
        else (lambda t: np.asarray(t, dtype=float) ** p),
        integral_0_to_x=lambda x: x ** (p + 1.0) / (p + 1.0),
        x_max=math.inf,
    )


def _heaviside(c: float) -> TestFunction:
    if not (0.0 < c < 1.0):
        raise ValueError("heaviside step location must lie in (0, 1)")
    return TestFunction(
        fid=f"heaviside:{c:g}",
        label=f"step at {c:g}",
        evaluator=lambda t: np.where(np.asarray(t, dtype=float) > c, 1.0, 0.0),
        integral_0_to_x=lambda x: max(0.0, x - c),
        x_max=math.inf,
        continuous=False,
    )


_FIXED = {
    "exp_neg": lambda: TestFunction(
        "exp_neg", "exp(-t)",
        lambda t: np.exp(-np.asarray(t, dtype=float)),
        lambda x: -math.expm1(-x),
        math.inf,
    ),
    "rational_one_over_one_plus_t": lambda: TestFunction(
        "rational_one_over_one_plus_t", "1/(1+t)",
        lambda t: 1.0 / (1.0 + np.asarray(t, dtype=float)),
        lambda x: math.log1p(x),
        math.inf,
    ),
    "rational_one_over_one_minus_t": lambda: TestFunction(
        "rational_one_over_one_minus_t", "1/(1-t)",
        lambda t: 1.0 / (1.0 - np.asarray(t, dtype=float)),
        lambda x: -math.log1p(-x),
        1.0,
    ),
    "cosine": lambda: TestFunction(
        "cosine", "cos(t)",
        lambda t: np.cos(np.asarray(t, dtype=float)),
        lambda x: math.sin(x),
        math.inf,
    ),
    "elliptic_k": lambda: TestFunction(
        "elliptic_k", "K(t)",
        lambda t: ellip_k(np.asarray(t, dtype=float)),
        lambda x: x * (math.pi / 2.0) * hyp3f2_half(x),
        1.0,
    ),
    "inv_sqrt_one_minus_t2": lambda: TestFunction(
        "inv_sqrt_one_minus_t2", "1/sqrt(1-t^2)",
        lambda t: 1.0 / np.sqrt((1.0 - np.asarray(t, dtype=float))
                                * (1.0 + np.asarray(t, dtype=float))),
        lambda x: math.asin(x),
        1.0,
        singular_at_one=True,
    ),
}


def get_test_function(fid: str) -> TestFunction:
    """Resolve a catalog id like ``exp_neg``, ``power:2`` or ``heaviside:0.4``."""
    if fid in _FIXED:
        return _FIXED[fid]()
    if ":" in fid:
        family, _, arg = fid.partition(":")
        try:
            val = float(arg)
        except ValueError:
            raise KeyError(f"bad parameter in test-function id {fid!r}") from None
        if family == "power":
            return _power(val)
        if family == "heaviside":
            return _heaviside(val)
    raise KeyError(f"unknown test-function id {fid!r}")


# The functions every run of the main reduction identity exercises.
DEFAULT_CATALOG = (
    "exp_neg",
    "power:2",
    "rational_one_over_one_plus_t",
    "cosine",
    "heaviside:0.4",
    "elliptic_k",
)
CONTINUOUS_CATALOG = tuple(f for f in DEFAULT_CATALOG if f != "heaviside:0.4")
