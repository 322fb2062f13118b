"""Dimension reduction of nested sin-product angular integrals.

The basic object is

    I_n(x, F) = int_0^{pi/2} ... int_0^{pi/2} sin(t_1) F(x sin t_1 ... sin t_n)
                dt_1 ... dt_n

with exactly one interior sine weight.  The reduction collapses it to

* n = 2: (pi / 2x) * integral_0^x F(t) dt               (flat kernel)
* n = 3: (pi / 4) * integral_0^1 L(u) F(x u) du          (log kernel)
* n = 4: one more angular shell around the n = 3 form, kept as an explicit
  two-step composition rather than a fused kernel,

where L(u) = ln((1 + sqrt(1-u^2)) / (1 - sqrt(1-u^2))).  Also here: the
change-of-variables equivalence for the symmetric double integral
S = int int f(x+y) F(xy) / sqrt((1-x^2)(1-y^2)) dx dy, and an
evaluation-count benchmark of reduced versus naive cubature.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import (AccuracyError, AxisSpec, QuadPolicy, QuadResult,
                         integrate_1d, integrate_nd)
from .specfun import catalan_const
from .testfuncs import TestFunction, get_test_function
from .verdicts import CheckSpec, SideResult, VerificationRecord, judge

__all__ = [
    "SinProductIntegral",
    "ReducedForm",
    "ReductionBenchmark",
    "log_kernel",
    "reduce_sin_product",
    "naive_cubature",
    "closed_form_value",
    "verify_s_transform",
    "s_transform_square",
    "s_transform_region",
    "benchmark_reduction",
]

_HALF_PI = math.pi / 2.0


def log_kernel(u):
    """L(u) = ln((1+sqrt(1-u^2)) / (1-sqrt(1-u^2))), stable down to u -> 0.

    Uses 1 - c = u^2 / (1 + c) with c = sqrt(1-u^2), i.e. L = 2 ln((1+c)/u).
    """
    u = np.asarray(u, dtype=float)
    c = np.sqrt((1.0 - u) * (1.0 + u))
    return 2.0 * np.log((1.0 + c) / u)


@dataclass(frozen=True)
class SinProductIntegral:
    """An n-fold sin-product integral of F at scale x, n in {2, 3, 4}."""

    n: int
    x: float
    fid: str

    def __post_init__(self):
        if self.n not in (2, 3, 4):
            raise ValueError("validated reductions cover n in {2, 3, 4}")
        f = get_test_function(self.fid)
        if not (0.0 < self.x <= f.x_max):
            raise ValueError(
                f"scale x={self.x!r} outside the validity range (0, {f.x_max!r}] "
                f"of {self.fid}")

    @property
    def func(self) -> TestFunction:
        return get_test_function(self.fid)


@dataclass(frozen=True)
class ReducedForm:
    """Result of reducing a sin-product integral; evaluates itself on demand."""

    dimension: int
    kernel: str  # "flat" | "log_kernel"
    prefactor: float
    steps: tuple[str, ...]
    source: SinProductIntegral

    def evaluate(self, policy: QuadPolicy | None = None) -> QuadResult:
        policy = policy or QuadPolicy(abs_tol=1e-10, rel_tol=1e-10)
        F = self.source.func
        x = self.source.x

        if self.kernel == "flat":
            axis = AxisSpec(0.0, x,
                            "inverse_sqrt_endpoint" if F.singular_at_one and x >= 1.0
                            else "none")
            res = integrate_1d(F.evaluator, axis, policy)
            return QuadResult(self.prefactor * res.value,
                              self.prefactor * res.err_estimate, res.evaluations)

        if self.dimension == 1:  # single log-kernel pass
            res = integrate_1d(
                lambda u: log_kernel(u) * F.evaluator(x * u),
                AxisSpec(0.0, 1.0, "double_exponential"),
                policy,
            )
            return QuadResult(self.prefactor * res.value,
                              self.prefactor * res.err_estimate, res.evaluations)

        # n = 4 composition: outer angular shell, inner log kernel.
        res = integrate_nd(
            lambda beta, u: log_kernel(u) * F.evaluator(x * math.sin(beta) * u),
            [AxisSpec(0.0, _HALF_PI), AxisSpec(0.0, 1.0, "double_exponential")],
            policy,
        )
        return QuadResult(self.prefactor * res.value,
                          self.prefactor * res.err_estimate, res.evaluations)


def reduce_sin_product(integral: SinProductIntegral) -> ReducedForm:
    """Collapse the n-fold angular integral to its reduced form."""
    x = integral.x
    if integral.n == 2:
        return ReducedForm(1, "flat", _HALF_PI / x, ("flat",), integral)
    if integral.n == 3:
        return ReducedForm(1, "log_kernel", math.pi / 4.0, ("log_kernel",), integral)
    return ReducedForm(2, "log_kernel", math.pi / 4.0,
                       ("angular_shell", "log_kernel"), integral)


def naive_cubature(integral: SinProductIntegral,
                   policy: QuadPolicy | None = None) -> QuadResult:
    """Evaluate the original n-fold angular form by nested cubature."""
    policy = policy or QuadPolicy(abs_tol=1e-8, rel_tol=1e-8)
    F = integral.func
    x = integral.x
    n = integral.n
    # Plain axes throughout: the only boundary structure is a corner
    # singularity, and adaptive bisection resolves it orders of magnitude
    # cheaper than stretching every 1-D slice double-exponentially.
    guarded = F.singular_at_one and x >= 1.0
    axes = [AxisSpec(0.0, _HALF_PI) for _ in range(n)]

    def integrand(*coords):
        weight = np.sin(coords[0])
        prod = weight
        for c in coords[1:]:
            prod = prod * np.sin(c)
        arg = x * prod
        if guarded:
            # The sine product can round onto the corner singularity at 1;
            # that set is measure-zero and its true contribution is buried
            # in the double-exponential weights, so drop it.
            out = np.zeros_like(arg)
            mask = arg < 1.0
            if np.any(mask):
                out[mask] = (weight if np.ndim(weight) == 0
                             else weight[mask]) * F.evaluator(arg[mask])
            return out
        return weight * F.evaluator(arg)

    return integrate_nd(integrand, axes, policy)


def closed_form_value(integral: SinProductIntegral) -> float | None:
    """Exact value where one is registered; None otherwise."""
    F = integral.func
    x = integral.x
    fid = F.fid

    if fid.startswith("power:"):
        p = float(fid.split(":")[1])
        # Each unweighted angle contributes the Wallis integral W_p, the
        # weighted one contributes W_{p+1}.
        return (x ** p * wallis_sin_integral(p + 1.0)
                * wallis_sin_integral(p) ** (integral.n - 1))
    if integral.n == 2 and F.integral_0_to_x is not None:
        return _HALF_PI / x * F.integral_0_to_x(x)
    if integral.n == 3 and fid == "inv_sqrt_one_minus_t2" and x == 1.0:
        return math.pi * catalan_const()
    if integral.n == 3 and fid == "rational_one_over_one_minus_t":
        ac = math.acos(x)
        return (math.pi / (4.0 * x)) * (ac * ac - 2.0 * math.pi * ac
                                        + 0.75 * math.pi ** 2)
    return None


def wallis_sin_integral(p: float) -> float:
    """integral_0^{pi/2} sin^p t dt for integer p >= 0 (exact recurrence)."""
    n = int(round(p))
    val = _HALF_PI if n % 2 == 0 else 1.0
    m = 0 if n % 2 == 0 else 1
    while m < n:
        m += 2
        val *= (m - 1.0) / m
    return val


# ---------------------------------------------------------------------------
# The symmetric-square change of variables.
# ---------------------------------------------------------------------------

def s_transform_square(f: Callable, F: Callable,
                       policy: QuadPolicy | None = None) -> QuadResult:
    """S as the square integral of f(x+y) F(xy) / sqrt((1-x^2)(1-y^2))."""
    policy = policy or QuadPolicy(abs_tol=1e-8, rel_tol=1e-8)
    axes = [AxisSpec(0.0, 1.0, "inverse_sqrt_endpoint"),
            AxisSpec(0.0, 1.0, "inverse_sqrt_endpoint")]

    def integrand(xv, yv):
        w = np.sqrt((1.0 - xv) * (1.0 + xv) * (1.0 - yv) * (1.0 + yv))
        return f(xv + yv) * F(xv * yv) / w

    return integrate_nd(integrand, axes, policy)


def s_transform_region(f: Callable, F: Callable,
                       policy: QuadPolicy | None = None) -> QuadResult:
    """S over the (v, u) region, u from 2 sqrt(v) to 1+v.

    The u integral carries inverse-square-root singularities at both ends;
    the substitution u(w) = sqrt(4v + (1-v)^2 sin^2 w) flattens them exactly,
    turning the inner integrand into f(u(w)) / u(w) on [0, pi/2].  That inner
    integrand still forms a 1/sqrt(w^2 + 4v) boundary layer as v -> 0, so the
    inner axis is double-exponential as well; the residual truncation at
    extreme v is wiped out by the outer transform's weight.
    """
    policy = policy or QuadPolicy(abs_tol=1e-8, rel_tol=1e-8)
    axes = [AxisSpec(0.0, 1.0, "double_exponential"),
            AxisSpec(0.0, _HALF_PI, "double_exponential")]

    def integrand(v, w):
        u = np.sqrt(4.0 * v + (1.0 - v) ** 2 * np.sin(w) ** 2)
        return 2.0 * F(v) * f(u) / u

    return integrate_nd(integrand, axes, policy)


def verify_s_transform(f: Callable, F: Callable | TestFunction | str,
                       tol: float = 1e-6,
                       policy: QuadPolicy | None = None,
                       label: str = "") -> VerificationRecord:
    """Check that the square-form and region-form evaluations of S agree."""
    if isinstance(F, str):
        F = get_test_function(F)
    F_eval = F.evaluator if isinstance(F, TestFunction) else F
    policy = policy or QuadPolicy(abs_tol=tol / 20.0, rel_tol=tol / 20.0)
    spec = CheckSpec(identity="EQ12_14", route="s_transform",
                     tol_class="standard", tol_abs=tol, tol_rel=tol)
    try:
        sq = s_transform_square(f, F_eval, policy)
        rg = s_transform_region(f, F_eval, policy)
    except AccuracyError as exc:
        best = exc.best
        rec = judge(spec, SideResult(best.value, best.err_estimate, best.evaluations),
                    SideResult(math.nan), detail=f"{label} inconclusive: {exc}")
        return dataclasses.replace(rec, verdict="inconclusive")
    return judge(spec,
                 SideResult(sq.value, sq.err_estimate, sq.evaluations),
                 SideResult(rg.value, rg.err_estimate, rg.evaluations),
                 detail=label)


# ---------------------------------------------------------------------------
# Benchmark: reduced form versus naive cubature.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionBenchmark:
    integral: SinProductIntegral
    target_error: float
    naive_value: float
    naive_err: float
    naive_evaluations: int
    naive_seconds: float
    reduced_value: float
    reduced_err: float
    reduced_evaluations: int
    reduced_seconds: float
    closed_form: float | None

    @property
    def speedup_evaluations(self) -> float:
        return self.naive_evaluations / max(1, self.reduced_evaluations)


def benchmark_reduction(integral: SinProductIntegral,
                        target_error: float = 1e-8) -> ReductionBenchmark:
    """Measure integrand evaluations needed by each route at a target error.

    Evaluation counts are the primary (thread-independent) metric; wall times
    are informational.
    """
    policy = QuadPolicy(abs_tol=target_error, rel_tol=target_error)

    t0 = time.perf_counter()
    reduced = reduce_sin_product(integral).evaluate(policy)
    t_red = time.perf_counter() - t0

    t0 = time.perf_counter()
    naive = naive_cubature(integral, policy)
    t_nai = time.perf_counter() - t0

    return ReductionBenchmark(
        integral=integral,
        target_error=target_error,
        naive_value=naive.value,
        naive_err=naive.err_estimate,
        naive_evaluations=naive.evaluations,
        naive_seconds=t_nai,
        reduced_value=reduced.value,
        reduced_err=reduced.err_estimate,
        reduced_evaluations=reduced.evaluations,
        reduced_seconds=t_red,
        closed_form=closed_form_value(integral),
    )
