"""Declarative registry of the integral identities under verification.

Each :class:`Identity` carries an evaluation plan for its left and right
sides plus a default parameter grid.  Both sides are evaluated numerically
(or from a closed form) at each grid point and compared under the identity's
tolerance contract; quadrature failures surface as ``inconclusive`` verdicts,
never as silent passes.

Registry ids follow the equation numbering of the identities themselves
(EQ1 .. EQ27); anchors state the identity in formula form.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .quadrature import (AccuracyError, AxisSpec, QuadPolicy, QuadResult,
                         integrate_1d, integrate_nd, monte_carlo_nd)
from .specfun import (DomainError, bessel_i0, bessel_struve_gap, catalan_const,
                      ellip_k, ellip_k_comp, hyp3f2_half, struve_l0)
from .testfuncs import get_test_function
from .reduction import (SinProductIntegral, log_kernel, naive_cubature,
                        reduce_sin_product, s_transform_region,
                        s_transform_square, wallis_sin_integral)
from .verdicts import (TOL_CLASSES, CheckSpec, SideResult, VerificationRecord,
                       judge)

__all__ = [
    "RunSettings",
    "Identity",
    "REGISTRY_IDS",
    "build_registry",
    "evaluate_check",
    "evaluate_identity",
    "kernel_eq15",
    "verify_suite",
]

_PI = math.pi
_HALF_PI = math.pi / 2.0

REGISTRY_IDS = (
    "EQ1", "EQ3", "EQ4", "EQ5", "EQ7", "EQ9", "EQ11", "EQ12_14", "EQ15",
    "EQ16", "EQ19", "EQ20", "EQ21", "EQ22", "EQ23", "EQ24", "EQ25", "EQ26",
    "EQ27",
)

_X_EXP = (0.1, 1.0, 5.0, 10.0)      # exponential-type identities
_X_UNIT = (0.1, 0.3, 0.5, 0.7, 0.9)  # identities restricted to x in (0, 1)
_V_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)


@dataclass(frozen=True)
class RunSettings:
    """Knobs shared by every evaluation in a run."""

    seed: int = 0
    mc_samples: int = 10_000_000
    max_evals: int = 2_000_000
    # (class, value) pairs overriding the TOL_CLASSES defaults.
    tol_class_values: tuple[tuple[str, float], ...] = ()

    def class_value(self, name: str) -> float:
        for cls, val in self.tol_class_values:
            if cls == name:
                return val
        base = TOL_CLASSES.get(name)
        if base is None:
            raise KeyError(f"unknown tolerance class {name!r}")
        return base


@dataclass(frozen=True)
class EvalContext:
    settings: RunSettings
    tol_abs: float
    tol_rel: float

    def policy(self, frac: float = 0.05, floor: float = 5e-13) -> QuadPolicy:
        t = max(min(self.tol_abs, self.tol_rel) * frac, floor)
        return QuadPolicy(abs_tol=t, rel_tol=t, max_depth=54,
                          max_evals=self.settings.max_evals)


@dataclass(frozen=True)
class Identity:
    id: str
    anchor: str
    description: str
    tol_class: str
    checks: tuple[CheckSpec, ...]
    lhs: Callable  # (point: dict, route: str, ctx: EvalContext) -> SideResult
    rhs: Callable
    notes: str = ""


def _side(res: QuadResult) -> SideResult:
    return SideResult(res.value, res.err_estimate, res.evaluations)


def _closed(value: float) -> SideResult:
    return SideResult(float(value), 0.0, 1)


def _pts(identity: str, tol_class: str, axis: str, values, route="default",
         tol_abs=None, tol_rel=None, extra=()):
    return tuple(
        CheckSpec(identity=identity, point=tuple(extra) + ((axis, float(v)),),
                  route=route, tol_class=tol_class, tol_abs=tol_abs,
                  tol_rel=tol_rel)
        for v in values
    )


def _stable_half_angle_modulus(y):
    """sqrt((1 - sqrt(1 - y^2)) / 2) without cancellation for small y."""
    y = np.asarray(y, dtype=float)
    c = np.sqrt((1.0 - y) * (1.0 + y))
    return np.abs(y) / np.sqrt(2.0 * (1.0 + c))


def kernel_eq15(v: float) -> float:
    """Closed form of the two-endpoint-singular u-integral: K((1-v)/(1+v))/(1+v)."""
    vf = float(v)
    if not (0.0 < vf < 1.0):
        raise DomainError("kernel_eq15 requires 0 < v < 1")
    return ellip_k((1.0 - vf) / (1.0 + vf)) / (1.0 + vf)


# ---------------------------------------------------------------------------
# Per-identity evaluation plans.
# ---------------------------------------------------------------------------

def _arcsine_weighted(fn: Callable, ctx: EvalContext) -> SideResult:
    """integral_0^1 fn(t) t / sqrt(1-t^2) dt via the sine substitution."""
    res = integrate_1d(
        lambda t: t * fn(t) / np.sqrt((1.0 - t) * (1.0 + t)),
        AxisSpec(0.0, 1.0, "inverse_sqrt_endpoint"),
        ctx.policy(),
    )
    return _side(res)


def _eq1(grids) -> Identity:
    xs = grids.get("x", _X_EXP)
    return Identity(
        id="EQ1",
        anchor="int_0^1 t I0(x t)/sqrt(1-t^2) dt = sinh(x)/x",
        description="arcsine-weighted Bessel I0 transform",
        tol_class="tight",
        checks=_pts("EQ1", "tight", "x", xs),
        lhs=lambda p, r, ctx: _arcsine_weighted(lambda t: bessel_i0(p["x"] * t), ctx),
        rhs=lambda p, r, ctx: _closed(math.sinh(p["x"]) / p["x"]),
    )


def _eq3(grids) -> Identity:
    xs = grids.get("x", _X_EXP)
    return Identity(
        id="EQ3",
        anchor="int_0^1 t L0(x t)/sqrt(1-t^2) dt = (cosh(x)-1)/x",
        description="arcsine-weighted Struve L0 transform",
        tol_class="tight",
        checks=_pts("EQ3", "tight", "x", xs),
        lhs=lambda p, r, ctx: _arcsine_weighted(lambda t: struve_l0(p["x"] * t), ctx),
        rhs=lambda p, r, ctx: _closed((math.cosh(p["x"]) - 1.0) / p["x"]),
    )


def _eq4(grids) -> Identity:
    xs = grids.get("x", _X_EXP)
    return Identity(
        id="EQ4",
        anchor="int_0^1 t (I0-L0)(x t)/sqrt(1-t^2) dt = (1-e^-x)/x",
        description="Bessel/Struve difference transform",
        tol_class="tight",
        checks=_pts("EQ4", "tight", "x", xs),
        lhs=lambda p, r, ctx: _arcsine_weighted(
            lambda t: (2.0 / _PI) * bessel_struve_gap(p["x"] * t), ctx),
        rhs=lambda p, r, ctx: _closed(-math.expm1(-p["x"]) / p["x"]),
    )


def _eq5(grids) -> Identity:
    xs = grids.get("x", _X_EXP)

    def lhs(p, r, ctx):
        v = bessel_struve_gap(p["x"])
        return SideResult(v, 4e-16 * abs(v), 1)

    def rhs(p, r, ctx):
        res = integrate_1d(
            lambda t: np.exp(-p["x"] * t) / np.sqrt((1.0 - t) * (1.0 + t)),
            AxisSpec(0.0, 1.0, "inverse_sqrt_endpoint"),
            ctx.policy(),
        )
        return _side(res)

    return Identity(
        id="EQ5",
        anchor="(pi/2)(I0(x) - L0(x)) = int_0^1 e^{-x t}/sqrt(1-t^2) dt",
        description="exponential arcsine representation of I0 - L0",
        tol_class="tight",
        checks=_pts("EQ5", "tight", "x", xs),
        lhs=lhs,
        rhs=rhs,
    )


def _eq7(grids) -> Identity:
    xs = grids.get("x", _X_EXP)

    def lhs(p, r, ctx):
        x = p["x"]
        res = integrate_nd(
            lambda phi, th: np.sin(phi) * np.exp(-x * np.sin(phi) * np.sin(th)),
            [AxisSpec(0.0, _HALF_PI), AxisSpec(0.0, _HALF_PI)],
            ctx.policy(),
        )
        return _side(res)

    return Identity(
        id="EQ7",
        anchor="int int sin(phi) e^{-x sin phi sin theta} = (pi/2x)(1 - e^-x)",
        description="double angular exponential integral",
        tol_class="standard",
        checks=_pts("EQ7", "standard", "x", xs),
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(_HALF_PI / p["x"] * (-math.expm1(-p["x"]))),
    )


def _eq9_checks(grids) -> tuple[CheckSpec, ...]:
    xs_exp = grids.get("x", _X_EXP)
    xs_unit = tuple(x for x in grids.get("x", (0.1, 0.5, 0.9)) if 0 < x < 1)
    checks = []
    for fid in ("exp_neg", "power:2", "rational_one_over_one_plus_t", "cosine"):
        for x in xs_exp:
            checks.append(CheckSpec("EQ9", (("x", float(x)),) + (("fid", fid),),
                                    tol_class="standard"))
    for x in xs_exp:
        checks.append(CheckSpec("EQ9", (("x", float(x)), ("fid", "heaviside:0.4")),
                                tol_class="standard", tol_abs=1e-6, tol_rel=1e-6))
    for fid in ("elliptic_k", "inv_sqrt_one_minus_t2"):
        for x in xs_unit:
            checks.append(CheckSpec("EQ9", (("x", float(x)), ("fid", fid)),
                                    tol_class="standard"))
    return tuple(checks)


def _eq9(grids) -> Identity:
    def lhs(p, r, ctx):
        x = p["x"]
        F = get_test_function(p["fid"])
        # Chasing a 2-D discontinuity to the default precision share is
        # wasted work; a quarter of the verdict tolerance is ample margin.
        frac = 0.25 if not F.continuous else 0.05
        res = integrate_nd(
            lambda phi, th: np.sin(phi) * F.evaluator(x * np.sin(phi) * np.sin(th)),
            [AxisSpec(0.0, _HALF_PI), AxisSpec(0.0, _HALF_PI)],
            ctx.policy(frac=frac),
        )
        return _side(res)

    def rhs(p, r, ctx):
        x = p["x"]
        F = get_test_function(p["fid"])
        res = integrate_1d(lambda t: F.evaluator(x * t), AxisSpec(0.0, 1.0),
                           ctx.policy())
        return SideResult(_HALF_PI * res.value, _HALF_PI * res.err_estimate,
                          res.evaluations)

    return Identity(
        id="EQ9",
        anchor="int int sin(phi) F(x sin phi sin theta) = (pi/2) int_0^1 F(x t) dt",
        description="main reduction identity over the test-function catalog",
        tol_class="standard",
        checks=_eq9_checks(grids),
        lhs=lhs,
        rhs=rhs,
        notes="heaviside steps run at 1e-6; integrable-singular F checked "
              "empirically on interior scales",
    )


def _eq11(grids) -> Identity:
    xs = grids.get("x", (0.1, 1.0, 5.0))
    checks = tuple(
        CheckSpec("EQ11", (("x", float(x)), ("fid", "exp_neg")),
                  tol_class="singular3d") for x in xs
    ) + (CheckSpec("EQ11", (("x", 1.0), ("fid", "power:2")),
                   tol_class="singular3d"),)

    def lhs(p, r, ctx):
        return _side(naive_cubature(SinProductIntegral(3, p["x"], p["fid"]),
                                    ctx.policy(frac=0.1)))

    def rhs(p, r, ctx):
        x = p["x"]
        F = get_test_function(p["fid"])
        res = integrate_1d(
            lambda u: log_kernel(u) * F.evaluator(x * u),
            AxisSpec(0.0, 1.0, "double_exponential"),
            ctx.policy(),
        )
        return SideResult(0.25 * _PI * res.value, 0.25 * _PI * res.err_estimate,
                          res.evaluations)

    return Identity(
        id="EQ11",
        anchor="triple arcsine-weighted integral of F(x u v w) = "
               "(pi/4) int_0^1 ln((1+sqrt(1-u^2))/(1-sqrt(1-u^2))) F(x u) du",
        description="three-fold reduction with logarithmic kernel",
        tol_class="singular3d",
        checks=checks,
        lhs=lhs,
        rhs=rhs,
    )


def _s_transform_pairs(seed: int):
    """Ten deterministic random (f, F) low-degree polynomial pairs."""
    rng = np.random.Generator(np.random.Philox([seed, 1214]))
    pairs = []
    for i in range(10):
        deg_f = 1 + i % 3
        deg_F = 1 + (i // 3) % 3
        cf = rng.uniform(-1.0, 1.0, size=deg_f + 1)
        cF = rng.uniform(-1.0, 1.0, size=deg_F + 1)
        pairs.append((cf, cF))
    return pairs


def _eq12_14(grids, settings: RunSettings) -> Identity:
    pairs = _s_transform_pairs(settings.seed)
    checks = _pts("EQ12_14", "standard", "pair", range(10),
                  tol_abs=1e-6, tol_rel=1e-6)

    def _polys(p):
        cf, cF = pairs[int(p["pair"])]
        return (lambda t: np.polynomial.polynomial.polyval(t, cf),
                lambda t: np.polynomial.polynomial.polyval(t, cF))

    def lhs(p, r, ctx):
        f, F = _polys(p)
        return _side(s_transform_square(f, F, ctx.policy()))

    def rhs(p, r, ctx):
        f, F = _polys(p)
        return _side(s_transform_region(f, F, ctx.policy()))

    return Identity(
        id="EQ12_14",
        anchor="int int f(x+y) F(xy)/sqrt((1-x^2)(1-y^2)) over the unit square "
               "= 2 int_0^1 F(v) int_{2 sqrt v}^{1+v} f(u)/sqrt((u^2-4v)((1+v)^2-u^2)) du dv",
        description="square-to-region change of variables for S",
        tol_class="standard",
        checks=checks,
        lhs=lhs,
        rhs=rhs,
        notes="the inner region integral runs in u (du); a circulating "
              "transcription misprints its differential as dv",
    )


def _eq15(grids) -> Identity:
    vs = grids.get("v", _V_GRID)

    def lhs(p, r, ctx):
        v = p["v"]
        a = 2.0 * math.sqrt(v)
        b = 1.0 + v
        gap = b - a  # equals (1 - sqrt(v))^2
        half = 0.5 * gap
        pol = ctx.policy()

        # Split at the midpoint and reflect each half so its singular
        # endpoint sits at w = 0, where node placement is unconstrained.
        low = integrate_1d(
            lambda w: 1.0 / np.sqrt(w * (w + 2.0 * a) * (gap - w) * (b + a + w)),
            AxisSpec(0.0, half, "double_exponential"), pol)
        high = integrate_1d(
            lambda w: 1.0 / np.sqrt((gap - w) * (b + a - w) * w * (2.0 * b - w)),
            AxisSpec(0.0, half, "double_exponential"), pol)
        return SideResult(low.value + high.value,
                          low.err_estimate + high.err_estimate,
                          low.evaluations + high.evaluations)

    return Identity(
        id="EQ15",
        anchor="int_{2 sqrt v}^{1+v} du/sqrt((u^2-4v)((1+v)^2-u^2)) "
               "= K((1-v)/(1+v))/(1+v)",
        description="two-endpoint-singular kernel integral vs closed form",
        tol_class="standard",
        checks=_pts("EQ15", "standard", "v", vs),
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(kernel_eq15(p["v"])),
    )


def _eq16(grids) -> Identity:
    ps = grids.get("p", (0.0, 1.0, 2.0))
    checks = tuple(
        CheckSpec("EQ16", (("p", float(p)),),
                  tol_class="tight" if p == 0 else "standard")
        for p in ps
    )

    def lhs(p, r, ctx):
        pw = p["p"]
        res = integrate_1d(
            lambda t: ellip_k(t) * ((1.0 - t) / (1.0 + t)) ** pw / (1.0 + t),
            AxisSpec(0.0, 1.0, "log_endpoint"),
            ctx.policy(),
        )
        return _side(res)

    def rhs(p, r, ctx):
        # (1/2) * (int_0^{pi/2} sin^p)^2, exact by the Wallis recurrence.
        return _closed(0.5 * wallis_sin_integral(p["p"]) ** 2)

    return Identity(
        id="EQ16",
        anchor="int_0^1 K(t) F((1-t)/(1+t)) dt/(1+t) "
               "= (1/2) int int F(sin theta sin phi); F = t^p",
        description="K-kernel transform of the double angular integral",
        tol_class="tight",
        checks=checks,
        lhs=lhs,
        rhs=rhs,
    )


def _eq19(grids) -> Identity:
    def lhs(p, r, ctx):
        def integrand(th, ph):
            s = np.sin(th) * np.sin(ph)
            arg = (1.0 - s) / (1.0 + s)
            out = np.zeros_like(s)
            # 1/K -> 0 as the modulus reaches 1; skip arguments that round
            # onto the pole of K.
            mask = arg < 1.0
            if np.any(mask):
                out[mask] = 1.0 / ellip_k(arg[mask])
            return out

        res = integrate_nd(
            integrand,
            [AxisSpec(0.0, _HALF_PI, "double_exponential"),
             AxisSpec(0.0, _HALF_PI, "double_exponential")],
            ctx.policy(frac=0.25),
        )
        return _side(res)

    return Identity(
        id="EQ19",
        anchor="int int dtheta dphi / K((1-sin theta sin phi)/(1+sin theta sin phi)) "
               "= 2 ln 2",
        description="reciprocal-K double integral",
        tol_class="standard",
        checks=(CheckSpec("EQ19", (), tol_class="standard",
                          tol_abs=1e-6, tol_rel=1e-6),),
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(2.0 * math.log(2.0)),
    )


def _eq20(grids) -> Identity:
    avals = grids.get("a", _X_UNIT)

    def lhs(p, r, ctx):
        a = p["a"]
        res = integrate_1d(lambda th: ellip_k(a * np.sin(th)),
                           AxisSpec(0.0, _HALF_PI), ctx.policy())
        return _side(res)

    def rhs(p, r, ctx):
        return _closed(ellip_k(_stable_half_angle_modulus(p["a"])) ** 2)

    return Identity(
        id="EQ20",
        anchor="int_0^{pi/2} K(a sin theta) dtheta = K^2(sqrt((1-sqrt(1-a^2))/2))",
        description="angular average of K against the squared half-angle form",
        tol_class="tight",
        checks=_pts("EQ20", "tight", "a", avals),
        lhs=lhs,
        rhs=rhs,
    )


def _eq21(grids) -> Identity:
    xs = grids.get("x", _X_UNIT)

    def lhs(p, r, ctx):
        x = p["x"]
        res = integrate_1d(lambda t: ellip_k(x * t), AxisSpec(0.0, 1.0),
                           ctx.policy())
        return _side(res)

    return Identity(
        id="EQ21",
        anchor="int_0^1 K(x t) dt = (pi/2) 3F2(1/2,1/2,1/2; 1,3/2; x^2)",
        description="K average as a hypergeometric value",
        tol_class="standard",
        checks=_pts("EQ21", "standard", "x", xs),
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(_HALF_PI * hyp3f2_half(p["x"])),
        notes="prefactor pi/2 is pinned by the x->1 limit, where both sides "
              "equal twice Catalan's constant",
    )


def _eq22(grids) -> Identity:
    xs = grids.get("x", _X_UNIT)

    def lhs(p, r, ctx):
        x = p["x"]

        def integrand(t):
            mod = _stable_half_angle_modulus(x * t)
            return t * ellip_k(mod) ** 2 / np.sqrt((1.0 - t) * (1.0 + t))

        res = integrate_1d(integrand, AxisSpec(0.0, 1.0, "inverse_sqrt_endpoint"),
                           ctx.policy())
        return _side(res)

    return Identity(
        id="EQ22",
        anchor="int_0^1 u K^2(sqrt((1-sqrt(1-x^2 u^2))/2))/sqrt(1-u^2) du "
               "= (pi^2/4) 3F2(1/2,1/2,1/2; 1,3/2; x^2)",
        description="squared-K moment against the hypergeometric value",
        tol_class="standard",
        checks=_pts("EQ22", "standard", "x", xs),
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(0.25 * _PI ** 2 * hyp3f2_half(p["x"])),
    )


def _eq23(grids) -> Identity:
    def lhs(p, r, ctx):
        res = integrate_1d(lambda k: k * ellip_k(k) ** 2,
                           AxisSpec(0.0, 1.0 / math.sqrt(2.0)), ctx.policy())
        return _side(res)

    return Identity(
        id="EQ23",
        anchor="int_0^{1/sqrt 2} k K^2(k) dk = pi G / 4",
        description="the tractable K^2 moment over a sub-unit interval",
        tol_class="tight",
        checks=(CheckSpec("EQ23", (), tol_class="tight"),),
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(0.25 * _PI * catalan_const()),
    )


def _eq24(grids, settings: RunSettings) -> Identity:
    checks = (
        CheckSpec("EQ24", (), route="reduced1d", tol_class="tight",
                  tol_abs=1e-9, tol_rel=1e-9),
        CheckSpec("EQ24", (), route="cubature3d", tol_class="singular3d"),
        CheckSpec("EQ24", (), route="monte_carlo", tol_class="statistical"),
    )
    source = SinProductIntegral(3, 1.0, "inv_sqrt_one_minus_t2")

    def lhs(p, r, ctx):
        if r == "reduced1d":
            return _side(reduce_sin_product(source).evaluate(ctx.policy()))
        if r == "cubature3d":
            return _side(naive_cubature(source, ctx.policy(frac=0.2)))
        if r == "monte_carlo":
            def integrand(b, f, t):
                s = np.sin(b) * np.sin(f) * np.sin(t)
                out = np.zeros_like(s)
                mask = s < 1.0
                out[mask] = np.sin(b[mask]) / np.sqrt((1.0 - s[mask])
                                                      * (1.0 + s[mask]))
                return out

            res = monte_carlo_nd(integrand, [(0.0, _HALF_PI)] * 3,
                                 ctx.settings.mc_samples, ctx.settings.seed)
            return _side(res)
        raise KeyError(f"EQ24 has no route {r!r}")

    return Identity(
        id="EQ24",
        anchor="int^3 u du dv dw / sqrt((1-u^2)(1-v^2)(1-w^2)(1-u^2 v^2 w^2)) = pi G",
        description="corner-singular triple integral equal to pi times Catalan",
        tol_class="singular3d",
        checks=checks,
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(_PI * catalan_const()),
    )


def _eq25_closed(x: float) -> float:
    ac = math.acos(x)
    return (_PI / (4.0 * x)) * (ac * ac - 2.0 * _PI * ac + 0.75 * _PI ** 2)


def _eq25(grids) -> Identity:
    xs = grids.get("x", (0.3, 0.9))
    checks = tuple(
        CheckSpec("EQ25", (("x", float(x)),), route="reduced1d",
                  tol_class="singular3d") for x in (*xs, 1e-6)
    ) + tuple(
        CheckSpec("EQ25", (("x", float(x)),), route="direct3d",
                  tol_class="singular3d") for x in xs
    )

    def lhs(p, r, ctx):
        x = p["x"]
        src = SinProductIntegral(3, x, "rational_one_over_one_minus_t")
        if r == "reduced1d":
            pol = QuadPolicy(abs_tol=1e-9, rel_tol=1e-9,
                             max_evals=ctx.settings.max_evals)
            return _side(reduce_sin_product(src).evaluate(pol))
        if r == "direct3d":
            return _side(naive_cubature(src, ctx.policy(frac=0.2)))
        raise KeyError(f"EQ25 has no route {r!r}")

    return Identity(
        id="EQ25",
        anchor="int^3 sin(beta)/(1 - x sin beta sin phi sin theta) "
               "= (pi/4x)[arccos^2 x - 2 pi arccos x + 3 pi^2/4]",
        description="Watson-type triple integral against its closed form",
        tol_class="singular3d",
        checks=checks,
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(_eq25_closed(p["x"])),
        notes="the closed form is an asserted result kept under test; the "
              "x->0 limit of both sides is pi^2/4",
    )


def _eq26(grids) -> Identity:
    ps = grids.get("p", (0.0, 1.0, 2.0))

    def lhs(p, r, ctx):
        pw = p["p"]
        res = integrate_1d(lambda u: ellip_k(u) * u ** pw,
                           AxisSpec(0.0, 1.0, "log_endpoint"), ctx.policy())
        return _side(res)

    def rhs(p, r, ctx):
        pw = p["p"]

        def integrand(th, ph):
            s = np.sin(th) * np.sin(ph)
            return ((1.0 - s) / (1.0 + s)) ** pw / (1.0 + s)

        res = integrate_nd(integrand,
                           [AxisSpec(0.0, _HALF_PI), AxisSpec(0.0, _HALF_PI)],
                           ctx.policy())
        return _side(res)

    return Identity(
        id="EQ26",
        anchor="int_0^1 K(u) f(u) du = int int f((1-s)/(1+s))/(1+s), "
               "s = sin theta sin phi; f = u^p",
        description="alternative K-kernel transform (f = u^p with "
                    "int K = 2G and int u K = 1 as anchors)",
        tol_class="standard",
        checks=_pts("EQ26", "standard", "p", ps),
        lhs=lhs,
        rhs=rhs,
    )


def _eq27(grids) -> Identity:
    k = math.sqrt(2.0) - 1.0

    def lhs(p, r, ctx):
        def integrand(th, ph):
            s = np.sin(th) * np.sin(ph)
            out = np.zeros_like(s)
            mask = s > 0.0
            if np.any(mask):
                out[mask] = 1.0 / np.sqrt(s[mask] * (1.0 + s[mask]))
            return out

        res = integrate_nd(
            integrand,
            [AxisSpec(0.0, _HALF_PI, "double_exponential"),
             AxisSpec(0.0, _HALF_PI, "double_exponential")],
            ctx.policy(frac=0.1),
        )
        return _side(res)

    return Identity(
        id="EQ27",
        anchor="int int dtheta dphi / sqrt(s (1+s)) = 4 k K(k) K'(k), "
               "k = sqrt(2) - 1, s = sin theta sin phi",
        description="edge-singular double integral at the singular modulus",
        tol_class="standard",
        checks=(CheckSpec("EQ27", (), tol_class="standard",
                          tol_abs=1e-6, tol_rel=1e-6),),
        lhs=lhs,
        rhs=lambda p, r, ctx: _closed(4.0 * k * ellip_k(k) * ellip_k_comp(k)),
    )


# ---------------------------------------------------------------------------
# Registry assembly and evaluation.
# ---------------------------------------------------------------------------

def build_registry(settings: RunSettings | None = None,
                   grid_overrides: dict[str, Sequence[float]] | None = None
                   ) -> dict[str, Identity]:
    """All identities in equation order, with optional grid-axis overrides."""
    settings = settings or RunSettings()
    grids = {k: tuple(v) for k, v in (grid_overrides or {}).items()}
    items = (
        _eq1(grids), _eq3(grids), _eq4(grids), _eq5(grids), _eq7(grids),
        _eq9(grids), _eq11(grids), _eq12_14(grids, settings), _eq15(grids),
        _eq16(grids), _eq19(grids), _eq20(grids), _eq21(grids), _eq22(grids),
        _eq23(grids), _eq24(grids, settings), _eq25(grids), _eq26(grids),
        _eq27(grids),
    )
    return {ident.id: ident for ident in items}


def _resolve_tols(spec: CheckSpec, settings: RunSettings) -> CheckSpec:
    if spec.tol_class == "statistical":
        return spec
    base = settings.class_value(spec.tol_class)
    return dataclasses.replace(
        spec,
        tol_abs=spec.tol_abs if spec.tol_abs is not None else base,
        tol_rel=spec.tol_rel if spec.tol_rel is not None else base,
    )


def evaluate_check(spec: CheckSpec, settings: RunSettings | None = None,
                   registry: dict[str, Identity] | None = None
                   ) -> VerificationRecord:
    """Evaluate both sides of one check and return the verdict record."""
    settings = settings or RunSettings()
    registry = registry or build_registry(settings)
    if spec.identity not in registry:
        raise KeyError(f"unknown identity id {spec.identity!r}")
    ident = registry[spec.identity]
    spec = _resolve_tols(spec, settings)
    tol_abs = spec.tol_abs if spec.tol_abs is not None else 1e-8
    tol_rel = spec.tol_rel if spec.tol_rel is not None else 1e-8
    ctx = EvalContext(settings=settings, tol_abs=tol_abs, tol_rel=tol_rel)
    point = spec.point_dict()
    try:
        lhs = ident.lhs(point, spec.route, ctx)
        rhs = ident.rhs(point, spec.route, ctx)
    except AccuracyError as exc:
        best = exc.best
        rec = judge(spec, SideResult(best.value, best.err_estimate,
                                     best.evaluations), SideResult(math.nan))
        return dataclasses.replace(rec, verdict="inconclusive",
                                   detail=f"quadrature budget exhausted: {exc}")
    return judge(spec, lhs, rhs)


def evaluate_identity(identity_id: str, point: dict | None = None,
                      route: str = "default",
                      settings: RunSettings | None = None) -> VerificationRecord:
    """Evaluate one identity at one parameter point (default grid otherwise)."""
    settings = settings or RunSettings()
    registry = build_registry(settings)
    if identity_id not in registry:
        raise KeyError(f"unknown identity id {identity_id!r}")
    ident = registry[identity_id]
    if point is None:
        spec = ident.checks[0]
    else:
        match = next((c for c in ident.checks
                      if c.point_dict() == point and c.route == route), None)
        spec = match or CheckSpec(
            identity=identity_id,
            point=tuple(sorted(point.items())),
            route=route,
            tol_class=ident.tol_class,
        )
    return evaluate_check(spec, settings, registry)


def _eval_task(args) -> VerificationRecord:
    spec, settings = args
    return evaluate_check(spec, settings)


def verify_suite(ids: Sequence[str] | None = None,
                 settings: RunSettings | None = None,
                 grid_overrides: dict[str, Sequence[float]] | None = None,
                 jobs: int = 1) -> list[VerificationRecord]:
    """Evaluate every check of the selected identities, in registry order.

    Records are returned in a stable (identity order, point index) order
    regardless of ``jobs``; the checks themselves are independent and pure.
    """
    settings = settings or RunSettings()
    registry = build_registry(settings, grid_overrides)
    selected = list(REGISTRY_IDS) if ids is None else list(ids)
    for ident_id in selected:
        if ident_id not in registry:
            raise KeyError(f"unknown identity id {ident_id!r}")
    specs = [spec for ident_id in selected
             for spec in registry[ident_id].checks]
    if jobs <= 1:
        return [evaluate_check(s, settings, registry) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_eval_task, [(s, settings) for s in specs]))
