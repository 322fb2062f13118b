"""Shared verdict machinery: tolerance classes and verification records."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "TOL_CLASSES",
    "SideResult",
    "VerificationRecord",
    "CheckSpec",
    "judge",
]

# Coarse tolerance classes; individual checks may carry explicit overrides
# (several acceptance thresholds sit between these grades).
TOL_CLASSES = {
    "tight": 1e-10,
    "standard": 1e-8,
    "singular3d": 1e-5,
    "statistical": None,  # pass iff |lhs - rhs| <= 3 * stderr(lhs)
}


@dataclass(frozen=True)
class SideResult:
    """One evaluated side of an identity."""

    value: float
    err_estimate: float = 0.0
    evaluations: int = 1


@dataclass(frozen=True)
class CheckSpec:
    """A single (identity, parameter point, route) verification task.

    Point axes are usually real-valued; function-catalog axes carry the
    catalog id string instead.
    """

    identity: str
    point: tuple[tuple[str, float | str], ...] = ()
    route: str = "default"
    tol_class: str = "standard"
    tol_abs: float | None = None  # explicit override of the class value
    tol_rel: float | None = None

    def point_dict(self) -> dict[str, float | str]:
        return dict(self.point)

    def effective_tols(self) -> tuple[float, float]:
        base = TOL_CLASSES.get(self.tol_class)
        if base is None and self.tol_class == "statistical":
            return (0.0, 0.0)  # resolved at judgement time from the stderr
        if base is None:
            raise KeyError(f"unknown tolerance class {self.tol_class!r}")
        return (self.tol_abs if self.tol_abs is not None else base,
                self.tol_rel if self.tol_rel is not None else base)


@dataclass(frozen=True)
class VerificationRecord:
    """Outcome of checking one identity at one parameter point."""

    identity: str
    point: dict[str, float | str] = field(default_factory=dict)
    route: str = "default"
    lhs: float = 0.0
    rhs: float = 0.0
    abs_diff: float = 0.0
    rel_diff: float = 0.0
    tol_abs: float = 0.0
    tol_rel: float = 0.0
    verdict: str = "pass"  # pass | fail | inconclusive
    lhs_err: float = 0.0
    lhs_evals: int = 1
    rhs_err: float = 0.0
    rhs_evals: int = 1
    detail: str = ""


def judge(spec: CheckSpec, lhs: SideResult, rhs: SideResult,
          detail: str = "") -> VerificationRecord:
    """Compare two evaluated sides under the check's tolerance contract.

    Non-statistical checks pass iff
    ``abs_diff <= max(tol_abs, tol_rel * max(1, |rhs|))``; statistical checks
    pass within three standard errors of the left side.
    """
    abs_diff = abs(lhs.value - rhs.value)
    rel_diff = abs_diff / max(1.0, abs(rhs.value))
    if spec.tol_class == "statistical":
        bound = 3.0 * lhs.err_estimate
        tol_abs, tol_rel = bound, 0.0
        ok = abs_diff <= bound
    else:
        tol_abs, tol_rel = spec.effective_tols()
        ok = abs_diff <= max(tol_abs, tol_rel * max(1.0, abs(rhs.value)))
    return VerificationRecord(
        identity=spec.identity,
        point=spec.point_dict(),
        route=spec.route,
        lhs=lhs.value,
        rhs=rhs.value,
        abs_diff=abs_diff,
        rel_diff=rel_diff,
        tol_abs=tol_abs,
        tol_rel=tol_rel,
        verdict="pass" if ok else "fail",
        lhs_err=lhs.err_estimate,
        lhs_evals=lhs.evaluations,
        rhs_err=rhs.err_estimate,
        rhs_evals=rhs.evaluations,
        detail=detail,
    )
