"""Moments K_n = integral_0^1 K(k) (1+k)^{-n} dk: recursion versus oracle.

The closed-form recursion generates K_{n+1} from the binomial re-expansion of
(1-k)^n over (1+k); its base value is K_1 = pi^2/8.  The quadrature oracle
evaluates each moment directly with log-endpoint handling at k = 1.  The two
routes are kept strictly separate: if they ever disagree the table reports
the discrepancy with the oracle as ground truth, it never patches the
recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quadrature import AccuracyError, AxisSpec, QuadPolicy, integrate_1d
from .specfun import DomainError, ellip_k

__all__ = [
    "MomentRow",
    "MomentTable",
    "MomentMismatchError",
    "K1_EXACT",
    "kn_oracle",
    "kn_recursive",
    "moment_table",
]

K1_EXACT = math.pi ** 2 / 8.0

_ORACLE_POLICY = QuadPolicy(abs_tol=1e-11, rel_tol=1e-12)


class MomentMismatchError(RuntimeError):
    """Recursion and oracle disagree beyond the table tolerance."""

    def __init__(self, message: str, table: "MomentTable"):
        super().__init__(message)
        self.table = table


@dataclass(frozen=True)
class MomentRow:
    n: int
    recursion_value: float | None  # None where only the oracle applies
    oracle_value: float
    oracle_err: float
    abs_diff: float | None
    max_recursion_term: float | None  # cancellation / conditioning indicator
    verdict: str  # pass | fail | inconclusive | base


@dataclass(frozen=True)
class MomentTable:
    rows: tuple[MomentRow, ...]
    tolerance: float

    @property
    def worst_diff(self) -> float:
        diffs = [r.abs_diff for r in self.rows if r.abs_diff is not None]
        return max(diffs) if diffs else 0.0

    def failures(self) -> list[MomentRow]:
        return [r for r in self.rows if r.verdict == "fail"]


def kn_oracle(n: int, policy: QuadPolicy | None = None) -> float:
    """integral_0^1 K(k) / (1+k)^n dk by adaptive quadrature."""
    if n < 0:
        raise DomainError("kn_oracle requires n >= 0")
    res = integrate_1d(
        lambda k: ellip_k(k) / (1.0 + k) ** n,
        AxisSpec(0.0, 1.0, "log_endpoint"),
        policy or _ORACLE_POLICY,
    )
    return res.value


def _gamma_ratio_sq(n: int) -> float:
    """Gamma((n+1)/2)^2 / Gamma((n+2)/2)^2 via the exact half-integer ladder.

    With r_m = Gamma((m+1)/2)/Gamma((m+2)/2): r_1 = 2/sqrt(pi),
    r_2 = sqrt(pi)/2 and r_m = (m-1)/m * r_{m-2}, so no Gamma approximation
    enters the recursion bracket.
    """
    r = 2.0 / math.sqrt(math.pi) if n % 2 == 1 else math.sqrt(math.pi) / 2.0
    m = 1 if n % 2 == 1 else 2
    while m < n:
        m += 2
        r *= (m - 1.0) / m
    return r * r


def _recursion_ladder(n_max: int) -> tuple[dict[int, float], dict[int, float]]:
    """K_2 .. K_{n_max} from the recursion, plus per-row max term magnitudes."""
    values = {1: K1_EXACT}
    max_terms: dict[int, float] = {}
    for n in range(1, n_max):  # produces K_{n+1}
        bracket = (math.pi / 2.0 ** (n + 3)) * (_gamma_ratio_sq(n) - (-1.0) ** n * math.pi)
        biggest = abs(bracket)
        acc = bracket
        for k in range(1, n):
            term = (-1.0) ** k * math.comb(n, k) * 2.0 ** (-k) * values[n + 1 - k]
            biggest = max(biggest, abs(term))
            acc -= term
        values[n + 1] = acc
        max_terms[n + 1] = biggest
    return values, max_terms


def kn_recursive(n: int) -> float:
    """K_n from the closed-form recursion, n >= 2 (K_1 is the exact base)."""
    if n < 2:
        raise DomainError("kn_recursive requires n >= 2; K_1 = pi^2/8 is the base")
    values, _ = _recursion_ladder(n)
    return values[n]


def moment_table(n_max: int, tolerance: float = 1e-8,
                 strict: bool = True) -> MomentTable:
    """Full recursion-vs-oracle table for n = 1 .. n_max.

    With ``strict`` (the default) a row whose diff exceeds ``tolerance``
    raises :class:`MomentMismatchError` carrying the full table; the CLI
    disables strict mode and reports per-row verdicts instead.
    """
    if not (2 <= n_max <= 30):
        raise DomainError("moment_table requires 2 <= n_max <= 30")
    values, max_terms = _recursion_ladder(n_max)
    rows = []
    for n in range(1, n_max + 1):
        rec = values[n]
        try:
            res = integrate_1d(
                lambda k, _n=n: ellip_k(k) / (1.0 + k) ** _n,
                AxisSpec(0.0, 1.0, "log_endpoint"),
                _ORACLE_POLICY,
            )
            oracle, oracle_err = res.value, res.err_estimate
            diff = abs(rec - oracle)
            if n == 1:
                verdict = "base" if diff <= tolerance else "fail"
            else:
                verdict = "pass" if diff <= tolerance else "fail"
            rows.append(MomentRow(n, rec, oracle, oracle_err, diff,
                                  max_terms.get(n), verdict))
        except AccuracyError as exc:
            rows.append(MomentRow(n, rec, exc.best.value, exc.best.err_estimate,
                                  None, max_terms.get(n), "inconclusive"))
    table = MomentTable(rows=tuple(rows), tolerance=tolerance)
    if strict and table.failures():
        bad = ", ".join(f"n={r.n} (diff={r.abs_diff:.3e})" for r in table.failures())
        raise MomentMismatchError(
            f"recursion/oracle mismatch beyond {tolerance:g}: {bad}", table)
    return table
