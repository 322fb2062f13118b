"""Moment family K_n: recursion against the quadrature oracle."""

import math

import pytest

from intident.moments import (K1_EXACT, MomentMismatchError, MomentTable,
                              kn_oracle, kn_recursive, moment_table)
from intident.specfun import DomainError, catalan_const

PI = math.pi


def test_k1_is_pi_squared_over_eight():
    assert kn_oracle(1) == pytest.approx(PI ** 2 / 8.0, abs=1e-10)
    assert K1_EXACT == PI ** 2 / 8.0


def test_k0_equals_twice_catalan():
    assert kn_oracle(0) == pytest.approx(2.0 * catalan_const(), abs=1e-10)


def test_oracle_strictly_decreasing():
    vals = [kn_oracle(n) for n in range(0, 11)]
    assert all(v > 0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_recursion_base_case():
    # Index-1 recursion step with the empty sum: K_2 = 1/4 + pi^2/16.
    assert kn_recursive(2) == pytest.approx(0.25 + PI ** 2 / 16.0, abs=1e-14)
    assert kn_recursive(2) == pytest.approx(kn_oracle(2), abs=1e-8)


@pytest.mark.parametrize("n", [3, 8])
def test_recursion_matches_oracle(n):
    assert kn_recursive(n) == pytest.approx(kn_oracle(n), abs=1e-8)


def test_recursion_oracle_agreement_through_twelve():
    for n in range(2, 13):
        assert abs(kn_recursive(n) - kn_oracle(n)) <= 1e-8, f"n={n}"


def test_recursion_domain():
    with pytest.raises(DomainError):
        kn_recursive(1)
    with pytest.raises(DomainError):
        kn_oracle(-1)


def test_table_two_rows():
    table = moment_table(2)
    assert isinstance(table, MomentTable)
    assert [r.n for r in table.rows] == [1, 2]
    assert table.rows[0].recursion_value == K1_EXACT
    assert table.rows[0].verdict == "base"


def test_table_through_eight():
    table = moment_table(8)
    assert table.worst_diff <= 1e-8
    assert all(r.verdict in ("pass", "base") for r in table.rows)
    # Conditioning indicator recorded for every recursion row.
    assert all(r.max_recursion_term is not None for r in table.rows[1:])


def test_table_to_thirty_reports_per_row():
    # Binomial cancellation may grow the diffs; each row carries its own
    # verdict and condition indicator, nothing is silently passed.
    table = moment_table(30, strict=False)
    assert len(table.rows) == 30
    assert all(r.verdict in ("pass", "fail", "inconclusive", "base")
               for r in table.rows)
    terms = [r.max_recursion_term for r in table.rows if r.max_recursion_term]
    assert max(terms) > 1.0  # cancellation indicator actually grows


def test_table_strict_mode_raises_on_mismatch():
    with pytest.raises(MomentMismatchError) as exc:
        moment_table(8, tolerance=1e-18)
    assert len(exc.value.table.rows) == 8


def test_table_bounds():
    with pytest.raises(DomainError):
        moment_table(1)
    with pytest.raises(DomainError):
        moment_table(31)
