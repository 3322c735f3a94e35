import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smoothcircle.counting import (
    ExactCount,
    chi4,
    exact_circle_sum,
    lattice_r,
    lattice_r_table,
    r_over_4,
)
from smoothcircle.errors import DomainError, ResourceBudgetError
from smoothcircle.primes import factorize


def test_chi4_values():
    assert chi4(2) == 0
    assert chi4(1) == 1
    assert chi4(7) == -1
    assert [chi4(n) for n in range(1, 9)] == [1, 0, -1, 0, 1, 0, -1, 0]
    with pytest.raises(DomainError):
        chi4(0)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_chi4_completely_multiplicative_on_odds(m, n):
    m = 2 * m - 1
    n = 2 * n - 1
    assert chi4(m * n) == chi4(m) * chi4(n)


def test_r_over_4_examples():
    assert r_over_4(1, []) == 1
    assert r_over_4(5, [(5, 1)]) == 2
    assert r_over_4(75, [(3, 1), (5, 2)]) == 0
    assert r_over_4(2, [(2, 1)]) == 1
    assert r_over_4(25, [(5, 2)]) == 3


def test_r_over_4_rejects_bad_factorization():
    with pytest.raises(DomainError):
        r_over_4(10, [(2, 1)])  # product mismatch
    with pytest.raises(DomainError):
        r_over_4(4, [(2, 1), (2, 1)])  # repeated prime
    with pytest.raises(DomainError):
        r_over_4(3, [(3, 0)])  # zero exponent


def test_lattice_r_examples():
    assert lattice_r(1) == 4
    assert lattice_r(2) == 4
    assert lattice_r(3) == 0
    assert lattice_r(25) == 12  # (0,5),(3,4),(4,3),(5,0) with signs
    with pytest.raises(DomainError):
        lattice_r(0)


@given(st.integers(1, 50_000))
@settings(max_examples=200)
def test_r_over_4_matches_lattice(n):
    assert 4 * r_over_4(n, factorize(n)) == lattice_r(n)


def test_lattice_table_matches_pointwise():
    table = lattice_r_table(2000)
    assert table[0] == 1  # origin
    for n in range(1, 2001):
        assert table[n] == lattice_r(n)


def test_exact_examples():
    assert exact_circle_sum(10, 2).value == 16
    assert exact_circle_sum(10, 2).terms == 4  # {1, 2, 4, 8}
    assert exact_circle_sum(1, 2).value == 4
    for method in ("sieve", "recursive"):
        got = exact_circle_sum(100, 100, method)
        assert got.value == 316
        assert got.terms == 100
        assert got.method == method


def test_exact_domain_errors():
    with pytest.raises(DomainError):
        exact_circle_sum(0, 2)
    with pytest.raises(DomainError):
        exact_circle_sum(10, 1)
    with pytest.raises(DomainError):
        exact_circle_sum(10, 2, "sorcery")


def test_exact_gauss_identity(lattice_1e6):
    # with y = x every n <= x counts, so the sum is the full disk count
    for x in (100, 1000):
        assert exact_circle_sum(x, x).value == int(lattice_1e6[1 : x + 1].sum())


@pytest.mark.parametrize("y", [2, 3, 5, 10, 30, 100])
def test_methods_agree(y):
    for x in (10**3, 10**4 + 7, 10**6):
        a = exact_circle_sum(x, y, "sieve")
        b = exact_circle_sum(x, y, "recursive")
        assert a.value == b.value
        assert a.terms == b.terms


def test_methods_agree_1e7_spot():
    a = exact_circle_sum(10**7, 30, "sieve", segment_size=1 << 19)
    b = exact_circle_sum(10**7, 30, "recursive")
    assert a.value == b.value
    assert a.terms == b.terms


def test_parity_mod_4():
    for x, y in ((1, 2), (17, 3), (1000, 7), (12345, 30)):
        assert exact_circle_sum(x, y).value % 4 == 0


def test_monotone_in_x_and_y():
    vals = [exact_circle_sum(x, 10).value for x in (10, 50, 100, 500, 1000)]
    assert vals == sorted(vals)
    vals = [exact_circle_sum(1000, y).value for y in (2, 3, 5, 7, 11, 997)]
    assert vals == sorted(vals)


def test_node_budget_enforced():
    with pytest.raises(ResourceBudgetError):
        exact_circle_sum(10**6, 100, "recursive", node_budget=10)
    with pytest.raises(ResourceBudgetError):
        exact_circle_sum(10**6, 3, "sieve", node_budget=10**5)


def test_segment_size_does_not_change_result():
    base = exact_circle_sum(54321, 50, "sieve")
    for seg in (1 << 8, 1 << 12, 1 << 20):
        got = exact_circle_sum(54321, 50, "sieve", segment_size=seg)
        assert (got.value, got.terms) == (base.value, base.terms)


def test_exact_count_is_plain_int():
    c = exact_circle_sum(10**6, 1000)
    assert isinstance(c, ExactCount)
    assert isinstance(c.value, int)
    assert c.value % 4 == 0
