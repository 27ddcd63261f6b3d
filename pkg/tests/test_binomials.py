from __future__ import annotations

import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homlp.binomials import (
    N_even,
    N_odd,
    check_half_identity,
    check_main_inequality,
    check_partition_identity,
    check_pascal_recursion,
    check_shift_identity,
)
from homlp.errors import DomainError


def count_by_parity(n: int, k: int, x: int) -> tuple[int, int]:
    """Count k-subsets of range(n) by the parity of their meet with range(x)."""
    odd = even = 0
    for S in itertools.combinations(range(n), k):
        if sum(1 for v in S if v < x) % 2:
            odd += 1
        else:
            even += 1
    return odd, even


@given(st.integers(1, 11), st.data())
def test_sums_count_subsets(n, data):
    k = data.draw(st.integers(0, n))
    x = data.draw(st.integers(1, n))
    assert (N_odd(n, k, x), N_even(n, k, x)) == count_by_parity(n, k, x)


def test_small_values():
    # 2-subsets of a 4-set meeting {0} oddly: the three containing 0
    assert N_odd(4, 2, 1) == 3
    assert N_even(4, 2, 1) == 3
    assert N_odd(4, 2, 2) == 4 and N_even(4, 2, 2) == 2


def test_domain():
    for args in [(3, 4, 1), (3, 1, 0), (3, 1, 4), (3, -1, 1)]:
        with pytest.raises(DomainError):
            N_odd(*args)


@pytest.mark.parametrize(
    "report, checked",
    [
        (check_half_identity(8), 36),
        (check_shift_identity(10), 45),
        (check_main_inequality(24), 936),
        (check_partition_identity(14), 1120),
        (check_pascal_recursion(14), 728),
    ],
    ids=["half", "shift", "main", "partition", "pascal"],
)
def test_sweeps_have_no_violations(report, checked):
    assert report.ok and report.checked == checked
    rec = report.to_json()
    assert rec["schema"] == "homlp/1" and rec["violations"] == []


def test_half_identity_values():
    for k in range(1, 7):
        for x in range(1, 2 * k, 2):
            assert N_odd(2 * k, k, x) == N_even(2 * k, k, x) == comb(2 * k, k) // 2


def test_inequality_is_tight_somewhere():
    # even k, x = 1: N_odd(n,k,1) counts the k-sets through one point, C(n-1,k-1)
    for k in range(2, 9, 2):
        for n in range(k, 2 * k):
            assert N_odd(n, k, 1) == comb(n - 1, k - 1)
    assert N_even(5, 3, 3) == comb(4, 2)


def test_sweep_domains():
    with pytest.raises(DomainError):
        check_half_identity(0)
    with pytest.raises(DomainError):
        check_shift_identity(1)
    with pytest.raises(DomainError):
        check_main_inequality(1)


def test_a_false_identity_is_reported():
    # shifting an even x is not covered by the identity and does fail
    n, k = 7, 4
    assert N_even(n, k, 2) != N_even(n, k, 3)
