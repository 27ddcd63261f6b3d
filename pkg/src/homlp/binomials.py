"""Parity-split binomial sums and sweeps over the identities they satisfy.

N_odd(n, k, x) counts the k-subsets of an n-set meeting a fixed x-subset
in an odd number of points; N_even counts the rest.  The sums are taken
directly, so the recursions used to reason about them can serve as
independent checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import DomainError

__all__ = [
    "N_odd",
    "N_even",
    "SweepReport",
    "check_half_identity",
    "check_shift_identity",
    "check_main_inequality",
    "check_partition_identity",
    "check_pascal_recursion",
]


def _check(n: int, k: int, x: int):
    if not (0 <= k <= n and 1 <= x <= n):
        raise DomainError(f"need 0 <= k <= n and 1 <= x <= n (n={n}, k={k}, x={x})")


def _parity_sum(n: int, k: int, x: int, parity: int) -> int:
    return sum(comb(x, t) * comb(n - x, k - t) for t in range(parity, min(x, k) + 1, 2))


def N_odd(n: int, k: int, x: int) -> int:
    """Sum over odd t of C(x, t) C(n-x, k-t)."""
    _check(n, k, x)
    return _parity_sum(n, k, x, 1)


def N_even(n: int, k: int, x: int) -> int:
    """Sum over even t of C(x, t) C(n-x, k-t)."""
    _check(n, k, x)
    return _parity_sum(n, k, x, 0)


@dataclass
class SweepReport:
    name: str
    ranges: dict
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "schema": "homlp/1",
            "name": self.name,
            "ranges": self.ranges,
            "checked": self.checked,
            "violations": self.violations,
        }


def check_half_identity(k_max: int) -> SweepReport:
    """N_odd(2k, k, x) = N_even(2k, k, x) = C(2k, k)/2 for odd x <= 2k."""
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    rep = SweepReport("half_identity", {"k": [1, k_max], "x": "odd, <= 2k"})
    for k in range(1, k_max + 1):
        half = comb(2 * k, k) // 2
        for x in range(1, 2 * k + 1, 2):
            o, e = N_odd(2 * k, k, x), N_even(2 * k, k, x)
            rep.checked += 1
            if not (o == e == half) or comb(2 * k, k) % 2:
                rep.violations.append({"k": k, "x": x, "odd": o, "even": e, "half": half})
    return rep


def check_shift_identity(k_max: int) -> SweepReport:
    """For n = 2k-1 and odd x < n: N_even(n,k,x) = N_even(n,k,x+1) and N_odd(n,k,x) = N_odd(n,k,x+1)."""
    if k_max < 2:
        raise DomainError("k_max must be at least 2")
    rep = SweepReport("shift_identity", {"k": [2, k_max], "n": "2k-1", "x": "odd, < 2k-1"})
    for k in range(2, k_max + 1):
        n = 2 * k - 1
        for x in range(1, n, 2):
            pairs = {
                "even": (N_even(n, k, x), N_even(n, k, x + 1)),
                "odd": (N_odd(n, k, x), N_odd(n, k, x + 1)),
            }
            rep.checked += 1
            for which, (a, b) in pairs.items():
                if a != b:
                    rep.violations.append({"k": k, "x": x, "sum": which, "at_x": a, "at_x_plus_1": b})
    return rep


def check_main_inequality(bound: int) -> SweepReport:
    """For k <= n < 2k <= bound and 1 <= x <= n: the parity sum opposite to k is at most C(n-1, k-1).

    Odd k bounds N_even, even k bounds N_odd.
    """
    if bound < 2:
        raise DomainError("bound must be at least 2")
    rep = SweepReport("main_inequality", {"2k": [2, bound], "n": "k <= n < 2k", "x": [1, "n"]})
    for k in range(1, bound // 2 + 1):
        for n in range(k, 2 * k):
            cap = comb(n - 1, k - 1)
            for x in range(1, n + 1):
                val = N_even(n, k, x) if k % 2 else N_odd(n, k, x)
                rep.checked += 1
                if val > cap:
                    rep.violations.append({"n": n, "k": k, "x": x, "value": val, "cap": cap})
    return rep


def check_partition_identity(n_max: int) -> SweepReport:
    """N_odd + N_even = C(n, k) for every valid triple with n <= n_max."""
    rep = SweepReport("partition_identity", {"n": [1, n_max]})
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            for x in range(1, n + 1):
                rep.checked += 1
                if N_odd(n, k, x) + N_even(n, k, x) != comb(n, k):
                    rep.violations.append({"n": n, "k": k, "x": x})
    return rep


def check_pascal_recursion(n_max: int) -> SweepReport:
    """N_even(n,k,x) = N_odd(n-1,k-1,x-1) + N_even(n-1,k,x-1) for 1 < x < n and 1 <= k < n."""
    rep = SweepReport("pascal_recursion", {"n": [3, n_max]})
    for n in range(3, n_max + 1):
        for k in range(1, n):
            for x in range(2, n):
                rep.checked += 1
                lhs = N_even(n, k, x)
                rhs = N_odd(n - 1, k - 1, x - 1) + N_even(n - 1, k, x - 1)
                if lhs != rhs:
                    rep.violations.append({"n": n, "k": k, "x": x, "lhs": lhs, "rhs": rhs})
    return rep
