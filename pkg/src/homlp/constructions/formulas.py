"""Closed-form evaluators, window counting on a circle, and relaxed orbit LPs."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from ..errors import DomainError
from ..graphs import Graph
from ..symmetry import OrbitDecomposition
from ..svalue import WeightFunction, mc, solve_orbit_lp

__all__ = [
    "gamma",
    "gamma_brute",
    "gamma_closed",
    "corw_predict",
    "corw_from_gamma",
    "xi",
    "closed_form",
    "CLOSED_FORMS",
    "relaxed_s",
    "RelaxedValue",
]


# ---------------------------------------------------------------------------
# windows on a circle


def _check_gamma(p: int, q: int, r: int, s: int, i: int):
    if min(p, q, r, s) < 1 or i < 0:
        raise DomainError("gamma needs positive p, q, r, s and i >= 0")
    if not (r > 2 * p + q + s and s >= p):
        raise DomainError(f"gamma needs r > 2p+q+s and s >= p (p={p}, q={q}, r={r}, s={s})")


def gamma_brute(p: int, q: int, r: int, s: int, i: int) -> int:
    """Count the r windows of s consecutive points holding exactly i marked points.

    Marked points are P1 = {0..p-1} and P2 = {q+p..q+2p-1} on a circle of r.
    A zero gap q is accepted here (adjacent blocks).
    """
    if q == 0:
        _check_gamma(p, 1, r + 1, s, i)
    else:
        _check_gamma(p, q, r, s, i)
    marked = [False] * r
    for x in list(range(p)) + list(range(q + p, q + 2 * p)):
        marked[x] = True
    count = sum(marked[:s])
    hits = 0
    for start in range(r):
        if count == i:
            hits += 1
        count += marked[(start + s) % r] - marked[start]
    return hits


def gamma_closed(p: int, q: int, r: int, s: int, i: int) -> int | None:
    """Closed-form window count, or None where no branch defines a value."""
    _check_gamma(p, q, r, s, i)
    if s <= q:
        table = {0: r - 2 * p - 2 * s + 2, p: 2 * s - 2 * p + 2}
        if i in table:
            return table[i]
        return 0 if i > p else None
    if s == q + p:
        table = {0: r - 3 * p - 2 * q + 1, p: 2 * q + p + 1}
        if i in table:
            return table[i]
        return 0 if i > p else None
    if s > q + p + 1:
        table = {0: r - 2 * p - q - s + 1, p: 2 * q + 2, p + 1: 2}
        if i in table:
            return table[i]
        return 0 if i > 2 * p else None
    return None


def gamma(p: int, q: int, r: int, s: int, i: int) -> tuple[int, int | None]:
    """(brute-force count, closed form or None)."""
    return gamma_brute(p, q, r, s, i), gamma_closed(p, q, r, s, i)


def corw_predict(k: int, n: int, m: int, u: int, g: int, orbit_size: int | None = None) -> int:
    """Predicted preserved count of the orbit whose edges span g(2k+1)-1 walk steps.

    S is two blocks of 2k walk positions whose closest points are
    (u-1)(2k+1) steps apart.  The orbit size defaults to p = 2kn+n-2m.
    """
    if k < 1 or n < 1 or m < 0 or u < 1 or g < 1:
        raise DomainError("corw needs k, n, u, g >= 1 and m >= 0")
    size = orbit_size if orbit_size is not None else 2 * k * n + n - 2 * m
    if g < u:
        return size - (8 * k - 4)
    if g == u:
        return size - (4 * k - 2)
    return size - (g - u) * (2 * k + 1) - (6 * k - 5)


def corw_from_gamma(k: int, u: int, g: int, orbit_size: int) -> int:
    """The same count assembled from window counts: gamma(0)+gamma(2k)+gamma(2k+1)."""
    p, q, s = 2 * k, (u - 1) * (2 * k + 1), g * (2 * k + 1) - 1
    return sum(gamma_brute(p, q, orbit_size, s, i) for i in (0, p, p + 1))


# ---------------------------------------------------------------------------
# closed forms


def xi(k: int, n: int) -> Fraction:
    """(a1^m + a2^m)/4 with m = (n-1)/2, via power sums of the two reciprocal roots.

    a1, a2 are the reciprocals of the roots of c z^2 - 2z + 1 with
    c = (2k-3)/(4k-2), i.e. roots of x^2 - 2x + c.  Their power sums obey
    t_m = 2 t_{m-1} - c t_{m-2}, t_0 = t_1 = 2, all rational.
    """
    if k < 2 or n < 3 or n % 2 == 0:
        raise DomainError("xi needs k >= 2 and odd n >= 3")
    c = Fraction(2 * k - 3, 4 * k - 2)
    m = (n - 1) // 2
    t_prev, t = Fraction(2), Fraction(2)  # t_0, t_1
    if m == 0:
        return t_prev / 4
    for _ in range(m - 1):
        t_prev, t = t, 2 * t - c * t_prev
    return t / 4


def _need(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _k2_4k(k: int) -> Fraction:
    _need(k >= 1, "k >= 1")
    return Fraction(2 * k, 2 * k + 1)


def _k2_6k5(k: int) -> Fraction:
    _need(k >= 1, "k >= 1")
    return Fraction(6 * k * k + 8 * k + 3, 6 * k * k + 11 * k + 5)


def _k2_8k6(k: int) -> Fraction:
    _need(k >= 1, "k >= 1")
    return Fraction(8 * k * k + 6 * k + 2, 8 * k * k + 10 * k + 3)


_TABULATED = {(17, 6): Fraction(322, 425), (27, 11): Fraction(5, 6), (20, 7): Fraction(67, 89)}


def _tabulated(p: int, q: int) -> Fraction:
    if (p, q) not in _TABULATED:
        raise DomainError(f"no tabulated value for K({p}/{q})")
    return _TABULATED[(p, q)]


def _cycle_lower_stated(k: int, n: int) -> Fraction:
    _need(k >= 2 and n >= 2, "k, n >= 2")
    P = 2 * (k * n - 1) + n
    return Fraction(P * (4 * k - 1), P * (4 * k - 1) + 4 * k - 2)


def _cycle_lower_derived(k: int, n: int) -> Fraction:
    _need(k >= 2 and n >= 2, "k, n >= 2")
    P = 2 * (k * n - 1) + n
    a = 1 - Fraction(1, P)
    b = 1 - Fraction(2 * (2 * k - 1), P)
    return (1 - a * b) / (2 - a - b)


def _cycle_split_bound(k: int, n: int) -> Fraction:
    x = xi(k, n)
    P = 2 * (k * n - 2) + n
    top = P * (x * (4 * k - 1) + (2 * k - 1))
    return top / (top + (4 * k - 2) * (1 - x))


def _cube_chi(n: int, k: int) -> Fraction:
    _need(1 <= k <= n < 2 * k, "k <= n < 2k")
    return Fraction(n, k) if k % 2 == 0 else Fraction(n + 1, k + 1)


def _jump(k: int) -> Fraction:
    _need(k >= 1, "k >= 1")
    return Fraction(2 * k - 1, 4 * k * (2 * k + 1))


def _mod_map_claim(k: int) -> Fraction:
    _need(k >= 1, "k >= 1")
    return Fraction(4 * k - 1, 4 * k)


CLOSED_FORMS: dict[str, Callable[..., Fraction]] = {
    "k2_4k": _k2_4k,
    "k2_6k5": _k2_6k5,
    "k2_8k6": _k2_8k6,
    "tabulated": _tabulated,
    "cycle_lower_stated": _cycle_lower_stated,
    "cycle_lower_derived": _cycle_lower_derived,
    "cycle_split_bound": _cycle_split_bound,
    "xi": xi,
    "cube_chi": _cube_chi,
    "jump": _jump,
    "oddcycle": _k2_4k,
    "mod_map_claim": _mod_map_claim,
}


def closed_form(name: str, *args: int, **kwargs: int) -> Fraction:
    """Evaluate a named closed form exactly, e.g. ``closed_form("k2_6k5", k=1)``."""
    try:
        fn = CLOSED_FORMS[name]
    except KeyError:
        raise DomainError(f"unknown closed form {name!r}") from None
    return fn(*args, **kwargs)


# ---------------------------------------------------------------------------
# relaxations


class RelaxedValue(Fraction):
    """A Fraction carrying the optimal orbit weights and a completeness flag."""

    omega: tuple[Fraction, ...]
    complete: bool | None

    def __new__(cls, value: Fraction, omega, complete):
        self = super().__new__(cls, value)
        self.omega = tuple(omega)
        self.complete = complete
        return self


def relaxed_s(
    orbit_sizes: Sequence[int],
    signatures: Sequence[Sequence[int]],
    M: Graph | None = None,
    N: Graph | None = None,
    orbits: OrbitDecomposition | None = None,
) -> RelaxedValue:
    """Orbit LP restricted to the given signatures: a lower bound on s(M, N).

    With M, N and the orbits supplied, the bound is also tested for
    equality: it is exact iff mc at the relaxed optimum equals the value.
    """
    sigs = [tuple(int(x) for x in f) for f in signatures]
    if not sigs:
        raise DomainError("relaxed_s needs at least one signature")
    for f in sigs:
        if len(f) != len(orbit_sizes) or any(not 0 <= x <= a for x, a in zip(f, orbit_sizes)):
            raise DomainError(f"signature {f} does not fit orbit sizes {tuple(orbit_sizes)}")
    value, omega, _, _, _ = solve_orbit_lp(list(orbit_sizes), sigs)
    complete = None
    if M is not None and N is not None and orbits is not None:
        best, _ = mc(M, N, WeightFunction.from_orbits(orbits, omega))
        complete = best == value
    return RelaxedValue(value, omega, complete)
