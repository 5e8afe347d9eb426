"""Formulas for ``(1-T)^r H(m^s)`` and the Hilbert depth of ``m^s``.

The coefficient of ``T^k`` in ``(1-T)^r H(m^s)`` splits into three regimes.
The middle one is an alternating sum, which has two further closed forms;
all three are provided so they can be compared against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import PowerIdealParams, power_ideal_coefficient
from .series import binomial


@dataclass(frozen=True)
class ExpansionParams:
    n: int
    s: int
    r: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.s < 1:
            raise ValueError("need n >= 1 and s >= 1")
        if not 0 < self.r < self.n:
            raise ValueError(f"need 0 < r < n, got r={self.r}, n={self.n}")
        if self.k < 0:
            raise ValueError("degree must be nonnegative")


def multiplied_coefficient(p: ExpansionParams) -> int:
    """Coefficient of ``T^k`` in ``(1-T)^r H(m^s)`` by the regime-wise formula."""
    n, s, r, k = p.n, p.s, p.r, p.k
    if k < s:
        return 0
    if k == s:
        return binomial(n + s - 1, s)
    lead = binomial(n + k - 1 - r, k)
    if k >= r + s:
        return lead
    middle = sum((-1) ** j * binomial(r, k - j) * binomial(n + j - 1, j) for j in range(s))
    return lead + (-1) ** (k - 1) * middle


def multiplied_coefficient_by_convolution(p: ExpansionParams) -> int:
    """Same coefficient by convolving ``(1-T)^r`` with the series of ``m^s``."""
    ideal = PowerIdealParams(p.n, p.s)
    return sum(
        (-1) ** i * binomial(p.r, i) * power_ideal_coefficient(ideal, p.k - i)
        for i in range(min(p.r, p.k) + 1)
    )


def _check_alternating_args(n: int, s: int, r: int, k: int) -> None:
    if min(n, s, r, k) < 1:
        raise ValueError("n, s, r, k must all be positive")
    if n + k - r - 1 < 0:
        raise ValueError(f"n + k - r - 1 = {n + k - r - 1} is negative")


def alternating_sum(n: int, s: int, r: int, k: int) -> int:
    """``sum_{j=s}^{k} (-1)^(k-j) C(n+j-1, j) C(r, k-j)``."""
    _check_alternating_args(n, s, r, k)
    return sum(
        (-1) ** (k - j) * binomial(n + j - 1, j) * binomial(r, k - j) for j in range(s, k + 1)
    )


def alternating_sum_complement(n: int, s: int, r: int, k: int) -> int:
    """The alternating sum rewritten through its complementary range ``j < s``."""
    _check_alternating_args(n, s, r, k)
    head = sum((-1) ** j * binomial(r, k - j) * binomial(n + j - 1, j) for j in range(s))
    return binomial(n + k - r - 1, k) + (-1) ** (k - 1) * head


def alternating_sum_positive_form(n: int, s: int, r: int, k: int) -> int:
    """The alternating sum as ``C(n+k-r-1, k)`` plus a signed sum of positive terms."""
    _check_alternating_args(n, s, r, k)
    total = 0
    for t in range(1, r + 1):
        c = binomial(r - t, k - s)
        # nonzero first factor forces n - t + s - 1 >= 0 under the range check
        if c:
            total += c * binomial(n - t + s - 1, s - 1)
    return binomial(n + k - r - 1, k) + (-1) ** (k + s) * total


def power_hdepth_formula(p: PowerIdealParams) -> int:
    """``ceil(n / (s+1))``."""
    return -(-p.n // (p.s + 1))


def upper_bound_coefficient(p: PowerIdealParams, q: int) -> int:
    """Coefficient of ``T^(s+1)`` in ``(1-T)^q H(m^s)``: ``C(n+s, s+1) - q C(n+s-1, s)``."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    return binomial(p.n + p.s, p.s + 1) - q * binomial(p.n + p.s - 1, p.s)
