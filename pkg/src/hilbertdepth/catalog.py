"""Closed-form Hilbert series and Hilbert functions for two module families.

* powers ``m^s`` of the irrelevant maximal ideal of ``K[X_1..X_n]``;
* the ``u``-th syzygy module of ``R/(X_1..X_r)`` in its Koszul resolution,
  whose Hilbert function is given by three independent formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import LaurentPolynomial, RationalSeries, binomial, mul_one_minus_t_pow


@dataclass(frozen=True)
class PowerIdealParams:
    n: int
    s: int

    def __post_init__(self):
        if self.n < 1 or self.s < 1:
            raise ValueError(f"need n >= 1 and s >= 1, got n={self.n}, s={self.s}")


@dataclass(frozen=True)
class SyzygyParams:
    n: int
    r: int
    u: int
    k: int

    def __post_init__(self):
        if not (1 <= self.u <= self.r <= self.n):
            raise ValueError(f"need 1 <= u <= r <= n, got u={self.u}, r={self.r}, n={self.n}")
        if self.k < 0:
            raise ValueError(f"degree must be nonnegative, got {self.k}")

    @property
    def s(self) -> int:
        """Lower summation bound matching the alternating-sum identities: ``k - u + 1``."""
        return syzygy_shift(self.u, self.k)


def syzygy_shift(u: int, k: int) -> int:
    """Map a syzygy index ``u`` at degree ``k`` to ``s = k - u + 1``.

    With this substitution the three syzygy formulas become the three
    alternating-sum expressions in :mod:`hilbertdepth.power`.
    """
    return k - u + 1


def power_ideal_series(p: PowerIdealParams) -> RationalSeries:
    """``H(m^s) = Q/(1-T)^n`` with ``Q = 1 - (1-T)^n sum_{k<s} C(n+k-1, k) T^k``."""
    n, s = p.n, p.s
    head = LaurentPolynomial([binomial(n + k - 1, k) for k in range(s)])
    numerator = LaurentPolynomial([1]) - mul_one_minus_t_pow(n, head)
    return RationalSeries(numerator, n)


def power_ideal_coefficient(p: PowerIdealParams, k: int) -> int:
    """Dimension of the degree-``k`` piece of ``m^s``."""
    if k < p.s:
        return 0
    return binomial(p.n + k - 1, k)


def syzygy_hilbert_right(p: SyzygyParams) -> int:
    """Hilbert function from the kernel side of the split Koszul complex."""
    n, r, u, k = p.n, p.r, p.u, p.k
    # C(n-r+k-1, n-r-1) is the Hilbert function of R/(X_1..X_r); taken as 0 when n == r
    quotient = binomial(n - r + k - 1, n - r - 1) if n > r else 0
    tail = sum(
        (-1) ** (k - j) * binomial(r, k - j) * binomial(n + j - 1, j)
        for j in range(max(k - u + 1, 0), k + 1)
    )
    return (-1) ** u * (quotient - tail)


def syzygy_hilbert_left(p: SyzygyParams) -> int:
    """Hilbert function from the cokernel side of the split Koszul complex."""
    n, r, u, k = p.n, p.r, p.u, p.k
    total = sum(
        (-1) ** j * binomial(r, k - j) * binomial(n + j - 1, j) for j in range(0, k - u + 1)
    )
    return (-1) ** (k - u) * total


def syzygy_hilbert_closed(p: SyzygyParams) -> int:
    n, r, u, k = p.n, p.r, p.u, p.k
    if k < u:
        return 0
    return sum(binomial(r - t, u - 1) * binomial(n - t + k - u, k - u) for t in range(1, r + 1))
