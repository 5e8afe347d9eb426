"""Exact Laurent polynomials and series of the form Q(T)/(1-T)^m.

Everything here works over Python integers, so there is no overflow and no
rounding anywhere. The centrepiece is :func:`check_positivity`, which decides
whether *every* coefficient of ``Q(T)/(1-T)^m`` is nonnegative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Sequence


def binomial(a: int, b: int) -> int:
    """C(a, b) with C(a, b) = 0 for b < 0 or b > a.

    A negative upper index is a usage error and raises ``ValueError``.
    """
    if a < 0:
        raise ValueError(f"binomial upper index must be nonnegative, got {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True, init=False)
class LaurentPolynomial:
    """Integer Laurent polynomial ``sum coeffs[i] * T**(offset + i)``.

    Always stored in canonical form: no leading/trailing zeros, and the zero
    polynomial is ``offset=0, coeffs=()``. Equality is therefore structural.
    """

    offset: int
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = (), offset: int = 0):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "offset", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "offset", int(offset) + lo)
            object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))

    @classmethod
    def monomial(cls, coeff: int, degree: int) -> LaurentPolynomial:
        return cls([coeff], degree)

    @classmethod
    def one_minus_t_power(cls, p: int) -> LaurentPolynomial:
        if p < 0:
            raise ValueError("exponent must be nonnegative")
        return cls([(-1) ** i * math.comb(p, i) for i in range(p + 1)])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def top_degree(self) -> int:
        """Highest exponent with nonzero coefficient (``offset - 1`` for zero)."""
        return self.offset + len(self.coeffs) - 1

    def __getitem__(self, degree: int) -> int:
        i = degree - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        """Yield ``(degree, coefficient)`` pairs for nonzero terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.offset + i, c

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return poly_add(self, other)

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return poly_add(self, poly_scale(-1, other))

    def __neg__(self) -> LaurentPolynomial:
        return poly_scale(-1, self)

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            return poly_mul(self, other)
        if isinstance(other, int):
            return poly_scale(other, self)
        return NotImplemented

    __rmul__ = __mul__

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_text(self) -> str:
        return f"{self.offset}:" + ",".join(str(c) for c in self.coeffs)

    @classmethod
    def from_text(cls, text: str) -> LaurentPolynomial:
        """Parse ``"offset:c0,c1,..."``; ``"0:"`` is the zero polynomial."""
        head, sep, body = text.strip().partition(":")
        if not sep:
            raise ValueError(f"expected 'offset:c0,c1,...', got {text!r}")
        try:
            offset = int(head)
            coeffs = [int(c) for c in body.split(",")] if body.strip() else []
        except ValueError as exc:
            raise ValueError(f"malformed polynomial text {text!r}") from exc
        return cls(coeffs, offset)

    def to_json(self) -> dict:
        return {"offset": self.offset, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict | str) -> LaurentPolynomial:
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            offset = obj["offset"]
            coeffs = [int(c) for c in obj["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial JSON {obj!r}") from exc
        if not isinstance(offset, int) or isinstance(offset, bool):
            raise ValueError("polynomial offset must be an integer")
        return cls(coeffs, offset)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for d, c in self:
            if d == 0:
                mono = str(abs(c))
            else:
                power = "T" if d == 1 else f"T^{d}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in terms[1:]:
            out += f" {sign} {mono}"
        return out


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial([1])


def poly_add(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    if p.is_zero:
        return q
    if q.is_zero:
        return p
    lo = min(p.offset, q.offset)
    hi = max(p.top_degree, q.top_degree)
    out = [0] * (hi - lo + 1)
    for i, c in enumerate(p.coeffs):
        out[p.offset - lo + i] += c
    for i, c in enumerate(q.coeffs):
        out[q.offset - lo + i] += c
    return LaurentPolynomial(out, lo)


def poly_scale(c: int, p: LaurentPolynomial) -> LaurentPolynomial:
    return LaurentPolynomial([c * x for x in p.coeffs], p.offset)


def poly_mul(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    if p.is_zero or q.is_zero:
        return ZERO
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return LaurentPolynomial(out, p.offset + q.offset)


def mul_one_minus_t_pow(p: int, q: LaurentPolynomial) -> LaurentPolynomial:
    """``(1-T)**p * q`` via the binomial expansion of ``(1-T)**p``."""
    if p < 0:
        raise ValueError("exponent must be nonnegative")
    if q.is_zero:
        return ZERO
    out = [0] * (len(q.coeffs) + p)
    for i in range(p + 1):
        w = -math.comb(p, i) if i & 1 else math.comb(p, i)
        for j, c in enumerate(q.coeffs):
            out[i + j] += w * c
    return LaurentPolynomial(out, q.offset)


def eval_at_one(p: LaurentPolynomial) -> int:
    return sum(p.coeffs)


def divide_by_one_minus_t(p: LaurentPolynomial) -> LaurentPolynomial:
    """Exact quotient ``p / (1-T)``; requires ``p(1) == 0``."""
    if eval_at_one(p) != 0:
        raise ValueError("division by (1-T) is not exact: p(1) != 0")
    # (1-T) q = p  <=>  q_k = p_offset + ... + p_k; the last partial sum is p(1) = 0
    return LaurentPolynomial(list(accumulate(p.coeffs))[:-1], p.offset)


@dataclass(frozen=True)
class RationalSeries:
    """The Laurent series ``numerator / (1-T)**denom_exponent`` expanded at 0."""

    numerator: LaurentPolynomial
    denom_exponent: int

    def __post_init__(self):
        if self.denom_exponent < 0:
            raise ValueError("denominator exponent must be nonnegative")

    def coefficient(self, k: int) -> int:
        m = self.denom_exponent
        if m == 0:
            return self.numerator[k]
        return sum(c * binomial(m + k - j - 1, m - 1) for j, c in self.numerator if j <= k)


@dataclass(frozen=True)
class SeriesPrefix:
    """Coefficients of a Laurent series for degrees ``offset .. truncation_degree``."""

    offset: int
    coeffs: tuple[int, ...]

    @property
    def truncation_degree(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def __getitem__(self, degree: int) -> int:
        if degree > self.truncation_degree:
            raise IndexError(f"degree {degree} beyond truncation {self.truncation_degree}")
        i = degree - self.offset
        return self.coeffs[i] if i >= 0 else 0


def _dense(p: LaurentPolynomial, lo: int, hi: int) -> list[int]:
    """Coefficients of ``p`` for degrees ``lo..hi`` (zero padded)."""
    return [p[d] for d in range(lo, hi + 1)]


def expand(rs: RationalSeries, K: int, start: int | None = None) -> SeriesPrefix:
    """Expand ``rs`` for degrees ``start..K``.

    ``start`` defaults to ``min(0, offset of the numerator)``, so ordinary
    series are listed from ``T^0``. Computed by ``m`` rounds of prefix sums.
    """
    num = rs.numerator
    lo = min(0, num.offset) if start is None else start
    if not num.is_zero and K < num.offset and start is None:
        raise ValueError("truncation degree below the numerator's lowest degree")
    if K < lo:
        return SeriesPrefix(lo, ())
    first = min(lo, num.offset) if not num.is_zero else lo
    row = _dense(num, first, K)
    for _ in range(rs.denom_exponent):
        row = list(accumulate(row))
    return SeriesPrefix(lo, tuple(row[lo - first:]))


@dataclass(frozen=True)
class PositivityCertificate:
    """Outcome of :func:`check_positivity`.

    ``positive`` certificates carry ``tail_bound``: every coefficient beyond it
    is nonnegative by a closed-form argument, every one up to it was checked.
    Negative certificates carry the first negative coefficient.
    """

    positive: bool
    witness_degree: int | None = None
    witness_value: int | None = None
    tail_bound: int | None = None

    @property
    def verdict(self) -> str:
        return "Positive" if self.positive else "NegativeAt"

    def to_json(self) -> dict:
        if self.positive:
            return {"verdict": "Positive", "tailBound": self.tail_bound}
        return {
            "verdict": "NegativeAt",
            "witnessDegree": self.witness_degree,
            "witnessValue": str(self.witness_value),
        }

    def __str__(self) -> str:
        if self.positive:
            return f"Positive (tail certified beyond degree {self.tail_bound})"
        return f"NegativeAt degree {self.witness_degree} (coefficient {self.witness_value})"


def _negative(degree: int, value: int) -> PositivityCertificate:
    return PositivityCertificate(False, witness_degree=degree, witness_value=value)


def _ceil_root(x: Fraction, k: int) -> int:
    """Smallest integer y >= 0 with y**k >= x, for x >= 0."""
    if x <= 0:
        return 0
    if k == 1:
        return math.ceil(x)
    hi = 1
    while Fraction(hi) ** k < x:
        hi *= 2
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def newton_to_monomial(deltas: Sequence[int]) -> list[Fraction]:
    """Monomial coefficients (ascending) of ``sum deltas[i] * C(t, i)``."""
    out = [Fraction(0)] * max(len(deltas), 1)
    basis = [Fraction(1)]  # C(t, i) as ascending coefficients
    for i, d in enumerate(deltas):
        if i > 0:
            # C(t, i) = C(t, i-1) * (t - i + 1) / i
            nxt = [Fraction(0)] * (len(basis) + 1)
            for j, b in enumerate(basis):
                nxt[j + 1] += b / i
                nxt[j] -= b * (i - 1) / i
            basis = nxt
        if d:
            for j, b in enumerate(basis):
                out[j] += d * b
    return out


def root_bound(poly: Sequence[Fraction]) -> int:
    """Integer bound ``B`` with every real root of ``poly`` strictly below ``B``.

    Uses the smaller of Cauchy's bound ``1 + max|a_i / a_n|`` and Fujiwara's
    bound ``2 * max|a_{n-i} / a_n|**(1/i)``; both are valid upper bounds on
    the moduli of all roots.
    """
    deg = max(i for i, c in enumerate(poly) if c)
    lead = poly[deg]
    if deg == 0:
        return 0
    ratios = [abs(poly[i] / lead) for i in range(deg)]
    cauchy = 1 + math.ceil(max(ratios))
    fujiwara = 2 * max(_ceil_root(ratios[deg - i], i) for i in range(1, deg + 1))
    return min(cauchy, fujiwara) + 1


def _newton_value(deltas: Sequence[int], t: int) -> int:
    total, c = 0, 1
    for i, d in enumerate(deltas):
        if i > 0:
            c = c * (t - i + 1) // i
            if c == 0:
                break
        total += d * c
    return total


def decide_tail(deltas: Sequence[int], base: int) -> PositivityCertificate:
    """Decide ``sum deltas[i] * C(t, i) >= 0`` for every integer ``t >= 0``.

    The values are the series coefficients at degrees ``base + t``.
    """
    if all(d >= 0 for d in deltas):
        return PositivityCertificate(True, tail_bound=base)
    mono = newton_to_monomial(deltas)
    if not any(mono):
        return PositivityCertificate(True, tail_bound=base)
    bound = root_bound(mono)
    for t in range(bound + 1):
        v = _newton_value(deltas, t)
        if v < 0:
            return _negative(base + t, v)
    lead = next(c for c in reversed(mono) if c)
    if lead < 0:
        # unreachable in exact arithmetic: past the root bound the sign is the lead's
        t = bound + 1
        return _negative(base + t, _newton_value(deltas, t))
    return PositivityCertificate(True, tail_bound=base + bound)


def check_positivity(rs: RationalSeries) -> PositivityCertificate:
    """Decide whether every coefficient of ``rs`` is nonnegative.

    Iterated prefix sums are computed over the numerator's support plus ``m``
    further degrees; past the numerator's top degree ``b`` the coefficients
    form a polynomial in ``t = k - b`` of degree below ``m`` whose Newton
    coefficients are read off the prefix-sum table. Nonnegative Newton
    coefficients settle the tail at once; otherwise the tail polynomial is
    decided exactly on all nonnegative integers through a root bound.
    """
    num, m = rs.numerator, rs.denom_exponent
    if num.is_zero:
        return PositivityCertificate(True, tail_bound=0)
    a, b = num.offset, num.top_degree
    if m == 0:
        for d, c in num:
            if c < 0:
                return _negative(d, c)
        return PositivityCertificate(True, tail_bound=b)

    levels = [list(num.coeffs) + [0] * m]
    for _ in range(m):
        levels.append(list(accumulate(levels[-1])))
    for i, c in enumerate(levels[m]):
        if c < 0:
            return _negative(a + i, c)
    top = b - a
    deltas = [levels[m - i][top + i] for i in range(m)]
    return decide_tail(deltas, b)
