"""Hilbert depth from a Hilbert series, plus positive decompositions.

Hilbert depth of ``H = Q/(1-T)^n`` can be read off in two equivalent ways:
the least ``q`` for which ``Q/(1-T)^q`` is positive (giving ``n - q``), or the
largest ``p`` for which ``(1-T)^p H`` is positive. Both are implemented, on
separate code paths, so that each can be used to check the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate

from .series import (
    LaurentPolynomial,
    PositivityCertificate,
    RationalSeries,
    binomial,
    check_positivity,
    divide_by_one_minus_t,
    eval_at_one,
    mul_one_minus_t_pow,
    poly_add,
)


class NotAHilbertSeries(ValueError):
    """The input series is zero or has a negative coefficient."""


class InternalInconsistency(RuntimeError):
    """A state the theory rules out; always indicates a bug."""


@dataclass(frozen=True)
class HilbertDecomposition:
    """``H = sum_e parts[e] / (1-T)^e`` with nonnegative numerators."""

    min_level: int
    parts: tuple[tuple[int, LaurentPolynomial], ...]

    def to_json(self) -> dict:
        return {
            "hdepth": self.min_level,
            "parts": [{"level": e, "numerator": q.to_json()} for e, q in self.parts],
        }

    @classmethod
    def from_json(cls, obj: dict) -> HilbertDecomposition:
        try:
            parts = tuple(
                (int(p["level"]), LaurentPolynomial.from_json(p["numerator"])) for p in obj["parts"]
            )
            return cls(int(obj["hdepth"]), parts)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed decomposition JSON: {exc}") from exc


@dataclass(frozen=True)
class DepthReport:
    hdepth: int
    certificate_at_d: PositivityCertificate
    certificate_above_d: PositivityCertificate | None
    decomposition: HilbertDecomposition | None = field(default=None)

    def to_json(self) -> dict:
        out = {
            "hdepth": self.hdepth,
            "certificateAtD": self.certificate_at_d.to_json(),
            "certificateAboveD": (
                self.certificate_above_d.to_json() if self.certificate_above_d else None
            ),
        }
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json()
        return out


def _validate(rs: RationalSeries) -> PositivityCertificate:
    if rs.numerator.is_zero:
        raise NotAHilbertSeries("the zero series is not the Hilbert series of a nonzero module")
    cert = check_positivity(rs)
    if not cert.positive:
        raise NotAHilbertSeries(
            f"series has coefficient {cert.witness_value} at degree {cert.witness_degree}"
        )
    return cert


def hdepth_via_numerator(rs: RationalSeries) -> DepthReport:
    """``n - min{q : Q/(1-T)^q positive}``, found by binary search on ``q``.

    Positivity is monotone in ``q`` because dividing by ``1-T`` takes prefix
    sums, which keep a nonnegative sequence nonnegative.
    """
    n, q_poly = rs.denom_exponent, rs.numerator
    top_cert = _validate(rs)
    certs = {n: top_cert}

    def cert(q: int) -> PositivityCertificate:
        if q not in certs:
            certs[q] = check_positivity(RationalSeries(q_poly, q))
        return certs[q]

    lo, hi = 0, n  # invariant: q = hi is positive
    while lo < hi:
        mid = (lo + hi) // 2
        if cert(mid).positive:
            hi = mid
        else:
            lo = mid + 1
    q_min = hi
    below = cert(q_min - 1) if q_min > 0 else None
    if below is not None and below.positive:
        raise InternalInconsistency("positivity is not monotone in the pole order")
    return DepthReport(n - q_min, cert(q_min), below)


def hdepth_via_multiplication(rs: RationalSeries) -> int:
    """``max{p : (1-T)^p H positive}`` by scanning ``p = 0, 1, ...``."""
    n, q_poly = rs.denom_exponent, rs.numerator
    _validate(rs)
    p = 0
    while p < n:
        shifted = mul_one_minus_t_pow(p + 1, q_poly)
        if not check_positivity(RationalSeries(shifted, n)).positive:
            break
        p += 1
    return p


def _feasible(
    levels: list[list[int]], a: int, b: int, i: int, sigma: int, j: int
) -> bool | None:
    """Screen ``(N - sigma T^j)/(1-T)^i`` for positivity from the prefix-sum table of N.

    ``levels[l][x]`` is the l-th prefix sum of N at degree ``a + x`` for
    degrees ``a .. b + i``. Returns True or False when the screen is
    conclusive and None when the full oracle must decide. Requires ``j <= b``.
    """
    # l-th prefix sum of sigma*T^j at degree k is sigma*C(k - j + l - 1, l - 1)
    row = levels[i]
    if any(v < 0 for v in row[: j - a]):
        return False
    c = sigma  # C(k - j + i - 1, i - 1) at k = j
    for x in range(j - a, len(row)):
        if row[x] < c:
            return False
        k = a + x
        c = c * (k - j + i) // (k - j + 1)
    deltas = []
    for l in range(i):
        level = i - l
        k = b + l
        val = levels[level][b - a + l] - sigma * binomial(k - j + level - 1, level - 1)
        deltas.append(val)
    if all(d >= 0 for d in deltas):
        return True
    return None


def _smallest_feasible_j(n_poly: LaurentPolynomial, i: int, sigma: int) -> int:
    """Least ``j`` with ``(N - sigma T^j)/(1-T)^i`` positive.

    Feasibility is monotone in ``j``: the coefficients of ``T^j/(1-T)^i``
    shrink pointwise as ``j`` grows. A galloping search followed by bisection
    therefore finds the threshold.
    """
    a, b = n_poly.offset, n_poly.top_degree
    ceiling = b + 4 * (i + 1) * (1 + max(abs(c) for c in n_poly.coeffs))

    levels = [list(n_poly.coeffs) + [0] * i]
    for _ in range(i):
        levels.append(list(accumulate(levels[-1])))

    cache: dict[int, bool] = {}

    def ok(j: int) -> bool:
        if j not in cache:
            verdict = _feasible(levels, a, b, i, sigma, j) if j <= b else None
            if verdict is None:
                cand = poly_add(n_poly, LaurentPolynomial.monomial(-sigma, j))
                verdict = check_positivity(RationalSeries(cand, i)).positive
            cache[j] = verdict
        return cache[j]

    if ok(a):
        return a
    lo, step = a, 1  # lo is infeasible throughout
    while True:
        hi = min(a + step, ceiling)
        if ok(hi):
            break
        if hi == ceiling:
            raise InternalInconsistency(
                f"no feasible monomial up to degree {ceiling} at pole order {i}"
            )
        lo, step = hi, step * 2
    lo += 1
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return hi


def decompose(rs: RationalSeries) -> HilbertDecomposition:
    """Write ``H`` as ``sum_{e=d}^{n} Q_e/(1-T)^e`` with ``d = hdepth`` and ``Q_e >= 0``.

    Peels one pole at a time: at pole order ``i`` a monomial ``sigma T^j``
    (``sigma`` = value of the current numerator at 1, ``j`` minimal) is split
    off so the remainder is divisible by ``1-T``.
    """
    n = rs.denom_exponent
    d = hdepth_via_numerator(rs).hdepth
    parts: list[tuple[int, LaurentPolynomial]] = []
    current = rs.numerator
    for i in range(n - d, 0, -1):
        sigma = eval_at_one(current)
        if sigma < 0:
            raise InternalInconsistency(f"negative value {sigma} at T=1 at pole order {i}")
        if sigma > 0:
            j = _smallest_feasible_j(current, i, sigma)
            mono = LaurentPolynomial.monomial(sigma, j)
            parts.append((d + i, mono))
            current = poly_add(current, -mono)
        current = divide_by_one_minus_t(current)
    if current.is_zero or not current.is_nonnegative():
        raise InternalInconsistency(f"final numerator {current} is not positive")
    parts.append((d, current))
    parts.sort(key=lambda part: part[0])
    return HilbertDecomposition(d, tuple(parts))


def verify_decomposition(dec: HilbertDecomposition, rs: RationalSeries) -> bool:
    """Check positivity of every part and ``sum Q_e (1-T)^(n-e) == Q`` exactly."""
    n = rs.denom_exponent
    levels = [e for e, _ in dec.parts]
    if levels != sorted(set(levels)):
        return False
    if not dec.parts or levels[0] != dec.min_level:
        return False
    if any(e < dec.min_level or e > n for e in levels):
        return False
    total = LaurentPolynomial()
    for e, q in dec.parts:
        if q.is_zero or not q.is_nonnegative():
            return False
        total = total + mul_one_minus_t_pow(n - e, q)
    return total == rs.numerator


def hilbert_depth(rs: RationalSeries, with_decomposition: bool = False) -> DepthReport:
    """Depth report computed both ways; disagreement raises InternalInconsistency."""
    report = hdepth_via_numerator(rs)
    other = hdepth_via_multiplication(rs)
    if other != report.hdepth:
        raise InternalInconsistency(
            f"pole-order search gives {report.hdepth}, multiplication scan gives {other}"
        )
    if with_decomposition:
        dec = decompose(rs)
        if not verify_decomposition(dec, rs):
            raise InternalInconsistency("constructed decomposition failed verification")
        report = DepthReport(report.hdepth, report.certificate_at_d, report.certificate_above_d, dec)
    return report


__all__ = [
    "DepthReport",
    "HilbertDecomposition",
    "InternalInconsistency",
    "NotAHilbertSeries",
    "decompose",
    "hdepth_via_multiplication",
    "hdepth_via_numerator",
    "hilbert_depth",
    "verify_decomposition",
]
