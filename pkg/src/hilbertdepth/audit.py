"""Falsification checks for the inequalities behind ``Hdepth m^s = ceil(n/(s+1))``.

Integer inequalities are checked exactly. Inequalities the argument states
over real parameters are checked in floating point with :func:`digamma` and
must clear a margin (default ``1e-9``) so that rounding cannot produce a
spurious pass.

Each grid runner returns an :class:`AuditReport`; a report passes iff it has
no failures.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .catalog import SyzygyParams, syzygy_hilbert_closed, syzygy_hilbert_left, syzygy_hilbert_right
from .power import (
    ExpansionParams,
    alternating_sum,
    alternating_sum_complement,
    alternating_sum_positive_form,
    multiplied_coefficient,
    multiplied_coefficient_by_convolution,
)
from .series import binomial
from .special import digamma, log_gamma

DEFAULT_MARGIN = 1e-9
DEFAULT_SEED = 20100701


class OutOfRange(ValueError):
    """Parameters outside the hypotheses of a check."""


@dataclass
class AuditReport:
    check_name: str
    grid_description: str
    total_points: int = 0
    failures: list[tuple] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, params: tuple, ok: bool, lhs=None, rhs=None) -> None:
        self.total_points += 1
        if not ok:
            self.failures.append((params, lhs, rhs))

    def finish(self) -> AuditReport:
        self.failures.sort(key=lambda f: f[0])
        return self

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.check_name}: {status} ({self.total_points} points, "
            f"{len(self.failures)} failures) [{self.grid_description}]"
        )

    def to_json(self) -> dict:
        return {
            "check": self.check_name,
            "grid": self.grid_description,
            "total_points": self.total_points,
            "passed": self.passed,
            "failures": [
                {"params": list(p), "lhs": _jsonable(l), "rhs": _jsonable(r)}
                for p, l, r in self.failures
            ],
            "notes": list(self.notes),
        }


def _jsonable(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


def ceil_ratio(n: float, s: float) -> int:
    """``ceil(n/(s+1))``, exact for integers and via ``math.ceil`` for reals."""
    if isinstance(n, int) and isinstance(s, int):
        return -(-n // (s + 1))
    return math.ceil(n / (s + 1))


# -- digamma inequalities over real parameters ---------------------------------


def digamma_difference(n: float, k: float, s: float, t: float) -> float:
    """``psi(n+k-r) - psi(r-t-k+s+1) + psi(k-s+1) - psi(k+1)`` with ``r = ceil(n/(s+1))``."""
    r = ceil_ratio(n, s)
    if not (n >= 1 and t >= 1 and s >= 2 and s + 2 <= k <= r + s - t - 1):
        raise OutOfRange(f"need n,t >= 1, s >= 2, s+2 <= k <= r+s-t-1 (r={r})")
    return digamma(n + k - r) - digamma(r - t - k + s + 1) + digamma(k - s + 1) - digamma(k + 1)


def check_digamma_difference(
    n: float, k: float, s: float, t: float, margin: float = DEFAULT_MARGIN
) -> bool:
    return digamma_difference(n, k, s, t) > margin


def log_digamma_limit(s: float) -> float:
    """``log s + psi(3) - psi(s+3)``: the large-``n`` limit of the smallest-``k`` case."""
    if not s >= 2:
        raise OutOfRange("need s >= 2")
    return math.log(s) + digamma(3) - digamma(s + 3)


def check_log_digamma_limit(s: float, margin: float = DEFAULT_MARGIN) -> bool:
    return log_digamma_limit(s) > margin


def jump_difference(ell: int, s: int) -> float:
    """Change of the smallest-``k`` expression across one jump of ``r``:
    ``psi((l+1)s+1) - psi((l+1)s+s+1) + 1/(l-1)``."""
    if ell < 2 or s < 2:
        raise OutOfRange("need ell >= 2 and s >= 2")
    a = (ell + 1) * s
    return digamma(a + 1) - digamma(a + s + 1) + 1 / (ell - 1)


def check_jump_difference(ell: int, s: int, margin: float = DEFAULT_MARGIN) -> bool:
    """The digamma gap across a jump stays above ``-1/(l-1)``.

    Also checks the intermediate estimate ``gap >= -s/((l+1)s+1)`` on the way.
    """
    gap = jump_difference(ell, s) - 1 / (ell - 1)
    a = (ell + 1) * s
    return gap >= -s / (a + 1) - 1e-12 and gap > -1 / (ell - 1) + margin


def derivative_quadratic(n, s, r):
    """``(n+s)(n+s+1) - r(n+s)(s+2) + C(r,2)(s+1)(s+2)``; exact for integer input."""
    pairs = r * (r - 1) // 2 if isinstance(r, int) else r * (r - 1) / 2
    return (n + s) * (n + s + 1) - r * (n + s) * (s + 2) + pairs * (s + 1) * (s + 2)


def _require_large_n(n, s) -> int:
    if not (s >= 2 and n > 3 * s + 3):
        raise OutOfRange(f"need s >= 2 and n > 3s+3, got n={n}, s={s}")
    return ceil_ratio(n, s)


def digamma_growth_gap(n: float, s: int) -> float:
    """``psi(n+s-r+2) - psi(n-r) - (psi(n+s) - psi(n) + (2n+2s+1-r(s+2))/N)``."""
    r = _require_large_n(n, s)
    quad = derivative_quadratic(n, s, r)
    lhs = digamma(n + s - r + 2) - digamma(n - r)
    rhs = digamma(n + s) - digamma(n) + (2 * n + 2 * s + 1 - r * (s + 2)) / quad
    return lhs - rhs


def check_digamma_growth(n: float, s: int, margin: float = DEFAULT_MARGIN) -> bool:
    return digamma_growth_gap(n, s) > margin


# -- exact integer inequalities -------------------------------------------------


def second_coefficient_sides(n: int, s: int) -> tuple[int, int]:
    """Both sides of the ``k = s+2`` inequality, ``2 C(n+s-r+1, s+2) >= ...``."""
    r = _require_large_n(n, s)
    lhs = 2 * binomial(n + s - r + 1, s + 2)
    rhs = (
        binomial(n + s + 1, s + 2)
        - r * binomial(n + s, s + 1)
        + binomial(r, 2) * binomial(n + s - 1, s)
    )
    return lhs, rhs


def check_second_coefficient(n: int, s: int) -> bool:
    lhs, rhs = second_coefficient_sides(n, s)
    return lhs >= rhs


def quadratic_lower_sides(n: int, s: int) -> tuple[int, int]:
    """``(r-1) N >= (n-1)(n+s)``."""
    r = _require_large_n(n, s)
    return (r - 1) * derivative_quadratic(n, s, r), (n - 1) * (n + s)


def quadratic_mixed_sides(n: int, s: int) -> tuple[int, int]:
    """``2N + ((r-2)s+1)s >= (n-r+1)(2n+2s+1-r(s+2))``."""
    r = _require_large_n(n, s)
    lhs = 2 * derivative_quadratic(n, s, r) + ((r - 2) * s + 1) * s
    rhs = (n - r + 1) * (2 * n + 2 * s + 1 - r * (s + 2))
    return lhs, rhs


def quadratic_expanded_sides(n: int, s: int) -> tuple[int, int]:
    """The lower quadratic bound with ``N`` multiplied out."""
    r = _require_large_n(n, s)
    lhs = (r - 1) * binomial(r, 2) * (s + 1) * (s + 2)
    rhs = (n + s) * (n - 1 - (r - 1) * (n + s + 1) + r * (r - 1) * (s + 2))
    return lhs, rhs


def check_quadratic_lower(n: int, s: int) -> bool:
    lhs, rhs = quadratic_lower_sides(n, s)
    return lhs >= rhs


def check_quadratic_mixed(n: int, s: int) -> bool:
    lhs, rhs = quadratic_mixed_sides(n, s)
    return lhs >= rhs


def check_quadratic_expanded(n: int, s: int) -> bool:
    lhs, rhs = quadratic_expanded_sides(n, s)
    return lhs >= rhs


def reciprocal_bound_sides(n: int, s: int) -> tuple[Fraction, Fraction]:
    """``2/(n-r+1) + ((r-2)s+1)/((n-1)(n+s-1)) >= (2n+2s+1-r(s+2))/N``, exactly."""
    r = _require_large_n(n, s)
    lhs = Fraction(2, n - r + 1) + Fraction((r - 2) * s + 1, (n - 1) * (n + s - 1))
    rhs = Fraction(2 * n + 2 * s + 1 - r * (s + 2), derivative_quadratic(n, s, r))
    return lhs, rhs


def _falling(top: int, count: int) -> int:
    out = 1
    for i in range(count):
        out *= top - i
    return out


def falling_ratio_sides(ell: int, s: int) -> tuple[int, int]:
    """``4 ((l+1)s-1)!/(ls-2)!`` and ``((l+1)(s+1)-2)!/(l(s+1)-2)!``.

    These are the two sides of ``2 A >= B/2`` after doubling; each ratio of
    factorials is a product of ``s+1`` consecutive integers.
    """
    if ell < 3 or s < 2:
        raise OutOfRange("need ell >= 3 and s >= 2")
    lhs = 4 * _falling((ell + 1) * s - 1, s + 1)
    rhs = _falling((ell + 1) * (s + 1) - 2, s + 1)
    return lhs, rhs


def check_falling_ratio(ell: int, s: int) -> bool:
    lhs, rhs = falling_ratio_sides(ell, s)
    return lhs >= rhs


def check_falling_ratio_derivatives(ell: float, s: int) -> bool:
    """Digamma comparison that makes the left side of the factorial inequality grow faster."""
    if ell < 3 or s < 2:
        raise OutOfRange("need ell >= 3 and s >= 2")
    left = digamma((ell + 1) * s) - digamma(ell * s - 1)
    right = digamma((ell + 1) * (s + 1) - 1) - digamma(ell * (s + 1) - 1)
    return left > right and 2 * s * left > (s + 1) / 2 * right


def binomial_dominance(n: int, s: int) -> AuditReport:
    """``C(n+k-r-1, k) >= sum_t C(r-t, k-s) C(n-t+s-1, s-1)`` for ``k = s+1 .. s+r-1``."""
    if n < 1 or s < 1:
        raise OutOfRange("need n, s >= 1")
    r = ceil_ratio(n, s)
    report = AuditReport("binomial-dominance", f"n={n}, s={s}, r={r}, k=s+1..s+r-1")
    for k in range(s + 1, s + r):
        lhs, rhs = binomial_dominance_sides(n, s, k)
        report.record((n, s, k), lhs >= rhs, lhs, rhs)
    return report.finish()


def binomial_dominance_sides(n: int, s: int, k: int) -> tuple[int, int]:
    """Both sides of the dominance inequality at one degree ``k``, with ``r = ceil(n/(s+1))``."""
    if n < 1 or s < 1:
        raise OutOfRange("need n, s >= 1")
    r = ceil_ratio(n, s)
    lhs = binomial(n + k - r - 1, k)
    rhs = sum(binomial(r - t, k - s) * binomial(n - t + s - 1, s - 1) for t in range(1, r + 1))
    return lhs, rhs


# -- derivative comparison for the real extension in k ---------------------------


def _extended_terms(n: float, s: float, k: float, r: int):
    """Terms ``t`` of the gamma-extended right side with positive gamma arguments."""
    return [t for t in range(1, r + 1) if r - t - k + s + 1 > 0]


def _rhs_binomial_factor(n: float, s: float, t: int) -> float:
    # C(n-t+s-1, s-1) extended through gamma functions
    return math.exp(log_gamma(n - t + s) - log_gamma(s) - log_gamma(n - t + 1))


def _extended_lhs(n: float, s: float, k: float, r: int) -> float:
    return math.exp(log_gamma(n + k - r) - log_gamma(k + 1) - log_gamma(n - r))


def _extended_rhs(n: float, s: float, k: float, r: int, terms) -> float:
    total = 0.0
    for t in terms:
        total += math.exp(
            log_gamma(r - t + 1) - log_gamma(k - s + 1) - log_gamma(r - t - k + s + 1)
        ) * _rhs_binomial_factor(n, s, t)
    return total


@dataclass(frozen=True)
class DerivativeComparison:
    lhs_derivative: float
    rhs_derivative: float
    lhs_finite_difference: float
    rhs_finite_difference: float
    rhs_scale: float

    @property
    def dominates(self) -> bool:
        return self.lhs_derivative > self.rhs_derivative

    def agrees(self, rel_tol: float = 1e-4) -> bool:
        lhs_ok = abs(self.lhs_finite_difference - self.lhs_derivative) <= rel_tol * abs(
            self.lhs_derivative
        )
        rhs_ok = abs(self.rhs_finite_difference - self.rhs_derivative) <= rel_tol * self.rhs_scale
        return lhs_ok and rhs_ok


def derivative_comparison(
    n: float, s: float, k0: float, t: float, step: float = 1e-6
) -> DerivativeComparison:
    """Analytic and finite-difference derivatives in ``k`` of both binomial sides at ``k0``.

    Binomials are extended to real ``k`` through gamma functions. The right
    side keeps the summands whose gamma arguments are positive at ``k0``
    (the only ones that are nonzero at integer ``k``); ``t`` fixes the
    admissible range ``s+2 <= k0 <= r+s-t-1``.
    """
    r = ceil_ratio(n, s)
    if not (n >= 1 and t >= 1 and s >= 2 and s + 2 <= k0 <= r + s - t - 1):
        raise OutOfRange(f"need n,t >= 1, s >= 2, s+2 <= k0 <= r+s-t-1 (r={r})")
    pole_arg = r - t - k0 + s + 1
    if pole_arg <= 0 and pole_arg == int(pole_arg):
        raise OutOfRange("gamma argument at a pole")
    if n - r - 1 < 0:
        raise OutOfRange("n - r - 1 must be nonnegative")
    terms = _extended_terms(n, s, k0, r)
    if any(r - u - k0 + s + 1 <= 2 * step for u in terms):
        raise OutOfRange("a gamma argument is too close to a pole for differencing")

    lhs_val = _extended_lhs(n, s, k0, r)
    lhs_der = (digamma(n + k0 - r) - digamma(k0 + 1)) * lhs_val
    rhs_der, scale = 0.0, 0.0
    for u in terms:
        term = math.exp(
            log_gamma(r - u + 1) - log_gamma(k0 - s + 1) - log_gamma(r - u - k0 + s + 1)
        ) * _rhs_binomial_factor(n, s, u)
        d = (digamma(r - u - k0 + s + 1) - digamma(k0 - s + 1)) * term
        rhs_der += d
        scale += abs(d)
    fd_lhs = (_extended_lhs(n, s, k0 + step, r) - _extended_lhs(n, s, k0 - step, r)) / (2 * step)
    fd_rhs = (
        _extended_rhs(n, s, k0 + step, r, terms) - _extended_rhs(n, s, k0 - step, r, terms)
    ) / (2 * step)
    return DerivativeComparison(lhs_der, rhs_der, fd_lhs, fd_rhs, scale)


def check_derivative_comparison(n: float, s: float, k0: float, t: float) -> bool:
    """Left derivative exceeds right derivative, and both match finite differences."""
    cmp = derivative_comparison(n, s, k0, t)
    return cmp.dominates and cmp.agrees()


# -- grid runners ---------------------------------------------------------------


def audit_alternating_sums(max_param: int = 12) -> AuditReport:
    report = AuditReport(
        "alternating-sums", f"1 <= n,s,r <= {max_param}, s <= k <= 3(r+s), n+k-r-1 >= 0"
    )
    for n in range(1, max_param + 1):
        for s in range(1, max_param + 1):
            for r in range(1, max_param + 1):
                for k in range(max(s, r + 1 - n), 3 * (r + s) + 1):
                    a = alternating_sum(n, s, r, k)
                    b = alternating_sum_complement(n, s, r, k)
                    c = alternating_sum_positive_form(n, s, r, k)
                    report.record((n, s, r, k), a == b == c, a, (b, c))
    return report.finish()


def audit_syzygy_triple(max_n: int = 10, max_k: int = 20) -> AuditReport:
    report = AuditReport("syzygy-triple", f"n <= {max_n}, 1 <= u <= r < n, 0 <= k <= {max_k}")
    for n in range(2, max_n + 1):
        for r in range(1, n):
            for u in range(1, r + 1):
                for k in range(max_k + 1):
                    p = SyzygyParams(n, r, u, k)
                    a, b, c = syzygy_hilbert_right(p), syzygy_hilbert_left(p), syzygy_hilbert_closed(p)
                    report.record((n, r, u, k), a == b == c, a, (b, c))
    return report.finish()


def audit_multiplied_coefficients(max_n: int = 20, max_s: int = 5, extra_k: int = 10) -> AuditReport:
    report = AuditReport(
        "multiplied-coefficients", f"n <= {max_n}, s <= {max_s}, 0 < r < n, k <= r+s+{extra_k}"
    )
    for n in range(2, max_n + 1):
        for s in range(1, max_s + 1):
            for r in range(1, n):
                for k in range(r + s + extra_k + 1):
                    p = ExpansionParams(n, s, r, k)
                    a, b = multiplied_coefficient(p), multiplied_coefficient_by_convolution(p)
                    report.record((n, s, r, k), a == b, a, b)
    return report.finish()


def audit_binomial_dominance(max_n: int = 150, max_s: int = 10) -> AuditReport:
    report = AuditReport("binomial-dominance", f"1 <= n <= {max_n}, 1 <= s <= {max_s}")
    for s in range(1, max_s + 1):
        for n in range(1, max_n + 1):
            sub = binomial_dominance(n, s)
            report.total_points += sub.total_points
            report.failures.extend(sub.failures)
    return report.finish()


def _exact_grid(
    name: str,
    sides: Callable[[int, int], tuple],
    pairs: Iterable[tuple[int, int]],
    description: str,
) -> AuditReport:
    report = AuditReport(name, description)
    for a, b in pairs:
        lhs, rhs = sides(a, b)
        report.record((a, b), lhs >= rhs, lhs, rhs)
    return report.finish()


def _large_n_pairs(max_n: int, max_s: int):
    for s in range(2, max_s + 1):
        for n in range(3 * s + 4, max_n + 1):
            yield n, s


def audit_second_coefficient(max_n: int = 400, max_s: int = 12) -> AuditReport:
    return _exact_grid(
        "second-coefficient",
        second_coefficient_sides,
        _large_n_pairs(max_n, max_s),
        f"2 <= s <= {max_s}, 3s+4 <= n <= {max_n}",
    )


def audit_quadratic_bounds(max_n: int = 400, max_s: int = 12) -> AuditReport:
    report = AuditReport("quadratic-bounds", f"2 <= s <= {max_s}, 3s+4 <= n <= {max_n}")
    for n, s in _large_n_pairs(max_n, max_s):
        for label, sides in (
            ("lower", quadratic_lower_sides),
            ("mixed", quadratic_mixed_sides),
            ("expanded", quadratic_expanded_sides),
            ("reciprocal", reciprocal_bound_sides),
        ):
            lhs, rhs = sides(n, s)
            report.record((n, s, label), lhs >= rhs, lhs, rhs)
    return report.finish()


def audit_falling_ratio(max_ell: int = 50, max_s: int = 12) -> AuditReport:
    report = AuditReport("falling-ratio", f"3 <= ell <= {max_ell}, 2 <= s <= {max_s}")
    for ell in range(3, max_ell + 1):
        for s in range(2, max_s + 1):
            lhs, rhs = falling_ratio_sides(ell, s)
            report.record((ell, s, "exact"), lhs >= rhs, lhs, rhs)
            report.record((ell, s, "derivative"), check_falling_ratio_derivatives(ell, s))
    return report.finish()


def audit_jump_difference(max_ell: int = 60, max_s: int = 30, margin: float = DEFAULT_MARGIN) -> AuditReport:
    report = AuditReport("jump-difference", f"2 <= ell <= {max_ell}, 2 <= s <= {max_s}")
    for ell in range(2, max_ell + 1):
        for s in range(2, max_s + 1):
            val = jump_difference(ell, s)
            report.record((ell, s), check_jump_difference(ell, s, margin), val, margin)
    return report.finish()


def audit_log_digamma_limit(
    points: int = 1000, max_s: float = 100.0, margin: float = DEFAULT_MARGIN
) -> AuditReport:
    report = AuditReport("log-digamma-limit", f"{points} evenly spaced s in [2, {max_s:g}]")
    for i in range(points):
        s = 2.0 + (max_s - 2.0) * i / max(points - 1, 1)
        val = log_digamma_limit(s)
        report.record((s,), val > margin, val, margin)
    report.notes.append(
        f"value at s=2 is log 2 - 7/12 = {log_digamma_limit(2.0):.6f} "
        "(psi(5) - psi(3) = 1/3 + 1/4); the constant 1/3 + 4/5 would give a negative value"
    )
    return report.finish()


def sample_digamma_difference_points(count: int, seed: int = DEFAULT_SEED, max_s: float = 12.0):
    """Random real ``(n, k, s, t)`` inside the admissible range.

    A third of the points put ``n`` just above a multiple of ``s+1``, where
    ``ceil(n/(s+1))`` jumps.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = rng.uniform(2.0, max_s)
        if len(out) % 3 == 0:
            ell = rng.randint(3, 60)
            n = ell * (s + 1) + rng.choice((1e-9, 1e-6, 1e-3, 0.1))
        else:
            n = rng.uniform(3 * (s + 1), 80 * (s + 1))
        r = ceil_ratio(n, s)
        if r < 4:
            continue
        t = rng.uniform(1.0, r - 3.0)
        k = rng.uniform(s + 2, r + s - t - 1)
        if not s + 2 <= k <= r + s - t - 1:  # float rounding at a degenerate range
            continue
        out.append((n, k, s, t))
    return out


def audit_digamma_difference(
    points: int = 10_000, seed: int = DEFAULT_SEED, margin: float = DEFAULT_MARGIN
) -> AuditReport:
    report = AuditReport("digamma-difference", f"{points} random real points, seed {seed}")
    for n, k, s, t in sample_digamma_difference_points(points, seed):
        val = digamma_difference(n, k, s, t)
        report.record((n, k, s, t), val > margin, val, margin)
    return report.finish()


def sample_growth_points(count: int, seed: int = DEFAULT_SEED, max_s: int = 12):
    """Random real ``n > 3s+3`` for integer ``s``, a third just above multiples of ``s+1``."""
    rng = random.Random(seed + 1)
    out = []
    while len(out) < count:
        s = rng.randint(2, max_s)
        if len(out) % 3 == 0:
            ell = rng.randint(3, 100)
            n = ell * (s + 1) + rng.choice((1e-9, 1e-6, 1e-3, 0.1))
        else:
            n = rng.uniform(3 * s + 3, 100 * (s + 1))
        if n <= 3 * s + 3:
            continue
        out.append((n, s))
    return out


def audit_digamma_growth(
    points: int = 10_000, seed: int = DEFAULT_SEED, margin: float = DEFAULT_MARGIN
) -> AuditReport:
    report = AuditReport("digamma-growth", f"{points} random real n, integer s, seed {seed}")
    for n, s in sample_growth_points(points, seed):
        val = digamma_growth_gap(n, s)
        report.record((n, s), val > margin, val, margin)
    return report.finish()


def audit_derivative_comparison(max_n: int = 120, max_s: int = 6, step_k: float = 0.25) -> AuditReport:
    report = AuditReport(
        "derivative-comparison", f"integer n <= {max_n}, s <= {max_s}, k0 on a {step_k:g}-grid, t=1"
    )
    for s in range(2, max_s + 1):
        for n in range(3 * s + 4, max_n + 1, 3):
            r = ceil_ratio(n, s)
            k0 = s + 2.0
            while k0 <= r + s - 2:
                try:
                    cmp = derivative_comparison(n, s, k0, 1)
                except OutOfRange:
                    k0 += step_k
                    continue
                report.record(
                    (n, s, k0), cmp.dominates and cmp.agrees(), cmp.lhs_derivative, cmp.rhs_derivative
                )
                k0 += step_k
    return report.finish()
