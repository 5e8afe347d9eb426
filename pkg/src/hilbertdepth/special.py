"""Digamma and log-gamma for positive real arguments.

Both shift the argument up to at least 10 with the functional equation and
then sum the asymptotic series through the ``x**-12`` term. At ``x >= 10``
the first omitted term is below ``1e-15``.
"""

from __future__ import annotations

import math

# B_2, B_4, ..., B_12
_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730)
_SHIFT_TO = 10.0
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)

EULER_GAMMA = 0.57721566490153286061


def digamma(x: float) -> float:
    if not x > 0:
        raise ValueError(f"digamma is only implemented for x > 0, got {x}")
    shift = 0.0
    while x < _SHIFT_TO:
        shift += 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series, power = 0.0, 1.0
    for k, b in enumerate(_BERNOULLI, start=1):
        power *= inv2
        series += b / (2 * k) * power
    return math.log(x) - 0.5 / x - series - shift


def log_gamma(x: float) -> float:
    if not x > 0:
        raise ValueError(f"log_gamma is only implemented for x > 0, got {x}")
    prod = 1.0
    while x < _SHIFT_TO:
        prod *= x
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series, power = 0.0, inv
    for k, b in enumerate(_BERNOULLI, start=1):
        series += b / (2 * k * (2 * k - 1)) * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series - math.log(prod)
