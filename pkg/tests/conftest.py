import random

import pytest

from hilbertdepth.series import LaurentPolynomial, RationalSeries, mul_one_minus_t_pow


def P(*coeffs, offset=0):
    return LaurentPolynomial(coeffs, offset)


def random_positive_series(rng: random.Random, max_n: int = 7, max_deg: int = 6, max_coeff: int = 9):
    """A positive series built as sum_e Q_e/(1-T)^e with random nonnegative Q_e.

    Half of the draws instead take a random signed numerator and keep it if
    the series happens to be positive, so inputs are not all of the
    constructed shape.
    """
    from hilbertdepth.series import check_positivity

    n = rng.randint(0, max_n)
    if rng.random() < 0.5:
        while True:
            offset = rng.randint(-2, 3)
            coeffs = [rng.randint(-max_coeff, max_coeff) for _ in range(rng.randint(1, max_deg + 1))]
            coeffs[0] = abs(coeffs[0]) or 1
            rs = RationalSeries(LaurentPolynomial(coeffs, offset), n)
            if check_positivity(rs).positive:
                return rs
    total = LaurentPolynomial()
    while total.is_zero:
        for e in range(n + 1):
            if rng.random() < 0.5:
                q = LaurentPolynomial(
                    [rng.randint(0, max_coeff) for _ in range(rng.randint(1, max_deg))],
                    rng.randint(-2, 4),
                )
                total = total + mul_one_minus_t_pow(n - e, q)
    return RationalSeries(total, n)


@pytest.fixture
def rng():
    return random.Random(12345)


_CRITERIA = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion.

    Lines are printed immediately (visible with ``-s``) and repeated in the
    terminal summary so they always appear in the run log.
    """
    lines = request.config.stash.setdefault(_CRITERIA, [])

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
