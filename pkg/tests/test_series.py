import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbertdepth.series import (
    LaurentPolynomial,
    RationalSeries,
    binomial,
    check_positivity,
    decide_tail,
    divide_by_one_minus_t,
    eval_at_one,
    expand,
    mul_one_minus_t_pow,
    newton_to_monomial,
    poly_add,
    poly_mul,
    poly_scale,
    root_bound,
)

from conftest import P


def brute_series(num: LaurentPolynomial, m: int, K: int, start: int) -> list[int]:
    """Coefficients by repeated multiplication with the truncated geometric series."""
    lo = min(start, num.offset) if not num.is_zero else start
    coeffs = {d: c for d, c in num}
    for _ in range(m):
        new = {}
        for k in range(lo, K + 1):
            new[k] = sum(coeffs.get(i, 0) for i in range(lo, k + 1))
        coeffs = new
    return [coeffs.get(k, 0) for k in range(start, K + 1)]


polys = st.builds(
    LaurentPolynomial,
    st.lists(st.integers(-20, 20), max_size=9),
    st.integers(-3, 5),
)


class TestBinomial:
    @pytest.mark.parametrize("a,b,expected", [(5, 2, 10), (2, 3, 0), (0, 0, 1), (4, -1, 0)])
    def test_values(self, a, b, expected):
        assert binomial(a, b) == expected

    def test_negative_upper_index_rejected(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)


class TestLaurentPolynomial:
    def test_canonical_form(self):
        p = LaurentPolynomial([0, 0, 3, 0, -1, 0], offset=-2)
        assert p.offset == 0 and p.coeffs == (3, 0, -1)
        assert p.top_degree == 2

    def test_zero_is_structural(self):
        assert LaurentPolynomial([0, 0], offset=7) == LaurentPolynomial()
        assert LaurentPolynomial().offset == 0 and LaurentPolynomial().coeffs == ()

    def test_add_cancellation(self):
        assert poly_add(P(1, -1, offset=1), P(1, offset=2)) == P(1, offset=1)

    def test_mul(self):
        assert poly_mul(P(1, -1), P(1, 1)) == P(1, 0, -1)
        z = poly_mul(LaurentPolynomial(), P(3, 4, offset=-5))
        assert z.is_zero and z.offset == 0

    def test_scale(self):
        assert poly_scale(-2, P(1, 3, offset=-1)) == P(-2, -6, offset=-1)
        assert poly_scale(0, P(1, 3)).is_zero

    @given(polys)
    def test_text_round_trip(self, p):
        assert LaurentPolynomial.from_text(p.to_text()) == p

    @given(polys)
    def test_json_round_trip(self, p):
        assert LaurentPolynomial.from_json(json.loads(json.dumps(p.to_json()))) == p

    def test_json_carries_big_integers(self):
        big = 3**200
        p = LaurentPolynomial([big, -big], 4)
        obj = p.to_json()
        assert obj["coeffs"] == [str(big), str(-big)]
        assert LaurentPolynomial.from_json(json.dumps(obj)) == p

    @pytest.mark.parametrize("text", ["12", "a:1", "0:1,,2", "1:x"])
    def test_bad_text(self, text):
        with pytest.raises(ValueError):
            LaurentPolynomial.from_text(text)

    def test_zero_text(self):
        assert LaurentPolynomial.from_text("0:").is_zero


class TestOneMinusT:
    def test_square(self):
        assert mul_one_minus_t_pow(2, P(1)) == P(1, -2, 1)

    def test_identity(self):
        q = P(4, 0, -3, offset=-2)
        assert mul_one_minus_t_pow(0, q) == q

    def test_vanishes_at_one(self):
        assert eval_at_one(mul_one_minus_t_pow(4, P(1))) == 0

    @given(st.integers(0, 8), polys)
    def test_matches_repeated_multiplication(self, p, q):
        expected = q
        for _ in range(p):
            expected = poly_mul(expected, P(1, -1))
        assert mul_one_minus_t_pow(p, q) == expected


class TestDivide:
    def test_example(self):
        p = P(3, -6, 4, -1, offset=1)
        q = divide_by_one_minus_t(p)
        assert q == P(3, -3, 1, offset=1)
        assert mul_one_minus_t_pow(1, q) == p

    def test_zero_and_unit(self):
        assert divide_by_one_minus_t(LaurentPolynomial()).is_zero
        assert divide_by_one_minus_t(P(1, -1)) == P(1)

    def test_inexact_rejected(self):
        with pytest.raises(ValueError):
            divide_by_one_minus_t(P(1, 1))

    @given(polys)
    def test_round_trip(self, q):
        assert divide_by_one_minus_t(mul_one_minus_t_pow(1, q)) == q


class TestEvalAtOne:
    def test_values(self):
        assert eval_at_one(P(2, -1, offset=1)) == 1
        assert eval_at_one(P(1) - mul_one_minus_t_pow(4, P(1))) == 1
        assert eval_at_one(LaurentPolynomial()) == 0


class TestExpand:
    def test_geometric_square(self):
        assert expand(RationalSeries(P(1), 2), 3).coeffs == (1, 2, 3, 4)

    def test_maximal_ideal_in_two_variables(self):
        # independent oracle: H(m, k) = k + 1 for k >= 1 in two variables
        rs = RationalSeries(P(2, -1, offset=1), 2)
        assert expand(rs, 3).coeffs == tuple(brute_series(rs.numerator, 2, 3, 0)) == (0, 2, 3, 4)

    def test_monomial_tail(self):
        s = 4
        prefix = expand(RationalSeries(P(1, offset=s), 1), s + 2)
        assert prefix.coeffs == (0,) * s + (1, 1, 1)
        assert prefix.truncation_degree == s + 2

    def test_negative_offset(self):
        prefix = expand(RationalSeries(P(1, offset=-2), 1), 1)
        assert prefix.offset == -2 and prefix.coeffs == (1, 1, 1, 1)

    @settings(max_examples=60)
    @given(polys, st.integers(0, 6), st.integers(0, 12))
    def test_matches_convolution_formula(self, q, m, extra):
        K = max(q.top_degree, 0) + extra
        prefix = expand(RationalSeries(q, m), K)
        oracle = brute_series(q, m, K, prefix.offset)
        assert list(prefix.coeffs) == oracle
        rs = RationalSeries(q, m)
        assert [rs.coefficient(k) for k in range(prefix.offset, K + 1)] == oracle

    @settings(max_examples=60)
    @given(polys, st.integers(0, 6))
    def test_prefix_sum_law(self, q, m):
        K = max(q.top_degree, 0) + 8
        a = expand(RationalSeries(q, m), K)
        b = expand(RationalSeries(q, m + 1), K)
        assert a.offset == b.offset
        running, sums = 0, []
        for c in a.coeffs:
            running += c
            sums.append(running)
        assert list(b.coeffs) == sums

    @settings(max_examples=60)
    @given(polys, st.integers(0, 6))
    def test_round_trip_through_one_minus_t(self, q, p):
        K = max(q.top_degree, 0) + 3
        prefix = expand(RationalSeries(mul_one_minus_t_pow(p, q), p), K)
        assert all(prefix[d] == c for d, c in q)


class TestCheckPositivity:
    def test_positive_example(self):
        cert = check_positivity(RationalSeries(P(2, -1, offset=1), 1))
        assert cert.positive and cert.tail_bound == 2

    @pytest.mark.parametrize(
        "num,m,degree,value",
        [(P(1, -2), 1, 1, -1), (P(1, -3, 1), 2, 1, -1), (P(1, -1), 0, 1, -1)],
    )
    def test_negative_examples(self, num, m, degree, value):
        cert = check_positivity(RationalSeries(num, m))
        assert not cert.positive
        assert (cert.witness_degree, cert.witness_value) == (degree, value)

    def test_zero_series_is_positive(self):
        assert check_positivity(RationalSeries(LaurentPolynomial(), 3)).positive

    def test_negative_only_far_in_tail(self):
        # (1-T)^3 * (big positive) + T^30-ish perturbations: construct tail poly with late sign change
        # tail = 40 - t: coefficients of (41 T^0 - T^1)/(1-T)^... with m = 2
        num = P(41, -42)
        cert = check_positivity(RationalSeries(num, 2))
        values = expand(RationalSeries(num, 2), 60).coeffs
        first = next(i for i, v in enumerate(values) if v < 0)
        assert not cert.positive
        assert cert.witness_degree == first and cert.witness_value == values[first]
        assert first > num.top_degree + 2  # beyond the prefix-sum window

    def test_tail_fallback_positive(self):
        # Newton coefficients of the tail are (1, -1, 1, 1): the cheap test is
        # inconclusive and the root-bound enumeration has to settle it
        num = P(2, -6, 5)
        cert = check_positivity(RationalSeries(num, 4))
        assert all(v >= 0 for v in expand(RationalSeries(num, 4), 200).coeffs)
        assert cert.positive and cert.tail_bound > num.top_degree

    def test_tail_fallback_negative(self):
        num = P(3, -4)
        cert = check_positivity(RationalSeries(num, 3))
        values = expand(RationalSeries(num, 3), 50).coeffs
        assert not cert.positive
        assert cert.witness_degree == 7 and values[7] == cert.witness_value == -4

    @settings(max_examples=300, deadline=None)
    @given(
        st.lists(st.integers(-20, 20), min_size=1, max_size=9),
        st.integers(-2, 3),
        st.integers(0, 6),
    )
    def test_agrees_with_brute_force(self, coeffs, offset, m):
        q = LaurentPolynomial(coeffs, offset)
        cert = check_positivity(RationalSeries(q, m))
        K = max(q.top_degree, 0) + 10 * (m + 1)
        prefix = expand(RationalSeries(q, m), K)
        negatives = [(prefix.offset + i, c) for i, c in enumerate(prefix.coeffs) if c < 0]
        if negatives:
            assert not cert.positive
            assert (cert.witness_degree, cert.witness_value) == negatives[0]
        if cert.positive:
            assert not negatives
        else:
            assert cert.witness_value < 0
            assert RationalSeries(q, m).coefficient(cert.witness_degree) == cert.witness_value

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=9), st.integers(0, 6))
    def test_monotone_in_pole_order(self, coeffs, m):
        q = LaurentPolynomial(coeffs)
        if check_positivity(RationalSeries(q, m)).positive:
            assert check_positivity(RationalSeries(q, m + 1)).positive


class TestTailDecision:
    def newton_values(self, deltas, t):
        return sum(d * math.comb(t, i) for i, d in enumerate(deltas))

    def test_newton_to_monomial(self):
        # 1 - t + C(t,2) = (t^2 - 3t + 2)/2
        from fractions import Fraction

        assert newton_to_monomial([1, -1, 1]) == [Fraction(1), Fraction(-3, 2), Fraction(1, 2)]

    def test_root_bound_dominates_roots(self):
        from fractions import Fraction

        # (t - 7)(t - 100) = t^2 - 107 t + 700
        assert root_bound([Fraction(700), Fraction(-107), Fraction(1)]) > 100

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=6))
    def test_decide_tail_against_long_scan(self, deltas):
        cert = decide_tail(deltas, base=0)
        mono = newton_to_monomial(deltas)
        horizon = 400 + (root_bound(mono) if any(mono) else 0)
        values = [self.newton_values(deltas, t) for t in range(horizon)]
        negatives = [t for t, v in enumerate(values) if v < 0]
        if cert.positive:
            assert not negatives
        else:
            assert negatives and cert.witness_degree == negatives[0]
