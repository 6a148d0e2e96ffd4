import json

import numpy as np
import pytest

from krlab_qseries import (
    LaurentResolutionError,
    TruncatedSeries,
    TruncationError,
    first_difference,
    inv_poch_series,
    mul_q,
    poch_finite,
    poch_series,
    product_series_inverse,
)


def vec(xs):
    return np.array(xs, dtype=object)


def test_laurent_pochhammer_shift_and_body():
    # (-1/q; q^2)_2 = (1 + q^-1)(1 + q) = q^-1 (1 + q)^2
    f = poch_finite("-", -1, 2, 2, 20)
    assert f.q_shift == -1
    assert [f.body.coefficient(k) for k in range(4)] == [1, 2, 1, 0]
    assert f.terms() == [(-1, 1), (0, 2), (1, 1)]


def test_laurent_resolution_rejects_surviving_negative_power():
    # (q^-1; q)_1 = 1 - q^-1
    f = poch_finite("+", -1, 1, 1, 5)
    with pytest.raises(LaurentResolutionError):
        f.resolve(5)


def test_laurent_resolution_times_q():
    s = poch_finite("-", -1, 2, 2, 10).times_q(1).resolve(10)
    assert list(s.q_vector()[:4]) == [1, 2, 1, 0]


def test_inverse_pochhammer_counts_bounded_partitions():
    # parts 3 and 6 only: 9 = 3+3+3 = 3+6
    assert inv_poch_series(3, 3, 2, 9).coefficient(9) == 2
    # 1/(q;q)_inf truncated: ordinary partitions
    s = inv_poch_series(1, 1, 12, 12)
    assert [s.coefficient(k) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]


def test_finite_pochhammer_series():
    # (q; q)_3 = 1 - q - q^2 + q^4 + q^5 - q^6
    s = poch_series("+", 1, 1, 3, 8)
    assert list(s.q_vector()) == [1, -1, -1, 0, 1, 1, -1, 0, 0]


def test_product_side_nine():
    s = product_series_inverse(9, [1, 3, 6, 8], 9)
    assert s.coefficient(9) == 7
    assert s.coefficient(0) == 1


@pytest.mark.parametrize("bad", [[], [0, 3], [10]])
def test_product_residue_validation(bad):
    with pytest.raises(ValueError):
        product_series_inverse(9, bad, 5)


def test_multiplication_and_addition():
    a = TruncatedSeries.from_q_vector([1, 1, 0, 0])
    b = TruncatedSeries.from_q_vector([1, -1, 0, 0])
    assert list((a * b).q_vector()) == [1, 0, -1, 0]
    assert list((a + b).q_vector()) == [2, 0, 0, 0]
    assert list((a - b).q_vector()) == [0, 2, 0, 0]
    assert list(mul_q(vec([1, 1, 0]), vec([1, 1, 0]))) == [1, 2, 1]


def test_bivariate_shift_and_fold():
    s = TruncatedSeries.monomial(1, 0, 5, 3)
    t = s.shift(2, 1)
    assert t.coefficient(3, 1) == 1
    assert t.at_x1().coefficient(3) == 1
    assert t.at_x1().max_x == 0


def test_negative_shift_needs_vanishing_low_terms():
    s = TruncatedSeries.monomial(2, 0, 6)
    assert s.shift(-2).coefficient(0) == 1
    with pytest.raises(LaurentResolutionError):
        s.shift(-3)


def test_coefficient_beyond_truncation():
    s = TruncatedSeries.one(4, 2)
    with pytest.raises(TruncationError):
        s.coefficient(5, 0)
    with pytest.raises(TruncationError):
        s.coefficient(0, 3)


def test_series_are_read_only():
    s = TruncatedSeries.one(3)
    with pytest.raises(ValueError):
        s.coeffs[0, 0] = 5


def test_first_difference():
    a = TruncatedSeries.from_q_vector([1, 2, 3, 4])
    b = TruncatedSeries.from_q_vector([1, 2, 5, 4])
    assert first_difference(a, b, 3) == (2, 0, 3, 5)
    assert first_difference(a, b, 1) is None
    with pytest.raises(TruncationError):
        first_difference(a, b, 4)


def test_exact_big_coefficients():
    s = inv_poch_series(1, 1, 200, 200)
    # p(200)
    assert s.coefficient(200) == 3972999029388


def test_json_coefficients_are_strings():
    s = TruncatedSeries.from_q_vector([1, 0, 3])
    obj = json.loads(s.to_json())
    assert obj["coeffs"] == [[0, 0, "1"], [2, 0, "3"]]
