"""Reference coefficient sequences computed the slow, obviously-correct way."""

import math
import random

import pytest

from etacong import (
    EtaQuotientSpec,
    ExactIntegers,
    eta_quotient,
    euler_p,
    naive_coeffs,
    valuation_11,
)


def test_euler_p_small_values():
    p = euler_p(12).values
    assert p[0] == 1
    assert p[1] == 1
    assert p[4] == 5
    assert p[6] == 11
    assert p[11] == 56


def test_euler_p_known_tail():
    assert euler_p(18).values[17] == 297


def test_euler_p_needs_positive_length():
    with pytest.raises(ValueError):
        euler_p(0)


def test_naive_single_factor_is_partition_function():
    seq = naive_coeffs(1, 0, 11, 5)
    assert seq.values == [1, 1, 2, 3, 5]
    assert seq.params == (1, 0, 11, 5)


def test_naive_two_factor_example():
    assert naive_coeffs(1, 1, 11, 12).values[11] == 57


def test_naive_mixed_sign_example():
    assert naive_coeffs(1, -1, 11, 7).values[6] == 11


def test_naive_agrees_with_euler_p():
    N = 300
    assert naive_coeffs(1, 0, 11, N).values == euler_p(N).values


def test_naive_empty_product_is_one():
    seq = naive_coeffs(0, 0, 11, 6)
    assert seq.values == [1, 0, 0, 0, 0, 0]


def test_naive_nonnegative_for_nonnegative_exponents():
    rng = random.Random(11)
    for _ in range(15):
        c = rng.randint(0, 4)
        d = rng.randint(0, 4)
        assert all(x >= 0 for x in naive_coeffs(c, d, 11, 60).values)


def test_naive_factor_and_inverse_cancel():
    N = 120
    rng = random.Random(17)
    for _ in range(10):
        c = rng.randint(-5, 5)
        d = rng.randint(-5, 5)
        forward = naive_coeffs(c, d, 11, N).values
        # multiplying by the opposite-sign product must give back 1
        acc = list(forward)
        from etacong.partition_oracle import _apply_factor, _apply_inverse_factor

        for j in range(1, N):
            for _ in range(abs(c)):
                (_apply_factor if c > 0 else _apply_inverse_factor)(acc, j)
        for j in range(11, N, 11):
            for _ in range(abs(d)):
                (_apply_factor if d > 0 else _apply_inverse_factor)(acc, j)
        assert acc == [1] + [0] * (N - 1)


def test_naive_matches_series_engine_grid():
    ring = ExactIntegers()
    N = 80
    for c in range(-6, 7):
        for d in range(-6, 7):
            fast = eta_quotient(EtaQuotientSpec({1: -c, 11: -d}), N, ring)
            assert fast.coeff_range(0, N) == naive_coeffs(c, d, 11, N).values, (c, d)


def test_naive_custom_step():
    # second factor indexed by multiples of ell
    seq = naive_coeffs(0, 1, 3, 7)
    assert seq.values == [1, 0, 0, 1, 0, 0, 2]


def test_valuation_11():
    assert valuation_11(0) == math.inf
    assert valuation_11(121) == 2
    assert valuation_11(57) == 0
    assert valuation_11(-11) == 1
    assert valuation_11(11**5 * 7) == 5


def test_oracle_sequence_protocol():
    seq = euler_p(5)
    assert len(seq) == 5
    assert seq[4] == 5
    assert list(seq) == [1, 1, 2, 3, 5]
