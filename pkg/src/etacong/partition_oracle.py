"""Deliberately naive partition-count computations used as ground truth.

Everything here runs over exact integers with one-factor-at-a-time passes,
a different algorithm from the fast series engine, so that agreement between
the two is meaningful evidence rather than self-confirmation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass
class OracleSequence:
    """Coefficient listing: values[n] counts the weighted partitions of n for
    the parameter tuple params = (c, d, ell, N)."""

    values: list
    params: tuple

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def __iter__(self):
        return iter(self.values)


def euler_p(N: int) -> OracleSequence:
    """p(0..N-1) by the classical pentagonal recurrence
    p(n) = sum_k (-1)^(k-1) [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]."""
    if N < 1:
        raise ValueError("need at least one term")
    p = [0] * N
    p[0] = 1
    for n in range(1, N):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return OracleSequence(p, (1, 0, 11, N))


def _apply_inverse_factor(a: list, m: int) -> None:
    # multiply by 1/(1-q^m) = 1 + q^m + q^2m + ...: one ascending pass
    for i in range(m, len(a)):
        a[i] += a[i - m]


def _apply_factor(a: list, m: int) -> None:
    # multiply by (1-q^m): one descending pass
    for i in range(len(a) - 1, m - 1, -1):
        a[i] -= a[i - m]


def naive_coeffs(c: int, d: int, ell: int = 11, N: int = 1) -> OracleSequence:
    """First N coefficients of prod (1-q^n)^(-c) (1-q^(ell*n))^(-d), exact.

    Each factor (1-q^m)^(+-1) is applied by a linear pass over the array,
    repeated |exponent| times. Slow and simple on purpose.
    """
    if N < 1:
        raise ValueError("need at least one term")
    if ell < 1:
        raise ValueError("ell must be positive")
    a = [0] * N
    a[0] = 1
    for m in range(1, N):
        for _ in range(abs(c)):
            if c > 0:
                _apply_inverse_factor(a, m)
            else:
                _apply_factor(a, m)
    for m in range(ell, N, ell):
        for _ in range(abs(d)):
            if d > 0:
                _apply_inverse_factor(a, m)
            else:
                _apply_factor(a, m)
    return OracleSequence(a, (c, d, ell, N))


def valuation_11(x: int):
    """Largest e with 11^e dividing x; math.inf for x = 0."""
    if x == 0:
        return math.inf
    e = 0
    while x % 11 == 0:
        x //= 11
        e += 1
    return e
