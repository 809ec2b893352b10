"""Shared brute-force oracles, kept independent of the library internals.

Everything here recomputes expected values from first principles with
naive algorithms (dense polynomial products, explicit partition
enumeration, lattice scans), so library results are checked against a
second, slower route rather than against themselves.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import pytest


# -- naive polynomial arithmetic (dense int lists, no library code) -----------


def poly_mul(a: list, b: list, order: int) -> list:
    out = [0] * order
    for i, av in enumerate(a[:order]):
        if av:
            for j, bv in enumerate(b[: order - i]):
                if bv:
                    out[i + j] += av * bv
    return out


def dense_product_one_minus_qn(exponent: int, order: int) -> list:
    """prod_{n=1}^{order-1} (1 - q^n)^exponent by repeated dense products."""
    assert exponent >= 0
    acc = [1] + [0] * (order - 1)
    for n in range(1, order):
        factor = [0] * order
        factor[0] = 1
        if n < order:
            factor[n] = -1
        for _ in range(exponent):
            acc = poly_mul(acc, factor, order)
    return acc


def naive_inverse(coeffs: list, order: int) -> list[Fraction]:
    """Series inverse by the textbook recurrence, exact Fractions."""
    a = [Fraction(c) for c in coeffs[:order]] + [Fraction(0)] * max(
        0, order - len(coeffs)
    )
    assert a[0] != 0
    b = [1 / a[0]] + [Fraction(0)] * (order - 1)
    for k in range(1, order):
        b[k] = -b[0] * sum(a[i] * b[k - i] for i in range(1, k + 1))
    return b


# -- partitions ---------------------------------------------------------------


def enumerate_partitions(n: int, max_part: int | None = None):
    """Yield every partition of n as a weakly decreasing tuple."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in enumerate_partitions(n - first, first):
            yield (first,) + rest


def partition_count_by_enumeration(n: int) -> int:
    return sum(1 for _ in enumerate_partitions(n))


def rank_counts_by_enumeration(n: int) -> dict[int, int]:
    """N(n, m) by listing partitions and taking largest part minus parts."""
    out: dict[int, int] = {}
    for part in enumerate_partitions(n):
        m = part[0] - len(part)
        out[m] = out.get(m, 0) + 1
    return out


# -- lattice counts -----------------------------------------------------------


def lattice_vectors_with_norm(k: int, m: int) -> int:
    """Number of integer k-vectors with squared norm exactly m."""
    if k == 0:
        return 1 if m == 0 else 0
    total = 0
    for v in range(-isqrt(m), isqrt(m) + 1):
        total += lattice_vectors_with_norm(k - 1, m - v * v)
    return total


# -- fixtures -------------------------------------------------------------------


@pytest.fixture(scope="session")
def tau_by_dense_convolution() -> list:
    """tau(1..11) from a fully dense product expansion (independent route)."""
    prod = dense_product_one_minus_qn(24, 11)
    return [None] + prod[:11]  # tau(n) = coefficient of q^(n-1) in the product
