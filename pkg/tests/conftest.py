"""Shared brute-force oracles for the test suite.

These are deliberately independent of the package implementations:
straight-line enumeration only, no shared helpers, so they stay valid
as ground truth for the paths they check.
"""

from math import gcd, isqrt

import pytest


def oracle_primes(limit: int) -> list[int]:
    """Trial-division prime list."""
    out = []
    for n in range(2, limit + 1):
        if all(n % d for d in range(2, isqrt(n) + 1)):
            out.append(n)
    return out


def oracle_sigma(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def oracle_product_table(a: int, b: int, limit: int) -> list[int]:
    """Coefficients of q^1..q^limit of the cubed two-factor product, by
    expanding (1 - t)^3 one factor at a time over big ints."""
    vals = [0] * limit
    vals[0] = 1
    for step in (a, b):
        for k in range(1, (limit - 1) // step + 1):
            s = step * k
            for i in range(limit - 1, s - 1, -1):
                acc = vals[i] - 3 * vals[i - s]
                if i >= 2 * s:
                    acc += 3 * vals[i - 2 * s]
                if i >= 3 * s:
                    acc -= vals[i - 3 * s]
                vals[i] = acc
    return vals


def oracle_reps(a: int, b: int, c: int, n: int) -> list[tuple[int, int]]:
    """All (x, y) with a*x^2 + b*x*y + c*y^2 = n by scanning the full
    positive-definiteness box."""
    d = b * b - 4 * a * c
    assert d < 0 and a > 0
    xmax = isqrt(4 * c * n // -d)
    ymax = isqrt(4 * a * n // -d)
    out = []
    for x in range(-xmax, xmax + 1):
        for y in range(-ymax, ymax + 1):
            if a * x * x + b * x * y + c * y * y == n:
                out.append((x, y))
    return sorted(out)


def coprime_pairs(limit: int):
    for m in range(1, limit + 1):
        for n in range(1, limit + 1):
            if gcd(m, n) == 1:
                yield m, n


@pytest.fixture(scope="session")
def primes_500():
    return oracle_primes(500)
