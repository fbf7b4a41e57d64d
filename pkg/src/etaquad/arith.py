"""Divisor sums, primes, quadratic residue symbols, and the two classical
single-prime constructions of the odd x in p = x^2 + y^2 (the central
binomial coefficient mod p, and the Jacobsthal character sum).

Everything here is exact integer arithmetic.  All objects are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

from math import isqrt

from .errors import ResourceLimitError

# Sieve memory budget: one byte per integer up to `limit`.
SIEVE_BUDGET_BYTES = 1 << 28


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    if n < 1:
        raise ValueError(f"sigma is defined for positive integers, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            q = n // d
            if q != d:
                total += q
        d += 1
    return total


def sigma_scaled(n: int, d: int) -> int:
    """sigma(n/d) when d divides n, else 0 (the divisor sum at a rational
    argument vanishes off the integers)."""
    if n < 1 or d < 1:
        raise ValueError(f"sigma_scaled needs positive arguments, got ({n}, {d})")
    if n % d:
        return 0
    return sigma(n // d)


def weighted_sigma(a: int, b: int, n: int) -> int:
    """a*sigma(n/a) + b*sigma(n/b)."""
    if a < 1 or b < 1 or n < 1:
        raise ValueError(f"weighted_sigma needs positive arguments, got ({a}, {b}, {n})")
    return a * sigma_scaled(n, a) + b * sigma_scaled(n, b)


class SigmaTable:
    """Divisor sums sigma(1..limit), built by an O(N log N) summing sieve.

    Shared read-only by the power-series recurrence, which consumes
    sigma(k) for every k up to its truncation order.
    """

    __slots__ = ("limit", "_values")

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError(f"SigmaTable limit must be >= 1, got {limit}")
        self.limit = limit
        values = [0] * (limit + 1)
        for d in range(1, limit + 1):
            for m in range(d, limit + 1, d):
                values[m] += d
        self._values = values

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"sigma table covers 1..{self.limit}, got {n}")
        return self._values[n]

    def scaled(self, n: int, d: int) -> int:
        """sigma(n/d) if d | n else 0, read from the table."""
        if n % d:
            return 0
        return self[n // d]

    def weighted(self, a: int, b: int, n: int) -> int:
        """a*sigma(n/a) + b*sigma(n/b), read from the table."""
        return a * self.scaled(n, a) + b * self.scaled(n, b)


class PrimeSieve:
    """Primality flags for 0..limit (Eratosthenes over a bytearray)."""

    __slots__ = ("limit", "_flags")

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError(f"sieve limit must be >= 2, got {limit}")
        if limit + 1 > SIEVE_BUDGET_BYTES:
            raise ResourceLimitError(
                f"sieve to {limit} needs {limit + 1} bytes, budget is {SIEVE_BUDGET_BYTES}"
            )
        flags = bytearray(b"\x01") * (limit + 1)
        flags[0] = flags[1] = 0
        for p in range(2, isqrt(limit) + 1):
            if flags[p]:
                start = p * p
                flags[start :: p] = b"\x00" * ((limit - start) // p + 1)
        self.limit = limit
        self._flags = bytes(flags)

    def is_prime(self, n: int) -> bool:
        if not 0 <= n <= self.limit:
            raise IndexError(f"sieve covers 0..{self.limit}, got {n}")
        return bool(self._flags[n])

    def primes(self) -> list[int]:
        return [n for n in range(2, self.limit + 1) if self._flags[n]]

    def count(self) -> int:
        return sum(self._flags)


def sieve_primes(limit: int) -> PrimeSieve:
    """Prime sieve over [2, limit]."""
    return PrimeSieve(limit)


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate at the scales used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extending the Jacobi and Legendre symbols
    to all nonzero n.  For an odd prime n it is the Legendre symbol."""
    if n == 0:
        raise ValueError("kronecker symbol (a|0) is not defined here")
    sign = 1
    if n < 0:
        if a < 0:
            sign = -1
        n = -n
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        # (a|2) = (-1)^((a^2-1)/8), folded in once per factor of 2
        e = 0
        while n % 2 == 0:
            n //= 2
            e += 1
        if e % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi reciprocity loop on the remaining odd part
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def _require_prime_1mod4(p: int, who: str) -> None:
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"{who} needs a prime p = 1 (mod 4), got {p}")


def gauss_doubling(p: int) -> int:
    """binom((p-1)/2, (p-1)/4) mod p.

    For p = x^2 + y^2 with x odd and the sign fixed by x = 1 (mod 4),
    this residue equals 2x mod p.  Computed by multiplicative
    accumulation with a single modular inverse; the binomial itself is
    never formed (it outgrows any fixed width almost immediately).
    """
    _require_prime_1mod4(p, "gauss_doubling")
    n = (p - 1) // 2
    k = (p - 1) // 4
    num = den = 1
    for i in range(1, k + 1):
        num = num * ((n - k + i) % p) % p
        den = den * i % p
    return num * pow(den, p - 2, p) % p


def jacobsthal(p: int) -> int:
    """Character sum over n of (n^3 - 4n | p).

    Equals -2x for p = x^2 + y^2 with x = 1 (mod 4); an exact integer
    companion to the mod-p binomial construction.
    """
    _require_prime_1mod4(p, "jacobsthal")
    return sum(kronecker(n * n * n - 4 * n, p) for n in range(p))
