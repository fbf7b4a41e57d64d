"""Coefficients of q * prod_k (1 - q^(a*k))^3 (1 - q^(b*k))^3, exactly.

Four independent routes to the same table:

* ``sparse``   -- the cube of each factor collapses onto triangular-number
                  exponents with odd coefficients, so the product is a
                  sparse double sum; O(N/sqrt(ab)) term visits.
* ``newton``   -- an O(N^2) recurrence driven by weighted divisor sums,
                  with an exact divisibility check at every step.
* ``naive``    -- truncated polynomial multiplication, factor by factor,
                  cube by cube; the simplest possible ground truth.
* the partition (multinomial) formula -- exact rationals over all
  partitions of n; a verification target, not a production path.

Coefficients are exact integers confined to the signed 128-bit range;
anything beyond raises OverflowError instead of wrapping.  The numpy
int64 fast paths are entered only when a rigorous a-priori bound on
every partial sum fits in 63 bits, and fall back to big-int arithmetic
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, NamedTuple

import numpy as np

from .arith import SigmaTable, weighted_sigma
from .errors import InternalInconsistencyError, PartitionCapError
from .quadform import QuadForm, normalized_reps

INT128_MAX = (1 << 127) - 1
_INT64_SAFE = (1 << 62) - 1

METHODS = ("sparse", "newton", "naive")

DEFAULT_PARTITION_CAP = 40


@dataclass(frozen=True)
class LambdaParams:
    """The exponent multipliers (a, b) of the two cubed factors."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"factor multipliers must be positive, got ({self.a}, {self.b})")


class JacobiTerm(NamedTuple):
    """One term of the cube collapse: coefficient (-1)^k (2k+1) at
    exponent k(k+1)/2."""

    k: int
    exponent: int
    coefficient: int


def jacobi_cube(limit: int) -> list[JacobiTerm]:
    """All cube-collapse terms with exponent <= limit, in exponent order."""
    terms = []
    k = 0
    while k * (k + 1) // 2 <= limit:
        coeff = 2 * k + 1 if k % 2 == 0 else -(2 * k + 1)
        terms.append(JacobiTerm(k, k * (k + 1) // 2, coeff))
        k += 1
    return terms


class CoeffTable:
    """Exact coefficient table, 1-based: entry n is the coefficient of q^n.

    Immutable after construction; the semantic index n is the only
    index ever exposed.
    """

    __slots__ = ("params", "limit", "method", "_vals")

    def __init__(self, params: LambdaParams, limit: int, method: str, vals):
        self.params = params
        self.limit = limit
        self.method = method
        if isinstance(vals, np.ndarray):
            vals.setflags(write=False)
        self._vals = vals

    def value(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"table covers 1..{self.limit}, got index {n}")
        return int(self._vals[n - 1])

    def values(self) -> list[int]:
        return [int(v) for v in self._vals]

    def __len__(self) -> int:
        return self.limit

    def __repr__(self) -> str:
        return (
            f"CoeffTable(a={self.params.a}, b={self.params.b}, "
            f"limit={self.limit}, method={self.method!r})"
        )


def _ensure_int128(vals) -> None:
    """Reject any entry outside the signed 128-bit range."""
    for v in vals:
        if not -INT128_MAX - 1 <= v <= INT128_MAX:
            raise OverflowError(f"coefficient {v} exceeds the signed 128-bit range")


def _triangulars_upto(limit: int, step: int) -> list[int]:
    """Triangular numbers T with step*T <= limit."""
    out = []
    k = 0
    while step * (k * (k + 1) // 2) <= limit:
        out.append(k * (k + 1) // 2)
        k += 1
    return out


def _sparse_numpy(a: int, b: int, limit: int) -> np.ndarray:
    vals = np.zeros(limit, dtype=np.int64)
    tri_b = _triangulars_upto(limit - 1, b)
    btri = b * np.array(tri_b, dtype=np.int64)
    coef = np.array(
        [(2 * m + 1) if m % 2 == 0 else -(2 * m + 1) for m in range(len(tri_b))],
        dtype=np.int64,
    )
    m_hi = len(tri_b)
    k = 0
    while True:
        base = a * (k * (k + 1) // 2)
        if base > limit - 1:
            break
        rem = limit - 1 - base
        while m_hi > 0 and btri[m_hi - 1] > rem:
            m_hi -= 1
        ck = 2 * k + 1 if k % 2 == 0 else -(2 * k + 1)
        # indices within one k are distinct, so fancy += is well defined
        vals[base + btri[:m_hi]] += ck * coef[:m_hi]
        k += 1
    return vals


def _sparse_bigint(a: int, b: int, limit: int) -> list[int]:
    vals = [0] * limit
    tri_b = _triangulars_upto(limit - 1, b)
    k = 0
    while True:
        base = a * (k * (k + 1) // 2)
        if base > limit - 1:
            break
        ck = 2 * k + 1 if k % 2 == 0 else -(2 * k + 1)
        for m, t in enumerate(tri_b):
            idx = base + b * t
            if idx > limit - 1:
                break
            cm = 2 * m + 1 if m % 2 == 0 else -(2 * m + 1)
            vals[idx] += ck * cm
        k += 1
    return vals


def _sparse_partial_sum_bound(a: int, b: int, limit: int) -> int:
    """Upper bound for |any partial sum| in the sparse accumulation:
    the rectangle product (sum of |coeffs| on each axis)."""
    ka = len(_triangulars_upto(limit - 1, a))
    kb = len(_triangulars_upto(limit - 1, b))
    return ka * ka * kb * kb  # (sum of first k odd numbers) squared per axis


def _table_sparse(params: LambdaParams, limit: int):
    a, b = params.a, params.b
    if _sparse_partial_sum_bound(a, b, limit) <= _INT64_SAFE:
        return _sparse_numpy(a, b, limit)
    vals = _sparse_bigint(a, b, limit)
    _ensure_int128(vals)
    return vals


def _table_newton(params: LambdaParams, limit: int):
    """Recurrence: n*L[n] = -3 * (c_n + sum_{k<n} c_k L[n-k]), L[0] = 1,
    where c_k = a*sigma(k/a) + b*sigma(k/b) and L[i] is the coefficient
    of q^(i+1).  The division by n must be exact at every step."""
    a, b = params.a, params.b
    sig = SigmaTable(limit)
    c = np.zeros(limit, dtype=np.int64)
    csum = 0
    for k in range(1, limit):
        ck = sig.weighted(a, b, k)
        c[k] = ck
        csum += ck
    vals = np.zeros(limit, dtype=np.int64)
    vals[0] = 1
    max_abs = 1
    for n in range(1, limit):
        if csum * max_abs > _INT64_SAFE:
            return _newton_bigint_resume(a, b, limit, sig, [int(v) for v in vals[:n]], n)
        inner = int(np.dot(c[1:n], vals[n - 1 : 0 : -1])) if n > 1 else 0
        num = -3 * (int(c[n]) + inner)
        q, r = divmod(num, n)
        if r:
            raise InternalInconsistencyError(
                f"recurrence division inexact at n={n} for (a, b)=({a}, {b})"
            )
        if abs(q) > _INT64_SAFE:
            return _newton_bigint_resume(a, b, limit, sig, [int(v) for v in vals[:n]], n)
        vals[n] = q
        if abs(q) > max_abs:
            max_abs = abs(q)
    return vals


def _newton_bigint_resume(a, b, limit, sig, head: list[int], start: int) -> list[int]:
    """Continue the recurrence in big-int arithmetic from step `start`."""
    c = [0] * limit
    for k in range(1, limit):
        c[k] = sig.weighted(a, b, k)
    vals = head + [0] * (limit - start)
    for n in range(max(start, 1), limit):
        inner = sum(c[k] * vals[n - k] for k in range(1, n))
        num = -3 * (c[n] + inner)
        q, r = divmod(num, n)
        if r:
            raise InternalInconsistencyError(
                f"recurrence division inexact at n={n} for (a, b)=({a}, {b})"
            )
        vals[n] = q
    _ensure_int128(vals)
    return vals


def _table_naive(params: LambdaParams, limit: int) -> list[int]:
    """Truncated product, one cubed factor at a time.

    Multiplying by (1 - t)^3 = 1 - 3t + 3t^2 - t^3 with t = q^s is done
    in place from the high end, so the lower-index reads still see the
    previous polynomial.
    """
    a, b = params.a, params.b
    vals = [0] * limit
    vals[0] = 1
    for step, k_top in ((a, (limit - 1) // a), (b, (limit - 1) // b)):
        for k in range(1, k_top + 1):
            s = step * k
            s2, s3 = 2 * s, 3 * s
            for i in range(limit - 1, s - 1, -1):
                acc = vals[i] - 3 * vals[i - s]
                if i >= s2:
                    acc += 3 * vals[i - s2]
                    if i >= s3:
                        acc -= vals[i - s3]
                vals[i] = acc
    _ensure_int128(vals)
    return vals


def lambda_table(params: LambdaParams, limit: int, method: str = "sparse") -> CoeffTable:
    """Exact table of the coefficients of q^1 .. q^limit.

    All methods produce identical tables; pick by cost profile (see the
    module docstring).
    """
    if limit < 1:
        raise ValueError(f"table limit must be >= 1, got {limit}")
    if method == "sparse":
        vals = _table_sparse(params, limit)
    elif method == "newton":
        vals = _table_newton(params, limit)
    elif method == "naive":
        vals = _table_naive(params, limit)
    else:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    if int(vals[0]) != 1:
        raise InternalInconsistencyError("leading coefficient of q is not 1")
    return CoeffTable(params, limit, method, vals)


class PartitionTerm(NamedTuple):
    """Multiplicities (k_1, ..., k_n) with sum(i * k_i) = n."""

    multiplicities: tuple[int, ...]


def partition_terms(n: int) -> Iterator[PartitionTerm]:
    """All partitions of n as multiplicity vectors (k_1 .. k_n)."""
    if n < 0:
        raise ValueError(f"partition index must be >= 0, got {n}")
    mult = [0] * n

    def descend(remaining: int, largest: int):
        if remaining == 0:
            yield PartitionTerm(tuple(mult))
            return
        for part in range(min(remaining, largest), 0, -1):
            mult[part - 1] += 1
            yield from descend(remaining - part, part)
            mult[part - 1] -= 1

    return descend(n, n)


def lambda_multinomial(params: LambdaParams, n: int, cap: int = DEFAULT_PARTITION_CAP) -> int:
    """Coefficient of q^(n+1) by the explicit partition sum.

    Sum over all partitions (k_1 .. k_n) of n of

        (-3)^(k_1+...+k_n) * prod_i c_i^(k_i) / prod_i (i^(k_i) * k_i!)

    with c_i the weighted divisor sum a*sigma(i/a) + b*sigma(i/b).
    Accumulated in exact rationals; the result must come out integral.
    Factorially dense, hence the cap.
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    if n > cap:
        raise PartitionCapError(f"partition sum capped at {cap}, got index {n}")
    a, b = params.a, params.b
    weights = [0] + [weighted_sigma(a, b, i) for i in range(1, n + 1)]
    total = Fraction(0)
    for term in partition_terms(n):
        num = 1
        den = 1
        parts = 0
        for i, k in enumerate(term.multiplicities, start=1):
            if k == 0:
                continue
            parts += k
            num *= weights[i] ** k
            den *= i**k * factorial(k)
        total += Fraction((-3) ** parts * num, den)
    if total.denominator != 1:
        raise InternalInconsistencyError(f"partition sum for index {n} is not integral: {total}")
    return int(total)


def lambda_from_reps(params: LambdaParams, n: int) -> int:
    """Coefficient of q^(n+1) as the sum of x*y over the solutions of
    a*x^2 + b*y^2 = 8n + a + b with x = y = 1 (mod 4)."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    a, b = params.a, params.b
    target = 8 * n + a + b
    return sum(x * y for x, y in normalized_reps(QuadForm(a, 0, b), target))
