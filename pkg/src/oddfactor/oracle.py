"""Brute-force ground truth for differential tests.

Nothing here is restricted: these functions multiply, divide and take
remainders freely, and share no code with the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


@dataclass(frozen=True)
class DivisorTable:
    n: int
    divisors: tuple[int, ...]


def trial_division_factorize(n: int) -> dict[int, int]:
    """Map prime -> exponent.  ``1`` maps to the empty dict.

    >>> trial_division_factorize(45)
    {3: 2, 5: 1}
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def divisors(n: int) -> DivisorTable:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return DivisorTable(n, tuple(small + large))


def largest_divisor_leq_sqrt(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    for d in range(isqrt(n), 0, -1):
        if n % d == 0:
            return d
    return 1


def sieve_primes(limit: int) -> list[int]:
    """Primes <= limit by the sieve of Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def residual(a: int, b: int, c: int) -> int:
    """``2bc + b + c - a`` computed directly."""
    return 2 * b * c + b + c - a
