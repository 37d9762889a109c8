"""Factorials, small primes and partial factorization for power-product bases."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

TRIAL_DIVISION_LIMIT = 1 << 12


@lru_cache(maxsize=None)
def small_primes(limit: int = TRIAL_DIVISION_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_FACTORIALS = [1]


def factorial(n: int) -> int:
    """n! exactly; memoized so repeated sweeps stay cheap."""
    if n < 0:
        raise ValueError("factorial of a negative number")
    while len(_FACTORIALS) <= n:
        _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS[n]


@lru_cache(maxsize=4096)
def factor_small(n: int) -> tuple[tuple[int, int], ...]:
    """Split n >= 1 into prime powers found by trial division.

    Primes up to ``TRIAL_DIVISION_LIMIT`` are extracted; any cofactor left over
    is returned as a single (possibly composite) base with exponent 1.
    Deterministic, which is all power-product normalization needs.
    """
    if n < 1:
        raise ValueError("factor_small expects a positive integer")
    out = []
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=1024)
def factorial_factorization(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n! by Legendre's formula."""
    if n < 0:
        raise ValueError("factorial of a negative number")
    out = []
    for p in _primes_upto(n):
        e, q = 0, p
        while q <= n:
            e += n // q
            q *= p
        out.append((p, e))
    return tuple(out)


def _primes_upto(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    if n <= TRIAL_DIVISION_LIMIT:
        return tuple(p for p in small_primes() if p <= n)
    return small_primes(n)
