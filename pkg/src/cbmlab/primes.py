"""Prime sieves: a simple sieve for base primes and a segmented sieve for windows."""

from __future__ import annotations

import math

import numpy as np


def sieve_upto(limit: int) -> np.ndarray:
    """All primes <= limit, ascending (int64 array)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """Primes in the closed interval [lo, hi], via a segmented sieve.

    Only base primes up to sqrt(hi) are materialized, so the window may sit
    far beyond any previously sieved range.
    """
    lo = max(lo, 2)
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    base = sieve_upto(math.isqrt(hi))
    mask = np.ones(hi - lo + 1, dtype=bool)
    for p in base:
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start > hi:
            continue
        mask[start - lo :: p] = False
    if lo <= 1:
        mask[: 2 - lo] = False
    # base primes inside the window stay prime
    return (np.flatnonzero(mask) + lo).astype(np.int64)


class PrimeTable:
    """Primality lookups below a fixed bound, backed by one boolean sieve."""

    def __init__(self, bound: int):
        self.bound = int(bound)
        self._mask = np.zeros(self.bound + 1, dtype=bool)
        self._mask[sieve_upto(self.bound)] = True
        self.primes = np.flatnonzero(self._mask).astype(np.int64)

    def is_prime(self, n: int) -> bool:
        return 0 <= n <= self.bound and bool(self._mask[n])

    def first_prime_in(self, lo: int, hi: int) -> int | None:
        """Smallest prime in [lo, hi] capped at the table bound, or None."""
        lo = max(int(lo), 2)
        hi = min(int(hi), self.bound)
        if hi < lo:
            return None
        window = self._mask[lo : hi + 1]
        idx = int(np.argmax(window))
        if not window[idx]:
            return None
        return lo + idx
