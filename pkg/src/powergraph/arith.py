"""Small integer helpers: factorization, totient, divisors.

Everything here uses trial division; inputs are bounded by the group
order cap, so no fancy arithmetic is warranted.
"""

from __future__ import annotations

FACTOR_CAP = 10**6


def prime_factors(n: int) -> list[tuple[int, int]]:
    """Factor ``n`` as a list of (prime, exponent) pairs, ascending primes."""
    if n < 1:
        raise ValueError(f"cannot factor {n}: need a positive integer")
    if n > FACTOR_CAP:
        raise ValueError(f"refusing to factor {n} > {FACTOR_CAP}")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def euler_phi(n: int) -> int:
    """Count the integers in [1, n] coprime to ``n``."""
    phi = n
    for p, _ in prime_factors(n):
        phi = phi // p * (p - 1)
    return phi


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [(n, 1)]


def prime_power_root(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n = p**k and k >= 1, or None if n is not a prime power."""
    f = prime_factors(n)
    if len(f) == 1:
        return f[0]
    return None


def divisors(n: int) -> list[int]:
    """All divisors of ``n``, ascending."""
    divs = [1]
    for p, k in prime_factors(n):
        divs = [d * p**i for i in range(k + 1) for d in divs]
    return sorted(divs)
