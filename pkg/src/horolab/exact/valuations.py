"""p-adic valuations, Legendre's factorial formula, logarithmic heights."""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import UndefinedValuationError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit (and most larger) n."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int):
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, b in enumerate(sieve) if b]


def int_valuation(n: int, p: int) -> int:
    """v_p of a non-zero integer."""
    if n == 0:
        raise UndefinedValuationError("v_p(0) is undefined", prime=p)
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(q, p: int) -> int:
    """v_p of a non-zero rational; negative when p divides the denominator."""
    if not is_prime(p):
        raise UndefinedValuationError(f"{p} is not prime", prime=p)
    q = Fraction(q)
    if q == 0:
        raise UndefinedValuationError("v_p(0) is undefined", prime=p)
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


def factorial_valuation(i: int, p: int) -> int:
    """v_p(i!) by Legendre's formula: sum of floor(i / p^k)."""
    if i < 0:
        raise UndefinedValuationError("factorial of a negative integer", index=i)
    if not is_prime(p):
        raise UndefinedValuationError(f"{p} is not prime", prime=p)
    total = 0
    q = p
    while q <= i:
        total += i // q
        q *= p
    return total


def prime_support(n: int, sieve_bound: int = 1 << 20):
    """Primes dividing |n|, by trial division against a sieve.

    Raises if a cofactor above the sieve bound squared survives without
    being prime; desk-scale inputs (factorial-smooth denominators) never
    get there.
    """
    n = abs(n)
    if n <= 1:
        return []
    out = []
    for p in primes_up_to(min(sieve_bound, math.isqrt(n) + 1)):
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        if n == 1:
            break
    if n > 1:
        if is_prime(n):
            out.append(n)
        else:
            raise UndefinedValuationError(
                "composite cofactor above sieve bound", cofactor_digits=len(str(n))
            )
    return out


# --- logarithmic heights ------------------------------------------------


def height(q) -> float:
    """log max(|num|, |den|) on the reduced fraction; height(0) = 0."""
    q = Fraction(q)
    n = abs(q.numerator)
    d = q.denominator
    m = max(n, d)
    if m <= 1:
        return 0.0
    return math.log(m)


def vector_height(values) -> float:
    """Max coordinate height; the height of a point in affine coordinates."""
    hs = [height(v) for v in values]
    if not hs:
        return 0.0
    return max(hs)


def polynomial_height(p) -> float:
    """Max height over the coefficient list."""
    return vector_height(p.coeffs)
