"""Exact integer/rational helpers: primes, factorization, p-adic valuations.

All arithmetic is on Python ints and fractions.Fraction; nothing here ever
touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

from .errors import InvalidInputError

#: Valuation of zero; compares greater than any finite valuation.
INFINITY = math.inf

Rational = Fraction | int


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit (and larger) inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # These witnesses are a proven deterministic set below 3.3e24.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's variant)."""
    if n % 2 == 0:
        return 2
    x0 = 2
    c = 1
    while True:
        x = y = x0
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


_SMALL_PRIMES: tuple[int, ...] | None = None


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    Trial division by small primes, Pollard rho for any stubborn cofactor.
    Inputs are expected to be desk-scale; there is no safeguard against
    adversarially large semiprimes.
    """
    n = abs(n)
    if n == 0:
        raise InvalidInputError("cannot factorize 0")
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        _SMALL_PRIMES = tuple(primes_up_to(10_000))
    factors: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        if n == 1:
            return factors
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return dict(sorted(factors.items()))


def valuation(x: Rational, p: int) -> int | float:
    """p-adic valuation v_p(x), normalized v_p(p) = 1; v_p(0) = +infinity."""
    if p < 2 or not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITY
    v = 0
    num = x.numerator
    den = x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def unit_part(x: Rational, p: int) -> Fraction:
    """x / p^v_p(x); a p-adic unit for nonzero x."""
    x = Fraction(x)
    if x == 0:
        raise InvalidInputError("0 has no unit part")
    v = valuation(x, p)
    return x / Fraction(p) ** v


def residue(x: Rational, modulus: int) -> int:
    """Image of a rational with denominator invertible mod modulus.

    The denominator is inverted mod modulus; this is the canonical image of
    x in Z/modulus when x is a p-adic integer for every p | modulus.
    """
    x = Fraction(x)
    if math.gcd(x.denominator, modulus) != 1:
        raise InvalidInputError(
            f"{x} has no well-defined residue mod {modulus}"
        )
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def parse_rational(text: str) -> Fraction:
    """Parse 'num/den' or an integer literal; floating point is rejected."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"cannot parse rational {text!r}") from exc


def lcm_all(values: Iterator[int] | list[int]) -> int:
    """lcm of an iterable; 1 for the empty iterable."""
    result = 1
    for v in values:
        result = math.lcm(result, v)
    return result
