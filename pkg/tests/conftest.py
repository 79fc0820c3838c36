import random
from fractions import Fraction

import pytest

# Primes >= 5 used to build desk-scale random family parameters whose
# factorizations stay trivial.
TAME_PRIME_POOL = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]


def make_tabulated_s(rng: random.Random) -> Fraction:
    """A random family parameter with v2 in {0,1,2} and v3 in {0..4}."""
    sign = rng.choice([1, -1])
    a = rng.randrange(0, 3)
    b = rng.randrange(0, 5)
    num = den = 1
    for p in rng.sample(TAME_PRIME_POOL, rng.randrange(0, 3)):
        num *= p ** rng.randrange(1, 4)
    for p in rng.sample(TAME_PRIME_POOL, rng.randrange(0, 2)):
        den *= p ** rng.randrange(1, 4)
    return Fraction(sign * 2**a * 3**b * num, den)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


@pytest.fixture
def tabulated_s():
    return make_tabulated_s
