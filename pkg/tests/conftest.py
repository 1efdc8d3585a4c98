import functools

import pytest

from montx.curve import MontgomeryCurve
from montx.modarith import Modulus, least_nonsquare
from montx.oracle import enumerate_points

SMALL_PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31]


@functools.lru_cache(maxsize=None)
def small_curve(q, A, B):
    m = Modulus(q, is_prime=True)
    return MontgomeryCurve(m(A), m(B))


@functools.lru_cache(maxsize=None)
def points_of(q, A, B):
    return tuple(enumerate_points(small_curve(q, A, B)))


def sweep(primes=SMALL_PRIMES):
    """Every valid (q, A, B) with B in {1, least nonsquare}."""
    out = []
    for q in primes:
        m = Modulus(q, is_prime=True)
        nonsq = least_nonsquare(m).value
        for A in range(q):
            if (A * A - 4) % q == 0:
                continue
            for B in (1, nonsq):
                out.append((q, A, B))
    return out


@pytest.fixture
def f13():
    """The running example: q = 13, A = 6, B = 1."""
    return small_curve(13, 6, 1)
