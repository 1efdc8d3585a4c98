"""ECM stage 1 over Z/NZ with Suyama curves and x-only PRAC chains."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .chains import prac
from .curve import MontgomeryCurve
from .modarith import Element, Modulus, NotInvertible, OpCount, is_probable_prime
from .xline import XZPoint


class EcmInputError(ValueError):
    pass


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power(n: int) -> tuple[int, int] | None:
    """(r, k) with r^k = n and k >= 2, or None."""
    for k in range(2, n.bit_length() + 1):
        r = iroot(n, k)
        if r ** k == n:
            return r, k
    return None


@dataclass(frozen=True)
class EcmConfig:
    N: int
    B1: int
    max_curves: int = 20
    seed: int = 0

    def __post_init__(self):
        N = self.N
        if N < 15:
            raise EcmInputError("N must be at least 15")
        if N % 2 == 0:
            raise EcmInputError("N is even")
        if self.B1 < 2:
            raise EcmInputError("B1 must be at least 2")
        if self.max_curves < 1:
            raise EcmInputError("max_curves must be at least 1")
        if is_probable_prime(N):
            raise EcmInputError("N is prime")
        pp = perfect_power(N)
        if pp is not None:
            raise EcmInputError(f"N is a perfect power ({pp[0]}^{pp[1]})")


@dataclass(frozen=True)
class EcmResult:
    factor: int | None
    curves_tried: int
    seed_of_success: int | None = None


def primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [p for p in range(n + 1) if sieve[p]]


def lcm_exponent_schedule(B1: int) -> list[int]:
    """The largest power p^e <= B1 of every prime p <= B1, in prime order."""
    if B1 < 2:
        raise ValueError("B1 must be at least 2")
    out = []
    for p in primes_upto(B1):
        pe = p
        while pe * p <= B1:
            pe *= p
        out.append(pe)
    return out


class FactorFound(Exception):
    def __init__(self, divisor: int):
        self.divisor = divisor
        super().__init__(divisor)


def _probe(value: int, N: int) -> None:
    """Raise FactorFound on a nontrivial gcd; ValueError when value = 0 mod N."""
    g = math.gcd(value, N)
    if 1 < g < N:
        raise FactorFound(g)
    if g == N:
        raise ValueError("degenerate seed")


def suyama_start(sigma: int, N: int) -> tuple[MontgomeryCurve, XZPoint]:
    """Suyama curve and starting x over Z/NZ for the parameter sigma.

    a = (sigma^2 - 5) / (4 sigma) is the x-coordinate of a point of order 3
    on the Suyama curve for A(a); x = a^3 lies on the same twist, so its
    reduction modulo any prime lives in a group of order divisible by 12.
    B is nominal (A + 2): the x-line arithmetic never reads it.
    """
    m = Modulus(N)
    s = m(sigma)
    try:
        _probe((4 * s).value, N)
        a = (s * s - 5) / (4 * s)
        a2 = a * a
        _probe((a * (a2 - 1) * (9 * a2 - 1) * (4 * a2 + 5)).value, N)
        A = -(3 * a2 * a2 + 6 * a2 - 1) / (4 * a2 * a)
        _probe((A * A - 4).value, N)
    except NotInvertible as exc:
        _probe(exc.divisor, N)
        raise
    return MontgomeryCurve(A, A + 2), XZPoint(a2 * a, m.one())


def stage1(cfg: EcmConfig, ctr: OpCount | None = None) -> EcmResult:
    """Try up to ``cfg.max_curves`` curves; return the first nontrivial factor.

    Each curve multiplies its starting point by every prime power of
    lcm(1..B1) with PRAC and checks gcd(Z, N) after each one.
    """
    N = cfg.N
    rng = random.Random(cfg.seed)
    schedule = lcm_exponent_schedule(cfg.B1)
    for c in range(1, cfg.max_curves + 1):
        sigma = rng.randrange(6, N - 1)
        g = math.gcd(sigma, N)
        if 1 < g < N:
            return EcmResult(g, c, sigma)
        try:
            E, x = suyama_start(sigma, N)
        except FactorFound as f:
            return EcmResult(f.divisor, c, sigma)
        except ValueError:
            continue
        for pe in schedule:
            x = prac(E, pe, x, ctr)
            g = math.gcd(x.Z.value, N)
            if 1 < g < N:
                return EcmResult(g, c, sigma)
            if g == N:
                break
    return EcmResult(None, cfg.max_curves, None)
