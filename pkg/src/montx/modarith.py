"""Modular arithmetic over an odd modulus with explicit operation accounting.

Residues live in :class:`Element`; the modulus is either a prime (a field
F_q) or a composite N (the ring Z/NZ used by ECM).  The counted functions
(:func:`add`, :func:`sub`, :func:`mul`, :func:`sqr`, :func:`cmul`) take an
optional :class:`OpCount` and bump exactly one tally per call.  Python
operators on elements are provided for convenience and are never counted.
"""

from __future__ import annotations

import builtins
import math
import random
from collections import Counter
from dataclasses import dataclass, field


class ModulusMismatch(ValueError):
    pass


class NotInvertible(ZeroDivisionError):
    """Raised when an element has no inverse; ``divisor`` is gcd(a, m)."""

    def __init__(self, value, modulus):
        self.value = value
        self.modulus = modulus
        self.divisor = math.gcd(value, modulus)
        super().__init__(f"{value} is not invertible modulo {modulus}")


@dataclass(frozen=True)
class Modulus:
    value: int
    is_prime: bool = False

    def __post_init__(self):
        if self.value < 3 or self.value % 2 == 0:
            raise ValueError(f"modulus must be odd and >= 3, got {self.value}")

    @property
    def nbytes(self) -> int:
        return (self.value.bit_length() + 7) // 8

    def __call__(self, v) -> Element:
        if isinstance(v, Element):
            v = v.value
        return Element(v, self)

    def zero(self) -> Element:
        return Element(0, self)

    def one(self) -> Element:
        return Element(1, self)


class Element:
    """An immutable residue modulo ``modulus``."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: Modulus):
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", value % modulus.value)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, Element):
            if other.modulus.value != self.modulus.value:
                raise ModulusMismatch(f"{self.modulus.value} != {other.modulus.value}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Element(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Element(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Element(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Element(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Element(-self.value, self.modulus)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Element(builtins.pow(self.value, e, self.modulus.value), self.modulus)

    def inverse(self) -> Element:
        """Uncounted inverse; works in any ring, raising :class:`NotInvertible`."""
        try:
            return Element(builtins.pow(self.value, -1, self.modulus.value), self.modulus)
        except ValueError:
            raise NotInvertible(self.value, self.modulus.value) from None

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Element(o, self.modulus).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Element(o, self.modulus) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.value == other.value and self.modulus.value == other.modulus.value
        if isinstance(other, int):
            return self.value == other % self.modulus.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"Element({self.value}, {self.modulus.value})"


@dataclass
class OpCount:
    """Field-operation tallies: M, S, C (constant mults), a, s.

    ``calls`` counts higher-level pseudo-operations (xadd, xdbl, cswap).
    When ``trace`` is a list, every counted event is appended to it in order.
    """

    mul: int = 0
    sqr: int = 0
    cmul: int = 0
    add: int = 0
    sub: int = 0
    calls: Counter = field(default_factory=Counter)
    trace: list | None = None

    def tally(self) -> dict:
        return {"mul": self.mul, "sqr": self.sqr, "cmul": self.cmul, "add": self.add, "sub": self.sub}

    def note(self, name: str) -> None:
        self.calls[name] += 1
        if self.trace is not None:
            self.trace.append(name)

    def __sub__(self, other: OpCount) -> dict:
        a, b = self.tally(), other.tally()
        return {k: a[k] - b[k] for k in a}

    def copy(self) -> OpCount:
        return OpCount(self.mul, self.sqr, self.cmul, self.add, self.sub, Counter(self.calls),
                       None if self.trace is None else list(self.trace))


def _check(a: Element, b: Element) -> None:
    if a.modulus.value != b.modulus.value:
        raise ModulusMismatch(f"{a.modulus.value} != {b.modulus.value}")


def add(a: Element, b: Element, ctr: OpCount | None = None) -> Element:
    _check(a, b)
    if ctr is not None:
        ctr.add += 1
        if ctr.trace is not None:
            ctr.trace.append("a")
    return Element(a.value + b.value, a.modulus)


def sub(a: Element, b: Element, ctr: OpCount | None = None) -> Element:
    _check(a, b)
    if ctr is not None:
        ctr.sub += 1
        if ctr.trace is not None:
            ctr.trace.append("s")
    return Element(a.value - b.value, a.modulus)


def mul(a: Element, b: Element, ctr: OpCount | None = None) -> Element:
    _check(a, b)
    if ctr is not None:
        ctr.mul += 1
        if ctr.trace is not None:
            ctr.trace.append("M")
    return Element(a.value * b.value, a.modulus)


def sqr(a: Element, ctr: OpCount | None = None) -> Element:
    if ctr is not None:
        ctr.sqr += 1
        if ctr.trace is not None:
            ctr.trace.append("S")
    return Element(a.value * a.value, a.modulus)


def cmul(c: Element, a: Element, ctr: OpCount | None = None) -> Element:
    """Multiplication by a curve constant; same value as :func:`mul`, counted as C."""
    _check(c, a)
    if ctr is not None:
        ctr.cmul += 1
        if ctr.trace is not None:
            ctr.trace.append("C")
    return Element(c.value * a.value, a.modulus)


def pow(a: Element, e: int, ctr: OpCount | None = None) -> Element:  # noqa: A001
    """Left-to-right square-and-multiply: bitlen(e)-1 squarings, popcount(e)-1 mults."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    if e == 0:
        return a.modulus.one()
    r = a
    for i in range(e.bit_length() - 2, -1, -1):
        r = sqr(r, ctr)
        if (e >> i) & 1:
            r = mul(r, a, ctr)
    return r


def _require_prime(a: Element, what: str) -> None:
    if not a.modulus.is_prime:
        raise ValueError(f"{what} requires a modulus asserted prime")


def inv(a: Element, ctr: OpCount | None = None) -> Element:
    """Fermat inversion a^(q-2); prime moduli only."""
    _require_prime(a, "inv")
    if a.value == 0:
        raise ZeroDivisionError("inverse of zero")
    return pow(a, a.modulus.value - 2, ctr)


def legendre(a: Element) -> int:
    _require_prime(a, "legendre")
    if a.value == 0:
        return 0
    t = pow(a, (a.modulus.value - 1) // 2)
    return 1 if t.value == 1 else -1


def is_square(a: Element) -> bool:
    return legendre(a) >= 0


def least_nonsquare(m: Modulus) -> Element:
    z = 2
    while legendre(Element(z, m)) != -1:
        z += 1
    return Element(z, m)


def sqrt(a: Element) -> Element | None:
    """A square root with even residue, or None for nonsquares."""
    _require_prime(a, "sqrt")
    q = a.modulus.value
    if a.value == 0:
        return a
    if legendre(a) == -1:
        return None
    if q % 4 == 3:
        r = pow(a, (q + 1) // 4)
    else:
        # Tonelli-Shanks
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = least_nonsquare(a.modulus)
        c = pow(z, t)
        r = pow(a, (t + 1) // 2)
        u = pow(a, t)
        while u.value != 1:
            i, w = 0, u
            while w.value != 1:
                w, i = w * w, i + 1
            b = pow(c, 1 << (s - i - 1))
            r, c = r * b, b * b
            u, s = u * c, i
    if r.value % 2:
        r = -r
    return r


gcd = math.gcd


def encode(a: Element) -> bytes:
    return a.value.to_bytes(a.modulus.nbytes, "little")


def decode(data: bytes, m: Modulus) -> Element:
    """Inverse of :func:`encode`; out-of-range values are reduced, not rejected."""
    if len(data) != m.nbytes:
        raise ValueError(f"expected {m.nbytes} bytes, got {len(data)}")
    return Element(int.from_bytes(data, "little"), m)


def is_probable_prime(n: int, rounds: int = 64, seed: int = 0) -> bool:
    """Miller-Rabin with ``rounds`` pseudorandom bases."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    rng = random.Random(seed)
    for _ in range(rounds):
        x = builtins.pow(rng.randrange(2, n - 1), d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
