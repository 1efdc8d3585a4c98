"""Slow reference computations for tests: point enumeration, group structure
and lifting x-coordinates to the curve or its twist.

Nothing here shares code with the x-line path; the group law used is the
affine one in :mod:`montx.curve`.
"""

from __future__ import annotations

import math

from .curve import INFINITY, Z2xZ2, Z4, Z4xZ2, AffinePoint, MontgomeryCurve, on_curve, scalar_mul_naive
from .modarith import Element, least_nonsquare, sqrt


def enumerate_points(E: MontgomeryCurve) -> list[AffinePoint]:
    q = E.q
    if q > 1 << 16:
        raise ValueError("modulus too large to enumerate")
    m = E.modulus
    pts = [INFINITY]
    for xv in range(q):
        x = m(xv)
        rhs = x * (x * x + E.A * x + 1) / E.B
        y = sqrt(rhs)
        if y is None:
            continue
        pts.append(AffinePoint(x, y))
        if y.value != 0:
            pts.append(AffinePoint(x, -y))
    return pts


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def torsion_count(E: MontgomeryCurve, points: list[AffinePoint], d: int) -> int:
    return sum(1 for P in points if scalar_mul_naive(E, d, P).is_infinity)


def group_invariants(E: MontgomeryCurve, points: list[AffinePoint]) -> tuple[int, int]:
    """(n1, n2) with E(F_q) = Z/n1 x Z/n2 and n1 | n2."""
    n = len(points)
    n1 = 1
    for d in _divisors(n):
        if n % (d * d) == 0 and torsion_count(E, points, d) == d * d:
            n1 = d
    return n1, n // n1


def subgroup_structure(points: list[AffinePoint], E: MontgomeryCurve, m: int = 4) -> list[int]:
    """Invariant factors (>1, ascending) of the m-torsion E[m](F_q)."""
    n1, n2 = group_invariants(E, points)
    return [f for f in (math.gcd(m, n1), math.gcd(m, n2)) if f > 1]


STRUCTURE_FACTORS = {Z4xZ2: [2, 4], Z4: [4], Z2xZ2: [2, 2]}


def embeds(inner: list[int], outer: list[int]) -> bool:
    """Is Z/a1 x Z/a2 x ... (``inner``) isomorphic to a subgroup of ``outer``?

    Factors are prime powers of one prime here, so the test is termwise
    divisibility after sorting both lists in descending order.
    """
    a, b = sorted(inner, reverse=True), sorted(outer, reverse=True)
    if len(a) > len(b):
        return False
    return all(y % x == 0 for x, y in zip(a, b))


CURVE, TWIST, BOTH = "curve", "twist", "both"


def lift_x(E: MontgomeryCurve, x: Element) -> tuple[AffinePoint, str, MontgomeryCurve]:
    """Lift x to (x, y) on E, on the twist E' (B' = B times least nonsquare),
    or on both when y = 0.  Returns (point, which, curve_it_lies_on)."""
    twist = MontgomeryCurve(E.A, E.B * least_nonsquare(E.modulus))
    f = x * (x * x + E.A * x + 1)
    if f.value == 0:
        return AffinePoint(x, E.modulus.zero()), BOTH, E
    y = sqrt(f / E.B)
    if y is not None:
        return AffinePoint(x, y), CURVE, E
    y = sqrt(f / twist.B)
    assert y is not None and on_curve(twist, AffinePoint(x, y))
    return AffinePoint(x, y), TWIST, twist
