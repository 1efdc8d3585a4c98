"""Projective x-line arithmetic: pseudo-addition and pseudo-doubling.

Points are pairs (X, Z) read projectively; x(O) = (1 : 0), x(T) = (0 : 1).
(0, 0) is not a projective point but is a legitimate output of the
degenerate cases and is passed through untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import AffinePoint, GeneralWeierstrassCurve, MontgomeryCurve
from .modarith import Element, Modulus, OpCount, add, cmul, mul, sqr, sub


@dataclass(frozen=True)
class XZPoint:
    X: Element
    Z: Element

    @property
    def modulus(self) -> Modulus:
        return self.X.modulus

    def is_sentinel(self) -> bool:
        return self.X.value == 0 and self.Z.value == 0

    def is_infinity(self) -> bool:
        return self.Z.value == 0 and self.X.value != 0

    def is_T(self) -> bool:
        return self.X.value == 0 and self.Z.value != 0

    def scale(self, lam: Element) -> XZPoint:
        return XZPoint(self.X * lam, self.Z * lam)

    def affine(self) -> Element | None:
        """X/Z, or None when Z = 0."""
        if self.Z.value == 0:
            return None
        return self.X / self.Z

    def __repr__(self):
        return f"({self.X.value} : {self.Z.value})"


def x_infinity(m: Modulus) -> XZPoint:
    return XZPoint(m.one(), m.zero())


def x_T(m: Modulus) -> XZPoint:
    return XZPoint(m.zero(), m.one())


def x_of(E: MontgomeryCurve, P: AffinePoint) -> XZPoint:
    m = E.modulus
    if P.is_infinity:
        return x_infinity(m)
    return XZPoint(P.x, m.one())


def xz_equal(p: XZPoint, q: XZPoint) -> bool:
    if p.is_sentinel() or q.is_sentinel():
        raise ValueError("(0, 0) is not a projective point")
    return (p.X * q.Z).value == (q.X * p.Z).value


def xadd(p: XZPoint, q: XZPoint, diff: XZPoint, ctr: OpCount | None = None) -> XZPoint:
    """x(P + Q) from x(P), x(Q), x(P - Q).  4M + 2S + 3a + 3s.

    Returns (0, 0) when P - Q is O.
    """
    if ctr is not None:
        ctr.note("xadd")
    v0 = add(p.X, p.Z, ctr)
    v1 = sub(q.X, q.Z, ctr)
    v1 = mul(v1, v0, ctr)
    v0 = sub(p.X, p.Z, ctr)
    v2 = add(q.X, q.Z, ctr)
    v2 = mul(v2, v0, ctr)
    v3 = add(v1, v2, ctr)
    v3 = sqr(v3, ctr)
    v4 = sub(v1, v2, ctr)
    v4 = sqr(v4, ctr)
    return XZPoint(mul(diff.Z, v3, ctr), mul(diff.X, v4, ctr))


def xadd_normalized(p: XZPoint, q: XZPoint, diff_x: Element, ctr: OpCount | None = None) -> XZPoint:
    """:func:`xadd` with difference (diff_x : 1).  3M + 2S + 3a + 3s."""
    if ctr is not None:
        ctr.note("xadd")
    v0 = add(p.X, p.Z, ctr)
    v1 = sub(q.X, q.Z, ctr)
    v1 = mul(v1, v0, ctr)
    v0 = sub(p.X, p.Z, ctr)
    v2 = add(q.X, q.Z, ctr)
    v2 = mul(v2, v0, ctr)
    v3 = add(v1, v2, ctr)
    v3 = sqr(v3, ctr)
    v4 = sub(v1, v2, ctr)
    v4 = sqr(v4, ctr)
    return XZPoint(v3, mul(diff_x, v4, ctr))


def xdbl(p: XZPoint, E: MontgomeryCurve, ctr: OpCount | None = None) -> XZPoint:
    """x([2]P).  2M + 2S + 1C + 2a + 2s; reads only E.a24.

    Z of the result is 0 when P is O or T.
    """
    if ctr is not None:
        ctr.note("xdbl")
    v1 = add(p.X, p.Z, ctr)
    v1 = sqr(v1, ctr)
    v2 = sub(p.X, p.Z, ctr)
    v2 = sqr(v2, ctr)
    X = mul(v1, v2, ctr)
    v1 = sub(v1, v2, ctr)
    v3 = cmul(E.a24, v1, ctr)
    v3 = add(v3, v2, ctr)
    return XZPoint(X, mul(v1, v3, ctr))


def translate_by_T(p: XZPoint) -> XZPoint:
    """x(P + T) = (Z : X)."""
    return XZPoint(p.Z, p.X)


def xadd_extended(p: XZPoint, q: XZPoint, diff: XZPoint, E: MontgomeryCurve,
                  ctr: OpCount | None = None) -> XZPoint:
    """Pseudo-addition defined for every input, including O and T differences.

    Variable-time: branches on whether the inputs are x(O) or x(T).
    """
    if diff.is_infinity():
        return xdbl(p, E, ctr)
    if diff.is_T():
        return translate_by_T(xdbl(q, E, ctr))
    if q.is_infinity():
        return p
    if p.is_infinity():
        return q
    return xadd(p, q, diff, ctr)


def generic_weierstrass_xadd(p: XZPoint, q: XZPoint, diff: XZPoint, W: GeneralWeierstrassCurve,
                             ctr: OpCount | None = None) -> XZPoint:
    """Pseudo-addition on y^2 = x^3 + f2 x^2 + f1 x + f0 (unoptimized)."""
    f2, f1, f0 = W.f2, W.f1, W.f0
    xx = mul(p.X, q.X, ctr)
    zz = mul(p.Z, q.Z, ctr)
    zx = mul(p.Z, q.X, ctr)
    xz = mul(p.X, q.Z, ctr)
    t = sqr(sub(xx, cmul(f1, zz, ctr), ctr), ctr)
    u = add(add(zx, xz, ctr), cmul(f2, zz, ctr), ctr)
    u = mul(mul(cmul(f0, u, ctr), zz, ctr), Element(4, f0.modulus), ctr)
    return XZPoint(mul(diff.Z, sub(t, u, ctr), ctr), mul(diff.X, sqr(sub(zx, xz, ctr), ctr), ctr))


def generic_weierstrass_xdbl(p: XZPoint, W: GeneralWeierstrassCurve,
                             ctr: OpCount | None = None) -> XZPoint:
    """Pseudo-doubling on y^2 = x^3 + f2 x^2 + f1 x + f0 (unoptimized)."""
    f2, f1, f0 = W.f2, W.f1, W.f0
    four = Element(4, f0.modulus)
    X2, Z2 = sqr(p.X, ctr), sqr(p.Z, ctr)
    XZ = mul(p.X, p.Z, ctr)
    t = sqr(sub(X2, cmul(f1, Z2, ctr), ctr), ctr)
    u = add(add(XZ, XZ, ctr), cmul(f2, Z2, ctr), ctr)
    u = mul(mul(cmul(f0, u, ctr), Z2, ctr), four, ctr)
    # 4 Z (X^3 + f2 X^2 Z + f1 X Z^2 + f0 Z^3)
    w = add(add(mul(X2, XZ, ctr), cmul(f2, mul(X2, Z2, ctr), ctr), ctr),
            add(cmul(f1, mul(XZ, Z2, ctr), ctr), cmul(f0, sqr(Z2, ctr), ctr), ctr), ctr)
    return XZPoint(sub(t, u, ctr), mul(four, w, ctr))
