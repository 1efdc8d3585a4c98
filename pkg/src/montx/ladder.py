"""Montgomery ladders, y-coordinate recovery and x-only Diffie-Hellman.

Scalar conventions
------------------
Mode A: ``k >= 1`` is processed from its top set bit, so the loop length is
``k.bit_length()``.  Mode B: pass ``nbits`` and ``k`` is read as a
fixed-length bitstring; the ladder starts from (x(O), x(P)) and leading
zeros leave the state untouched.

The uniform ladder has no branches or indexing on scalar bits; its counted
operation trace depends only on the scalar length.  Python integers are not
constant-time, so this is an algorithmic guarantee only.
"""

from __future__ import annotations

import random
from typing import NamedTuple

from . import curve as C
from .curve import AffinePoint, CurveConfig, MontgomeryCurve
from .modarith import Element, Modulus, OpCount, cmul, mul, sqr, add, sub, decode, encode
from .modarith import pow as fpow
from .xline import XZPoint, x_infinity, x_of, xadd, xadd_extended, xadd_normalized, xdbl, xz_equal


class LadderOutput(NamedTuple):
    xk: XZPoint
    xk1: XZPoint


def bits_msb_first(k: int, nbits: int | None = None) -> list[int]:
    n = k.bit_length() if nbits is None else nbits
    if k >> n:
        raise ValueError(f"{k} does not fit in {n} bits")
    return [(k >> i) & 1 for i in range(n - 1, -1, -1)]


def group_ladder(E: MontgomeryCurve, k: int, P: AffinePoint, check_invariants: bool = False) -> AffinePoint:
    """[k]P with the (R0, R1) ladder over the full group law."""
    if k < 1:
        raise ValueError("group_ladder needs k >= 1")
    if not C.on_curve(E, P):
        raise C.NotOnCurve(f"{P} is not on the curve")
    R0, R1 = P, C.add(E, P, P)
    for i in range(k.bit_length() - 2, -1, -1):
        if (k >> i) & 1 == 0:
            R0, R1 = C.add(E, R0, R0), C.add(E, R0, R1)
        else:
            R0, R1 = C.add(E, R0, R1), C.add(E, R1, R1)
        if check_invariants:
            assert C.add(E, R1, C.neg(E, R0)) == P
            assert R0 == C.scalar_mul_naive(E, k >> i, P)
    return R0


def x_ladder(E: MontgomeryCurve, k: int, xP: XZPoint, ctr: OpCount | None = None,
             extended: bool = False) -> LadderOutput:
    """(x([k]P), x([k+1]P)) for k >= 1; ell-1 xADDs and ell xDBLs.

    If P is O or T the Z coordinates of the outputs are 0.  With
    ``extended=True`` the additions go through :func:`xadd_extended`, which
    makes the result correct for those inputs too (used by the chain code).
    """
    if k < 1:
        raise ValueError("x_ladder needs k >= 1 (top bit set)")
    if extended:
        def xadd_(a, b):
            return xadd_extended(a, b, xP, E, ctr)
    elif xP.Z.value == 1:
        def xadd_(a, b):
            return xadd_normalized(a, b, xP.X, ctr)
    else:
        def xadd_(a, b):
            return xadd(a, b, xP, ctr)
    x0, x1 = xP, xdbl(xP, E, ctr)
    for i in range(k.bit_length() - 2, -1, -1):
        if (k >> i) & 1 == 0:
            x0, x1 = xdbl(x0, E, ctr), xadd_(x0, x1)
        else:
            x0, x1 = xadd_(x0, x1), xdbl(x1, E, ctr)
    return LadderOutput(x0, x1)


def cswap(b: int, x0: XZPoint, x1: XZPoint) -> tuple[XZPoint, XZPoint]:
    """Swap iff b = 1, by masking the xor of the fixed-length encodings."""
    m = x0.modulus
    n = m.nbytes
    width = 16 * n  # bits in X || Z
    mask = -b & ((1 << width) - 1)
    s0 = int.from_bytes(encode(x0.X) + encode(x0.Z), "little")
    s1 = int.from_bytes(encode(x1.X) + encode(x1.Z), "little")
    v = mask & (s0 ^ s1)
    s0, s1 = (s0 ^ v).to_bytes(2 * n, "little"), (s1 ^ v).to_bytes(2 * n, "little")
    return (XZPoint(decode(s0[:n], m), decode(s0[n:], m)),
            XZPoint(decode(s1[:n], m), decode(s1[n:], m)))


def uniform_ladder(E: MontgomeryCurve, k: int, xP: XZPoint, ctr: OpCount | None = None,
                   nbits: int | None = None) -> XZPoint:
    """x([k]P) with a branch-free ladder.

    Mode A (``nbits`` None): k >= 1, ell = bitlen(k), ell-1 xADDs, ell xDBLs
    and ell cswaps.  Mode B: ``nbits`` xADDs, xDBLs and cswaps for any
    k < 2^nbits, including 0.
    """
    if nbits is None:
        if k < 1:
            raise ValueError("mode A needs k >= 1")
        ell = k.bit_length()
        t0, t1 = xdbl(xP, E, ctr), xP
        start, prev = ell - 2, 1
    else:
        if k >> nbits:
            raise ValueError(f"{k} does not fit in {nbits} bits")
        t0, t1 = x_infinity(xP.modulus), xP
        start, prev = nbits - 1, 0
    normalized = xP.Z.value == 1
    for i in range(start, -1, -1):
        bit = (k >> i) & 1
        t0, t1 = cswap(prev ^ bit, t0, t1)
        if ctr is not None:
            ctr.note("cswap")
        prev = bit
        if normalized:
            t0, t1 = xdbl(t0, E, ctr), xadd_normalized(t0, t1, xP.X, ctr)
        else:
            t0, t1 = xdbl(t0, E, ctr), xadd(t0, t1, xP, ctr)
    t0, t1 = cswap(prev, t0, t1)
    if ctr is not None:
        ctr.note("cswap")
    return t0


def recover(E: MontgomeryCurve, P: AffinePoint, xQ: XZPoint, xPQ: XZPoint,
            ctr: OpCount | None = None) -> tuple[Element, Element, Element]:
    """Projective (X' : Y' : Z') = Q from P, x(Q), x(P + Q).

    10M + 1S + 2C + 3a + 3s.  Needs P not 2-torsion and Q not in {P, -P, O};
    otherwise the output is meaningless.
    """
    two_A = E.A + E.A
    two_B = E.B + E.B
    xP, yP = P.x, P.y
    v1 = mul(xP, xQ.Z, ctr)
    v2 = add(xQ.X, v1, ctr)
    v3 = sub(xQ.X, v1, ctr)
    v3 = sqr(v3, ctr)
    v3 = mul(v3, xPQ.X, ctr)
    v1 = cmul(two_A, xQ.Z, ctr)
    v2 = add(v2, v1, ctr)
    v4 = mul(xP, xQ.X, ctr)
    v4 = add(v4, xQ.Z, ctr)
    v2 = mul(v2, v4, ctr)
    v1 = mul(v1, xQ.Z, ctr)
    v2 = sub(v2, v1, ctr)
    v2 = mul(v2, xPQ.Z, ctr)
    Y = sub(v2, v3, ctr)
    v1 = cmul(two_B, yP, ctr)
    v1 = mul(v1, xQ.Z, ctr)
    v1 = mul(v1, xPQ.Z, ctr)
    X = mul(v1, xQ.X, ctr)
    Z = mul(v1, xQ.Z, ctr)
    return X, Y, Z


class TwoTorsionInput(ValueError):
    pass


def scalar_mul(E: MontgomeryCurve, k: int, P: AffinePoint, ctr: OpCount | None = None) -> AffinePoint:
    """[k]P via the x-only ladder followed by y-recovery."""
    if P.is_infinity or P.y.value == 0:
        raise TwoTorsionInput("P is 2-torsion: [k]P is O or has y = 0")
    if not C.on_curve(E, P):
        raise C.NotOnCurve(f"{P} is not on the curve")
    if k < 0:
        return scalar_mul(E, -k, C.neg(E, P), ctr)
    if k == 0:
        return C.INFINITY
    xP = x_of(E, P)
    xk, xk1 = x_ladder(E, k, xP, ctr)
    if xk.Z.value == 0:
        return C.INFINITY
    if xz_equal(xk, xP):
        # [k]P = P gives x([k+1]P) = x(2P); [k]P = -P gives x(O)
        return C.neg(E, P) if xk1.Z.value == 0 else P
    X, Y, Z = recover(E, P, xk, xk1, ctr)
    zi = Z.inverse()
    return AffinePoint(X * zi, Y * zi)


def x0(E: MontgomeryCurve, x: Element, k: int, nbits: int | None = None,
       ctr: OpCount | None = None) -> Element:
    """x0([k]P) for any field element x = x0(P), on the curve or its twist.

    x0 sends O to 0.  Mode B when ``nbits`` is given, else mode A.
    """
    if nbits is None and k == 0:
        return x.modulus.zero()
    m = x.modulus
    out = uniform_ladder(E, k, XZPoint(x, m.one()), ctr, nbits)
    return mul(out.X, fpow(out.Z, m.value - 2, ctr), ctr)


# -- named curves and Diffie-Hellman -----------------------------------------

def _named(name: str, q: int, A: int, base_x: int, cofactor: int) -> CurveConfig:
    m = Modulus(q, is_prime=True)
    return CurveConfig(MontgomeryCurve(m(A), m(1)), name=name, cofactor=cofactor, base_x=m(base_x))


# base points follow deployed X25519/X448 practice
NAMED_CURVES = {
    "curve25519": _named("curve25519", 2**255 - 19, 486662, 9, 8),
    "curve448": _named("curve448", 2**448 - 2**224 - 1, 156326, 5, 4),
}


def named_curve(name: str) -> CurveConfig:
    try:
        return NAMED_CURVES[name.lower()]
    except KeyError:
        raise KeyError(f"unknown curve {name!r}; known: {', '.join(NAMED_CURVES)}") from None


def secret_scalar(nbits: int, cofactor: int, rng, mode: str = "B") -> int:
    """A uniformly drawn multiple of ``cofactor`` below 2^nbits.

    Mode A additionally forces bit nbits-1 to be set.
    """
    if mode == "B":
        return cofactor * rng.randrange((2**nbits - 1) // cofactor + 1)
    if mode == "A":
        lo = -(-(1 << (nbits - 1)) // cofactor) * cofactor
        count = ((1 << nbits) - 1 - lo) // cofactor + 1
        return lo + cofactor * rng.randrange(count)
    raise ValueError(f"unknown scalar mode {mode!r}")


def _rng(seed_or_rng):
    if hasattr(seed_or_rng, "randrange"):
        return seed_or_rng
    return random.Random(seed_or_rng)


def dh_keypair(cfg: CurveConfig, rng, mode: str = "B") -> tuple[int, Element]:
    """(secret, public) with public = x0(base, secret).

    ``rng`` is a seed or a ``random.Random``-like object; pass
    ``secrets.SystemRandom()`` for real keys.
    """
    if cfg.base_x is None or cfg.cofactor is None:
        raise ValueError("curve config needs base_x and cofactor for Diffie-Hellman")
    nbits = cfg.scalar_bits
    secret = secret_scalar(nbits, cfg.cofactor, _rng(rng), mode)
    return secret, dh_public(cfg, secret, mode)


def dh_public(cfg: CurveConfig, secret: int, mode: str = "B") -> Element:
    return x0(cfg.curve, cfg.base_x, secret, nbits=cfg.scalar_bits if mode == "B" else None)


def dh_shared(cfg: CurveConfig, secret: int, peer_public: Element, mode: str = "B") -> Element:
    return x0(cfg.curve, peer_public, secret, nbits=cfg.scalar_bits if mode == "B" else None)
