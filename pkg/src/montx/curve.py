"""Montgomery curves By^2 = x(x^2 + Ax + 1), their affine group law, and
conversions to short Weierstrass and twisted Edwards models.

Everything here is written for clarity rather than speed; the affine group
law is the reference that the x-only code in :mod:`montx.xline` and
:mod:`montx.ladder` is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .modarith import Element, Modulus, legendre, least_nonsquare, sqrt


class SingularCurve(ValueError):
    pass


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class MontgomeryCurve:
    A: Element
    B: Element
    a24: Element = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.A.modulus.value != self.B.modulus.value:
            raise ValueError("A and B must share a modulus")
        if self.B.value == 0:
            raise SingularCurve("singular: B = 0")
        if (self.A * self.A - 4).value == 0:
            raise SingularCurve("singular: A² = 4")
        object.__setattr__(self, "a24", (self.A + 2) / 4)

    @property
    def modulus(self) -> Modulus:
        return self.A.modulus

    @property
    def q(self) -> int:
        return self.A.modulus.value

    def twist(self) -> MontgomeryCurve:
        """The quadratic twist with B' = B times the least nonsquare."""
        return MontgomeryCurve(self.A, self.B * least_nonsquare(self.modulus))


def new_curve(A, B, q: int | None = None, is_prime: bool = True) -> MontgomeryCurve:
    """Build a curve from Elements, or from ints when ``q`` is given."""
    if q is not None:
        m = Modulus(q, is_prime)
        A, B = m(A), m(B)
    return MontgomeryCurve(A, B)


@dataclass(frozen=True)
class AffinePoint:
    """A point (x, y), or the point at infinity when both are None."""

    x: Element | None = None
    y: Element | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x.value}, {self.y.value})"


INFINITY = AffinePoint()


def point(E: MontgomeryCurve, x, y) -> AffinePoint:
    return AffinePoint(E.modulus(x), E.modulus(y))


def two_torsion_T(E: MontgomeryCurve) -> AffinePoint:
    z = E.modulus.zero()
    return AffinePoint(z, z)


def j_invariant(E: MontgomeryCurve) -> Element:
    A2 = E.A * E.A
    return 256 * (A2 - 3) ** 3 / (A2 - 4)


def on_curve(E: MontgomeryCurve, P: AffinePoint) -> bool:
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    return E.B * y * y == x * (x * x + E.A * x + 1)


def _require_on(E, *points):
    for P in points:
        if not on_curve(E, P):
            raise NotOnCurve(f"{P} is not on {E}")


def neg(E: MontgomeryCurve, P: AffinePoint) -> AffinePoint:
    _require_on(E, P)
    if P.is_infinity:
        return P
    return AffinePoint(P.x, -P.y)


def _add(E: MontgomeryCurve, P: AffinePoint, Q: AffinePoint) -> AffinePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y.value == 0:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * E.A * P.x + 1) / (2 * E.B * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x = E.B * lam * lam - (P.x + Q.x) - E.A
    y = lam * (P.x - x) - P.y
    return AffinePoint(x, y)


def add(E: MontgomeryCurve, P: AffinePoint, Q: AffinePoint) -> AffinePoint:
    """Chord-and-tangent addition, covering every degenerate case."""
    _require_on(E, P, Q)
    return _add(E, P, Q)


def scalar_mul_naive(E: MontgomeryCurve, k: int, P: AffinePoint) -> AffinePoint:
    """[k]P by left-to-right double-and-add on the affine group law."""
    _require_on(E, P)
    if k < 0:
        k, P = -k, AffinePoint(P.x, -P.y) if not P.is_infinity else P
    R = INFINITY
    for i in range(k.bit_length() - 1, -1, -1):
        R = _add(E, R, R)
        if (k >> i) & 1:
            R = _add(E, R, P)
    return R


def point_order(E: MontgomeryCurve, P: AffinePoint, bound: int | None = None) -> int:
    """Order of P by iterated addition (small groups only)."""
    _require_on(E, P)
    n, R = 1, P
    while not R.is_infinity:
        R = _add(E, R, P)
        n += 1
        if bound is not None and n > bound:
            raise ValueError("order exceeds bound")
    return n


# -- torsion -----------------------------------------------------------------

Z4xZ2 = "Z/4xZ/2"
Z4 = "Z/4"
Z2xZ2 = "Z/2xZ/2"


@dataclass(frozen=True)
class TorsionReport:
    b_square: bool
    a_plus_2_square: bool   # B(A+2) is a square
    a_minus_2_square: bool  # B(A-2) is a square
    full_two_torsion: bool  # A^2 - 4 is a square
    curve: str
    twist: str


def _structure(plus: bool, minus: bool) -> str:
    if plus and minus:
        return Z4xZ2
    if plus or minus:
        return Z4
    return Z2xZ2


def classify_torsion(E: MontgomeryCurve) -> TorsionReport:
    """Rational 4-torsion guaranteed on E and its twist by the square classes
    of B(A+2), B(A-2) and A^2-4."""
    plus = legendre(E.B * (E.A + 2)) == 1
    minus = legendre(E.B * (E.A - 2)) == 1
    full = legendre(E.A * E.A - 4) == 1
    if not (plus or minus or full):
        raise AssertionError("B(A+2), B(A-2) and A^2-4 cannot all be nonsquares")
    return TorsionReport(
        b_square=legendre(E.B) == 1,
        a_plus_2_square=plus,
        a_minus_2_square=minus,
        full_two_torsion=full,
        curve=_structure(plus, minus),
        twist=_structure(not plus, not minus),
    )


def group_order_naive(E: MontgomeryCurve) -> int:
    """#E(F_q) via the character sum 1 + sum_x (1 + chi(B f(x)))."""
    q = E.q
    if not E.modulus.is_prime:
        raise ValueError("group_order_naive needs a prime modulus")
    if q > 1 << 20:
        raise ValueError("modulus too large for enumeration")
    A, B = E.A.value, E.B.value
    n = 1
    for x in range(q):
        f = B * x * (x * x + A * x + 1) % q
        n += 1 + (0 if f == 0 else (1 if pow(f, (q - 1) // 2, q) == 1 else -1))
    return n


# -- Suyama ------------------------------------------------------------------

class InvalidSeed(ValueError):
    pass


def suyama(a: Element, b: Element) -> tuple[MontgomeryCurve, AffinePoint]:
    """Curve on which (a, b) has order 3."""
    if (a * b * (a * a - 1) * (9 * a * a - 1)).value == 0:
        raise InvalidSeed("need ab(a^2-1)(9a^2-1) != 0")
    a2 = a * a
    A = -(3 * a2 * a2 + 6 * a2 - 1) / (4 * a2 * a)
    B = (a2 - 1) ** 2 / (4 * a * b * b)
    return MontgomeryCurve(A, B), AffinePoint(a, b)


# -- Weierstrass -------------------------------------------------------------

@dataclass(frozen=True)
class GeneralWeierstrassCurve:
    """y^2 = x^3 + f2 x^2 + f1 x + f0."""

    f2: Element
    f1: Element
    f0: Element

    @property
    def modulus(self) -> Modulus:
        return self.f0.modulus

    def discriminant(self) -> Element:
        a, b, c = self.f2, self.f1, self.f0
        return a * a * b * b - 4 * b ** 3 - 4 * a ** 3 * c - 27 * c * c + 18 * a * b * c


def weierstrass_on_curve(W: GeneralWeierstrassCurve, P: AffinePoint) -> bool:
    if P.is_infinity:
        return True
    x = P.x
    return P.y * P.y == x * x * x + W.f2 * x * x + W.f1 * x + W.f0


def weierstrass_add(W: GeneralWeierstrassCurve, P: AffinePoint, Q: AffinePoint) -> AffinePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y.value == 0:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * W.f2 * P.x + W.f1) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x = lam * lam - W.f2 - P.x - Q.x
    return AffinePoint(x, lam * (P.x - x) - P.y)


@dataclass(frozen=True)
class WeierstrassMap:
    curve: GeneralWeierstrassCurve
    forward: Callable[[AffinePoint], AffinePoint]
    backward: Callable[[AffinePoint], AffinePoint]


def to_weierstrass(E: MontgomeryCurve) -> WeierstrassMap:
    """(x, y) -> (B(x + A/3), B^2 y) onto v^2 = u^3 + a u + b."""
    if E.q % 3 == 0:
        raise ValueError("characteristic 3 has no short Weierstrass model")
    A, B = E.A, E.B
    a = B * B * (1 - A * A / 3)
    b = B ** 3 * A / 3 * (2 * A * A / 9 - 1)
    W = GeneralWeierstrassCurve(E.modulus.zero(), a, b)

    def forward(P):
        if P.is_infinity:
            return P
        return AffinePoint(B * (P.x + A / 3), B * B * P.y)

    def backward(P):
        if P.is_infinity:
            return P
        return AffinePoint(P.x / B - A / 3, P.y / (B * B))

    return WeierstrassMap(W, forward, backward)


def cubic_roots(a: Element, b: Element) -> list[Element]:
    """Roots of x^3 + a x + b in F_q, ascending by residue."""
    m = a.modulus
    q = m.value
    if q <= 1 << 20:
        A, B = a.value, b.value
        return [m(x) for x in range(q) if (x * x * x + A * x + B) % q == 0]
    from .polyroots import roots_mod_p
    return [m(r) for r in roots_mod_p([b.value, a.value, 0, 1], q)]


def from_weierstrass(W: GeneralWeierstrassCurve) -> MontgomeryCurve | None:
    """Montgomery model of a short model, via the first admissible root alpha."""
    if W.f2.value != 0:
        raise ValueError("expected a short Weierstrass model (f2 = 0)")
    if W.modulus.value % 3 == 0:
        raise ValueError("characteristic 3")
    for alpha in cubic_roots(W.f1, W.f0):
        beta = sqrt(3 * alpha * alpha + W.f1)
        if beta is None or beta.value == 0:
            continue
        return MontgomeryCurve(3 * alpha / beta, 1 / beta)
    return None


# -- twisted Edwards ---------------------------------------------------------

@dataclass(frozen=True)
class EdwardsCurve:
    """a u^2 + v^2 = 1 + d u^2 v^2."""

    a: Element
    d: Element

    def contains(self, u: Element, v: Element) -> bool:
        return self.a * u * u + v * v == 1 + self.d * u * u * v * v


def to_edwards(E: MontgomeryCurve) -> EdwardsCurve:
    return EdwardsCurve((E.A + 2) / E.B, (E.A - 2) / E.B)


def edwards_point_map(E: MontgomeryCurve, P: AffinePoint) -> tuple[Element, Element] | None:
    """(x, y) -> (x/y, (x-1)/(x+1)); O and T go to (0, 1) and (0, -1).

    Returns None for the remaining exceptional points (y = 0 or x = -1),
    whose images lie at infinity on the affine Edwards model.
    """
    m = E.modulus
    if P.is_infinity:
        return m.zero(), m.one()
    if P.x.value == 0 and P.y.value == 0:
        return m.zero(), -m.one()
    if P.y.value == 0 or (P.x + 1).value == 0:
        return None
    return P.x / P.y, (P.x - 1) / (P.x + 1)


def edwards_point_unmap(E: MontgomeryCurve, u: Element, v: Element) -> AffinePoint | None:
    """(u, v) -> ((1+v)/(1-v), (1+v)/((1-v)u)); (0, 1) -> O and (0, -1) -> T."""
    if u.value == 0:
        if v == 1:
            return INFINITY
        if v == -1:
            return two_torsion_T(E)
        return None
    if v == 1:
        return None
    x = (1 + v) / (1 - v)
    return AffinePoint(x, x / u)


# -- configuration files -----------------------------------------------------

@dataclass(frozen=True)
class CurveConfig:
    curve: MontgomeryCurve
    name: str | None = None
    cofactor: int | None = None
    r: int | None = None
    base_x: Element | None = None

    @property
    def scalar_bits(self) -> int:
        return self.curve.q.bit_length()


CONFIG_KEYS = {"q", "A", "B", "name", "cofactor", "r", "base_x"}


def _parse_int(text: str) -> int:
    text = text.strip()
    neg = text.startswith("-")
    if neg:
        text = text[1:]
    v = int(text, 16) if text.lower().startswith("0x") else int(text, 10)
    return -v if neg else v


def parse_curve_config(text: str) -> CurveConfig:
    """Parse ``key = value`` lines (``#`` comments allowed).

    Required keys: q, A, B.  Optional: name, cofactor, r, base_x.
    Numbers may be decimal or 0x-hex.
    """
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value
    missing = {"q", "A", "B"} - fields.keys()
    if missing:
        raise ValueError(f"missing keys: {', '.join(sorted(missing))}")
    m = Modulus(_parse_int(fields["q"]), is_prime=True)
    E = MontgomeryCurve(m(_parse_int(fields["A"])), m(_parse_int(fields["B"])))
    return CurveConfig(
        curve=E,
        name=fields.get("name"),
        cofactor=_parse_int(fields["cofactor"]) if "cofactor" in fields else None,
        r=_parse_int(fields["r"]) if "r" in fields else None,
        base_x=m(_parse_int(fields["base_x"])) if "base_x" in fields else None,
    )
