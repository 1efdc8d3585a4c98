"""Roots of small-degree polynomials over F_p for large p.

Deterministic equal-degree splitting: the rational roots of f are those of
g = gcd(x^p - x, f), and g is split by gcd((x + d)^((p-1)/2) - 1, g) for
d = 0, 1, 2, ... until every factor is linear.  Polynomials are coefficient
lists, lowest degree first.
"""

from __future__ import annotations


def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _monic(f, p):
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _divmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    qt = [0] * max(len(f) - len(g) + 1, 0)
    for i in range(len(f) - len(g), -1, -1):
        c = f[i + len(g) - 1] * inv % p
        qt[i] = c
        if c:
            for j, gj in enumerate(g):
                f[i + j] = (f[i + j] - c * gj) % p
    return _trim(qt), _trim(f[: len(g) - 1])


def _gcd(f, g, p):
    f, g = _trim(list(f)), _trim(list(g))
    while g:
        f, g = g, _divmod(f, g, p)[1]
    return _monic(f, p) if f else f


def _mulmod(a, b, m, p):
    r = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] + ai * bj) % p
    return _divmod(_trim(r), m, p)[1]


def _powmod(base, e, m, p):
    result, base = [1], _divmod(base, m, p)[1]
    while e:
        if e & 1:
            result = _mulmod(result, base, m, p)
        base = _mulmod(base, base, m, p)
        e >>= 1
    return result


def _sub(a, b, p):
    n = max(len(a), len(b))
    a, b = a + [0] * (n - len(a)), b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _split(g, p, d=0):
    if len(g) == 2:
        return [(-g[0]) % p]
    while True:
        h = _gcd(g, _sub(_powmod([d, 1], (p - 1) // 2, g, p), [1], p), p)
        d += 1
        if 1 < len(h) < len(g):
            rest = _divmod(g, h, p)[0]
            return _split(h, p, d) + _split(_monic(rest, p), p, d)


def roots_mod_p(f: list[int], p: int) -> list[int]:
    """Distinct roots of f in F_p, ascending."""
    f = _monic(_trim([c % p for c in f]), p)
    if len(f) <= 1:
        return []
    xp = _powmod([0, 1], p, f, p)
    g = _gcd(f, _sub(xp, [0, 1], p), p)
    if len(g) <= 1:
        return []
    return sorted(_split(g, p))
