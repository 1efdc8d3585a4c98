import math
import random

import pytest

from montx.chains import prac
from montx.curve import MontgomeryCurve, group_order_naive, scalar_mul_naive
from montx.ecm import (
    EcmConfig, EcmInputError, FactorFound, iroot, lcm_exponent_schedule, perfect_power,
    stage1, suyama_start,
)
from montx.modarith import Modulus, OpCount
from montx.oracle import lift_x
from montx.xline import XZPoint, xadd, xdbl

# (N, p, q): odd semiprimes of 30-33 bits.  Each was kept because the
# order oracle finds, among the first 20 curves stage1 draws with seed 0,
# one whose group order modulo p or q is 1000-powersmooth.
SEMIPRIMES = [
    (1569274093, 24859, 63127),
    (5021109761, 46141, 108821),
    (4280380121, 75323, 56827),
    (3617117171, 28571, 126601),
    (2721959959, 49991, 54449),
    (8490604393, 119851, 70843),
    (1001451337, 24967, 40111),
    (5255114651, 54469, 96479),
    (5935381813, 130199, 45587),
    (2614687883, 28219, 92657),
]


def is_powersmooth(n, bound):
    """Every prime power exactly dividing n is at most ``bound``."""
    d = 2
    while d * d <= n:
        if n % d == 0:
            pe = 1
            while n % d == 0:
                n //= d
                pe *= d
            if pe > bound:
                return False
        d += 1
    return n <= bound


def reduce_curve(E, p):
    m = Modulus(p, is_prime=True)
    return MontgomeryCurve(m(E.A.value), m(E.B.value))


def start_group_order(sigma, N, p):
    """Order of the group (curve or twist, over F_p) holding the start point."""
    E, x = suyama_start(sigma, N)
    Ep = reduce_curve(E, p)
    xp = Ep.modulus((x.X / x.Z).value)
    _, _, host = lift_x(Ep, xp)
    return group_order_naive(host)


# -- input validation ----------------------------------------------------------------

@pytest.mark.parametrize("N,msg", [
    (97, "N is prime"), (49, "perfect power"), (100, "even"), (9, "at least 15"), (3**7, "perfect power"),
])
def test_config_rejects(N, msg):
    with pytest.raises(EcmInputError, match=msg):
        EcmConfig(N, 1000)


def test_config_rejects_bad_bounds():
    with pytest.raises(EcmInputError):
        EcmConfig(91, 1)
    with pytest.raises(EcmInputError):
        EcmConfig(91, 100, max_curves=0)


def test_iroot_and_perfect_power():
    for n in range(2, 3000):
        for k in (2, 3, 5):
            r = iroot(n, k)
            assert r ** k <= n < (r + 1) ** k
    assert perfect_power(3**7) == (3, 7)
    assert perfect_power(1009**2) == (1009, 2)
    assert perfect_power(91) is None


# -- schedule ----------------------------------------------------------------------

def test_schedule_examples():
    assert lcm_exponent_schedule(10) == [8, 9, 5, 7]
    assert lcm_exponent_schedule(2) == [2]
    for B1 in range(2, 101):
        assert math.prod(lcm_exponent_schedule(B1)) == math.lcm(*range(1, B1 + 1))
    with pytest.raises(ValueError):
        lcm_exponent_schedule(1)


# -- starting curve -----------------------------------------------------------------

@pytest.mark.parametrize("p", [101, 1009, 10007])
def test_start_point_shares_twist_with_order_3_point(p):
    rng = random.Random(p)
    done = 0
    while done < 30:
        sigma = rng.randrange(6, p - 1)
        try:
            E, x = suyama_start(sigma, p)
        except (FactorFound, ValueError):
            continue
        Ep = reduce_curve(E, p)
        m = Ep.modulus
        a = m((m(sigma) ** 2 - 5) / (4 * m(sigma)))
        Pa, which_a, host_a = lift_x(Ep, a)
        Px, which_x, host_x = lift_x(Ep, m((x.X / x.Z).value))
        assert which_a == which_x
        # the host group has a point of order 3 and 4 | order, so 12 | order
        assert scalar_mul_naive(host_a, 3, Pa).is_infinity
        assert group_order_naive(host_x) % 12 == 0
        done += 1


def test_suyama_start_finds_factor_in_setup():
    # sigma = 7 makes 4 sigma share the factor 7 with N = 7 * 13
    with pytest.raises(FactorFound) as exc:
        suyama_start(7, 91)
    assert exc.value.divisor == 7


# -- CRT consistency ---------------------------------------------------------------

def reduce_xz(pt, p):
    m = Modulus(p, is_prime=True)
    return XZPoint(m(pt.X.value), m(pt.Z.value))


@pytest.mark.parametrize("p,p2", [(29, 31), (23, 31), (19, 29), (17, 23)])
def test_crt_consistency_pseudo_ops(p, p2):
    N = p * p2
    mN = Modulus(N)
    rng = random.Random(N)
    E = None
    while E is None:
        try:
            E, _ = suyama_start(rng.randrange(6, N - 1), N)
        except (FactorFound, ValueError):
            pass
    for r in (p, p2):
        Er = reduce_curve(E, r)
        for _ in range(2000):
            P, Q, D = (XZPoint(mN(rng.randrange(N)), mN(rng.randrange(N))) for _ in range(3))
            assert reduce_xz(xadd(P, Q, D), r) == xadd(reduce_xz(P, r), reduce_xz(Q, r), reduce_xz(D, r))
            assert reduce_xz(xdbl(P, E), r) == xdbl(reduce_xz(P, r), Er)


@pytest.mark.parametrize("p,p2", [(29, 31), (13, 31)])
def test_crt_consistency_every_step_of_stage1_chain(p, p2, monkeypatch):
    """Record every xADD/xDBL that a stage-1 chain performs over Z/NZ, then
    replay each one natively over F_p on the reduced inputs."""
    import montx.chains as chains_mod
    import montx.ladder as ladder_mod
    import montx.xline as xline_mod

    N = p * p2
    rng = random.Random(p2)
    E = x = None
    while E is None:
        try:
            E, x = suyama_start(rng.randrange(6, N - 1), N)
        except (FactorFound, ValueError):
            pass
    log = []
    real_xadd, real_xdbl = xline_mod.xadd, xline_mod.xdbl

    def spy_xadd(a, b, d, ctr=None):
        out = real_xadd(a, b, d, ctr)
        log.append(("xadd", (a, b, d), out))
        return out

    def spy_xdbl(a, EE, ctr=None):
        out = real_xdbl(a, EE, ctr)
        log.append(("xdbl", (a,), out))
        return out

    for mod in (xline_mod, chains_mod, ladder_mod):
        monkeypatch.setattr(mod, "xdbl", spy_xdbl)
    monkeypatch.setattr(xline_mod, "xadd", spy_xadd)
    monkeypatch.setattr(ladder_mod, "xadd", spy_xadd)

    for pe in lcm_exponent_schedule(30):
        x = prac(E, pe, x)
    assert len(log) > 50
    for r in (p, p2):
        Er = reduce_curve(E, r)
        for kind, args, out in log:
            red = [reduce_xz(a, r) for a in args]
            native = real_xadd(*red) if kind == "xadd" else real_xdbl(red[0], Er)
            assert reduce_xz(out, r) == native


# -- stage 1 -----------------------------------------------------------------------

def test_small_run():
    res = stage1(EcmConfig(91, 20))
    assert res.factor in (7, 13)
    assert res.seed_of_success is not None


def test_deterministic():
    cfg = EcmConfig(1001451337, 1000, seed=4)
    assert stage1(cfg) == stage1(cfg)


def test_factor_divides():
    for N, p, q in SEMIPRIMES[:4]:
        res = stage1(EcmConfig(N, 1000, 20, 0))
        assert res.factor in (p, q)
        assert N % res.factor == 0 and 1 < res.factor < N


def test_semiprime_selection_via_order_oracle():
    for N, p, q in SEMIPRIMES:
        assert p * q == N and 30 <= N.bit_length() <= 34
        rng = random.Random(0)
        found = False
        for _ in range(20):
            sigma = rng.randrange(6, N - 1)
            if any(is_powersmooth(start_group_order(sigma, N, r), 1000) for r in (p, q)):
                found = True
                break
        assert found, N


def test_exhaustion_reports_none():
    # p, q both large relative to B1 = 2 so no curve can succeed
    res = stage1(EcmConfig(1001451337, 2, max_curves=3))
    assert res.factor is None and res.curves_tried == 3


def test_stage1_counts_ops():
    ctr = OpCount()
    stage1(EcmConfig(SEMIPRIMES[6][0], 1000), ctr)
    assert ctr.calls["xdbl"] > 0
