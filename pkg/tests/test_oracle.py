import random

from conftest import points_of, small_curve, sweep
from montx.curve import (
    INFINITY, MontgomeryCurve, classify_torsion, group_order_naive, on_curve, point_order, two_torsion_T,
)
from montx.modarith import Modulus, is_square, least_nonsquare
from montx.oracle import (
    BOTH, CURVE, STRUCTURE_FACTORS, TWIST, embeds, enumerate_points, group_invariants, lift_x,
    subgroup_structure,
)


def test_enumerate_f13(f13):
    pts = enumerate_points(f13)
    assert len(pts) == 8 == group_order_naive(f13)
    assert pts[0] == INFINITY
    assert two_torsion_T(f13) in pts
    assert all(on_curve(f13, P) for P in pts)


def test_enumerate_matches_naive_order():
    for (q, A, B) in sweep([5, 11, 19, 29]):
        E = small_curve(q, A, B)
        pts = enumerate_points(E)
        assert len(pts) == group_order_naive(E)
        assert len(set(pts)) == len(pts)
        assert all(on_curve(E, P) for P in pts)


def test_group_invariants_consistent_with_point_orders():
    for (q, A, B) in sweep([13, 23]):
        E = small_curve(q, A, B)
        pts = points_of(q, A, B)
        n1, n2 = group_invariants(E, pts)
        assert n1 * n2 == len(pts) and n2 % n1 == 0
        # exponent of the group is n2
        assert max(point_order(E, P) for P in pts) == n2


def test_subgroup_structure_always_has_two_torsion():
    for (q, A, B) in sweep([7, 17, 31]):
        E = small_curve(q, A, B)
        s = subgroup_structure(list(points_of(q, A, B)), E)
        assert s and all(f in (2, 4) for f in s)


def test_embeds():
    assert embeds([4], [2, 4])
    assert embeds([2, 2], [2, 4])
    assert embeds([2, 4], [4, 4])
    assert not embeds([2, 2], [4])
    assert not embeds([4], [2, 2])
    assert not embeds([2, 4], [2, 2])


def test_prediction_contained_in_enumeration_everywhere():
    for (q, A, B) in sweep():
        E = small_curve(q, A, B)
        rep = classify_torsion(E)
        assert embeds(STRUCTURE_FACTORS[rep.curve], subgroup_structure(list(points_of(q, A, B)), E))
        T = E.twist()
        assert embeds(STRUCTURE_FACTORS[rep.twist], subgroup_structure(enumerate_points(T), T))


def test_lift_x_zero_is_both(f13):
    P, which, host = lift_x(f13, f13.modulus(0))
    assert which == BOTH and host is f13 and P == two_torsion_T(f13)


def test_lift_x_counts_over_f31():
    m = Modulus(31, is_prime=True)
    for A in range(31):
        if (A * A - 4) % 31 == 0:
            continue
        E = MontgomeryCurve(m(A), m(1))
        tally = {CURVE: 0, TWIST: 0, BOTH: 0}
        for xv in range(31):
            P, which, host = lift_x(E, m(xv))
            assert on_curve(host, P)
            tally[which] += 1
        # each curve-only x gives two points, each twist-only x two twist points,
        # each y = 0 x one point on both; plus two points at infinity
        n_curve = 1 + 2 * tally[CURVE] + tally[BOTH]
        n_twist = 1 + 2 * tally[TWIST] + tally[BOTH]
        assert n_curve == group_order_naive(E)
        assert n_curve + n_twist == 2 * 31 + 2


def test_lift_x_one_gives_order_four():
    rng = random.Random(4)
    for q in (13, 29, 31, 101):
        m = Modulus(q, is_prime=True)
        for _ in range(10):
            A = rng.randrange(q)
            if (A * A - 4) % q == 0:
                continue
            for B in (m(1), least_nonsquare(m)):
                E = MontgomeryCurve(m(A), B)
                P, which, host = lift_x(E, m(1))
                assert point_order(host, P) == 4
                assert which == (CURVE if is_square((E.A + 2) / E.B) else TWIST)
