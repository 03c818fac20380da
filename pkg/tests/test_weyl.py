from fractions import Fraction

import pytest

from gaudual.errors import ResidualPole
from gaudual.multipoly import MultiPoly
from gaudual.ratfunc import RatFunc
from gaudual.weyl import (
    OrderedDiffOp,
    WeylElement,
    from_multipoly,
    ordered_op_mul,
    to_polynomial,
    weyl_commutator,
    weyl_mul,
    weyl_to_ordered,
)
from helpers import rng, random_weyl

Q = Fraction
X = WeylElement.x
D = WeylElement.d


def test_d_times_x():
    assert D(1, 1) * X(1, 1) == X(1, 1) * D(1, 1) + 1


def test_x_times_d_already_ordered():
    prod = X(1, 1) * D(1, 1)
    assert prod.terms == {(("1_1", 1, 1),): Q(1)}


def test_d2_x2_reordering():
    # iterate d x = x d + 1 by hand: d^2 x^2 = x^2 d^2 + 4 x d + 2
    lhs = D(1, 1, 2) * X(1, 1, 2)
    expected = X(1, 1, 2) * D(1, 1, 2) + 4 * (X(1, 1) * D(1, 1)) + 2
    assert lhs == expected


def test_commutator_examples():
    assert weyl_commutator(D(1, 1), X(1, 1)) == WeylElement.const(1)
    assert weyl_commutator(X(1, 1), X(2, 1)) == 0
    assert weyl_commutator(X(1, 1) * D(1, 1), X(1, 1)) == X(1, 1)


def test_cross_pair_generators_commute():
    for a, b in [(X(1, 1), X(1, 2)), (D(1, 1), D(2, 1)), (X(1, 1), D(1, 2)),
                 (X(1, 1), WeylElement.z()), (D(1, 1), WeylElement.dz())]:
        assert weyl_commutator(a, b) == 0
    assert weyl_commutator(WeylElement.dz(), WeylElement.z()) == 1


def test_associativity_random():
    r = rng(31)
    pairs = [(1, 1), (1, 2), (2, 1), (2, 2)]
    for _ in range(100):
        a = random_weyl(r, pairs)
        b = random_weyl(r, pairs)
        c = random_weyl(r, pairs)
        assert (a * b) * c == a * (b * c)


def test_jacobi_random():
    r = rng(32)
    pairs = [(1, 1), (1, 2)]
    for _ in range(50):
        a = random_weyl(r, pairs, max_deg=2)
        b = random_weyl(r, pairs, max_deg=2)
        c = random_weyl(r, pairs, max_deg=2)
        jac = (
            weyl_commutator(a, weyl_commutator(b, c))
            + weyl_commutator(b, weyl_commutator(c, a))
            + weyl_commutator(c, weyl_commutator(a, b))
        )
        assert jac == 0


def test_commuting_subfamilies_match_multipoly():
    r = rng(33)
    for _ in range(20):
        # all-x polynomials multiply exactly like commutative polynomials
        p = MultiPoly.var("x1_1") ** r.randint(0, 3) * MultiPoly.var("x2_2")
        q = MultiPoly.var("x1_1") + 3 * MultiPoly.var("x2_2") ** 2
        assert from_multipoly(p * q) == from_multipoly(p) * from_multipoly(q)
        # same for the all-derivative family
        u = MultiPoly.var("p1_1") * MultiPoly.var("p2_1") ** 2
        v = MultiPoly.var("p2_1") + 1
        assert from_multipoly(u * v) == from_multipoly(u) * from_multipoly(v)


def test_classical_limit_drops_ordering():
    w = D(1, 1) * X(1, 1)  # = x d + 1
    assert w.classical_limit() == (
        MultiPoly.var("x1_1") * MultiPoly.var("p1_1") + 1
    )


def _op_z(terms):
    return OrderedDiffOp("z", terms)


def test_ordered_mul_leibniz_simple_pole():
    # Dz * 1/(z - z1) = 1/(z - z1) Dz - 1/(z - z1)^2, with z1 = 4
    dz = _op_z({1: RatFunc.const("z", Q(1))})
    f = OrderedDiffOp.from_ratfunc("z", RatFunc.pole("z", Q(4), 1))
    prod = ordered_op_mul(dz, f)
    expected = OrderedDiffOp(
        "z",
        {1: RatFunc.pole("z", Q(4), 1), 0: RatFunc.pole("z", Q(4), 2, Q(-1))},
    )
    assert prod == expected


def test_ordered_mul_z_times_z():
    zop = OrderedDiffOp.from_ratfunc("z", RatFunc.variable("z"))
    assert ordered_op_mul(zop, zop) == OrderedDiffOp.from_ratfunc(
        "z", RatFunc("z", {2: Q(1)})
    )


def test_ordered_mul_single_commutation():
    # (Dz - lam1)(z - z1) = (z - z1) Dz - lam1 (z - z1) + 1 in z-left form
    lam1, z1 = Q(5), Q(2)
    a = OrderedDiffOp("z", {1: RatFunc.const("z", Q(1)), 0: RatFunc.const("z", -lam1)})
    b = OrderedDiffOp.from_ratfunc("z", RatFunc.linear("z", z1))
    prod = a * b
    expected = OrderedDiffOp(
        "z",
        {
            1: RatFunc.linear("z", z1),
            0: RatFunc.linear("z", z1) * (-lam1) + RatFunc.const("z", Q(1)),
        },
    )
    assert prod == expected


def test_to_polynomial_cancellation():
    # ((z-1) x)/(z-1) -> x
    num = {1: X(1, 1), 0: X(1, 1) * Q(-1)}
    op = OrderedDiffOp.from_ratfunc("z", RatFunc("z", num, {Q(1): 1}))
    assert to_polynomial(op) == X(1, 1)


def test_to_polynomial_residual_pole():
    op = OrderedDiffOp.from_ratfunc("z", RatFunc.pole("z", Q(1), 1))
    with pytest.raises(ResidualPole) as err:
        to_polynomial(op)
    assert err.value.point == Q(1)
    assert err.value.order == 1


def test_round_trip_z_dz_z():
    r = rng(34)
    for _ in range(20):
        w = random_weyl(r, [(1, 1), (2, 1)], max_deg=2)
        w = (
            w * WeylElement.z(r.randint(0, 2)) * WeylElement.dz(r.randint(0, 2))
            + random_weyl(r, [(1, 1)], max_deg=1)
        )
        a = weyl_to_ordered(w, "z", "z")
        b = weyl_to_ordered(a.to_polynomial(), "dz", "dz")
        c = weyl_to_ordered(b.to_polynomial(), "z", "z")
        assert c.to_polynomial() == w
        assert a.to_polynomial() == w


def test_dz_side_product_matches_weyl():
    # multiply (Dz)(z) on the dz side: z g(Dz) ordering exercised
    dz = OrderedDiffOp.from_ratfunc("dz", RatFunc.variable("dz"))
    zop = OrderedDiffOp("dz", {1: RatFunc.const("dz", Q(1))})
    prod = ordered_op_mul(dz, zop)  # Dz * z stays ordered on this side
    assert prod.to_polynomial() == WeylElement.z() * WeylElement.dz() + 1
    prod2 = ordered_op_mul(zop, dz)  # z * Dz = Dz z - 1 reorders
    assert prod2.to_polynomial() == WeylElement.z() * WeylElement.dz()
