import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from spinkummer.fields import GF, QQ
from spinkummer.jacobian import (
    affine_point,
    enumerate_points,
    identity,
    negate,
    random_point,
    validate_mumford,
)
from spinkummer.kummer import eval_form, kummer_quartic_g2, membership_and_lift, mumford_subspace, psi_embed
from spinkummer.polynomials import Poly
from spinkummer.quadratic_space import CurveError, HyperellipticCurve, QuadraticSpace
from spinkummer.spinor import infinity, is_pure, spin_index, spin_subset_order

F5 = GF(5)
C4 = HyperellipticCurve([0, 0, 0, 0, 0, 2, 0, 1, 3], F5)


def poly(c, F=F5):
    return Poly([F(a) for a in c], F)


def curve_over(p, g, seed=0):
    rng = random.Random(seed)
    F = GF(p)
    while True:
        try:
            return HyperellipticCurve([F.random(rng) for _ in range(2 * g + 1)], F)
        except CurveError:
            pass


def normalise(t):
    lead = next(a for a in t if a)
    return tuple(a / lead for a in t)


@pytest.mark.parametrize("g,p", [(1, 7), (2, 11), (3, 13), (4, 17), (5, 19)])
def test_mumford_subspace_is_isotropic(g, p):
    curve = curve_over(p, g)
    space = QuadraticSpace(curve)
    rng = random.Random(g)
    for _ in range(10):
        rows = mumford_subspace(space, random_point(curve, rng))
        assert len(rows) == g
        for a in rows:
            for b in rows:
                assert space.psi(a, b) == 0
                assert space.psi_power(space.from_P(a), space.from_P(b)) == 0


# --- explicit images -------------------------------------------------------------


def test_identity_maps_to_infinity():
    space = QuadraticSpace(C4)
    assert psi_embed(space, identity(C4)) == infinity(4, F5)


def test_genus_one_affine_point():
    curve = HyperellipticCurve([0, 1, 1], QQ)
    D = affine_point(curve, 0, 1)
    assert psi_embed(QuadraticSpace(curve), D) == [1, 0]


@pytest.mark.parametrize("alpha", [Fraction(0), Fraction(3), Fraction(-2, 3)])
def test_genus_one_image_is_x_coordinate(alpha):
    # y^2 = x^3 + c2 x + c3 through (alpha, 1); the line is p2 + alpha p1 - alpha^2/2 p0,
    # matching [1 : -u1] for U = x + u1 as in genus two
    c2 = Fraction(5)
    c3 = 1 - alpha**3 - c2 * alpha
    curve = HyperellipticCurve([0, c2, c3], QQ)
    D = affine_point(curve, alpha, 1)
    assert psi_embed(QuadraticSpace(curve), D) == [1, alpha]


@pytest.mark.parametrize("x0", [0, 1, 7, 10, 15])
def test_genus_two_degree_one(x0):
    F = GF(101)
    curve = HyperellipticCurve([1, 2, 3, 4, 5], F)
    D = affine_point(curve, x0, F.sqrt(curve.f(F(x0))))
    u1 = D.U.c[0]
    assert psi_embed(QuadraticSpace(curve), D) == [0, 1, -u1, u1 * u1]


def test_genus_four_example():
    D = validate_mumford(C4, poly([3, 2, 1, 4, 1]), poly([4, 2, 3, 0, 1, 1]), poly([1, 1, 1, 3]))
    s = psi_embed(QuadraticSpace(C4), D)
    assert s == [F5(a) for a in [1, 1, 1, 3, 3, 4, 2, 3, 4, 2, 0, 4, 1, 2, 1, 3]]


# --- structural properties ----------------------------------------------------------


@pytest.mark.parametrize("g,p", [(1, 11), (2, 7), (2, 13), (3, 7), (4, 5)])
@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_psi_is_even_and_normalised(g, p, seed):
    curve = curve_over(p, g)
    space = QuadraticSpace(curve)
    D = random_point(curve, random.Random(seed))
    s = psi_embed(space, D)
    assert s == psi_embed(space, negate(D))
    J = tuple(range(2 * g, 2 * g - D.m, -1))
    assert s[spin_index(g, J)] == 1
    # every coordinate indexed by a larger set vanishes
    for I, x in zip(spin_subset_order(g), s):
        if len(I) > D.m:
            assert x == 0
    assert is_pure(space, s)


def test_rational_image_is_integral_for_integral_triples():
    # y^2 = x^5 - x^4 - 13x^3 + x^2 + 12x with U = x + 2, R = 6
    curve = HyperellipticCurve([-1, -13, 1, 12, 0], QQ)
    U, R = Poly([QQ(2), QQ(1)], QQ), Poly([QQ(6)], QQ)
    V, rem = (curve.f - R * R).divmod(U)
    assert rem.is_zero()
    s = psi_embed(QuadraticSpace(curve), validate_mumford(curve, U, V, R))
    assert all(Fraction(a).denominator == 1 for a in s)


# --- membership and lifting ----------------------------------------------------------


def test_infinity_is_on_kummer_with_rank_zero():
    space = QuadraticSpace(C4)
    v = membership_and_lift(space, infinity(4, F5))
    assert v.on_kummer and v.rank == 0 and v.lifts


@pytest.mark.parametrize("g,p", [(2, 7), (2, 11), (3, 7)])
def test_images_are_members_that_lift(g, p):
    curve = curve_over(p, g)
    space = QuadraticSpace(curve)
    rng = random.Random(p)
    for _ in range(25):
        D = random_point(curve, rng)
        v = membership_and_lift(space, psi_embed(space, D))
        assert v.on_kummer and v.lifts


def test_random_vector_rejected():
    space = QuadraticSpace(curve_over(101, 3))
    F = space.field
    rng = random.Random(0)
    rejected = 0
    for _ in range(10):
        s = [F.random(rng) for _ in range(8)]
        rejected += not membership_and_lift(space, s).on_kummer
    assert rejected == 10


@pytest.mark.parametrize("g,p", [(1, 5), (1, 7), (2, 3), (2, 5)])
def test_lift_count_matches_enumeration(g, p):
    curve = curve_over(p, g)
    space = QuadraticSpace(curve)
    images = {tuple(psi_embed(space, D)) for D in enumerate_points(curve)}
    # the images of J(F_p) are exactly the normalised points that pass and lift
    F = space.field
    found = set()
    for vals in itertools.product(range(p), repeat=2**g):
        s = [F(a) for a in vals]
        if not any(s):
            continue
        lead = next(a for a in s if a)
        if lead != 1:
            continue
        v = membership_and_lift(space, s)
        if v.on_kummer and v.lifts:
            found.add(tuple(s))
    assert {normalise(t) for t in images} == found


# --- injectivity ---------------------------------------------------------------------


@pytest.mark.parametrize("g,p", [(1, 7), (2, 3), (2, 5)])
def test_psi_identifies_exactly_plus_minus(g, p):
    curve = curve_over(p, g, seed=1)
    space = QuadraticSpace(curve)
    buckets = {}
    for D in enumerate_points(curve):
        buckets.setdefault(tuple(psi_embed(space, D)), set()).add(D.key())
    for keys in buckets.values():
        assert len(keys) <= 2
    for D in enumerate_points(curve):
        assert negate(D).key() in buckets[tuple(psi_embed(space, D))]


# --- genus two quartic ---------------------------------------------------------------


def test_generic_quartic_leading_coefficients():
    Q = kummer_quartic_g2()
    c3, c4, c5 = sympy.symbols("c3 c4 c5")
    assert sympy.expand(Q[(4, 0, 0, 0)] - (c4**2 - 4 * c3 * c5)) == 0
    assert Q[(0, 0, 4, 0)] == 1
    assert all(sum(e) == 4 for e in Q)


@pytest.mark.parametrize("seed", range(3))
def test_quartic_vanishes_on_images(seed):
    curve = curve_over(101, 2, seed)
    space = QuadraticSpace(curve)
    Q = kummer_quartic_g2(curve)
    rng = random.Random(seed)
    for _ in range(50):
        s = psi_embed(space, random_point(curve, rng))
        assert eval_form(Q, s, space.field) == 0


def test_quartic_vanishes_on_rational_images():
    curve = HyperellipticCurve([-1, -13, 1, 12, 0], QQ)
    space = QuadraticSpace(curve)
    Q = kummer_quartic_g2(curve)
    for D in [affine_point(curve, 0, 0), affine_point(curve, 1, 0), affine_point(curve, -1, 0)]:
        assert eval_form(Q, psi_embed(space, D), QQ) == 0
