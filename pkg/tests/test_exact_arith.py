import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from spinkummer.fields import (
    GF,
    QQ,
    ExtensionField,
    FieldError,
    conway_polynomial,
    default_modulus,
    extension_of,
    is_prime,
    smallest_irreducible,
)
from spinkummer.linalg import det, identity, kernel, matvec, rank, row_reduce, zeros
from spinkummer.polynomials import Poly, PolyError, splitting_data
from spinkummer.roots import complex_roots


def P(coeffs, F=QQ):
    return Poly([F(c) for c in coeffs], F)


# --- fields -----------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101])
def test_prime_field_inverses(p):
    F = GF(p)
    for a in range(1, p):
        assert F(a) * (F.one / F(a)) == F.one


def test_characteristic_two_rejected():
    with pytest.raises(FieldError):
        GF(2)


def test_rationals_stored_in_lowest_terms():
    a = QQ(Fraction(6, -4))
    assert (a.numerator, a.denominator) == (-3, 2)


@pytest.mark.parametrize("p,d", [(3, 2), (5, 3), (7, 2), (5, 4)])
def test_smallest_irreducible_is_smallest(p, d):
    m = smallest_irreducible(p, d)
    assert m[-1] == 1 and len(m) == d + 1
    enc = sum(c * p**i for i, c in enumerate(m[:-1]))
    # every smaller monic candidate of degree d must be reducible
    for n in range(enc):
        cand = [(n // p**i) % p for i in range(d)] + [1]
        f = Poly([GF(p)(c) for c in cand], GF(p))
        x = Poly.x(GF(p))
        reducible = f.c[0] == 0 or any(
            f.gcd(x.powmod(p**k, f) - x).degree() > 0 for k in range(1, d // 2 + 1)
        )
        assert reducible


@pytest.mark.parametrize("p,d,expected", [
    (5, 1, (3, 1)),
    (3, 2, (2, 2, 1)),
    (5, 2, (2, 4, 1)),
    (7, 2, (3, 6, 1)),
    (5, 3, (3, 3, 0, 1)),
    (5, 4, (2, 4, 4, 0, 1)),
    (5, 9, (3, 1, 0, 2, 0, 0, 0, 0, 0, 1)),
])
def test_conway_polynomials(p, d, expected):
    assert conway_polynomial(p, d) == expected
    assert extension_of(GF(p), d).modulus == expected if d > 1 else True


@pytest.mark.parametrize("p,d", [(5, 6), (7, 3), (13, 4), (3, 6)])
def test_conway_root_is_primitive_and_compatible(p, d):
    E = ExtensionField(p, d, conway_polynomial(p, d))
    t = E.gen
    n = p**d - 1
    assert t**n == E.one
    for r in sympy.factorint(n):
        assert t ** (n // r) != E.one
    for m in sympy.divisors(d)[:-1]:
        sub = conway_polynomial(p, m)
        a = t ** (n // (p**m - 1))
        acc = E.zero
        for c in reversed(sub):
            acc = acc * a + E(c)
        assert acc == E.zero


def test_default_modulus_falls_back_past_budget():
    assert conway_polynomial(11, 6) is None
    assert default_modulus(11, 6) == smallest_irreducible(11, 6)
    assert default_modulus(5, 9) == conway_polynomial(5, 9)


field_cases = [GF(7), GF(13), extension_of(GF(5), 2), extension_of(GF(3), 3)]


@pytest.mark.parametrize("F", field_cases, ids=lambda F: f"{F.kind}{getattr(F, 'order', '')}")
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_field_axioms(F, seed):
    rng = random.Random(seed)
    a, b, c = (F.random(rng) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    if a:
        assert a * (F.one / a) == F.one


@settings(max_examples=60, deadline=None)
@given(
    a=st.fractions(max_denominator=50),
    b=st.fractions(max_denominator=50),
    c=st.fractions(max_denominator=50),
)
def test_rational_axioms(a, b, c):
    a, b, c = QQ(a), QQ(b), QQ(c)
    assert a * (b + c) == a * b + a * c
    assert a.denominator > 0


# --- polynomials --------------------------------------------------------------


def test_divmod_exact():
    q, r = P([0, 0, 0, 1]).divmod(P([0, 1]))
    assert q == P([0, 0, 1]) and r.is_zero()


def test_divmod_over_f5():
    F = GF(5)
    q, r = P([2, 0, 0, 0, 1], F).divmod(P([1, 0, 1], F))
    assert q == P([4, 0, 1], F)
    assert r == P([3], F)


def test_divmod_by_generic_monic_quadratic():
    # U = x^2 + u1 x + u2 at u1 = 1, u2 = 2; x * V with V = x^3
    U = P([2, 1, 1])
    xV = P([0, 0, 0, 0, 1])
    q, r = xV.divmod(U)
    assert q * U + r == xV and r.degree() < 2


def test_divmod_needs_monic_divisor():
    with pytest.raises(PolyError):
        P([1, 2]).divmod(P([1, 2]))


polys = st.lists(st.integers(-30, 30), min_size=1, max_size=8)


@settings(max_examples=80, deadline=None)
@given(a=polys, b=st.lists(st.integers(-30, 30), min_size=0, max_size=5))
def test_divmod_round_trip(a, b):
    A = P(a)
    B = P(b + [1])
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.degree() < B.degree()


@pytest.mark.parametrize("p", [5, 7, 11])
@settings(max_examples=30, deadline=None)
@given(a=polys, b=st.lists(st.integers(0, 100), min_size=0, max_size=5))
def test_divmod_round_trip_mod_p(p, a, b):
    F = GF(p)
    A, B = P(a, F), P(b + [1], F)
    q, r = A.divmod(B)
    assert q * B + r == A


# --- splitting data -------------------------------------------------------------


def test_degree_nine_splitting():
    F = GF(5)
    d, roots = splitting_data(P([3, 1, 0, 2, 0, 0, 0, 0, 0, 1], F))
    assert d == 9 and len(roots) == 9


def test_already_split():
    F = GF(7)
    f = Poly.from_roots([F(0), F(1), F(2)], F)
    d, roots = splitting_data(f)
    assert d == 1 and sorted(int(r) for r in roots) == [0, 1, 2]


@pytest.mark.parametrize("p,coeffs", [
    (5, [1, 1, 0, 1]),
    (7, [3, 1, 0, 0, 0, 1]),
    (11, [1, 2, 3, 0, 0, 0, 0, 1]),
    (13, [5, 0, 1, 0, 0, 1]),
])
def test_roots_vanish_and_frobenius_permutes(p, coeffs):
    F = GF(p)
    f = P(coeffs, F)
    d, roots = splitting_data(f)
    E = roots[0].field if d > 1 else F
    fE = f.change_field(E)
    assert all(not fE(r) for r in roots)
    assert len(set(roots)) == f.degree()
    assert {r**p for r in roots} == set(roots)


def test_splitting_rejects_repeated_roots():
    F = GF(7)
    with pytest.raises(PolyError, match="zero discriminant"):
        splitting_data(P([1, 2, 1], F) * P([0, 1], F))


# --- row reduction -----------------------------------------------------------------


def test_row_reduce_identity_and_zero():
    F = GF(7)
    E, T, r, _ = row_reduce(identity(4, F), F)
    assert E == identity(4, F) and r == 4
    E, T, r, _ = row_reduce(zeros(3, 5, F), F)
    assert E == zeros(3, 5, F) and r == 0


def _minor_rank(M, F):
    rows, cols = len(M), len(M[0])
    for k in range(min(rows, cols), 0, -1):
        for R in itertools.combinations(range(rows), k):
            for C in itertools.combinations(range(cols), k):
                if det([[M[i][j] for j in C] for i in R], F):
                    return k
    return 0


@pytest.mark.parametrize("seed", range(12))
def test_rank_matches_minors(seed):
    F = GF(7)
    rng = random.Random(seed)
    M = [[F(rng.randrange(7) if rng.random() < 0.7 else 0) for _ in range(5)] for _ in range(3)]
    if seed % 3 == 0:
        M[2] = [a + b for a, b in zip(M[0], M[1])]
    E, T, r, _ = row_reduce(M, F)
    assert r == _minor_rank(M, F) == rank(M, F)
    assert [matvec(T, col, F) for col in zip(*M)] == [list(c) for c in zip(*E)]
    assert det(T, F)
    for v in kernel(M, F):
        assert not any(matvec(E, v, F))


# --- complex roots ---------------------------------------------------------------------


def test_complex_roots_rational():
    rts = complex_roots(P([0, -1, 0, 1]))
    assert [round(z.real, 12) for z in rts] == [-1.0, 0.0, 1.0]


def test_complex_roots_cube_root_two():
    rts = complex_roots(P([-2, 0, 0, 1]))
    real = [z for z in rts if abs(z.imag) < 1e-30]
    assert len(real) == 1
    assert abs(real[0] - 2 ** (1 / 3)) < 1e-12
    assert abs(real[0] ** 3 - 2) < 1e-12


def test_complex_roots_vieta():
    rts = complex_roots(P([1, 1, 0, 0, 0, 1]))
    prod = 1
    for z in rts:
        prod *= complex(z)
    assert abs(prod - (-1)) < 1e-10
    assert rts == sorted(rts, key=lambda z: (z.real, z.imag))


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_extension_field_explicit_modulus():
    E = ExtensionField(3, 2, (1, 0, 1))
    i = E.gen
    assert i * i == E(-1)
