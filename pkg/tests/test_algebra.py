from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as hs

from folres.algebra import (
    ONE,
    Poly1,
    Poly2,
    X,
    Y,
    divides,
    exact_quotient,
    format_poly,
    format_rat,
    gcd2,
    is_rational_square,
    rational_roots,
    substitute,
)

from conftest import from_sympy, sx, sy, to_sympy

F = Fraction

small_rat = hs.builds(F, hs.integers(-5, 5), hs.integers(1, 4))
poly2s = hs.dictionaries(hs.tuples(hs.integers(0, 3), hs.integers(0, 3)), small_rat, max_size=5).map(Poly2)


def test_ring_basics():
    p = (X + Y) ** 2
    assert p == X**2 + 2 * X * Y + Y**2
    assert p.order() == 2 and p.degree() == 2
    assert (p - p).is_zero()
    assert (X * Y**2).div_monomial(1, 1) == Y


def test_canonical_printing():
    assert format_rat(F(-4, 6)) == "-2/3"
    assert format_rat(F(3)) == "3"
    assert str(F(2, 3) * X**2 - Y) == "2/3*x^2 - y"
    assert "+ -" not in str(X - 3 * Y + F(-1, 2))
    assert format_poly(X + Y, ("t", "s")) == "t + s"


def test_substitute_examples():
    # p(x, y) = y^2 - x^3 at (x, y) = (u, u v)
    p = Y**2 - X**3
    assert substitute(p, X, X * Y) == X**2 * Y**2 - X**3
    assert substitute(X * Y, ONE * 2, Y) == 2 * Y


def test_gcd_and_divides():
    f = (X - Y) * (X + 2 * Y**2)
    g = (X - Y) * (Y + 1)
    assert gcd2(f, g) == X - Y
    assert gcd2(X**2, X * Y) == X
    assert gcd2(X + 1, Y).is_constant()
    assert divides(X - Y, f)
    assert not divides(X + Y, f)
    assert exact_quotient(f, X - Y) == X + 2 * Y**2
    assert exact_quotient(f, X + Y) is None


def test_gcd_sign_and_content():
    g = gcd2(-6 * X * (X + Y), 4 * X * Y)
    assert g == X


def test_rational_roots():
    q = Poly1.from_roots([(F(1, 2), 2), (F(-3), 1)]) * Poly1([-2, 0, 1])
    roots, residual = rational_roots(q)
    assert sorted(roots) == [(F(-3), 1), (F(1, 2), 2)]
    assert residual.monic() == Poly1([-2, 0, 1])


def test_rational_square():
    assert is_rational_square(F(9, 4)) == F(3, 2)
    assert is_rational_square(F(2)) is None
    assert is_rational_square(F(-1)) is None
    assert is_rational_square(F(0)) == 0


def test_poly1_calculus():
    q = Poly1([1, -2, 3])
    assert q.derivative() == Poly1([-2, 6])
    assert q.integral().derivative() == q
    assert q.integral()(0) == 0
    assert q.shift(1)(0) == q(1)


@settings(max_examples=60, deadline=None)
@given(poly2s, poly2s)
def test_mul_matches_sympy(p, q):
    assert from_sympy(to_sympy(p) * to_sympy(q)) == p * q


@settings(max_examples=60, deadline=None)
@given(poly2s, poly2s, poly2s)
def test_substitute_matches_sympy(p, a, b):
    expected = to_sympy(p).subs({sx: to_sympy(a), sy: to_sympy(b)}, simultaneous=True)
    assert substitute(p, a, b) == from_sympy(expected)


@settings(max_examples=40, deadline=None)
@given(poly2s, poly2s, poly2s)
def test_gcd_matches_sympy(a, b, c):
    f, g = a * c, b * c
    if f.is_zero() or g.is_zero():
        return
    mine = gcd2(f, g)
    theirs = from_sympy(sympy.gcd(to_sympy(f), to_sympy(g)))
    # equal up to a nonzero constant
    assert exact_quotient(mine, theirs) is not None and exact_quotient(theirs, mine) is not None
    assert divides(mine, f) and divides(mine, g)


@settings(max_examples=60, deadline=None)
@given(poly2s, poly2s)
def test_exact_quotient_roundtrip(p, q):
    if q.is_zero():
        return
    assert exact_quotient(p * q, q) == p


@settings(max_examples=40, deadline=None)
@given(hs.lists(hs.tuples(small_rat, hs.integers(1, 3)), max_size=3, unique_by=lambda r: r[0]))
def test_rational_roots_recover(rs):
    q = Poly1.from_roots(rs) * Poly1([1, 0, 1])
    roots, residual = rational_roots(q)
    assert sorted(roots) == sorted(rs)
    assert residual.degree == 2
