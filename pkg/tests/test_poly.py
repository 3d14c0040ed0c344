import random
from fractions import Fraction

import pytest

from dydy import DomainError, Poly, Rational2, build_gn, compose, family, gauss_valuations, taylor_shift
from oracles import f_exact, random_dyadic_rational, v2


def P(*cs):
    return Poly(Rational2(c) if isinstance(c, str) else c for c in cs)


def test_trailing_zeros_stripped():
    assert P(1, 2, 0, 0).coeffs == P(1, 2).coeffs
    assert Poly([0, 0]).is_zero()
    assert Poly().degree == float("-inf")


@pytest.mark.parametrize("z, want", [("1", "-1/2"), ("3/2", "1"), ("0", "1"), ("-1/2", "-1/2")])
def test_f1_values(z, want):
    f = family(1)
    assert f.poly(Rational2(z)) == Rational2(want)
    assert f(Rational2(z)) == Rational2(want)


def test_family_coefficients_and_critical_points():
    for t in ("1", "33", "-7/3", "2/5"):
        f = family(Rational2(t))
        t_ = Rational2(t)
        assert f.poly.coeffs == P(1, 0, -Rational2(9, 2) * t_, 3 * t_).coeffs
        d = f.poly.derivative()
        assert d(0) == 0 and d(1) == 0
        z = Rational2("5/6")
        assert f(z).to_fraction() == f_exact(t_.to_fraction(), Fraction(5, 6))
        assert f.derivative(z) == d(z)


def test_taylor_shift_examples():
    f = family(1).poly
    assert taylor_shift(f, Rational2(-1, 2)) == P("-1/2", "27/4", -9, 3)
    assert taylor_shift(f, 1) == P("-1/2", 0, "9/2", 3)
    assert taylor_shift(f, 0) == f


def test_compose_examples():
    assert compose(P(0, 0, 1), P(1, 1)) == P(1, 2, 1)
    f = family(1).poly
    assert compose(f, f)(1) == Rational2(-1, 2)


def _random_poly(rng, deg):
    return Poly(Rational2(random_dyadic_rational(rng, 10)) for _ in range(deg + 1))


def test_taylor_shift_consistency():
    rng = random.Random(11)
    for _ in range(100):
        p = _random_poly(rng, rng.randint(0, 6))
        a = Rational2(random_dyadic_rational(rng, 8))
        x = Rational2(random_dyadic_rational(rng, 8))
        assert taylor_shift(p, a)(x - a) == p(x)


def test_compose_consistency():
    rng = random.Random(12)
    for _ in range(100):
        p, q = _random_poly(rng, rng.randint(0, 4)), _random_poly(rng, rng.randint(0, 3))
        x = Rational2(random_dyadic_rational(rng, 8))
        assert compose(p, q)(x) == p(q(x))


def test_divmod_round_trip():
    rng = random.Random(13)
    for _ in range(50):
        a, b = _random_poly(rng, rng.randint(0, 6)), _random_poly(rng, rng.randint(1, 3))
        if b.is_zero():
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


def test_gauss_valuations_examples():
    assert gauss_valuations(build_gn(3)) == [(0, -1), (1, -3), (2, -3), (3, -3), (4, -3)]
    assert gauss_valuations(P(-1, -3, 6)) == [(0, 0), (1, 0), (2, 1)]
    assert gauss_valuations(Poly()) == []


def test_gn_small_cases():
    assert build_gn(1) == P(1)
    assert build_gn(2) == P("-1/2", "-3/2")
    assert build_gn(3) == P("-1/2", "-93/8", "-243/8", "-243/8", "-81/8")
    with pytest.raises(DomainError):
        build_gn(0)


def test_gn_is_critical_orbit():
    for n in range(1, 5):
        g = build_gn(n)
        for s in (Fraction(0), Fraction(1, 3), Fraction(-4), Fraction(7, 2)):
            z = Fraction(0)
            for _ in range(n):
                z = f_exact(1 + s, z)
            assert g(Rational2(s)).to_fraction() == z


def test_gn_degrees():
    d = 0
    for n in range(1, 7):
        assert build_gn(n).degree == d
        d = 3 * d + 1


def test_gn_recurrence_identity():
    # with g_n = -1/2 + A_n(s) the factor (2 - A_n) equals (3/2 - g_n)
    s1 = P(-3, -3)
    for n in range(2, 7):
        g = build_gn(n)
        a = g - g[0]
        assert build_gn(n + 1) == s1 * g * g * (P(2) - a) + 1
        assert build_gn(n + 1) == s1 * g * g * (P("3/2") - g) + 1


def test_gn_recurrence_literal_form_is_false():
    # (2 - g_n) in place of (2 - A_n) does not reproduce g_3
    g = build_gn(2)
    assert P(-3, -3) * g * g * (P(2) - g) + 1 != build_gn(3)


def test_gn_coefficient_valuations():
    for n in range(3, 8):
        g = build_gn(n)
        assert g[0] == Rational2(-1, 2)
        assert g[1].val == 3 - 2 * n
        for i, c in enumerate(g.coeffs[1:], start=1):
            if c.numerator:
                assert c.val >= (4 - 2 * n) * i - 1, (n, i)
        assert v2(g[1].to_fraction()) == 3 - 2 * n
