import random
from fractions import Fraction

import pytest

from dydy import INF, Padic2, PrecisionError, Rational2, absval, congruent, pow2, rational, residue, trunc, val2
from oracles import random_dyadic_rational, v2


def R(s):
    return Rational2(s)


@pytest.mark.parametrize("x, v", [("-1/2", -1), ("0", INF), ("-93/8", -3), ("272", 4), ("3/4", -2), ("12/5", 2)])
def test_valuation(x, v):
    assert val2(R(x)) == v


def test_absolute_value():
    assert absval(R("-1/2")) == 2
    assert absval(0) == 0
    assert absval(R("-2201/4")) == 4


def test_sum_keeps_smaller_valuation():
    s = R("-1/2") + 1
    assert s == R("1/2") and s.val == -1


def test_product_example():
    x = R("3/2") * (1 - 3)
    assert x == -3 and absval(x) == 1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        R("1") / 0
    with pytest.raises(ZeroDivisionError):
        Rational2("1/0")


@pytest.mark.parametrize("bad", ["", "1/", "a", "1.5", "1//2", "--3"])
def test_malformed_literal(bad):
    with pytest.raises(ValueError):
        Rational2(bad)


def test_literal_forms():
    assert R("-6/4") == Rational2(-3, 2)
    assert R("+7") == 7
    assert rational(Fraction(5, 8)) == R("5/8")
    assert str(R("10/4")) == "5/2"


def test_valuation_maintained_through_arithmetic():
    x, y = R("12/7"), R("5/24")
    assert (x * y).val == 2 - 3
    assert (x / y).val == 2 + 3
    assert (x ** 3).val == 6
    assert (y ** -2).val == 6


@pytest.mark.parametrize("x, y, r, want", [
    ("19/2", "51/2", 4, True),
    ("83/2", "19/2", 4, True),
    ("1/2", "3/2", 1, False),
    ("19/2", "51/2", 5, False),
    ("3", "7", 2, True),
])
def test_congruent(x, y, r, want):
    assert congruent(R(x), R(y), r) is want


def test_residue_representatives():
    assert residue(R("51/2"), 4) == R("19/2")
    assert residue(R("19/2"), 4) == R("19/2")
    assert residue(-1, 5) == 31
    assert residue(R("1/3"), 4) == 11
    assert residue(32, 5) == 0


def test_congruence_matches_residues():
    rng = random.Random(5)
    for _ in range(2000):
        a = random_dyadic_rational(rng, 12)
        b = a + random_dyadic_rational(rng, 6) * 2 ** rng.randint(0, 10)
        x, y = Rational2(a), Rational2(b)
        for r in range(-2, 10):
            same = congruent(x, y, r)
            assert same == (v2(a - b) >= r)
            m = max(0, -min(x.val, y.val), 0)
            if r + m >= 0:
                scale = pow2(m)
                assert same == (residue(x * scale, r + m) == residue(y * scale, r + m))


def test_trunc_examples():
    p = trunc(R("1/3"), 4)
    assert (p.val, p.unit, p.prec) == (0, 11, 4)
    d = trunc(1 + 2 ** 10, 12) - trunc(1, 12)
    assert d.val == 10 and d.prec == 2
    q = trunc(6, 5) * trunc(R("1/2"), 5)
    assert q.val == 0 and q.unit % 32 == 3


def test_total_cancellation_is_flagged():
    d = trunc(5, 8) - trunc(5 + 2 ** 20, 8)
    assert d.is_zero_to_prec and d.val == 8
    with pytest.raises(PrecisionError):
        val2(d)
    with pytest.raises(PrecisionError):
        congruent(d, 0, 20)
    assert congruent(d, 0, 8)


def test_exact_zero():
    z = Padic2.zero()
    assert val2(z) == INF
    assert str(z) == "0"


def _contains(ball: Padic2, x: Fraction) -> bool:
    if ball.is_zero_to_prec:
        return x == 0 or v2(x) >= ball.val
    if x == 0:
        return False
    rep = ball.to_rational().to_fraction()
    return v2(x - rep) >= ball.abs_prec


def test_ball_operations_contain_exact_result():
    rng = random.Random(7)
    for _ in range(2000):
        a, b = random_dyadic_rational(rng, 30), random_dyadic_rational(rng, 30)
        if rng.random() < 0.3:
            b = a + Fraction(rng.randint(1, 99)) * 2 ** rng.randint(0, 40)
        N = rng.randint(8, 64)
        A, B = trunc(Rational2(a), N), trunc(Rational2(b), N)
        assert _contains(A + B, a + b)
        assert _contains(A - B, a - b)
        assert _contains(A * B, a * b)
        if b:
            assert _contains(A / B, a / b)
        assert _contains(A ** 3, a ** 3)
