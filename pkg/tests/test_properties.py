"""Randomized properties: hypothesis for the algebra, seeded samplers for
the dynamical soundness checks, and the shared full-size suites."""

import os
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

import suites
from dydy import (
    Disk,
    Poly,
    Rational2,
    classify_point_orbit,
    compose,
    default_library,
    family,
    find_cycle_hensel,
    multiplier,
    taylor_shift,
    trunc,
    val2,
)
from oracles import f_exact, v2

FULL = os.environ.get("DYDY_FULL_PROPERTIES") == "1"

dyadic = st.builds(
    lambda n, d, e: Fraction(n, d) * Fraction(2) ** e,
    st.integers(-10**9, 10**9), st.integers(1, 999).map(lambda d: 2 * d - 1), st.integers(-20, 20),
)
polys = st.lists(dyadic, min_size=0, max_size=6)


def R(x: Fraction) -> Rational2:
    return Rational2(x.numerator, x.denominator)


@given(dyadic, dyadic)
def test_ultrametric(a, b):
    x, y = R(a), R(b)
    assert val2(x * y) == v2(a) + v2(b)
    assert val2(x + y) >= min(x.val, y.val)
    if x.val != y.val:
        assert val2(x + y) == min(x.val, y.val)


@given(polys, dyadic, dyadic)
def test_taylor_shift_property(cs, a, x):
    p = Poly(R(c) for c in cs)
    assert taylor_shift(p, R(a))(R(x - a)) == p(R(x))


@given(polys, st.lists(dyadic, max_size=3), dyadic)
@settings(max_examples=50)
def test_compose_property(cs, ds, x):
    p, q = Poly(R(c) for c in cs), Poly(R(d) for d in ds)
    assert compose(p, q)(R(x)) == p(q(R(x)))


@given(dyadic, st.integers(-6, 12))
def test_disk_children_partition(c, r):
    D = Disk(R(c), r)
    a, b = D.children()
    assert a != b and D.contains_disk(a) and D.contains_disk(b)
    z = R(c + Fraction(2) ** r * 3)
    assert (z in a) != (z in b)


@given(dyadic, st.integers(16, 200))
def test_trunc_round_trip(a, N):
    if a == 0:
        return
    p = trunc(R(a), N)
    assert p.val == v2(a)
    assert v2(p.to_rational().to_fraction() - a) >= p.abs_prec


def test_suites_reduced():
    # full sizes run in the acceptance suite; here a quicker pass on new seeds
    assert suites.ultrametric(5000, seed=101) == 5000
    assert suites.mahler_vs_exhaustive(100, seed=102) == 100
    assert suites.disk_image_containment(100, 20, seed=103) == 2000
    assert suites.newton_vs_constructed(50, seed=104) == 50


def test_escape_soundness():
    rng = random.Random(31)
    f = family(1)
    seen = 0
    for _ in range(400):
        z = Fraction(rng.randint(-10**4, 10**4), (2 * rng.randint(0, 200) + 1) * 2 ** rng.randint(0, 1))
        res = classify_point_orbit(f, R(z))
        if res.tag != "Escapes":
            continue
        seen += 1
        w = z
        for _ in range(res.at_iterate):
            w = f_exact(1, w)
        vals = [v2(w)]
        for _ in range(5):
            w = f_exact(1, w)
            vals.append(v2(w))
        assert vals[0] < -1
        assert all(b == 3 * a for a, b in zip(vals, vals[1:])), vals
    assert seen > 20


def _trap_points(rng, D, count):
    for _ in range(count):
        k = Fraction(rng.randint(-10**6, 10**6), rng.choice([1, 3, 5, 7, 11, 13]))
        yield D.center.to_fraction() + Fraction(2) ** D.rexp * k


def test_trap_soundness():
    # every Q_2 point of a trap disk stays in the trap's disks; Padic2 loses
    # about 1.5 bits per step here, so the precision is sized to the run
    trap = default_library().snapshot()[0]
    rng = random.Random(32)
    f = family(1)
    count, steps = (100, 10**4) if FULL else (25, 10**3)
    for D in trap.all_disks:
        for z in _trap_points(rng, D, count):
            x = trunc(R(z), 3 * steps // 2 + 64)
            for _ in range(steps):
                x = f(x)
                assert any(E.contains(x) for E in trap.all_disks), (D, z)


def test_trap_soundness_long_orbit():
    # one orbit at the full 10^4 steps; it alternates between the two cycle disks
    trap = default_library().snapshot()[0]
    f = family(1)
    z = next(_trap_points(random.Random(33), trap.disks[1], 1))
    x = trunc(R(z), 15100)
    for _ in range(10**4):
        x = f(x)
        assert any(E.contains(x) for E in trap.disks), z


def test_hensel_precision_consistency():
    f = family(1)
    for seed in (Disk(7, 4), Rational2(-1, 2)):
        period = 2 if isinstance(seed, Disk) else 1
        lo = find_cycle_hensel(f, period, seed, precision=100)
        hi = find_cycle_hensel(f, period, seed, precision=200)
        for a, b in zip(lo.points, hi.points):
            fa = a.to_rational().to_fraction() if hasattr(a, "to_rational") else a.to_fraction()
            fb = b.to_rational().to_fraction() if hasattr(b, "to_rational") else b.to_fraction()
            assert fa == fb or v2(fa - fb) >= v2(fa) + 100


def test_multiplier_rotation():
    f = family(1)
    rec = find_cycle_hensel(f, 2, Disk(7, 4))
    pts = rec.points
    _, a1, n1 = multiplier(f, pts)
    _, a2, n2 = multiplier(f, pts[1:] + pts[:1])
    assert a1 == a2 == 2 and n1 == n2 == "repelling"
