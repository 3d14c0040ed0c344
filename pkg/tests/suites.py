"""Randomized property suites at full size, shared by the regular tests and
the acceptance runner.  Each suite raises AssertionError on the first
counterexample and returns the number of cases checked."""

import random
from fractions import Fraction

from dydy import Disk, Poly, Rational2, disk_image, newton_polygon, z2_congruence_check

from oracles import (
    exhaustive_congruence,
    product_of_linear_factors,
    random_dyadic_rational,
    v2,
)


def _r2(x: Fraction) -> Rational2:
    return Rational2(x.numerator, x.denominator)


def ultrametric(samples: int = 100_000, seed: int = 1) -> int:
    rng = random.Random(seed)
    for _ in range(samples):
        a, b = random_dyadic_rational(rng), random_dyadic_rational(rng)
        if rng.random() < 0.3:
            # force shared leading digits so cancellation is exercised
            b = -a + random_dyadic_rational(rng, 8) * 2 ** rng.randint(0, 20)
        x, y = _r2(a), _r2(b)
        assert x.val == v2(a) and y.val == v2(b), (a, b)
        assert (x * y).val == x.val + y.val, (a, b)
        s = (x + y).val
        assert s >= min(x.val, y.val), (a, b)
        if x.val != y.val:
            assert s == min(x.val, y.val), (a, b)
        assert (x + y).to_fraction() == a + b
    return samples


def _from_binomial(diffs):
    """Monomial coefficients of sum d_j * C(k, j)."""
    out = [Fraction(0)] * len(diffs)
    for j, d in enumerate(diffs):
        # C(k, j) = k (k-1) ... (k-j+1) / j!
        poly = [Fraction(1)]
        for i in range(j):
            nxt = [Fraction(0)] * (len(poly) + 1)
            for a, c in enumerate(poly):
                nxt[a + 1] += c
                nxt[a] -= i * c
            poly = nxt
        fact = 1
        for i in range(2, j + 1):
            fact *= i
        for a, c in enumerate(poly):
            out[a] += d * c / fact
    return out


def mahler_vs_exhaustive(samples: int = 500, seed: int = 2) -> int:
    rng = random.Random(seed)
    for _ in range(samples):
        deg = rng.randint(0, 6)
        r = rng.randint(0, 8)
        if rng.random() < 0.4:
            # built in the binomial basis with differences near 2^r, so the
            # monomial coefficients hide whether the congruence holds
            coeffs = _from_binomial([rng.randint(-9, 9) * 2 ** max(0, r - rng.randint(0, 1))
                                     for _ in range(deg + 1)])
        else:
            coeffs = [Fraction(rng.randint(-40, 40), 1 << rng.choice([0, 0, 0, 1, 2, 3]))
                      for _ in range(deg + 1)]
        got = z2_congruence_check(Poly(_r2(c) for c in coeffs), r)
        want = exhaustive_congruence(coeffs, r) if any(coeffs) else True
        assert got.holds == want, (coeffs, r)
        if not got.holds:
            k = got.witness
            val = sum(c * k**i for i, c in enumerate(coeffs))
            assert v2(val) < r, (coeffs, r, k)
    return samples


def disk_image_containment(pairs: int = 1000, points: int = 100, seed: int = 3) -> int:
    rng = random.Random(seed)
    for _ in range(pairs):
        deg = rng.randint(1, 5)
        coeffs = [Fraction(rng.randint(-30, 30), 1 << rng.randint(0, 3)) for _ in range(deg + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = Fraction(1)
        p = Poly(_r2(c) for c in coeffs)
        center = Fraction(rng.randint(-200, 200), 1 << rng.randint(0, 3))
        rexp = rng.randint(-3, 6)
        D = Disk(_r2(center), rexp)
        img = disk_image(p, D)
        ic = img.center.to_fraction()
        for _ in range(points):
            # a Q_2 point of D: centre + 2^rexp * (2-adic integer with odd denominator)
            k = Fraction(rng.randint(-10**6, 10**6), rng.choice([1, 3, 5, 7, 9, 15, 21]))
            z = center + Fraction(2) ** rexp * k
            val = sum(c * z**i for i, c in enumerate(coeffs))
            assert v2(val - ic) >= img.rexp, (coeffs, D, z)
    return pairs * points


def newton_vs_constructed(samples: int = 200, seed: int = 4) -> int:
    rng = random.Random(seed)
    for _ in range(samples):
        coeffs, exps = product_of_linear_factors(rng, rng.randint(1, 7))
        poly = newton_polygon(Poly(_r2(c) for c in coeffs))
        got = []
        for v, mult in poly.root_valuations():
            got.extend([v] * mult)
        assert sorted(got) == exps, (coeffs, exps, got)
    return samples
