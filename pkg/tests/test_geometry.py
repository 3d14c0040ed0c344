import json
import os
import random
from fractions import Fraction

import jsonschema
import pytest

from dydy import (
    Disk,
    DomainError,
    Poly,
    Rational2,
    build_gn,
    disk_image,
    disk_sup_norm,
    family,
    newton_polygon,
    residue_disk_map,
    z2_congruence_check,
)
from oracles import exhaustive_congruence, f_exact, v2


def R(s):
    return Rational2(s)


def P(*cs):
    return Poly(R(c) if isinstance(c, str) else c for c in cs)


F1 = family(1).poly


def test_disk_equality_by_congruence():
    assert Disk(R("19/2"), 4) == Disk(R("51/2"), 4)
    assert Disk(3, 2) == Disk(-1, 2)
    assert Disk(3, 2) != Disk(3, 3)
    assert hash(Disk(R("19/2"), 4)) == hash(Disk(R("51/2"), 4))
    assert len({Disk(1, 3), Disk(9, 3), Disk(17, 3)}) == 1


def test_membership_and_children():
    D = Disk(3, 2)
    assert 7 in D and R("3") in D and 5 not in D
    a, b = D.children()
    assert a == Disk(3, 3) and b == Disk(7, 3)
    assert D.contains_disk(a) and not a.contains_disk(D)


def test_disk_parse():
    assert Disk.parse("19/2:4") == Disk(R("19/2"), 4)
    with pytest.raises(ValueError):
        Disk.parse("19/2")


@pytest.mark.parametrize("p, pts", [
    (build_gn(3), [(0, -1), (1, -3), (4, -3)]),
    (P(-1, -3, 6), [(0, 0), (1, 0), (2, 1)]),
    (P(-2, 0, 0, 1), [(0, 1), (3, 0)]),
])
def test_newton_polygon_vertices(p, pts):
    assert newton_polygon(p).vertices == pts


def test_newton_polygon_examples():
    assert newton_polygon(build_gn(3)).leftmost() == (Fraction(-2), 1)
    assert newton_polygon(P(-1, -3, 6)).segments == [(Fraction(0), 1), (Fraction(1), 1)]
    assert newton_polygon(P(-2, 0, 0, 1)).segments == [(Fraction(-1, 3), 3)]
    assert newton_polygon(P(5)).segments == []
    with pytest.raises(DomainError):
        newton_polygon(Poly())


def test_newton_polygon_invariants():
    rng = random.Random(21)
    for _ in range(200):
        p = Poly(R(Fraction(rng.randint(-50, 50), 1 << rng.randint(0, 4))) for _ in range(rng.randint(1, 8)))
        if p.is_zero():
            continue
        poly = newton_polygon(p)
        xs = [x for x, _ in poly.vertices]
        assert xs == sorted(set(xs))
        slopes = [s for s, _ in poly.segments]
        assert slopes == sorted(set(slopes))
        finite = [i for i, c in enumerate(p.coeffs) if c.numerator]
        assert sum(n for _, n in poly.segments) == finite[-1] - finite[0]


def test_newton_polygon_of_product_merges_slopes():
    rng = random.Random(22)
    for _ in range(100):
        p = Poly(R(Fraction(rng.randint(-40, 40) or 1, 1 << rng.randint(0, 3))) for _ in range(rng.randint(2, 5)))
        q = Poly(R(Fraction(rng.randint(-40, 40) or 1, 1 << rng.randint(0, 3))) for _ in range(rng.randint(2, 5)))

        def expand(poly):
            out = []
            for s, n in newton_polygon(poly).segments:
                out.extend([s] * n)
            return out
        assert sorted(expand(p * q)) == sorted(expand(p) + expand(q))


def test_disk_image_examples():
    assert disk_image(F1, Disk(R("-1/2"), 1)) == Disk(R("-1/2"), -1)
    assert disk_image(P(0, 1), Disk(R("5/4"), 3)) == Disk(R("5/4"), 3)
    img = disk_image(F1, Disk(R("7/2"), 3))
    assert img == Disk(R("149/2"), 1) == Disk(R("1/2"), 1)
    with pytest.raises(DomainError):
        disk_image(P(5), Disk(0, 0))


def test_lemma_expansion_near_fixed_point():
    # |f_t(z) + 1/2| = 2^(k+2) whenever |z + 1/2| = 2^k and t is close enough to 1
    rng = random.Random(23)
    for t, lo in ((Fraction(1), -12), (Fraction(1 + 2**5), -6), (Fraction(1 + 2**7), -8)):
        for _ in range(100):
            k = rng.randint(lo + 1, 0)
            u = Fraction(2 * rng.randint(-10**5, 10**5) + 1, rng.choice([1, 3, 5, 7]))
            z = Fraction(-1, 2) + Fraction(2) ** (-k) * u
            assert v2(f_exact(t, z) + Fraction(1, 2)) == -(k + 2), (t, z)


@pytest.mark.parametrize("p, D, want", [
    (P(0, 0, 3, -2), Disk(R("1/2"), 0), 2),
    (P(5), Disk(R("3/4"), 2), 1),
    (P(0, 1), Disk(0, 0), 1),
])
def test_disk_sup_norm(p, D, want):
    assert disk_sup_norm(p, D) == want


def test_congruence_check_examples():
    ok = z2_congruence_check(P(0, 8, 8), 4)
    assert ok.holds and [v for _, v in ok.differences] == [float("inf"), 4, 4]
    bad = z2_congruence_check(P(0, 1), 1)
    assert not bad.holds and bad.witness == 1


def test_congruence_check_with_denominators():
    # k(k+1)/2 is integer valued but not always even
    h = P(0, "1/2", "1/2")
    assert z2_congruence_check(h, 0).holds
    assert not z2_congruence_check(h, 1).holds
    assert exhaustive_congruence([0, Fraction(1, 2), Fraction(1, 2)], 0)


def test_residue_disk_map_examples():
    assert residue_disk_map(F1, Disk(3, 2), Disk(R("19/2"), 4)).valid
    assert residue_disk_map(F1, Disk(R("19/2"), 4), Disk(3, 2)).valid
    cert = residue_disk_map(F1, Disk(3, 2), Disk(R("19/2"), 5))
    assert not cert.valid
    k = cert.witness
    z = Fraction(3) + 4 * k
    assert v2(f_exact(1, z) - Fraction(19, 2)) < 5


def test_certificate_json_matches_schema(schema_dir):
    with open(os.path.join(schema_dir, "certificate.schema.json")) as fh:
        schema = json.load(fh)
    for src, tgt in ((Disk(3, 2), Disk(R("19/2"), 4)), (Disk(3, 2), Disk(R("19/2"), 5))):
        doc = residue_disk_map(F1, src, tgt).to_json()
        jsonschema.validate(doc, schema)
        assert json.loads(json.dumps(doc)) == doc
        assert ("witness" in doc) is (not doc["verdict"])
