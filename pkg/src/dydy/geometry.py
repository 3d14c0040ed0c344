"""Closed 2-adic disks and certified statements about them.

A disk ``D(a, 2**-r)`` is the residue class ``{z : z ≡ a mod 2**r}``.  The
operations here turn polynomial facts into certificates:

* ``disk_image`` -- the image of a disk under a polynomial, read off the
  Taylor coefficients at the centre.  Exact over C_2, a superset over Q_2.
* ``z2_congruence_check`` -- decides ``h(k) ≡ 0 mod 2**r`` for *every*
  ``k`` in Z_2 through the Mahler (finite difference) expansion of ``h``.
* ``residue_disk_map`` -- the Q_2 statement "every Q_2 point of ``src`` lands
  in ``tgt``", proved with the test above.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .dyadic import INF, Padic2, Rational2, ValExponent, congruent, pow2, rational, residue
from .errors import DomainError
from .poly import Poly, compose, gauss_valuations, linear, taylor_shift


@dataclass(frozen=True, eq=False)
class Disk:
    """Closed disk ``D(center, 2**-rexp)``; any member is a valid centre."""

    center: Rational2
    rexp: int

    def __post_init__(self):
        object.__setattr__(self, "center", rational(self.center))
        if not isinstance(self.rexp, int):
            raise TypeError("radius exponent must be an int")

    @classmethod
    def parse(cls, text: str) -> Disk:
        """``"19/2:4"`` is ``D(19/2, 2**-4)``."""
        try:
            c, r = text.rsplit(":", 1)
            return cls(Rational2(c), int(r))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed disk {text!r}; expected center:rexp") from exc

    @property
    def radius(self) -> Fraction:
        return Fraction(2) ** (-self.rexp)

    @property
    def key(self) -> tuple[Rational2, int]:
        return residue(self.center, self.rexp), self.rexp

    def canonical(self) -> Disk:
        """Same disk, centre replaced by its canonical residue."""
        return Disk(residue(self.center, self.rexp), self.rexp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Disk):
            return NotImplemented
        return self.rexp == other.rexp and congruent(self.center, other.center, self.rexp)

    def __hash__(self) -> int:
        return hash(self.key)

    def __contains__(self, z) -> bool:
        if isinstance(z, Disk):
            return self.contains_disk(z)
        return self.contains(z)

    def contains(self, z) -> bool:
        if isinstance(z, Padic2):
            return congruent(z, self.center, self.rexp)
        return (rational(z) - self.center).val >= self.rexp

    def contains_disk(self, other: Disk) -> bool:
        return other.rexp >= self.rexp and self.contains(other.center)

    def children(self) -> tuple[Disk, Disk]:
        """The two residue sub-disks one level down."""
        a = residue(self.center, self.rexp)
        r = self.rexp
        return Disk(a, r + 1), Disk(a + pow2(r), r + 1)

    def point_valuation(self) -> ValExponent | None:
        """Common valuation of all points, or ``None`` if the disk contains
        points of different valuation (i.e. it contains 0's neighbourhood)."""
        v = self.center.val
        return v if v < self.rexp else None

    def __str__(self) -> str:
        return f"D({self.center}, 2^{-self.rexp})"

    def __repr__(self) -> str:
        return f"Disk({str(self.center)!r}, {self.rexp})"

    def to_json(self) -> dict:
        return {"center": str(self.center), "rexp": self.rexp}


# --- Newton polygons ---------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: list[tuple[int, int]]
    segments: list[tuple[Fraction, int]]

    def root_valuations(self) -> list[tuple[Fraction, int]]:
        """``(valuation, multiplicity)`` of the nonzero roots over C_2."""
        return [(-s, n) for s, n in self.segments]

    def leftmost(self) -> tuple[Fraction, int] | None:
        return self.segments[0] if self.segments else None

    def to_json(self) -> dict:
        return {
            "vertices": [[i, v] for i, v in self.vertices],
            "segments": [{"slope": str(s), "length": n} for s, n in self.segments],
        }


def newton_polygon(p: Poly) -> NewtonPolygon:
    """Lower convex hull of the points ``(i, v(c_i))``."""
    pts = gauss_valuations(p)
    if not pts:
        raise DomainError("Newton polygon of the zero polynomial")
    hull: list[tuple[int, int]] = []
    for q in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it is strictly below the chord hull[-2] -> q
            if (y2 - y1) * (q[0] - x1) >= (q[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(q)
    segs = [
        (Fraction(y2 - y1, x2 - x1), x2 - x1)
        for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    ]
    return NewtonPolygon(hull, segs)


# --- disk images -------------------------------------------------------------


def _taylor_radius_exponent(c: Sequence[Rational2], rexp: int, start: int) -> ValExponent:
    best: ValExponent = INF
    for k in range(start, len(c)):
        if c[k].numerator:
            e = c[k].val + k * rexp
            if e < best:
                best = e
    return best


def disk_image(p: Poly, D: Disk) -> Disk:
    """``p(D)`` as ``D(p(a), max_k |c_k| r^k)`` with ``c_k`` the Taylor
    coefficients at the centre ``a``.

    Over C_2 this is the exact image; restricted to Q_2 points it is a
    certified superset.
    """
    if p.degree < 1:
        raise DomainError("image of a disk under a constant polynomial is a point")
    c = taylor_shift(p, D.center).coeffs
    e = _taylor_radius_exponent(c, D.rexp, 1)
    return Disk(c[0], int(e))


def disk_sup_val(p: Poly, D: Disk) -> ValExponent:
    """``min_z v(p(z))`` over the disk, i.e. ``-log2`` of the sup norm."""
    c = taylor_shift(p, D.center).coeffs
    return _taylor_radius_exponent(c, D.rexp, 0)


def disk_sup_norm(p: Poly, D: Disk) -> Fraction:
    """``max_{z in D} |p(z)|`` (over C_2), a power of 2."""
    v = disk_sup_val(p, D)
    return Fraction(0) if v == INF else Fraction(2) ** (-v)


# --- the Z_2-universal congruence test ---------------------------------------


def mahler_differences(fn: Callable[..., Rational2], degrees: Sequence[int]) -> dict:
    """Iterated forward differences ``Δ^j fn(0)`` for a polynomial map of the
    given per-variable degrees, indexed by multi-index ``j``."""
    grid = {idx: rational(fn(*idx)) for idx in itertools.product(*(range(d + 1) for d in degrees))}
    for axis, d in enumerate(degrees):
        for j in range(1, d + 1):
            for i in range(d, j - 1, -1):
                for idx in list(grid):
                    if idx[axis] != i:
                        continue
                    prev = idx[:axis] + (i - 1,) + idx[axis + 1:]
                    grid[idx] = grid[idx] - grid[prev]
    return grid


@dataclass
class CongruenceCheck:
    """Outcome of the Z_2-universal congruence test.

    ``differences`` lists ``(j, v(Δ^j h(0)))``; on failure ``failing_index``
    is a minimal offending ``j`` and ``witness`` an integer point with
    ``v(h(witness)) < r``.
    """

    holds: bool
    r: int
    differences: list = field(default_factory=list)
    scale_exponent: int = 0
    failing_index: object = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


def check_differences(diffs: dict, r: int, scale_exponent: int = 0) -> CongruenceCheck:
    items = sorted(diffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    listed = [(idx if len(idx) > 1 else idx[0], v.val - scale_exponent) for idx, v in items]
    target = r + scale_exponent
    for idx, v in items:
        if v.val < target:
            j = idx if len(idx) > 1 else idx[0]
            # minimal failing multi-index: h(j) = Δ^j h(0) + (terms of valuation >= r)
            return CongruenceCheck(False, r, listed, scale_exponent, j, j)
    return CongruenceCheck(True, r, listed, scale_exponent)


def z2_congruence_check(h: Poly, r: int) -> CongruenceCheck:
    """Decide ``h(k) ≡ 0 (mod 2**r)`` for all ``k`` in Z_2.

    ``h`` is first scaled by ``2**m`` to clear powers of 2 from its
    denominators; the Mahler coefficients ``Δ^j h(0)`` then all have
    valuation ``>= r + m`` exactly when the congruence holds.
    """
    if h.is_zero():
        return CongruenceCheck(True, r, [], 0)
    m = max(0, -min(c.val for c in h.coeffs if c.numerator))
    H = h * pow2(m) if m else h
    d = int(H.degree)
    diffs = mahler_differences(lambda k: H(k), (d,))
    return check_differences(diffs, r, m)


@dataclass
class DiskMapCertificate:
    """Proof (or refutation) that every Q_2 point of ``source`` maps into
    ``target``."""

    source: object  # Disk, or an exact point
    target: Disk
    check: CongruenceCheck
    parameter: object = None  # exact t, a parameter Disk, or None for a bare polynomial
    kind: str = "residue_disk_map"

    @property
    def valid(self) -> bool:
        return self.check.holds

    def __bool__(self) -> bool:
        return self.valid

    @property
    def witness(self):
        return self.check.witness

    def to_json(self) -> dict:
        src = self.source.to_json() if isinstance(self.source, Disk) else {"point": str(self.source)}
        out = {
            "kind": self.kind,
            "source_disk": src,
            "target_disk": self.target.to_json(),
            "difference_valuations": [
                [list(j) if isinstance(j, tuple) else j, None if v == INF else v]
                for j, v in self.check.differences
            ],
            "verdict": self.valid,
        }
        if self.parameter is not None:
            p = self.parameter
            out["parameter"] = p.to_json() if isinstance(p, Disk) else str(p)
        if not self.valid:
            w = self.check.witness
            out["witness"] = list(w) if isinstance(w, tuple) else w
        return out


def residue_disk_map(f: Poly, src: Disk, tgt: Disk) -> DiskMapCertificate:
    """Certify ``f(src ∩ Q_2) ⊆ tgt`` via ``h(k) = f(a + 2**r k) - b``."""
    h = compose(f, linear(src.center, pow2(src.rexp))) - tgt.center
    return DiskMapCertificate(src, tgt, z2_congruence_check(h, tgt.rexp))
