"""Dense univariate polynomials over exact dyadic rationals.

Coefficients are stored low degree first.  Besides ring arithmetic this
module knows about the cubic family

    f_t(z) = -(3/2) t (-2z^3 + 3z^2) + 1 = 3t z^3 - (9/2) t z^2 + 1

and the critical-orbit polynomials ``g_n(s) = f_{s+1}^n(0)``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

from .dyadic import INF, Padic2, Rational2, ValExponent, rational
from .errors import DomainError


def _common_denominator(coeffs: Sequence[Rational2]) -> tuple[int, list[int]]:
    den = 1
    for c in coeffs:
        d = c.denominator
        if den % d:
            den = den // math.gcd(den, d) * d
    return den, [c.numerator * (den // c.denominator) for c in coeffs]


def _convolve(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class Poly:
    """Polynomial ``sum(coeffs[i] * x**i)`` with ``Rational2`` coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1].numerator == 0:
            cs.pop()
        self.coeffs: tuple[Rational2, ...] = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @property
    def degree(self) -> ValExponent:
        """Degree, ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Rational2:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Rational2(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(repr(str(c)) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.numerator == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(terms)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a ``Rational2``, int or ``Padic2``."""
        if not self.coeffs:
            return Rational2(0)
        if not isinstance(x, (Rational2, Padic2)):
            x = rational(x)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(c * i for i, c in enumerate(self.coeffs) if i)

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> Poly:
        o = other if isinstance(other, Poly) else Poly([other])
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> Poly:
        o = other if isinstance(other, Poly) else Poly([other])
        return self + (-o)

    def __rsub__(self, other) -> Poly:
        return Poly([other]) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = rational(other)
            return Poly(a * c for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        da, ia = _common_denominator(self.coeffs)
        db, ib = _common_denominator(other.coeffs)
        den = da * db
        return Poly(Rational2._make(n, den) for n in _convolve(ia, ib))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return Poly(), Poly(rem)
        quot = [Rational2(0)] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db] / lead
            quot[i] = c
            if c.numerator:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(quot), Poly(rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def scale_var(self, a) -> Poly:
        """The polynomial ``x -> p(a*x)``."""
        a = rational(a)
        out, pw = [], Rational2(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * a
        return Poly(out)


def evaluate(p: Poly, x):
    return p(x)


def taylor_shift(p: Poly, a) -> Poly:
    """Coefficients of ``x -> p(a + x)`` by repeated synthetic division."""
    a = rational(a)
    c = list(p.coeffs)
    n = len(c)
    if a.numerator == 0 or n < 2:
        return Poly(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] = c[j] + a * c[j + 1]
    return Poly(c)


def compose(p: Poly, q: Poly) -> Poly:
    """``p o q`` by Horner's rule on polynomials."""
    result = Poly()
    for c in reversed(p.coeffs):
        result = result * q + c
    return result


def linear(a, b) -> Poly:
    """``a + b*x``."""
    return Poly([a, b])


def gauss_valuations(p: Poly) -> list[tuple[int, int]]:
    """``(i, v(c_i))`` for each nonzero coefficient; the Newton polygon input."""
    return [(i, c.val) for i, c in enumerate(p.coeffs) if c.numerator != 0]


# --- the cubic family --------------------------------------------------------

_THREE_HALVES = Rational2(3, 2)
_NINE_HALVES = Rational2(9, 2)


class FamilyMember:
    """``f_t(z) = 3t z^3 - (9/2) t z^2 + 1``.

    ``t`` is normally an exact ``Rational2``; a ``Padic2`` parameter (as
    produced by ``pcf_parameter``) is accepted for evaluation, but then no
    exact ``poly`` exists.
    """

    __slots__ = ("t", "_poly")

    def __init__(self, t):
        self.t = t if isinstance(t, Padic2) else rational(t)
        self._poly = None

    @property
    def exact(self) -> bool:
        return isinstance(self.t, Rational2)

    @property
    def poly(self) -> Poly:
        if not self.exact:
            raise TypeError("f_t has no exact polynomial for a truncated parameter")
        if self._poly is None:
            t = self.t
            self._poly = Poly([1, 0, -_NINE_HALVES * t, 3 * t])
        return self._poly

    def __call__(self, z):
        t = self.t
        return t * (z * z) * (3 * z - _NINE_HALVES) + 1

    def derivative(self, z):
        """``f_t'(z) = 9t z (z - 1)``."""
        return 9 * self.t * z * (z - 1)

    def __repr__(self) -> str:
        return f"FamilyMember(t={self.t})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FamilyMember) and self.t == other.t

    def __hash__(self) -> int:
        return hash(("f", self.t))


def family(t) -> FamilyMember:
    return FamilyMember(t)


def shape_poly() -> Poly:
    """``-2z^3 + 3z^2``, the factor multiplied by ``-(3/2) t`` in ``f_t``."""
    return Poly([0, 0, 3, -2])


@lru_cache(maxsize=None)
def build_gn(n: int) -> Poly:
    """``g_n(s) = f_{s+1}^n(0)`` as an exact polynomial in ``s``.

    Recurrence: ``g_1 = 1``, ``g_{m+1} = -(3/2)(s+1) g_m^2 (3 - 2 g_m) + 1``.
    Degrees follow ``d_{m+1} = 3 d_m + 1`` (0, 1, 4, 13, 40, ...).
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"build_gn needs n >= 1, got {n!r}")
    if n == 1:
        return Poly([1])
    g = build_gn(n - 1)
    sq = g * g
    inner = sq * (Poly([3]) - g * 2)
    return inner * Poly([-_THREE_HALVES, -_THREE_HALVES]) + 1
