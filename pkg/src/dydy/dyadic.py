"""Exact dyadic scalars.

Two number types live here:

``Rational2``
    an exact rational that carries its 2-adic valuation.  Everything that
    has to be *certified* (disk centres, polynomial coefficients, parameters)
    is a ``Rational2``.

``Padic2``
    a 2-adic ball ``2**val * (unit + 2**prec * Z_2)`` with capped relative
    precision.  Used for Hensel lifting and for orbits whose exact height
    explodes.  Every operation returns a ball that contains the exact result;
    cancellation shows up as lost precision, never as wrong digits.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INF = math.inf
DEFAULT_PRECISION = 128

ValExponent = Union[int, float]  # float only for +inf

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class PrecisionError(ArithmeticError):
    """A decision needs more 2-adic digits than the operands carry."""


def _v2_int(n: int) -> int:
    # n != 0
    return (n & -n).bit_length() - 1


class Rational2:
    """Exact rational number with a cached 2-adic valuation."""

    __slots__ = ("numerator", "denominator", "val")

    def __init__(self, value=0, denominator=None):
        if denominator is None:
            if isinstance(value, Rational2):
                num, den = value.numerator, value.denominator
            elif isinstance(value, int):
                num, den = value, 1
            elif isinstance(value, Fraction):
                num, den = value.numerator, value.denominator
            elif isinstance(value, str):
                m = _RATIONAL_RE.match(value)
                if m is None:
                    raise ValueError(f"malformed rational literal {value!r}")
                num, den = int(m.group(1)), int(m.group(2) or 1)
                if den == 0:
                    raise ZeroDivisionError(f"zero denominator in {value!r}")
            else:
                raise TypeError(f"cannot build Rational2 from {type(value).__name__}")
        else:
            num, den = int(value), int(denominator)
            if den == 0:
                raise ZeroDivisionError("Rational2 with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        if g != 1:
            num //= g
            den //= g
        self.numerator = num
        self.denominator = den
        self.val = INF if num == 0 else _v2_int(num) - _v2_int(den)

    @classmethod
    def _raw(cls, num: int, den: int) -> Rational2:
        # num/den already reduced, den > 0
        obj = object.__new__(cls)
        obj.numerator = num
        obj.denominator = den
        obj.val = INF if num == 0 else _v2_int(num) - _v2_int(den)
        return obj

    @classmethod
    def _make(cls, num: int, den: int) -> Rational2:
        g = math.gcd(num, den)
        if g != 1:
            num //= g
            den //= g
        return cls._raw(num, den)

    # --- conversions -------------------------------------------------------

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def norm(self) -> Fraction:
        """Normalised 2-adic absolute value ``2**-val`` (0 for zero)."""
        if self.val == INF:
            return Fraction(0)
        return Fraction(2) ** (-self.val)

    def height(self) -> int:
        """Bit size of numerator plus denominator."""
        return abs(self.numerator).bit_length() + self.denominator.bit_length()

    def is_integral(self) -> bool:
        """True when the number lies in Z_2 (odd denominators allowed)."""
        return self.val >= 0

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"Rational2('{self}')"

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __hash__(self) -> int:
        if self.denominator == 1:
            return hash(self.numerator)
        return hash((self.numerator, self.denominator))

    def __eq__(self, other) -> bool:
        if isinstance(other, Rational2):
            return self.numerator == other.numerator and self.denominator == other.denominator
        if isinstance(other, int):
            return self.denominator == 1 and self.numerator == other
        if isinstance(other, Fraction):
            return self.numerator == other.numerator and self.denominator == other.denominator
        return NotImplemented

    def __lt__(self, other) -> bool:
        o = _as_rational(other)
        if o is None:
            return NotImplemented
        return self.numerator * o.denominator < o.numerator * self.denominator

    # --- field operations --------------------------------------------------

    def __neg__(self) -> Rational2:
        return Rational2._raw(-self.numerator, self.denominator)

    def __pos__(self) -> Rational2:
        return self

    def __add__(self, other):
        if isinstance(other, int):
            return Rational2._raw(self.numerator + other * self.denominator, self.denominator)
        o = _as_rational(other)
        if o is None:
            return NotImplemented
        if self.denominator == o.denominator:
            return Rational2._make(self.numerator + o.numerator, self.denominator)
        return Rational2._make(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return Rational2._raw(self.numerator - other * self.denominator, self.denominator)
        o = _as_rational(other)
        if o is None:
            return NotImplemented
        if self.denominator == o.denominator:
            return Rational2._make(self.numerator - o.numerator, self.denominator)
        return Rational2._make(
            self.numerator * o.denominator - o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    def __rsub__(self, other):
        o = _as_rational(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Rational2._make(self.numerator * other, self.denominator)
        o = _as_rational(other)
        if o is None:
            return NotImplemented
        g1 = math.gcd(self.numerator, o.denominator)
        g2 = math.gcd(o.numerator, self.denominator)
        return Rational2._raw(
            (self.numerator // g1) * (o.numerator // g2),
            (self.denominator // g2) * (o.denominator // g1),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_rational(other)
        if o is None:
            return NotImplemented
        if o.numerator == 0:
            raise ZeroDivisionError("division by zero Rational2")
        num = self.numerator * o.denominator
        den = self.denominator * o.numerator
        if den < 0:
            num, den = -num, -den
        return Rational2._make(num, den)

    def __rtruediv__(self, other):
        o = _as_rational(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int) -> Rational2:
        if not isinstance(e, int):
            return NotImplemented
        if e >= 0:
            return Rational2._raw(self.numerator**e, self.denominator**e)
        if self.numerator == 0:
            raise ZeroDivisionError("zero to a negative power")
        num, den = self.denominator ** (-e), self.numerator ** (-e)
        if den < 0:
            num, den = -num, -den
        return Rational2._raw(num, den)


def _as_rational(x) -> Rational2 | None:
    if isinstance(x, Rational2):
        return x
    if isinstance(x, int):
        return Rational2._raw(x, 1)
    if isinstance(x, Fraction):
        return Rational2._raw(x.numerator, x.denominator)
    return None


def rational(x) -> Rational2:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Rational2``."""
    if isinstance(x, Rational2):
        return x
    return Rational2(x)


ONE = Rational2(1)
ZERO = Rational2(0)
HALF = Rational2(1, 2)


def pow2(e: int) -> Rational2:
    if e >= 0:
        return Rational2._raw(1 << e, 1)
    return Rational2._raw(1, 1 << (-e))


def val2(x) -> ValExponent:
    """2-adic valuation; ``+inf`` for zero.

    Accepts ``Rational2``, ``int``, ``Fraction`` and ``Padic2``.  For a
    ``Padic2`` indistinguishable from zero the valuation is unknown and
    ``PrecisionError`` is raised.
    """
    if isinstance(x, Rational2):
        return x.val
    if isinstance(x, Padic2):
        if x.is_zero_to_prec:
            if x.val == INF:
                return INF
            raise PrecisionError(f"valuation unknown: value is 0 mod 2^{x.val}")
        return x.val
    return rational(x).val


def absval(x) -> Fraction:
    """Normalised absolute value |x| = 2**-v(x)."""
    v = val2(x)
    return Fraction(0) if v == INF else Fraction(2) ** (-v)


def congruent(x, y, r: int) -> bool:
    """``x ≡ y (mod 2**r)``, i.e. ``v(x - y) >= r``.

    Works for half-integers and other dyadic rationals as well as integers;
    with ``Padic2`` operands it raises ``PrecisionError`` when the digits
    needed to decide are not known.
    """
    d = x - y
    if isinstance(d, Padic2):
        if d.is_zero_to_prec:
            if d.val >= r:
                return True
            raise PrecisionError(f"cannot decide congruence mod 2^{r}: known only mod 2^{d.val}")
        return d.val >= r
    return rational(d).val >= r


def residue(x, r: int) -> Rational2:
    """Canonical representative of ``x`` modulo ``2**r``.

    With ``m = max(0, -v(x))`` the representative lies in
    ``2**-m * [0, 2**(r+m))``; so ``19/2`` stays ``19/2`` mod 16 while
    ``51/2`` reduces to it.
    """
    x = rational(x)
    if x.val >= r:
        return ZERO
    m = max(0, -x.val)
    mod = 1 << (r + m)
    # x * 2^m = numerator / (denominator >> m), odd denominator
    rep = (x.numerator * pow(x.denominator >> m, -1, mod)) % mod
    return Rational2._make(rep, 1 << m)


# --- truncated 2-adics -------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Padic2:
    """Ball ``2**val * (unit + 2**prec * Z_2)``.

    When ``is_zero_to_prec`` is set the value is only known to lie in
    ``2**val * Z_2`` (``val`` is then an absolute precision, ``+inf`` for an
    exact zero) and ``unit``/``prec`` are 0.
    """

    val: ValExponent
    unit: int
    prec: int
    is_zero_to_prec: bool = False

    @staticmethod
    def zero(abs_prec: ValExponent = INF) -> Padic2:
        return Padic2(abs_prec, 0, 0, True)

    @property
    def abs_prec(self) -> ValExponent:
        """Absolute precision: the value is known modulo ``2**abs_prec``."""
        if self.is_zero_to_prec:
            return self.val
        return self.val + self.prec

    def to_rational(self) -> Rational2:
        """A rational representative of the ball (the one with 0 <= unit < 2**prec)."""
        if self.is_zero_to_prec:
            return ZERO
        return Rational2(self.unit) * pow2(self.val)

    def reduce(self, prec: int) -> Padic2:
        """Drop relative precision to ``prec`` bits."""
        if self.is_zero_to_prec or prec >= self.prec:
            return self
        return Padic2(self.val, self.unit % (1 << prec), prec)

    def with_abs_prec(self, a: ValExponent) -> Padic2:
        """Drop absolute precision to ``a`` (no-op if already coarser)."""
        if a >= self.abs_prec:
            return self
        if self.is_zero_to_prec or self.val >= a:
            return Padic2.zero(a)
        p = a - self.val
        return Padic2(self.val, self.unit % (1 << p), p)

    def __str__(self) -> str:
        if self.is_zero_to_prec:
            return "0" if self.val == INF else f"O(2^{self.val})"
        return f"2^{self.val}*({self.unit} + O(2^{self.prec}))"

    def __neg__(self) -> Padic2:
        if self.is_zero_to_prec:
            return self
        return Padic2(self.val, (-self.unit) % (1 << self.prec), self.prec)

    def __add__(self, other):
        o = _coerce_padic(other, self)
        if o is None:
            return NotImplemented
        return _padd(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_padic(other, self)
        if o is None:
            return NotImplemented
        return _padd(self, -o)

    def __rsub__(self, other):
        o = _coerce_padic(other, self)
        if o is None:
            return NotImplemented
        return _padd(o, -self)

    def __mul__(self, other):
        o = _coerce_padic(other, self)
        if o is None:
            return NotImplemented
        return _pmul(self, o)

    __rmul__ = __mul__

    def inverse(self) -> Padic2:
        if self.is_zero_to_prec:
            raise ZeroDivisionError(f"inverse of a value indistinguishable from 0 ({self})")
        return Padic2(-self.val, pow(self.unit, -1, 1 << self.prec), self.prec)

    def __truediv__(self, other):
        o = _coerce_padic(other, self)
        if o is None:
            return NotImplemented
        return _pmul(self, o.inverse())

    def __rtruediv__(self, other):
        o = _coerce_padic(other, self)
        if o is None:
            return NotImplemented
        return _pmul(o, self.inverse())

    def __pow__(self, e: int) -> Padic2:
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = trunc(ONE, max(self.prec, 1))
        base = self
        while e:
            if e & 1:
                result = _pmul(result, base)
            base = _pmul(base, base)
            e >>= 1
        return result


def trunc(x, N: int = DEFAULT_PRECISION) -> Padic2:
    """The ball of relative precision ``N`` around the exact value ``x``."""
    if N < 1:
        raise ValueError("precision must be positive")
    x = rational(x)
    if x.numerator == 0:
        return Padic2.zero()
    num, den = x.numerator, x.denominator
    vn, vd = _v2_int(num), _v2_int(den)
    mod = 1 << N
    unit = ((num >> vn) * pow(den >> vd, -1, mod)) % mod
    return Padic2(vn - vd, unit, N)


def _coerce_padic(x, ref: Padic2) -> Padic2 | None:
    if isinstance(x, Padic2):
        return x
    r = _as_rational(x)
    if r is None:
        return None
    if r.numerator == 0:
        return Padic2.zero()
    # enough digits for both relative (mul) and absolute (add) use against ref
    need = ref.prec
    if ref.abs_prec != INF:
        need = max(need, ref.abs_prec - r.val)
    elif ref.is_zero_to_prec:
        need = DEFAULT_PRECISION
    return trunc(r, max(int(need), 1))


def _pmul(a: Padic2, b: Padic2) -> Padic2:
    if a.is_zero_to_prec or b.is_zero_to_prec:
        return Padic2.zero(a.val + b.val)
    p = min(a.prec, b.prec)
    return Padic2(a.val + b.val, (a.unit * b.unit) % (1 << p), p)


def _padd(a: Padic2, b: Padic2) -> Padic2:
    if a.is_zero_to_prec:
        return b.with_abs_prec(a.val)
    if b.is_zero_to_prec:
        return a.with_abs_prec(b.val)
    A = min(a.abs_prec, b.abs_prec)
    m = min(a.val, b.val)
    s = (a.unit << (a.val - m)) + (b.unit << (b.val - m))
    width = A - m
    s %= 1 << width
    if s == 0:
        return Padic2.zero(A)
    v = _v2_int(s)
    p = width - v
    return Padic2(m + v, s >> v, p)
