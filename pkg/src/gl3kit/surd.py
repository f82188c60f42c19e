"""Exact scalars of the form q*sqrt(r) with q a Gaussian rational.

Every Clebsch-Gordan coefficient used here, and every entry of a Wigner
matrix at a signed permutation matrix, has this shape.  Products stay
exact; sums stay exact only when the radicands agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational

_SMALL_PRIMES = [p for p in range(2, 400) if all(p % q for q in range(2, isqrt(p) + 1))]


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, f) with n = f**2 * s and s squarefree over the small primes."""
    if n == 0:
        return 0, 0
    outside, inside = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        outside *= p ** (e // 2)
        inside *= p ** (e % 2)
    # remaining cofactor: pull out a perfect square if there is one
    r = isqrt(n)
    if r * r == n:
        outside *= r
    else:
        inside *= n
    return inside, outside


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@dataclass(frozen=True)
class SurdScalar:
    """The exact number (re + i*im) * sqrt(rad) with rad a squarefree integer."""

    re: Fraction
    im: Fraction
    rad: int

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("radicand must be nonnegative")

    @staticmethod
    def make(q=1, r=1, im=0) -> "SurdScalar":
        """Build (q + i*im)*sqrt(r) for rationals q, im and a nonnegative rational r."""
        q, im, r = _as_fraction(q), _as_fraction(im), _as_fraction(r)
        if r < 0:
            raise ValueError("radicand must be nonnegative")
        if r == 0 or (q == 0 and im == 0):
            return ZERO
        # sqrt(n/m) = sqrt(n*m)/m
        s, f = _squarefree_split(r.numerator * r.denominator)
        scale = Fraction(f, r.denominator)
        return SurdScalar(q * scale, im * scale, s)

    @staticmethod
    def sqrt(r) -> "SurdScalar":
        return SurdScalar.make(1, r)

    @property
    def is_zero(self) -> bool:
        return self.rad == 0 or (self.re == 0 and self.im == 0)

    def __complex__(self) -> complex:
        root = self.rad ** 0.5
        return complex(float(self.re) * root, float(self.im) * root)

    def __float__(self) -> float:
        if self.im != 0:
            raise TypeError("SurdScalar has a nonzero imaginary part")
        return float(self.re) * self.rad ** 0.5

    def _coerce(self, other):
        if isinstance(other, SurdSum):
            return NotImplemented
        if isinstance(other, SurdScalar):
            return other
        if isinstance(other, (int, Rational)):
            return SurdScalar.make(other)
        return None

    def __neg__(self):
        return SurdScalar(-self.re, -self.im, self.rad)

    def conjugate(self):
        return SurdScalar(self.re, -self.im, self.rad)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return complex(self) * other
        if self.is_zero or o.is_zero:
            return ZERO
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        s, f = _squarefree_split(self.rad * o.rad)
        return SurdScalar(re * f, im * f, s) if (re or im) else ZERO

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return complex(self) / other
        if o.is_zero:
            raise ZeroDivisionError("division by an exact zero")
        # 1/((a+ib) sqrt(s)) = (a-ib) sqrt(s) / ((a^2+b^2) s)
        norm = (o.re * o.re + o.im * o.im) * o.rad
        inv = SurdScalar(o.re / norm, -o.im / norm, o.rad)
        return self * inv

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return complex(self) + other
        if o.is_zero:
            return self
        if self.is_zero:
            return o
        if o.rad == self.rad:
            re, im = self.re + o.re, self.im + o.im
            return SurdScalar(re, im, self.rad) if (re or im) else ZERO
        return complex(self) + complex(o)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, SurdScalar) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return self.is_zero and o.is_zero
        return (self.re, self.im, self.rad) == (o.re, o.im, o.rad)

    def __hash__(self):
        return hash((0, 0, 0) if self.is_zero else (self.re, self.im, self.rad))

    def __repr__(self):
        if self.is_zero:
            return "0"
        if self.im == 0:
            q = str(self.re)
        elif self.re == 0:
            q = f"{self.im}i"
        else:
            q = f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}i)"
        if self.rad == 1:
            return q
        if q in ("1", "-1"):
            return f"{q[:-1]}sqrt({self.rad})"
        return f"{q}*sqrt({self.rad})"


ZERO = SurdScalar(Fraction(0), Fraction(0), 0)
ONE = SurdScalar(Fraction(1), Fraction(0), 1)
I_UNIT = SurdScalar(Fraction(0), Fraction(1), 1)


def i_power(k: int) -> SurdScalar:
    """Exact i**k."""
    return [ONE, I_UNIT, -ONE, -I_UNIT][k % 4]


class SurdSum:
    """A finite sum of SurdScalars, kept exact under + and *.

    Terms are grouped by radicand.  Square roots of distinct squarefree
    integers are linearly independent over Q(i), so the sum is zero exactly
    when every group is zero.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc: dict[int, SurdScalar] = {}
        for t in terms:
            if not isinstance(t, SurdScalar):
                t = SurdScalar.make(t)
            if t.is_zero:
                continue
            cur = acc.get(t.rad)
            s = t if cur is None else cur + t
            if s.is_zero:
                acc.pop(t.rad, None)
            else:
                acc[t.rad] = s
        self.terms = acc

    @classmethod
    def of(cls, x) -> "SurdSum":
        return x if isinstance(x, SurdSum) else cls([x])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        return SurdSum([*self.terms.values(), *SurdSum.of(other).terms.values()])

    __radd__ = __add__

    def __neg__(self):
        return SurdSum([-t for t in self.terms.values()])

    def __sub__(self, other):
        return self + (-SurdSum.of(other))

    def __rsub__(self, other):
        return SurdSum.of(other) - self

    def __mul__(self, other):
        o = SurdSum.of(other)
        return SurdSum([a * b for a in self.terms.values() for b in o.terms.values()])

    __rmul__ = __mul__

    def conjugate(self) -> "SurdSum":
        return SurdSum([t.conjugate() for t in self.terms.values()])

    def __eq__(self, other):
        try:
            return (self - other).is_zero
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __complex__(self) -> complex:
        return sum((complex(t) for t in self.terms.values()), 0j)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(repr(t) for _, t in sorted(self.terms.items()))
