"""Exact arithmetic substrate: rationals inside each completion of Q.

Everything here is exact. Rational numbers are stdlib ``fractions.Fraction``
(already stored in lowest terms with a positive denominator), signs are plain
ints in {+1, -1}, and power series are rational-coefficient arrays truncated
at a fixed degree.

The base field is Q throughout; a "place" is a finite prime (2 allowed) or
the real place. The complex place is excluded on purpose: every symbol is
trivial there, so nothing would be computed. p = 2 is supported by this
module only; the cover/Weil machinery elsewhere requires odd residue
characteristic.
"""

from __future__ import annotations

import functools
from fractions import Fraction

import numpy as np

from .errors import DomainError

Rational = Fraction


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, and exact numeric strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"not an exact rational: {x!r}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of |n| (n must be nonzero); trial division."""
    n = abs(n)
    if n == 0:
        raise DomainError("0 has no prime factorization")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2 if d > 2 else 1
    if n > 1:
        out.append(n)
    return out


class Place:
    """A place of Q: ``Place.finite(p)`` for a prime p, or ``Place.real()``.

    Immutable and hashable; ``p`` is None at the real place.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None):
        if p is not None and not is_prime(p):
            raise DomainError(f"finite place needs a prime, got {p}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("Place is immutable")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @property
    def is_real(self) -> bool:
        return self.p is None

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def is_odd(self) -> bool:
        return self.p is not None and self.p != 2

    def __eq__(self, other):
        return isinstance(other, Place) and self.p == other.p

    def __hash__(self):
        return hash(("Place", self.p))

    def __repr__(self):
        return "Place.real()" if self.p is None else f"Place.finite({self.p})"

    def __str__(self):
        return "inf" if self.p is None else str(self.p)


def valuation_and_unit(x, p: int) -> tuple[int, Fraction]:
    """Write x = p^v * u with u a p-adic unit; returns (v, u).

    Args:
        x: nonzero rational.
        p: a prime (2 allowed).
    Raises:
        DomainError: on zero input or non-prime p.
    """
    x = as_fraction(x)
    if x == 0:
        raise DomainError("valuation of 0 is undefined")
    if not is_prime(p):
        raise DomainError(f"not a prime: {p}")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _unit_residue(u: Fraction, modulus: int) -> int:
    # u must have numerator and denominator coprime to the modulus
    return (u.numerator * pow(u.denominator, -1, modulus)) % modulus


def legendre(a, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p: +1 iff a is a nonzero square mod p.

    Accepts ints and p-unit rationals. Raises DomainError if p is not an odd
    prime or if a is not a unit at p.
    """
    if p == 2 or not is_prime(p):
        raise DomainError(f"legendre needs an odd prime, got {p}")
    a = as_fraction(a)
    if a.numerator % p == 0 or a.denominator % p == 0:
        raise DomainError(f"{a} is not a unit at {p}")
    r = pow(_unit_residue(a, p), (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _eps2(u: Fraction) -> int:
    # (u - 1)/2 mod 2 for a 2-adic unit u, read off from u mod 4
    return 0 if _unit_residue(u, 4) == 1 else 1


def _omega2(u: Fraction) -> int:
    # (u^2 - 1)/8 mod 2 for a 2-adic unit u, read off from u mod 8
    return 0 if _unit_residue(u, 8) in (1, 7) else 1


def hilbert(a, b, place: Place) -> int:
    """The local Hilbert symbol (a, b) at the given place.

    +1 iff z^2 = a x^2 + b y^2 has a nonzero solution in the completion.
    Bilinear on square classes, symmetric, and (a, -a) = +1 everywhere.

    Args:
        a, b: nonzero rationals.
        place: finite prime (2 allowed) or real.
    Raises:
        DomainError: on zero input.
    """
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise DomainError("hilbert symbol needs nonzero arguments")
    if place.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = place.p
    va, ua = valuation_and_unit(a, p)
    vb, ub = valuation_and_unit(b, p)
    if p != 2:
        s = 1
        if va % 2 and vb % 2:
            s *= legendre(-1, p)
        if vb % 2:
            s *= legendre(ua, p)
        if va % 2:
            s *= legendre(ub, p)
        return s
    e = _eps2(ua) * _eps2(ub) + va * _omega2(ub) + vb * _omega2(ua)
    return -1 if e % 2 else 1


@functools.lru_cache(maxsize=None)
def _mod_p5_solvable(a: int, b: int, p: int) -> bool:
    # Primitive solution of a x^2 + b y^2 = z^2 mod p^5. Any primitive triple
    # has a unit coordinate; scaling by its inverse pins that coordinate to 1,
    # so three sweeps with one coordinate fixed at 1 are exhaustive.
    mod = p**5
    r = np.arange(mod, dtype=np.int64)
    sq = np.unique((r * r) % mod)
    by2 = (b % mod) * ((r * r) % mod) % mod
    ax2 = (a % mod) * ((r * r) % mod) % mod
    if np.isin((a + by2) % mod, sq).any():  # x = 1
        return True
    if np.isin((ax2 + b) % mod, sq).any():  # y = 1
        return True
    return bool(np.isin((1 - ax2) % mod, np.unique(by2)).any())  # z = 1


def solvability_oracle(a, b, place: Place) -> int:
    """Brute-force Hilbert symbol: searches for solutions of z^2 = a x^2 + b y^2.

    At a finite place this enumerates primitive solutions mod p^5 after
    clearing denominators by squares and stripping even prime powers (both
    are exact square scalings of the equation, under which solvability is
    invariant). The resulting coefficients have valuation 0 or 1, for which
    a primitive solution mod p^5 lifts to the completion (the gradient of
    z^2 - a x^2 - b y^2 has valuation at most 2 at such a point, and p^5
    exceeds twice that). At the real place it is sign analysis.

    Independent of the symbol formulas in :func:`hilbert`; used to pin them.
    """
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise DomainError("solvability oracle needs nonzero arguments")
    if place.is_real:
        # both coefficients negative forces x = y = z = 0 over R
        return -1 if (a < 0 and b < 0) else 1
    p = place.p

    def reduce(x: Fraction) -> int:
        n = x.numerator * x.denominator  # x times the square den^2
        v, u = valuation_and_unit(n, p)
        return p ** (v % 2) * u.numerator

    mod = p**5
    return 1 if _mod_p5_solvable(reduce(a) % mod, reduce(b) % mod, p) else -1


def reciprocity_product(a, b) -> int:
    """Product of (a, b)_v over the real place and all primes dividing
    2 * num * den of a and b. The global product formula says this is +1;
    the value is computed honestly, not assumed."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise DomainError("reciprocity product needs nonzero arguments")
    primes = {2}
    for x in (a, b):
        for n in (x.numerator, x.denominator):
            if abs(n) != 1:
                primes.update(prime_factors(n))
    result = hilbert(a, b, Place.real())
    for p in sorted(primes):
        result *= hilbert(a, b, Place.finite(p))
    return result


def same_square_class(a, b, place: Place) -> bool:
    """True iff a/b is a square in the completion at ``place``."""
    a, b = as_fraction(a), as_fraction(b)
    if a == 0 or b == 0:
        raise DomainError("square class of 0 is undefined")
    r = a / b
    if place.is_real:
        return r > 0
    v, u = valuation_and_unit(r, place.p)
    if v % 2:
        return False
    if place.p == 2:
        return _unit_residue(u, 8) == 1
    return legendre(u, place.p) == 1


def square_class_rep(a, place: Place) -> Fraction:
    """Canonical representative of the square class of a at ``place``.

    Real: +1 or -1. Odd p: one of 1, n, p, n*p with n the least quadratic
    non-residue. p = 2: 2^(v mod 2) times the unit's residue mod 8.
    """
    a = as_fraction(a)
    if a == 0:
        raise DomainError("square class of 0 is undefined")
    if place.is_real:
        return Fraction(1 if a > 0 else -1)
    p = place.p
    v, u = valuation_and_unit(a, p)
    if p == 2:
        return Fraction(2 ** (v % 2) * _unit_residue(u, 8))
    if legendre(u, p) == 1:
        unit = 1
    else:
        unit = 2
        while legendre(unit, p) == 1:
            unit += 1
    return Fraction(p ** (v % 2) * unit)


class TruncatedSeries:
    """Formal power series over Q, truncated at a fixed degree D.

    Coefficients are Fractions indexed 0..D; arithmetic never reads past
    degree D. All binary operations require equal truncation degrees.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, degree: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if degree is not None:
            if degree < 0:
                raise DomainError("truncation degree must be nonnegative")
            if len(cs) > degree + 1:
                cs = cs[: degree + 1]
            cs.extend([Fraction(0)] * (degree + 1 - len(cs)))
        elif not cs:
            raise DomainError("empty coefficient list and no degree")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def one(cls, degree: int) -> "TruncatedSeries":
        return cls([1], degree=degree)

    @classmethod
    def from_polynomial(cls, coeffs, degree: int) -> "TruncatedSeries":
        return cls(list(coeffs), degree=degree)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def _check(self, other: "TruncatedSeries"):
        if self.degree != other.degree:
            raise DomainError(
                f"truncation degrees differ: {self.degree} vs {other.degree}"
            )

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        return TruncatedSeries(
            [x + y for x, y in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return TruncatedSeries([-x for x in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs])
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        d = self.degree
        out = [Fraction(0)] * (d + 1)
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j in range(d + 1 - i):
                cj = other.coeffs[j]
                if cj:
                    out[i + j] += ci * cj
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse mod X^(D+1); constant term must be nonzero."""
        a0 = self.coeffs[0]
        if a0 == 0:
            raise DomainError("series with zero constant term is not invertible")
        d = self.degree
        out = [Fraction(0)] * (d + 1)
        out[0] = 1 / a0
        for n in range(1, d + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc += self.coeffs[k] * out[n - k]
            out[n] = -acc / a0
        return TruncatedSeries(out)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"
