"""Certified interval arithmetic for expressions in logarithms of rationals.

Everything here is exact rational arithmetic: ln() of a positive rational is
enclosed between two Fractions whose gap is below a requested 2^-prec, via
the atanh series with an explicit tail bound.  Signs of log expressions are
decided by evaluating at escalating precision; equalities are never decided
numerically.

For bilinear forms  sum c * ln(a) * ln(b)  the canonical form rewrites every
argument as a power of its primitive root (the maximal root that is not a
perfect power).  Two products of logs are treated as equal exactly when
their canonical monomials coincide; a canonically empty form is Zero.  A
nonempty form gets its sign certified by intervals, or Undecidable at the
precision cap, never a wrong sign.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .core import factor_integer, gcd_list

NEGATIVE = "negative"
ZERO = "zero"
POSITIVE = "positive"
UNDECIDABLE = "undecidable"

PRECISION_CAP_BITS_DEFAULT = 4096
PRECISION_START_BITS = 64


def precision_cap_bits() -> int:
    v = os.environ.get("DPIRRED_PRECISION_CAP_BITS")
    return int(v) if v else PRECISION_CAP_BITS_DEFAULT


# ---------------------------------------------------------------------------
# interval endpoints are Fractions; round outward to keep them small


def _floor_to(x: Fraction, prec: int) -> Fraction:
    scale = 1 << prec
    return Fraction((x * scale).__floor__(), scale)


def _ceil_to(x: Fraction, prec: int) -> Fraction:
    scale = 1 << prec
    return Fraction(-((-x * scale).__floor__()), scale)


class IV:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        self.lo = Fraction(lo)
        self.hi = self.lo if hi is None else Fraction(hi)
        if self.lo > self.hi:
            raise ValueError("empty interval")

    def __add__(self, other):
        other = other if isinstance(other, IV) else IV(other)
        return IV(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return IV(-self.hi, -self.lo)

    def __sub__(self, other):
        other = other if isinstance(other, IV) else IV(other)
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, IV) else IV(other)
        ps = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return IV(min(ps), max(ps))

    __rmul__ = __mul__

    def rounded(self, prec: int) -> "IV":
        return IV(_floor_to(self.lo, prec), _ceil_to(self.hi, prec))

    def sign(self) -> str | None:
        """Certified sign, or None when the interval straddles zero."""
        if self.lo > 0:
            return POSITIVE
        if self.hi < 0:
            return NEGATIVE
        if self.lo == self.hi == 0:
            return ZERO
        return None

    def __repr__(self):
        return f"IV({self.lo}, {self.hi})"


def _atanh_bounds(z: Fraction, prec: int) -> IV:
    """atanh(z) for 0 <= z < 1/2, enclosed within 2^-prec."""
    if z == 0:
        return IV(0)
    # terms z^(2k+1)/(2k+1); tail after K terms <= z^(2K+1)/((2K+1)(1-z^2))
    z2 = z * z
    s = Fraction(0)
    term = z
    k = 0
    bound = Fraction(1, 1 << (prec + 2))
    while True:
        tail = term / ((2 * k + 1) * (1 - z2))
        if tail <= bound:
            return IV(s, s + tail).rounded(prec + 2)
        s += term / (2 * k + 1)
        term *= z2
        k += 1


_LN_CACHE: dict[tuple[int, int], IV] = {}


def ln_int_bounds(n: int, prec: int) -> IV:
    """ln(n) for a positive integer, enclosed within ~2^-prec."""
    if n < 1:
        raise ValueError("ln of nonpositive")
    if n == 1:
        return IV(0)
    key = (n, prec)
    if key in _LN_CACHE:
        return _LN_CACHE[key]
    e = n.bit_length() - 1  # 2^e <= n < 2^(e+1)
    m = Fraction(n, 1 << e)  # in [1, 2)
    ln2 = _LN_CACHE.get((2, prec))
    if ln2 is None:
        ln2 = 2 * _atanh_bounds(Fraction(1, 3), prec + e.bit_length() + 2)
        _LN_CACHE[(2, prec)] = ln2
    z = (m - 1) / (m + 1)  # in [0, 1/3)
    out = (e * ln2 + 2 * _atanh_bounds(z, prec + 2)).rounded(prec)
    if len(_LN_CACHE) < 4096:
        _LN_CACHE[key] = out
    return out


def ln_bounds(q: Fraction, prec: int) -> IV:
    q = Fraction(q)
    if q <= 0:
        raise ValueError("ln of nonpositive")
    return (ln_int_bounds(q.numerator, prec + 1) - ln_int_bounds(q.denominator, prec + 1)).rounded(prec)


# ---------------------------------------------------------------------------
# multiplicative structure of rationals


def exponent_vector(q: Fraction) -> dict[int, int]:
    """Map prime -> exponent for a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("needs a positive rational")
    v: dict[int, int] = {}
    for p, e in factor_integer(q.numerator):
        v[p] = v.get(p, 0) + e
    for p, e in factor_integer(q.denominator):
        v[p] = v.get(p, 0) - e
    return {p: e for p, e in v.items() if e}


def primitive_root(q: Fraction) -> tuple[Fraction, int]:
    """Write q > 1 as g^k with g > 1 not a perfect power; returns (g, k)."""
    vec = exponent_vector(q)
    if not vec:
        raise ValueError("q must differ from 1")
    k = gcd_list(vec.values())
    g = Fraction(1)
    for p, e in vec.items():
        g *= Fraction(p) ** (e // k)
    if g < 1:
        # exponent gcd is about magnitudes; flip to the reciprocal root
        g, k = 1 / g, -k
    return g, k


def multiplicative_dependence_ratio(a: Fraction, b: Fraction) -> Fraction | None:
    """The rational r with b = a^r, if it exists (a, b positive, a != 1)."""
    va, vb = exponent_vector(a), exponent_vector(b)
    if not va:
        raise ValueError("a must differ from 1")
    if not vb:
        return Fraction(0)
    if set(va) != set(vb):
        return None
    items = sorted(va.items())
    r = Fraction(vb[items[0][0]], items[0][1])
    for p, e in items:
        if Fraction(vb[p], e) != r:
            return None
    return r


# ---------------------------------------------------------------------------
# formal signed sums of products of logarithms


class LogProduct:
    """Canonical bilinear form  sum c_(g,h) * ln(g) * ln(h)  with g <= h
    primitive (not perfect powers) and > 1.  Built by accumulating terms
    ln(a)*ln(b) with rational a, b > 0."""

    def __init__(self):
        self._coeffs: dict[tuple[Fraction, Fraction], Fraction] = {}

    def add_product(self, a, b, coeff=1) -> "LogProduct":
        a, b, coeff = Fraction(a), Fraction(b), Fraction(coeff)
        if a <= 0 or b <= 0:
            raise ValueError("log arguments must be positive")
        if a == 1 or b == 1 or coeff == 0:
            return self
        ga, ka = primitive_root(a)
        gb, kb = primitive_root(b)
        c = coeff * ka * kb
        key = (ga, gb) if ga <= gb else (gb, ga)
        newc = self._coeffs.get(key, Fraction(0)) + c
        if newc == 0:
            self._coeffs.pop(key, None)
        else:
            self._coeffs[key] = newc
        return self

    def is_canonically_zero(self) -> bool:
        return not self._coeffs

    def terms(self):
        return dict(self._coeffs)

    def interval(self, prec: int) -> IV:
        total = IV(0)
        for (g, h), c in sorted(self._coeffs.items()):
            total = total + c * ln_bounds(g, prec) * ln_bounds(h, prec)
        return total

    def compare(self, cap_bits: int | None = None) -> str:
        """Certified sign of the form: negative | zero | positive | undecidable.

        Zero is reported only from the exact canonical form (a multiplicative
        dependence witness); intervals never certify a tie.
        """
        if self.is_canonically_zero():
            return ZERO
        cap = cap_bits if cap_bits is not None else precision_cap_bits()
        prec = PRECISION_START_BITS
        while True:
            s = self.interval(prec).sign()
            if s == POSITIVE or s == NEGATIVE:
                return s
            if prec >= cap:
                return UNDECIDABLE
            prec = min(2 * prec, cap)

    def __repr__(self):
        ts = ", ".join(f"{c}*ln({g})*ln({h})" for (g, h), c in sorted(self._coeffs.items()))
        return f"LogProduct({ts or '0'})"


def compare_log_product(pairs, cap_bits: int | None = None) -> str:
    """Sign of sum(coeff * ln(a) * ln(b)) over (a, b, coeff) triples."""
    lp = LogProduct()
    for a, b, coeff in pairs:
        lp.add_product(a, b, coeff)
    return lp.compare(cap_bits)
