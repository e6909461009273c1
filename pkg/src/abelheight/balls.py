"""Rigorous ball arithmetic on top of gmpy2/MPFR.

A :class:`BallReal` is a midpoint at a chosen working precision plus a
nonnegative error radius.  Every operation returns a ball containing the
exact image of every point of the input balls: midpoints are computed with
round-to-nearest (error <= 1 ulp, added to the radius), radius arithmetic
is done at low precision with upward rounding, and quantities that must be
under- rather than over-estimated use downward rounding.

All mpfr arithmetic goes through explicit gmpy2 contexts; bare Python
operators on mpfr values would silently round at the global 53-bit context
and are never used on midpoints.

Default working precision is 128 bits; the analytic entry points of the
library take a ``precision`` argument and hand it down here.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

from .errors import ValidationError

DEFAULT_PRECISION = 128

_RAD_PREC = 40

_ctx_cache: dict = {}


def _ctx(prec, rounding):
    key = (prec, rounding)
    ctx = _ctx_cache.get(key)
    if ctx is None:
        ctx = gmpy2.context(precision=prec, round=rounding)
        _ctx_cache[key] = ctx
    return ctx


def _mid(prec):
    return _ctx(prec, gmpy2.RoundToNearest)


def _dn(prec):
    return _ctx(prec, gmpy2.RoundDown)


def _upx(prec):
    return _ctx(prec, gmpy2.RoundUp)


_up = _ctx(_RAD_PREC, gmpy2.RoundUp)
_down = _ctx(_RAD_PREC, gmpy2.RoundDown)
_ZERO = gmpy2.mpfr(0)


def _pow2(e: int):
    # exact scaling of 1 by 2^e
    if e >= 0:
        return gmpy2.mul_2exp(gmpy2.mpfr(1), e)
    return gmpy2.div_2exp(gmpy2.mpfr(1), -e)


def _ulp(m, prec: int):
    """An upper bound for the rounding error of a correctly rounded m."""
    if m == 0:
        return _ZERO
    return _pow2(gmpy2.get_exp(m) - prec + 1)


def _neg_exact(m):
    # negation is exactly representable at the operand's precision
    return _ctx(max(m.precision, 2), gmpy2.RoundToNearest).sub(_ZERO, m)


def _abs_up(m):
    """|m| rounded up at radius precision."""
    return m if m >= 0 else _up.sub(_ZERO, m)


def _abs_exact(m):
    return m if m >= 0 else _neg_exact(m)


def _to_exact(x):
    """Exact mpz/mpq/mpfr view of supported scalar types."""
    if isinstance(x, (int, type(gmpy2.mpz(0)))):
        return gmpy2.mpz(x)
    if isinstance(x, Fraction):
        return gmpy2.mpq(x.numerator, x.denominator)
    if isinstance(x, (type(gmpy2.mpq(0)), type(gmpy2.mpfr(0)))):
        return x
    if isinstance(x, float):
        return gmpy2.mpfr(x, 53)
    raise ValidationError(f"cannot convert {type(x).__name__} to a ball")


class BallReal:
    """Midpoint-radius real interval with rigorous propagation."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad, prec):
        self.mid = mid
        self.rad = rad
        self.prec = prec

    # -- construction --------------------------------------------------

    @classmethod
    def exact(cls, x, prec=DEFAULT_PRECISION) -> "BallReal":
        v = _to_exact(x)
        mid = _mid(prec).add(v, _ZERO)
        if mid == v:
            return cls(mid, _ZERO, prec)
        return cls(mid, _ulp(mid, prec), prec)

    @classmethod
    def from_midrad(cls, mid, rad, prec=DEFAULT_PRECISION) -> "BallReal":
        mv = _to_exact(mid)
        m = _mid(prec).add(mv, _ZERO)
        extra = _ulp(m, prec) if m != mv else _ZERO
        r = _up.add(_up.add(_to_exact(rad), _ZERO), extra)
        if r < 0:
            raise ValidationError("radius must be nonnegative")
        return cls(m, r, prec)

    @classmethod
    def from_endpoints(cls, lo, hi, prec=DEFAULT_PRECISION) -> "BallReal":
        lo = _dn(prec).add(_to_exact(lo), _ZERO)
        hi = _upx(prec).add(_to_exact(hi), _ZERO)
        if lo > hi:
            raise ValidationError("empty interval")
        mid = _mid(prec).div(_mid(prec).add(lo, hi), 2)
        rad = _up.maxnum(_up.sub(hi, mid), _up.sub(mid, lo))
        return cls(mid, rad, prec)

    @classmethod
    def pi(cls, prec=DEFAULT_PRECISION) -> "BallReal":
        m = _mid(prec).const_pi()
        return cls(m, _ulp(m, prec), prec)

    # -- views -----------------------------------------------------------

    def lower(self):
        return _dn(self.prec).sub(self.mid, self.rad) if self.rad else self.mid

    def upper(self):
        return _upx(self.prec).add(self.mid, self.rad) if self.rad else self.mid

    def magnitude(self):
        """Upper bound for |x| over the ball."""
        return _up.add(_abs_up(self.mid), self.rad)

    def mignitude(self):
        """Lower bound for |x| over the ball (0 if the ball straddles 0)."""
        lo = _down.sub(_abs_exact(self.mid), self.rad)
        return lo if lo > 0 else _ZERO

    def contains_zero(self) -> bool:
        return _abs_exact(self.mid) <= self.rad

    def contains(self, x) -> bool:
        """Exact membership test for int/Fraction (no rounding involved)."""
        v = _to_exact(x)
        m, r = gmpy2.mpq(self.mid), gmpy2.mpq(self.rad)
        return m - r <= v <= m + r

    def is_positive(self) -> bool:
        return self.lower() > 0

    def is_negative(self) -> bool:
        return self.upper() < 0

    def __le__(self, other) -> bool:
        """Certainly <=: every point of self <= every point of other."""
        other = _coerce(other, self.prec)
        return self.upper() <= other.lower()

    def __lt__(self, other) -> bool:
        other = _coerce(other, self.prec)
        return self.upper() < other.lower()

    def overlaps(self, other) -> bool:
        other = _coerce(other, self.prec)
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"BallReal({self.mid}, {float(self.rad):.3e})"

    def __str__(self):
        return f"{self.mid} +/- {float(self.rad):.2e}"

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return BallReal(_neg_exact(self.mid), self.rad, self.prec)

    def __abs__(self):
        if not self.contains_zero():
            return BallReal(_abs_exact(self.mid), self.rad, self.prec)
        return BallReal.from_endpoints(_ZERO, self.magnitude(), self.prec)

    def __add__(self, other):
        other = _coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        m = _mid(prec).add(self.mid, other.mid)
        r = _up.add(_up.add(self.rad, other.rad), _ulp(m, prec))
        return BallReal(m, r, prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other, self.prec))

    def __rsub__(self, other):
        return (-self) + _coerce(other, self.prec)

    def __mul__(self, other):
        other = _coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        m = _mid(prec).mul(self.mid, other.mid)
        r = _up.add(
            _up.add(_up.mul(_abs_up(self.mid), other.rad), _up.mul(_abs_up(other.mid), self.rad)),
            _up.add(_up.mul(self.rad, other.rad), _ulp(m, prec)),
        )
        return BallReal(m, r, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        bm_lo = other.mignitude()
        if bm_lo <= 0:
            raise ZeroDivisionError("division by a ball containing zero")
        m = _mid(prec).div(self.mid, other.mid)
        num = _up.add(_up.mul(self.rad, _abs_up(other.mid)), _up.mul(_abs_up(self.mid), other.rad))
        r = _up.add(_up.div(num, _down.mul(_down.add(bm_lo, _ZERO), _abs_down(other.mid))), _ulp(m, prec))
        return BallReal(m, r, prec)

    def __rtruediv__(self, other):
        return _coerce(other, self.prec) / self

    def __pow__(self, n: int):
        if n < 0:
            return _coerce(1, self.prec) / self ** (-n)
        out = _coerce(1, self.prec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- elementary functions ----------------------------------------------

    def sqrt(self):
        lo, hi = self.lower(), self.upper()
        if hi < 0:
            raise ValidationError("sqrt of a negative ball")
        lo = lo if lo > 0 else _ZERO
        return BallReal.from_endpoints(_dn(self.prec).sqrt(lo), _upx(self.prec).sqrt(hi), self.prec)

    def exp(self):
        m = _mid(self.prec).exp(self.mid)
        # |e^x - e^mid| <= e^(mid + rad) * rad
        bound = _up.mul(_up.exp(_up.add(self.mid, self.rad)), self.rad)
        return BallReal(m, _up.add(bound, _ulp(m, self.prec)), self.prec)

    def log(self):
        if self.lower() <= 0:
            raise ValidationError("log of a ball touching (-inf, 0]")
        m = _mid(self.prec).log(self.mid)
        bound = _up.div(self.rad, _down.sub(self.mid, self.rad))
        return BallReal(m, _up.add(bound, _ulp(m, self.prec)), self.prec)

    def sin(self):
        m = _mid(self.prec).sin(self.mid)
        r = _up.add(self.rad, _ulp(m, self.prec))
        return BallReal(m, _up.minnum(r, gmpy2.mpfr(2)), self.prec)

    def cos(self):
        m = _mid(self.prec).cos(self.mid)
        r = _up.add(self.rad, _ulp(m, self.prec))
        return BallReal(m, _up.minnum(r, gmpy2.mpfr(2)), self.prec)

    def union(self, other):
        other = _coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        lo = _dn(prec).minnum(self.lower(), other.lower())
        hi = _upx(prec).maxnum(self.upper(), other.upper())
        return BallReal.from_endpoints(lo, hi, prec)

    def widen(self, extra):
        """Add a nonnegative bound to the radius."""
        extra = extra.magnitude() if isinstance(extra, BallReal) else gmpy2.mpfr(abs(extra))
        return BallReal(self.mid, _up.add(self.rad, extra), self.prec)


def _abs_down(m):
    """|m| rounded down at radius precision."""
    return m if m >= 0 else _down.sub(_ZERO, m)


def _coerce(x, prec) -> BallReal:
    if isinstance(x, BallReal):
        return x
    return BallReal.exact(x, prec)


def ball_max(balls):
    """Interval max of a nonempty sequence of BallReals."""
    balls = list(balls)
    prec = max(b.prec for b in balls)
    lo = balls[0].lower()
    hi = balls[0].upper()
    for b in balls[1:]:
        lo = _dn(prec).maxnum(lo, b.lower())
        hi = _upx(prec).maxnum(hi, b.upper())
    return BallReal.from_endpoints(lo, hi, prec)


def ball_sum(balls, prec=DEFAULT_PRECISION):
    acc = BallReal.exact(0, prec)
    for b in balls:
        acc = acc + b
    return acc


def log_int(n: int, prec=DEFAULT_PRECISION) -> BallReal:
    if n <= 0:
        raise ValidationError("log_int expects a positive integer")
    return BallReal.exact(n, prec).log()


class BallComplex:
    """Complex ball with independent real and imaginary BallReal parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: BallReal, im: BallReal):
        self.re = re
        self.im = im

    @classmethod
    def exact(cls, re, im=0, prec=DEFAULT_PRECISION) -> "BallComplex":
        if isinstance(re, complex):
            re, im = re.real, re.imag
        return cls(BallReal.exact(re, prec), BallReal.exact(im, prec))

    @property
    def prec(self):
        return max(self.re.prec, self.im.prec)

    def __repr__(self):
        return f"({self.re!s}) + ({self.im!s})*i"

    def _coerce(self, other) -> "BallComplex":
        if isinstance(other, BallComplex):
            return other
        if isinstance(other, complex):
            return BallComplex.exact(other.real, other.imag, self.prec)
        return BallComplex(_coerce(other, self.prec), BallReal.exact(0, self.prec))

    def __add__(self, other):
        other = self._coerce(other)
        return BallComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return BallComplex(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BallReal)):
            return BallComplex(self.re * other, self.im * other)
        other = self._coerce(other)
        return BallComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, BallReal)):
            return BallComplex(self.re / other, self.im / other)
        other = self._coerce(other)
        den = other.abs2()
        num = self * other.conj()
        return BallComplex(num.re / den, num.im / den)

    def conj(self):
        return BallComplex(self.re, -self.im)

    def abs2(self) -> BallReal:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> BallReal:
        return self.abs2().sqrt()

    def exp(self) -> "BallComplex":
        r = self.re.exp()
        return BallComplex(r * self.im.cos(), r * self.im.sin())

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def contains(self, re, im=0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def __pow__(self, n: int):
        if n < 0:
            raise ValidationError("negative complex ball power")
        out = BallComplex.exact(1, 0, self.prec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out
