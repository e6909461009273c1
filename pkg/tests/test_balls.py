"""Inclusion properties of the ball arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelheight.balls import BallComplex, BallReal, ball_max, log_int

dyadic = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=2**12
)


@given(dyadic, dyadic)
@settings(max_examples=300, deadline=None)
def test_field_ops_inclusion(fa, fb):
    a = BallReal.exact(fa, 96)
    b = BallReal.exact(fb, 96)
    assert (a + b).contains(fa + fb)
    assert (a - b).contains(fa - fb)
    assert (a * b).contains(fa * fb)
    if fb != 0:
        assert (a / b).contains(fa / fb)
    assert abs(a).contains(abs(fa))
    assert (a**3).contains(fa**3)


@given(dyadic)
@settings(max_examples=120, deadline=None)
def test_two_precision_nesting(fa):
    lo = BallReal.exact(fa, 64).exp()
    hi = BallReal.exact(fa, 160).exp()
    # the higher-precision ball sits inside the lower one (up to one ulp slack)
    assert float(hi.lower()) >= float(lo.lower()) * (1 + 1e-15) - 1e-300 or lo.lower() <= hi.lower()
    assert hi.upper() <= lo.upper()


def test_exp_log_sqrt_roundtrips():
    x = BallReal.exact(Fraction(7, 5), 160)
    assert x.exp().log().contains(Fraction(7, 5))
    s = BallReal.exact(2, 200).sqrt()
    assert (s * s).contains(2)
    assert float(s.rad) < 1e-55


def test_pi_and_log_int():
    pi = BallReal.pi(128)
    # 2646693125139304345 / 842468587426513207 is a convergent of pi
    assert abs(float(pi.mid) - 3.14159265358979) < 1e-13
    assert float(pi.rad) < 1e-37
    l3 = log_int(3, 128)
    assert abs(float(l3.mid) - 1.0986122886681098) < 1e-15


def test_division_by_zero_ball():
    a = BallReal.exact(1, 64)
    z = BallReal.from_midrad(0, 0.25, 64)
    with pytest.raises(ZeroDivisionError):
        a / z


def test_log_of_nonpositive_ball():
    from abelheight.errors import ValidationError

    with pytest.raises(ValidationError):
        BallReal.from_midrad(Fraction(1, 10), 0.5, 64).log()


def test_complex_ops():
    z = BallComplex.exact(Fraction(1, 2), Fraction(1, 3), 128)
    w = z * z.conj()
    assert w.re.contains(Fraction(13, 36)) and w.im.contains(0)
    q = z / z
    assert q.contains(1, 0)
    e = BallComplex(BallReal.exact(0, 128), BallReal.pi(128)).exp()
    assert abs(float(e.re.mid) + 1) < 1e-35
    assert e.im.contains_zero() or abs(float(e.im.mid)) < 1e-35


def test_ball_max_and_union():
    a = BallReal.exact(Fraction(1, 3), 128)
    b = BallReal.exact(Fraction(22, 7), 128)
    m = ball_max([a, b])
    assert m.contains(Fraction(22, 7))
    u = a.union(b)
    assert u.contains(Fraction(1, 3)) and u.contains(Fraction(22, 7))


def test_certain_comparisons():
    a = BallReal.from_midrad(1, 0.1, 64)
    b = BallReal.from_midrad(2, 0.1, 64)
    assert a <= b and a < b and not (b <= a)
    c = BallReal.from_midrad(Fraction(105, 100), 0.1, 64)
    assert not (a < c) and not (c < a) and a.overlaps(c)
