"""Shared generators for randomized exact tests.

Curves come with rational points by construction: pick the points first,
then solve the two linear conditions for a1, a0 and clear denominators
(y -> c y rescales a_j -> c^2 a_j and keeps the model integral).
"""

import random
from fractions import Fraction

import pytest

from abelheight import jacobian as jac


def make_curve_through(x1, y1, x2, y2, a2, a3, a4, a5):
    """An integral quintic model passing through (x1, y1), (x2, y2), or None."""
    x1, y1, x2, y2 = (Fraction(v) for v in (x1, y1, x2, y2))
    if x1 == x2:
        return None
    r1 = y1 * y1 - (a5 * x1**5 + a4 * x1**4 + a3 * x1**3 + a2 * x1**2)
    r2 = y2 * y2 - (a5 * x2**5 + a4 * x2**4 + a3 * x2**3 + a2 * x2**2)
    a1 = (r1 - r2) / (x1 - x2)
    a0 = r1 - a1 * x1
    c = a1.denominator * a0.denominator
    coeffs = [c * c * a for a in (a0, a1, a2, a3, a4, a5)]
    if any(v.denominator != 1 for v in map(Fraction, coeffs)):
        return None
    try:
        curve = jac.CurveModel.from_coeffs([int(v) for v in coeffs])
    except Exception:
        return None
    return curve, (x1, c * y1), (x2, c * y2)


def random_curve_with_divisor(rng: random.Random, small=False):
    """(curve, degree-2 divisor off the theta divisor), exact over QQ."""
    hi = 4 if small else 7
    while True:
        x1 = rng.randint(-hi, hi)
        x2 = rng.randint(-hi, hi)
        y1 = rng.randint(1, hi)
        y2 = rng.randint(1, hi)
        a5 = rng.choice([1, -1, 2, -2, 3])
        a2, a3, a4 = (rng.randint(-3, 3) for _ in range(3))
        got = make_curve_through(x1, y1, x2, y2, a2, a3, a4, a5)
        if got is None:
            continue
        curve, p1, p2 = got
        D = jac.cantor_add(
            curve,
            jac.embed_point(curve, *p1),
            jac.embed_point(curve, *p2),
        )
        if jac.pdeg(D.u) != 2:
            continue
        return curve, D


@pytest.fixture
def rng():
    return random.Random(20240612)
