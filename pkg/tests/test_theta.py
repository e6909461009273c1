"""Theta evaluation, the archimedean height, and the explicit inequalities."""

from fractions import Fraction

import mpmath
import pytest

from abelheight import theta as th
from abelheight.balls import BallReal
from abelheight.errors import HypothesisError, LemmaViolationError, ValidationError

H = Fraction(1, 2)


def random_reduced_tau(rng, prec=128, min_im1=None, max_im1=6):
    """A random matrix satisfying the reduction inequalities used by the bounds."""
    lo = float(min_im1) if min_im1 is not None else 0.87
    b1 = Fraction(rng.randint(int(lo * 64) + 1, int(max_im1 * 64)), 64)
    b12 = Fraction(rng.randint(0, int(b1 * 32)), 64)  # 0 <= b12 <= b1/2
    b2 = b1 + Fraction(rng.randint(0, 256), 64)
    re = lambda: Fraction(rng.randint(-32, 32), 64)
    return th.PeriodMatrix.from_entries((re(), b1), (re(), b12), (re(), b2), prec)


def theta_1d_oracle(a, b, z, t, prec=220, cutoff=60):
    """Independent one-variable series; mpmath, plain summation."""
    with mpmath.workprec(prec):
        s = mpmath.mpc(0)
        for n in range(-cutoff, cutoff + 1):
            u = mpmath.mpf(n) + mpmath.mpf(a.numerator) / a.denominator
            zz = mpmath.mpc(z) + mpmath.mpf(b.numerator) / b.denominator
            s += mpmath.e ** (2j * mpmath.pi * (u * u * t / 2 + u * zz))
        return s


def test_odd_characteristic_vanishes_at_zero():
    tau = th.PeriodMatrix.from_entries((0, 2), (0, H), (0, 3), 160)
    v = th.theta_constant(th.LAMBDA_CHARACTERISTIC, tau, 160)
    assert v.contains_zero()
    assert float(v.re.rad) <= 2**-100 and float(v.im.rad) <= 2**-100


def test_parity_of_characteristics():
    assert th.LAMBDA_CHARACTERISTIC.parity() == -1
    assert all(c.is_even() for c in th.EVEN_CHARACTERISTICS)
    assert len(th.EVEN_CHARACTERISTICS) == 10
    assert len({(c.a, c.b) for c in th.EVEN_CHARACTERISTICS}) == 10


def test_theta_evenness_in_z(rng):
    tau = random_reduced_tau(rng)
    from abelheight.balls import BallComplex

    z = (BallComplex.exact(Fraction(1, 5), Fraction(1, 7), 128),
         BallComplex.exact(Fraction(-2, 7), Fraction(1, 9), 128))
    mz = (-z[0], -z[1])
    a = th.theta(th.LAMBDA_CHARACTERISTIC, z, tau, 128)
    b = th.theta(th.LAMBDA_CHARACTERISTIC, mz, tau, 128)
    # odd characteristic: theta(-Z) = -theta(Z)
    assert abs(a).overlaps(abs(b))
    assert (a + b).contains_zero() or float(abs((a + b).re).magnitude()) < 1e-30


def test_diagonal_factorization_against_1d_oracle():
    tau = th.PeriodMatrix.from_entries((0, 2), (0, 0), (0, 3), 160)
    for char in th.EVEN_CHARACTERISTICS:
        got = th.theta_constant(char, tau, 160)
        want = theta_1d_oracle(char.a[0], char.b[0], 0, 2j) * theta_1d_oracle(
            char.a[1], char.b[1], 0, 3j
        )
        scale = 1 + abs(complex(want))
        assert abs(complex(float(got.re.mid), float(got.im.mid)) - complex(want)) < 1e-25 * scale


def test_theta_precision_nesting(rng):
    tau = random_reduced_tau(rng, 96)
    tau2 = th.PeriodMatrix.from_entries(
        (tau.tau11.re.mid, tau.tau11.im.mid),
        (tau.tau12.re.mid, tau.tau12.im.mid),
        (tau.tau22.re.mid, tau.tau22.im.mid),
        192,
    )
    lo = th.theta_constant(th.EVEN_CHARACTERISTICS[0], tau, 96)
    hi = th.theta_constant(th.EVEN_CHARACTERISTICS[0], tau2, 192)
    assert float(abs((lo - hi).re).magnitude()) <= float(lo.re.rad) * 1.01 + 1e-25
    assert float(abs((lo - hi).im).magnitude()) <= float(lo.im.rad) * 1.01 + 1e-25


def test_lambda_periodicity_and_evenness(rng):
    for _ in range(12):
        tau = random_reduced_tau(rng)
        P = th.TorusPoint.make(
            Fraction(rng.randint(-20, 20), 41),
            Fraction(rng.randint(-20, 20), 43),
            Fraction(rng.randint(-20, 20), 47),
            Fraction(rng.randint(-20, 20), 53),
        )
        if P.norm_inf() == 0:
            continue
        try:
            l0 = th.big_lambda(P, tau, 128)
        except Exception:
            continue
        shift = th.TorusPoint.make(P.X[0] + 2, P.X[1] - 1, P.Y[0] + 1, P.Y[1] - 2)
        assert th.big_lambda(shift, tau, 128).overlaps(l0)
        neg = th.TorusPoint.make(-P.X[0], -P.X[1], -P.Y[0], -P.Y[1])
        assert th.big_lambda(neg, tau, 128).overlaps(l0)


def test_lambda_functional_equation(rng):
    # Lambda(2Z) - 4 Lambda(Z) = -log|theta(2Z)| + 4 log|theta(Z)|
    tau = random_reduced_tau(rng)
    P = th.TorusPoint.make(Fraction(1, 7), Fraction(2, 9), Fraction(1, 11), Fraction(3, 13))
    P2 = th.TorusPoint.make(2 * P.X[0], 2 * P.X[1], 2 * P.Y[0], 2 * P.Y[1])
    lhs = th.big_lambda(P2, tau, 160) - 4 * th.big_lambda(P, tau, 160)
    t1 = abs(th.theta(th.LAMBDA_CHARACTERISTIC, th.torus_coordinates(P, tau, 160), tau, 160))
    t2 = abs(th.theta(th.LAMBDA_CHARACTERISTIC, th.torus_coordinates(P2, tau, 160), tau, 160))
    rhs = -(t2.log()) + 4 * t1.log()
    assert lhs.overlaps(rhs)


def test_lambda_lower_bound_property(rng):
    holds = 0
    for _ in range(25):
        tau = random_reduced_tau(rng)
        P = th.TorusPoint.make(
            Fraction(rng.randint(-10, 10), 21),
            Fraction(rng.randint(-10, 10), 23),
            Fraction(rng.randint(-10, 10), 29),
            Fraction(rng.randint(-10, 10), 31),
        )
        if P.norm_inf() == 0 or P.norm_inf() > H:
            continue
        try:
            lam = th.big_lambda(P, tau, 128)
        except Exception:
            continue
        bound = th.lambda_lower_bound(P.X, P.Y, tau, 128)
        assert bound <= lam
        holds += 1
    assert holds >= 10


def test_lambda_lower_bound_specific_value():
    # X = (1/240, 0), Y = 0, tau = diag(31i, 31i): the bound evaluates to
    # pi*62*d^2 - log(4 + 93) + log 240 - log C3(0) with d = d(1/2, ZZ) = 1/2
    tau = th.PeriodMatrix.from_entries((0, 31), (0, 0), (0, 31), 128)
    b = th.lambda_lower_bound((Fraction(1, 240), Fraction(0)), (Fraction(0), Fraction(0)), tau, 128)
    d = th.theta_offset_distance((Fraction(0), Fraction(0)))
    assert d == H and d * d >= Fraction(245, 1000)
    import math

    c3 = float(th.c3_bound((Fraction(0), Fraction(0)), 128).mid)
    expect = math.pi * 62 * 0.25 - math.log(97) + math.log(240) - math.log(c3)
    assert abs(float(b.mid) - expect) < 1e-9


def test_lambda_lower_bound_domain():
    tau = th.PeriodMatrix.from_entries((0, 31), (0, 0), (0, 31), 96)
    with pytest.raises(ValidationError):
        th.lambda_lower_bound((Fraction(3, 4), Fraction(0)), (Fraction(0), Fraction(0)), tau, 96)
    with pytest.raises(ValidationError):
        th.lambda_lower_bound((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)), tau, 96)


def test_c3_cap():
    assert th.c3_bound((H, H), 128) <= BallReal.exact(Fraction(2392, 10), 128)


def test_siegel_examples():
    t1 = th.PeriodMatrix.from_entries((0, 31), (0, 1), (0, 31), 96)
    r1 = th.siegel_checks(t1, Fraction(1, 31))
    assert r1.in_f2_inf and r1.in_f2_eps and r1.s1 == "not checked"
    t2 = th.PeriodMatrix.from_entries((0, 31), (0, 0), (0, 31), 96)
    r2 = th.siegel_checks(t2, Fraction(1, 1000))
    assert not r2.in_f2_eps and r2.product_locus()
    import math

    t3_ = th.PeriodMatrix.from_entries((0, Fraction(56, 64)), (0, 0), (0, 1), 96)
    r3 = th.siegel_checks(t3_, Fraction(1, 31))
    assert r3.s3_partial and not r3.in_f2_inf


def test_three_torsion_sum_example():
    tau = th.PeriodMatrix.from_entries((Fraction(1, 4), 31), (0, 1), (0, 40), 128)
    s, b = th.three_torsion_lambda_sum(tau, Fraction(1, 31), 128)
    assert s <= b
    import math

    expect_bound = 8 * math.pi * 71 - 8 * math.pi + 10 * math.log(31)
    assert abs(float(b.mid) - expect_bound) < 1e-9


def test_three_torsion_sum_halving():
    # Lambda(R) = Lambda([2]R): the doubled coordinates are (-a/3) mod 1
    tau = th.PeriodMatrix.from_entries((0, 31), (0, 1), (0, 40), 128)
    third = Fraction(1, 3)
    P = th.TorusPoint.make(third, 2 * third, third, 0)
    Q = th.TorusPoint.make(2 * third, 4 * third, 2 * third, 0)
    assert th.big_lambda(P, tau, 128).overlaps(th.big_lambda(Q, tau, 128))


def test_three_torsion_sum_hypotheses():
    tau = th.PeriodMatrix.from_entries((0, 2), (0, H), (0, 3), 96)
    with pytest.raises(HypothesisError):
        th.three_torsion_lambda_sum(tau, Fraction(1, 31), 96)


def test_even_theta_constant_bounds_sampled(rng):
    for _ in range(8):
        tau = random_reduced_tau(rng, 96, min_im1=2.0, max_im1=8)
        entries = th.even_theta_constants(tau, 96)  # raises on certain violation
        assert len(entries) == 10
        for e in entries[:4]:
            assert e.lower_bound is not None  # a = 0 bound always attaches when reduced


def test_even_theta_diag_example():
    tau = th.PeriodMatrix.from_entries((0, 5), (0, 0), (0, 5), 128)
    entries = th.even_theta_constants(tau, 128)
    import math

    expect = 2 - (1 + (2 + math.sqrt(2 / 5)) * math.exp(-5 * math.pi / 2)) ** 2
    assert abs(float(entries[0].lower_bound.mid) - expect) < 1e-12
    assert entries[0].lower_bound <= entries[0].value


def test_theta_translation_relation(rng):
    # |theta_ab(0)| = |theta_00(tau a + b)| e^{-pi a Im(tau) a}
    tau = random_reduced_tau(rng, 128, min_im1=1.5)
    for char in (th.EVEN_CHARACTERISTICS[6], th.EVEN_CHARACTERISTICS[4]):
        th_ab = abs(th.theta_constant(char, tau, 128))
        za = (
            tau.tau11 * char.a[0] + tau.tau12 * char.a[1] + char.b[0],
            tau.tau12 * char.a[0] + tau.tau22 * char.a[1] + char.b[1],
        )
        th00 = abs(th.theta(th.EVEN_CHARACTERISTICS[0], za, tau, 128))
        q = (
            tau.im11() * (char.a[0] ** 2)
            + 2 * tau.im12() * (char.a[0] * char.a[1])
            + tau.im22() * (char.a[1] ** 2)
        )
        assert th_ab.overlaps(th00 * (-(BallReal.pi(128) * q)).exp())


# ---------------------------------------------------------------------------
# the auxiliary series estimates


def test_gaussian_comb_cases(rng):
    for _ in range(20):
        alpha = Fraction(rng.randint(1, 400), 100)
        beta = Fraction(rng.randint(-300, 300), 100)
        s = th.gaussian_comb_sum(alpha, beta, 96)
        if beta.denominator == 1:
            b = th.gaussian_comb_bound(alpha, beta, 96, "integer")
        else:
            b = th.gaussian_comb_bound(alpha, beta, 96, "generic")
        assert s <= b
    for _ in range(10):
        alpha = Fraction(rng.randint(1, 400), 100)
        s = th.gaussian_comb_sum(alpha, H, 96, exclude=(-3, -2, -1, 0, 1, 2))
        assert s <= th.gaussian_comb_bound(alpha, H, 96, "half_excluded")
        s0 = th.gaussian_comb_sum(alpha, 0, 96, exclude=(-1, 0, 1))
        assert s0 <= th.gaussian_comb_bound(alpha, 0, 96, "zero_excluded")


def test_weighted_gaussian(rng):
    for _ in range(20):
        alpha = Fraction(rng.randint(5, 400), 100)
        beta = Fraction(rng.randint(-200, 200), 100)
        s = th.weighted_gaussian_sum(alpha, beta, 96)
        b = th.weighted_gaussian_constant(alpha, beta, 96) * (
            -(BallReal.exact(alpha, 96) * (th.min_distance_to_z(beta) ** 2))
        ).exp()
        assert s <= b


def test_weighted_lattice(rng):
    for _ in range(6):
        tau = random_reduced_tau(rng, 96)
        Y = (Fraction(rng.randint(-8, 8), 17), Fraction(rng.randint(-8, 8), 19))
        u = Fraction(rng.randint(0, 4), 4)
        for i in (0, 1):
            s = th.weighted_lattice_sum(tau, Y, u, i, 96)
            b = th.weighted_lattice_bound(tau, Y, i, 96)
            assert s <= b


def test_exponent_domination_exact(rng):
    # alpha n^2 + beta n >= (alpha - |beta|/(m+1)) n^2 outside -m..m, and the
    # half-integer variant, prove themselves over exact rationals
    for _ in range(200):
        m = rng.randint(1, 5)
        beta = Fraction(rng.randint(-500, 500), 100)
        lo = 2 * abs(beta) / (2 * m + 1)
        alpha = lo + Fraction(rng.randint(1, 300), 100)
        for n in list(range(-30, -m)) + list(range(m + 1, 31)):
            assert alpha * n * n + beta * n >= (alpha - abs(beta) / (m + 1)) * n * n
        for n in list(range(-30, -m - 1)) + list(range(m, 31)):
            u = Fraction(n) + H
            assert alpha * u * u + beta * u >= (alpha - 2 * abs(beta) / (2 * m + 1)) * u * u
