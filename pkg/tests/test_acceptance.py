"""Acceptance suite: one test per criterion, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion.  Every tolerance is pinned here; nothing is deferred.
"""

import math
import random
import time
from fractions import Fraction

import mpmath

from abelheight import certificates as certs
from abelheight import cli
from abelheight import faltings as falt
from abelheight import jacobian as jac
from abelheight import kummer as kum
from abelheight import theta as th
from abelheight import torsion3 as t3
from abelheight.balls import BallComplex, BallReal
from abelheight.errors import LemmaViolationError
from conftest import random_curve_with_divisor
from test_exactpoly import sylvester_oracle

H = Fraction(1, 2)


def _report(num, text):
    print(f"\nACCEPTANCE {num}: PASS - {text}")


def test_criterion_01_product_identity_first_curve():
    t0 = time.time()
    doc, code = cli.run(
        {"command": "torsion3", "curve": [-1, 0, 0, 0, 0, 1], "precision": 256}
    )
    elapsed = time.time() - t0
    assert code == 0
    res = doc["result"]
    assert res["count"] == 40
    assert res["product_contains_target"] is True
    target = Fraction(2) ** 288 * Fraction(5) ** 180 / Fraction(3) ** 24
    assert Fraction(res["target"]) == target
    # relative radius of the product ball
    out = t3.three_torsion_kummer(jac.CurveModel.from_coeffs([-1, 0, 0, 0, 0, 1]), 256)
    rel = float(out.product.re.rad) / abs(float(out.product.re.mid))
    assert rel <= 1e-20
    assert out.product.re.contains(target) and out.product.im.contains_zero()
    from abelheight.exactpoly import poly_discriminant

    assert poly_discriminant((-1, 0, 0, 0, 0, 1)) == 3125
    assert elapsed <= 600
    _report(1, f"product ball contains 2^288 3^-24 5^180, rel radius {rel:.1e}, "
               f"disc = 3125, {elapsed:.1f}s")


def test_criterion_02_product_identity_second_curve():
    curve = jac.CurveModel.from_coeffs([1, 0, 0, 0, 0, 1])
    from abelheight.exactpoly import poly_derivative

    disc_oracle = sylvester_oracle((1, 0, 0, 0, 0, 1), poly_derivative((1, 0, 0, 0, 0, 1)))
    assert disc_oracle == curve.disc  # independent Sylvester determinant over QQ
    out = t3.three_torsion_kummer(curve, 256)
    target = Fraction(2**8 * curve.disc) ** 36 / Fraction(3) ** 24
    rel = float(out.product.re.rad) / abs(float(out.product.re.mid))
    assert rel <= 1e-20
    assert out.product.re.contains(target) and out.product.im.contains_zero()
    _report(2, f"product ball contains 3^-24 (2^8 5^5)^36, rel radius {rel:.1e}")


def test_criterion_03_duplication_consistency():
    rng = random.Random(3_2024)
    failures = 0
    for i in range(110):
        curve, D = random_curve_with_divisor(rng)
        K = kum.kummer_map(curve, D)
        dup, _ = kum.duplicate(curve, K)
        if dup.coords != kum.kummer_map(curve, jac.cantor_double(curve, D)).coords:
            failures += 1
    assert failures == 0
    _report(3, "duplicate(kummer(P)) = kummer([2]P) exactly on 110/110 random cases")


def test_criterion_04_stoll_sandwich_and_finite_lower_bound():
    rng = random.Random(4_2024)
    triples = 0
    heights = 0
    while triples < 55:
        curve, D = random_curve_with_divisor(rng, small=True)
        ints = kum.kummer_map(curve, D).coprime_integers()
        bad = curve.bad_primes()
        primes = list(bad) + [7, 11]
        p = rng.choice(primes)
        e_p = bad.get(p, 0)
        v = kum.duplication_content_valuation(curve, ints, p)
        assert 0 <= v <= e_p  # |2^4 disc F|_p <= E_p <= 1
        triples += 1
        if triples % 3 == 0:
            from abelheight.balls import log_int
            from abelheight.exactpoly import valuation

            rep = kum.local_lambda_finite(curve, D, p, depth=8)
            e2 = 4 * (1 if p == 2 else 0)
            ed = valuation(curve.disc, p) if curve.disc % p == 0 else 0
            bound = -(Fraction(1, 3) * (e2 + ed)) * log_int(p, 128)
            assert bound <= rep.lambda_canonical
            heights += 1
    _report(4, f"Stoll sandwich on {triples} triples; finite-place lower bound on "
               f"{heights} local heights")


def _torsion_divisor(rng):
    """A 2-torsion divisor off the theta divisor: difference of Weierstrass points."""
    while True:
        w1, w2 = rng.randint(-4, 4), rng.randint(-4, 4)
        if w1 == w2:
            continue
        c3, c2, c1 = (rng.randint(-3, 3) for _ in range(3))
        a5 = rng.choice([1, 2])
        # F = a5 (x - w1)(x - w2)(x^3 + c3 x^2 + c2 x + c1)
        from abelheight.jacobian import pmul, ptrim

        f = pmul(pmul((Fraction(-w1), Fraction(1)), (Fraction(-w2), Fraction(1))),
                 (Fraction(c1), Fraction(c2), Fraction(c3), Fraction(1)))
        coeffs = [int(a5 * c) for c in f]
        try:
            curve = jac.CurveModel.from_coeffs(coeffs)
        except Exception:
            continue
        D = jac.cantor_add(
            curve, jac.embed_point(curve, w1, 0), jac.embed_point(curve, w2, 0)
        )
        if jac.pdeg(D.u) == 2:
            return curve, D


def test_criterion_05_canonical_height_properties():
    rng = random.Random(5_2024)
    cases = 0
    for _ in range(44):
        curve, D = random_curve_with_divisor(rng, small=True)
        h1 = kum.canonical_height(curve, D, 1e-8)
        h2 = kum.canonical_height(curve, jac.cantor_double(curve, D), 1e-8)
        hm = kum.canonical_height(curve, jac.inverse(D), 1e-8)
        assert float(h1.rad) <= 1e-8 and float(h2.rad) <= 1e-8
        assert h2.overlaps(4 * h1)  # |hhat(2P) - 4 hhat(P)| within summed radii
        assert hm.overlaps(h1)  # evenness
        cases += 1
    torsion_cases = 0
    for _ in range(8):
        curve, D = _torsion_divisor(rng)
        h = kum.canonical_height(curve, D, 1e-8)
        assert h.contains(0)
        torsion_cases += 1
    _report(5, f"quadraticity + evenness on {cases} cases, torsion ball contains 0 "
               f"on {torsion_cases} cases, radius <= 1e-8")


def test_criterion_06_theta_analytic_suite():
    # odd-characteristic vanishing at 0
    tau = th.PeriodMatrix.from_entries((0, 2), (0, H), (0, 3), 170)
    v = th.theta_constant(th.LAMBDA_CHARACTERISTIC, tau, 170)
    assert v.contains_zero()
    assert float(v.re.rad) <= 2**-100 and float(v.im.rad) <= 2**-100

    # Lambda lattice periodicity and evenness on >= 100 samples
    rng = random.Random(6_2024)
    samples = 0
    while samples < 100:
        b1 = Fraction(rng.randint(56, 320), 64)
        b12 = Fraction(rng.randint(0, int(b1 * 32)), 64)
        b2 = b1 + Fraction(rng.randint(0, 128), 64)
        re = lambda: Fraction(rng.randint(-32, 32), 64)
        tau = th.PeriodMatrix.from_entries((re(), b1), (re(), b12), (re(), b2), 96)
        P = th.TorusPoint.make(
            Fraction(rng.randint(-20, 20), 41), Fraction(rng.randint(-20, 20), 43),
            Fraction(rng.randint(-20, 20), 47), Fraction(rng.randint(-20, 20), 53),
        )
        try:
            l0 = th.big_lambda(P, tau, 96)
        except Exception:
            continue
        m, n = rng.randint(-2, 2), rng.randint(-2, 2)
        shifted = th.TorusPoint.make(P.X[0] + m, P.X[1] - n, P.Y[0] + n, P.Y[1] + m)
        assert th.big_lambda(shifted, tau, 96).overlaps(l0)
        neg = th.TorusPoint.make(-P.X[0], -P.X[1], -P.Y[0], -P.Y[1])
        assert th.big_lambda(neg, tau, 96).overlaps(l0)
        samples += 1

    # diagonal factorization against the independent 1-D oracle, 1e-20 relative
    from test_theta import theta_1d_oracle

    taud = th.PeriodMatrix.from_entries((0, 2), (0, 0), (0, 3), 170)
    worst = 0.0
    for char in th.EVEN_CHARACTERISTICS:
        got = th.theta_constant(char, taud, 170)
        want = theta_1d_oracle(char.a[0], char.b[0], 0, 2j) * theta_1d_oracle(
            char.a[1], char.b[1], 0, 3j
        )
        rel = abs(complex(float(got.re.mid), float(got.im.mid)) - complex(want)) / max(
            abs(complex(want)), 1e-30
        )
        worst = max(worst, rel)
    assert worst <= 1e-20
    _report(6, f"odd vanishing radius <= 2^-100; periodicity/evenness on {samples} "
               f"samples; diagonal factorization worst rel err {worst:.1e}")


def test_criterion_07_paper_inequality_suite():
    rng = random.Random(7_2024)

    # archimedean lower bound on >= 100 admissible samples
    arch = 0
    while arch < 100:
        b1 = Fraction(rng.randint(56, 256), 64)
        b12 = Fraction(rng.randint(0, int(b1 * 32)), 64)
        b2 = b1 + Fraction(rng.randint(0, 128), 64)
        re = lambda: Fraction(rng.randint(-32, 32), 64)
        tau = th.PeriodMatrix.from_entries((re(), b1), (re(), b12), (re(), b2), 96)
        P = th.TorusPoint.make(
            Fraction(rng.randint(-10, 10), 21), Fraction(rng.randint(-10, 10), 23),
            Fraction(rng.randint(-10, 10), 29), Fraction(rng.randint(-10, 10), 31),
        )
        if P.norm_inf() == 0 or P.norm_inf() > H:
            continue
        try:
            lam = th.big_lambda(P, tau, 96)
        except Exception:
            continue
        assert th.lambda_lower_bound(P.X, P.Y, tau, 96) <= lam
        arch += 1

    # the ten even theta-constant bounds on >= 100 reduced matrices
    carac = 0
    while carac < 100:
        b1 = Fraction(rng.randint(8, 40), 4)
        b12 = Fraction(rng.randint(0, int(b1 * 2)), 4)
        b2 = b1 + Fraction(rng.randint(0, 60), 4)
        re = lambda: Fraction(rng.randint(-2, 2), 4)
        tau = th.PeriodMatrix.from_entries((re(), b1), (re(), b12), (re(), b2), 96)
        entries = th.even_theta_constants(tau, 96)  # raises on certain violation
        for e in entries:
            if e.lower_bound is not None and e.lower_bound.is_positive():
                assert e.lower_bound <= e.value
        carac += 1

    # the 80-point archimedean sum bound on >= 100 admissible matrices
    t3sum = 0
    while t3sum < 100:
        b1 = Fraction(rng.randint(31 * 4, 60 * 4), 4)
        b12 = Fraction(rng.randint(1, int(2 * b1)), 4)
        b2 = b1 + Fraction(rng.randint(0, 100), 4)
        re = lambda: Fraction(rng.randint(-2, 2), 4)
        # the terms at the order-3 points cancel down by a factor e^(-pi Im tau12),
        # so the working precision must clear ~4.6 Im tau12 bits of cancellation
        tau = th.PeriodMatrix.from_entries((re(), b1), (re(), b12), (re(), b2), 224)
        eps = min(b12, Fraction(1, 31) if b1 >= 31 else b12)
        if Fraction(1) / eps > b1:
            eps = Fraction(1) / b1
        s, b = th.three_torsion_lambda_sum(tau, eps, 224)
        assert s <= b
        t3sum += 1

    # Gaussian-series lemmas on >= 100 parameter sets each
    for _ in range(100):
        alpha = Fraction(rng.randint(2, 600), 100)
        beta = Fraction(rng.randint(-400, 400), 100)
        case = "integer" if beta.denominator == 1 else "generic"
        assert th.gaussian_comb_sum(alpha, beta, 96) <= th.gaussian_comb_bound(
            alpha, beta, 96, case
        )
        assert th.gaussian_comb_sum(alpha, H, 96, exclude=(-3, -2, -1, 0, 1, 2)) <= (
            th.gaussian_comb_bound(alpha, H, 96, "half_excluded")
        )
        assert th.gaussian_comb_sum(alpha, 0, 96, exclude=(-1, 0, 1)) <= (
            th.gaussian_comb_bound(alpha, 0, 96, "zero_excluded")
        )
        s = th.weighted_gaussian_sum(alpha, beta, 96)
        bound = th.weighted_gaussian_constant(alpha, beta, 96) * (
            -(BallReal.exact(alpha, 96) * (th.min_distance_to_z(beta) ** 2))
        ).exp()
        assert s <= bound

    lattice = 0
    while lattice < 100:
        b1 = Fraction(rng.randint(56, 200), 64)
        b12 = Fraction(rng.randint(0, int(b1 * 32)), 64)
        b2 = b1 + Fraction(rng.randint(0, 64), 64)
        tau = th.PeriodMatrix.from_entries((0, b1), (0, b12), (0, b2), 80)
        Y = (Fraction(rng.randint(-8, 8), 17), Fraction(rng.randint(-8, 8), 19))
        u = Fraction(rng.randint(0, 4), 4)
        i = rng.randint(0, 1)
        assert th.weighted_lattice_sum(tau, Y, u, i, 80) <= th.weighted_lattice_bound(
            tau, Y, i, 80
        )
        lattice += 1

    # exponent-domination inequalities, exact over the integers
    for _ in range(100):
        m = rng.randint(1, 6)
        beta = Fraction(rng.randint(-500, 500), 100)
        alpha = 2 * abs(beta) / (2 * m + 1) + Fraction(rng.randint(1, 300), 100)
        for n in list(range(-25, -m)) + list(range(m + 1, 26)):
            assert alpha * n * n + beta * n >= (alpha - abs(beta) / (m + 1)) * n * n
        for n in list(range(-25, -m - 1)) + list(range(m, 26)):
            u = Fraction(n) + H
            assert alpha * u * u + beta * u >= (alpha - 2 * abs(beta) / (2 * m + 1)) * u * u

    _report(7, f"archimedean bound x{arch}, theta-constant bounds x{carac}, "
               f"order-3 sum x{t3sum}, series lemmas x100, lattice x{lattice}, "
               f"exponent inequalities x100")


def test_criterion_08_elliptic_chain():
    rng = random.Random(8_2024)
    for _ in range(40):
        im = Fraction(rng.randint(56, 800), 64)  # >= 7/8 > sqrt(3)/2
        re = Fraction(rng.randint(-32, 32), 64)
        tau = BallComplex.exact(re, im, 160)
        delta, a_bound = falt.elliptic_delta(tau, 160)
        assert a_bound <= BallReal.exact(Fraction(1, 9), 160)
        lhs, rhs = falt.elliptic_log_delta_lower_check(tau, 160)
        assert lhs <= rhs
        assert not delta.contains_zero()

    # q-series oracle comparison at 1e-20 relative
    with mpmath.workprec(260):
        for im in (1, Fraction(3, 2), 3):
            tau_m = mpmath.mpc(mpmath.mpf(1) / 3, mpmath.mpf(im.numerator if isinstance(im, Fraction) else im) / (im.denominator if isinstance(im, Fraction) else 1))
            q = mpmath.e ** (2j * mpmath.pi * tau_m)
            want = q / (2 * mpmath.pi) ** 12
            for n in range(1, 120):
                want *= (1 - q**n) ** 24
            got, _ = falt.elliptic_delta(BallComplex.exact(Fraction(1, 3), im, 220), 220)
            rel = abs(complex(float(got.re.mid), float(got.im.mid)) - complex(want)) / abs(
                complex(want)
            )
            assert rel <= 1e-20
    _report(8, "A_tau <= 1/9, -log|Delta| domination, q-series oracle at 1e-20 relative")


def test_criterion_09_constants_manifest():
    reviewed = {
        "height_lower_c1": "1/(160*d*240^(8*3^16*d))",
        "height_lower_disc_coefficient": "63",
        "trace_hypothesis_factor": "64",
        "torsion_order_bound": "2*240^(4*3^16*d)",
        "torsion_count_bound": "2^4*240^(16*3^16*d)",
        "rational_points_bound": "240^((d+1)*2^35)",
        "faltings_c3": "(5*pi+2)/(20*d)",
        "faltings_c4": "1/(10*d)",
        "elliptic_faltings_c3": "32/(12*d)",
        "elliptic_faltings_c4": "1/(12*d)",
        "elliptic_height_c1": "0.3/(d*20^(4*m))",
        "elliptic_disc_factor": "1/7.2",
    }
    assert certs.constants_manifest() == reviewed
    assert certs.EXPONENT_8_3_16 == 344373768 == 8 * 3**16
    assert certs.EXPONENT_16_3_16 == 688747536 == 16 * 3**16
    assert certs.TWO_35 == 34359738368 == 2**35
    _report(9, "constants manifest string-identical; exponents 344373768 and "
               "688747536 exact")


def test_criterion_10_pigeonhole_pipeline():
    rng = random.Random(10_2024)
    M = 2
    count = 2 * M**4 + 1
    runs = 0
    for _ in range(20):
        z0 = tuple(
            Fraction(rng.randint(-8, 8), rng.choice([5, 7, 9, 11, 13])) for _ in range(4)
        )
        orbit = [
            th.TorusPoint.make(n * z0[0], n * z0[1], n * z0[2], n * z0[3]).reduced()
            for n in range(count)
        ]
        flags = [False] * count
        for i in rng.sample(range(1, count), 4):
            flags[i] = True
        valid = [
            n for n in range(1, count)
            if max(abs(v) for v in orbit[n].reduced().X + orbit[n].reduced().Y)
            <= Fraction(1, M) and not flags[n]
        ]
        try:
            n, wit = certs.pigeonhole_multiplier([orbit], M, flags)
        except LemmaViolationError:
            continue  # synthetic flags can emulate the impossible all-on-curve triple
        assert n in valid  # exhaustive-search oracle agreement
        assert not flags[n]  # the filter never selects a flagged multiple
        runs += 1
    assert runs >= 15
    _report(10, f"box conditions + oracle agreement on {runs} synthetic orbits at M = 2")
