"""Certificates: constants, hypotheses handling, pigeonhole search."""

import math
import random
from fractions import Fraction

import pytest

from abelheight import certificates as certs
from abelheight import theta as th
from abelheight.errors import LemmaViolationError, ValidationError

# reviewed manifest: the displayed constants, frozen as strings
REVIEWED_MANIFEST = {
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


def test_constants_manifest_frozen():
    assert certs.constants_manifest() == REVIEWED_MANIFEST


def test_exact_exponents():
    assert certs.EXPONENT_8_3_16 == 8 * 43046721 == 344373768
    assert certs.EXPONENT_16_3_16 == 688747536
    assert certs.TWO_35 == 34359738368


def _reports(in_eps=True, product=False):
    if product:
        tau = th.PeriodMatrix.from_entries((0, 31), (0, 0), (0, 40), 96)
    elif in_eps:
        tau = th.PeriodMatrix.from_entries((0, 31), (0, 1), (0, 40), 96)
    else:
        tau = th.PeriodMatrix.from_entries((0, 2), (0, Fraction(1, 2)), (0, 3), 96)
    return [th.siegel_checks(tau, Fraction(1, 31), 96)]


def test_jacobian_lower_bound_positive_bracket():
    cert = certs.jacobian_lower_bound(1, 64 * 10, 10, _reports())
    assert cert.conclusive and cert.details["bracket_sign"] == 1
    expect = -(math.log10(160) + 344373768 * math.log10(240)) + math.log10(10)
    assert abs(cert.value_log10 - expect) < 1e-6
    assert cert.constants["c1_exponent"] == 344373768


def test_jacobian_lower_bound_vacuous_and_inconclusive():
    vac = certs.jacobian_lower_bound(1, 10, 10, _reports())
    assert vac.conclusive and vac.value_log10 is None and vac.details["bracket_sign"] == -1
    inc = certs.jacobian_lower_bound(1, 640, 10, _reports(in_eps=False))
    assert not inc.conclusive and inc.value_log10 is None


def test_jacobian_lower_bound_refuses_products():
    with pytest.raises(ValidationError):
        certs.jacobian_lower_bound(1, 640, 10, _reports(product=True))


def test_torsion_bound():
    cert = certs.torsion_bound(1)
    assert cert.constants["exponent"] == 688747536
    expect = 4 * math.log10(2) + 688747536 * math.log10(240)
    assert abs(cert.value_log10 - expect) < 1e-4
    cert2 = certs.torsion_bound(2)
    assert cert2.constants["exponent"] == 2 * 688747536
    checked = certs.torsion_bound(1, Tr_inf=100, logD=1)
    assert checked.conclusive and checked.hypotheses[0][1] is True
    bad = certs.torsion_bound(1, Tr_inf=1, logD=1)
    assert not bad.conclusive and bad.value_log10 is None


def test_rational_points_bound():
    cert = certs.rational_points_bound(1, 0)
    assert cert.constants["two_35"] == 2**35
    assert abs(cert.value_log10 - 2**36 * math.log10(240)) < 1e-4
    c3 = certs.rational_points_bound(1, 2)
    assert c3.constants["exponent"] == 3 * 2 * 2**35


def test_product_case_bound():
    cert = certs.product_case_bound(10, 70, 10, 70, 1, 1)  # boundary Tr = log/7
    assert cert.conclusive
    c0 = cert.details["c0"]
    assert c0 == Fraction(1, 390 * 20**4)
    assert c0 >= Fraction(25, 10**4) / 20**4  # the displayed rounding is valid
    assert abs(float(c0) / (0.0025 / 20**4) - 1) < 0.03
    bad = certs.product_case_bound(1, 70, 10, 70, 1, 1)
    assert not bad.conclusive and bad.value_log10 is None
    assert certs.product_case_bound(1, 0, 1, 0, 2, 3).details["c0"] > 0


def test_zero_lemma_filter():
    assert certs.zero_lemma_filter((True, True, False)) == 2
    assert certs.zero_lemma_filter((False, True, True)) == 0
    assert certs.zero_lemma_filter((True, False, False)) == 1
    with pytest.raises(LemmaViolationError):
        certs.zero_lemma_filter((True, True, True))


def _orbit(z0, count):
    out = []
    for n in range(count):
        out.append(
            th.TorusPoint.make(
                n * z0[0], n * z0[1], n * z0[2], n * z0[3]
            ).reduced()
        )
    return out


def test_pigeonhole_spec_example():
    # Z(P) = (1/5, 0, 0, 0), M = 2, one place: multiples of 5 sit at the origin
    M = 2
    count = 2 * M**4 + 1
    orbit = _orbit((Fraction(1, 5), 0, 0, 0), count)
    flags = [False] * count
    n, wit = certs.pigeonhole_multiplier([orbit], M, flags)
    assert 1 <= n <= 2 * M**4
    red = orbit[n].reduced()
    assert max(abs(v) for v in red.X + red.Y) <= Fraction(1, M)


def test_pigeonhole_zero_point():
    M = 2
    count = 2 * M**4 + 1
    orbit = _orbit((0, 0, 0, 0), count)
    flags = [False] * count
    n, _ = certs.pigeonhole_multiplier([orbit], M, flags)
    assert 1 <= n <= 2 * M**4


def test_pigeonhole_respects_theta_flags():
    M = 2
    count = 2 * M**4 + 1
    orbit = _orbit((Fraction(1, 7), Fraction(2, 7), 0, 0), count)
    rng = random.Random(5)
    for _ in range(10):
        flags = [False] * count
        for i in rng.sample(range(1, count), 6):
            flags[i] = True
        try:
            n, wit = certs.pigeonhole_multiplier([orbit], M, flags)
        except LemmaViolationError:
            continue  # synthetic flags may emulate the impossible configuration
        assert not flags[n]
        assert n in wit["differences"]


def test_pigeonhole_oracle_agreement(rng):
    # every returned n must belong to the exhaustively computed valid set
    M = 3
    count = 2 * M**4 + 1
    for _ in range(8):
        z0 = tuple(Fraction(rng.randint(-6, 6), rng.choice([5, 7, 11, 13])) for _ in range(4))
        orbit = _orbit(z0, count)
        flags = [False] * count
        valid = [
            n
            for n in range(1, count)
            if max(abs(v) for v in orbit[n].reduced().X + orbit[n].reduced().Y)
            <= Fraction(1, M)
        ]
        n, _ = certs.pigeonhole_multiplier([orbit], M, flags)
        assert n in valid


def test_pigeonhole_validates_lengths():
    M = 2
    orbit = _orbit((Fraction(1, 5), 0, 0, 0), 10)
    with pytest.raises(ValidationError):
        certs.pigeonhole_multiplier([orbit], M, [False] * 10)
