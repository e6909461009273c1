"""Faltings-height expressions and upper bounds.

Genus 2: the archimedean term of the augmented height is evaluated through
the ten even theta constants; the finite term is dominated by log|D| with
D = 2^8 disc(F) (the minimal discriminant of the distinguished model is
never computed).  Elliptic case: the q-product of the modular discriminant
with a rigorous tail, and the closed-form upper bound for the augmented
height.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .balls import DEFAULT_PRECISION, BallComplex, BallReal
from .errors import HypothesisError, LemmaViolationError, ValidationError
from .theta import EVEN_CHARACTERISTICS, PeriodMatrix, theta_constant


def _as_ball(x, prec):
    return x if isinstance(x, BallReal) else BallReal.exact(Fraction(x), prec)


@dataclass(frozen=True)
class FaltingsReport:
    arch_term: object  # BallReal or None when only scalars were supplied
    finite_term_upper: BallReal
    h_prime_upper: BallReal
    c3: BallReal
    c4: Fraction
    d: int


def faltings_arch_term(tau: PeriodMatrix, precision=DEFAULT_PRECISION, augmented=True) -> BallReal:
    """-log|2^-12 prod over even characteristics of theta_m(0, tau)^2|.

    With ``augmented=False`` the det(Im tau)^5 factor is kept inside the
    modulus, giving the integrand of the plain (non-augmented) height.
    Degenerates (a theta constant vanishes) exactly on the locus of products
    of elliptic curves; a theta ball containing zero raises.
    """
    prec = precision
    two = BallReal.exact(2, prec)
    acc = 12 * two.log()
    for char in EVEN_CHARACTERISTICS:
        mod = abs(theta_constant(char, tau, prec))
        if not mod.is_positive():
            raise HypothesisError(
                "a theta constant vanishes: tau lies on (or too close to) the "
                "product-of-elliptic-curves locus"
            )
        acc = acc - 2 * mod.log()
    if not augmented:
        acc = acc - 5 * tau.det_im().log()
    return acc


def faltings_upper_bound(
    Tr_inf, logD, d: int, precision=DEFAULT_PRECISION, arch_term=None
) -> FaltingsReport:
    """h'_F <= (5 pi + 2)/(20 d) Tr_inf + 1/(10 d) log N(D)."""
    if d < 1:
        raise ValidationError("degree d must be >= 1")
    prec = precision
    tr = _as_ball(Tr_inf, prec)
    ld = _as_ball(logD, prec)
    if tr.is_negative() or ld.is_negative():
        raise ValidationError("Tr_inf and logD must be nonnegative")
    c3 = (5 * BallReal.pi(prec) + 2) / (20 * d)
    c4 = Fraction(1, 10 * d)
    return FaltingsReport(
        arch_term=arch_term,
        finite_term_upper=c4 * ld,
        h_prime_upper=c3 * tr + c4 * ld,
        c3=c3,
        c4=c4,
        d=d,
    )


# ---------------------------------------------------------------------------
# elliptic chain


def elliptic_delta(tau, precision=DEFAULT_PRECISION):
    """(Delta(tau), bound for |A_tau|) via the q-product, Im tau >= sqrt(3)/2.

    Delta(tau) = q / (2 pi)^12 * prod (1 - q^n)^24 with q = e^{2 pi i tau};
    the discarded log-tail is bounded and folded into the ball, and the
    associated remainder bound 24 e^{-2 pi Im tau} / (1 - e^{-2 pi Im tau})
    is checked against 1/9.
    """
    prec = precision
    if not isinstance(tau, BallComplex):
        tau = BallComplex.exact(tau, 0, prec) if not isinstance(tau, complex) else BallComplex.exact(tau, prec=prec)
    sqrt3_2 = BallReal.exact(3, prec).sqrt() * Fraction(1, 2)
    if tau.im < sqrt3_2:
        raise ValidationError("elliptic_delta requires Im tau >= sqrt(3)/2")
    pi = BallReal.pi(prec)
    two_pi = 2 * pi
    q = BallComplex(-(two_pi * tau.im), two_pi * tau.re).exp()
    qabs_hi = abs(q).magnitude()

    import math

    qf = min(float(qabs_hi), 0.01)
    N = max(8, int((prec + 16) * math.log(2) / max(-math.log(qf), 1e-9)) + 2)
    prod = BallComplex.exact(1, 0, prec)
    qn = BallComplex.exact(1, 0, prec)
    for _ in range(N):
        qn = qn * q
        t = BallComplex.exact(1, 0, prec) - qn
        prod = prod * (t**24)
    # |sum_{n>N} 24 log(1 - q^n)| <= 24 |q|^{N+1} / ((1-|q|)(1-|q|))
    qa = abs(q)
    tail = 24 * qa ** (N + 1) / ((1 - qa) * (1 - qa))
    t_hi = float(tail.magnitude())
    if t_hi > 0.5:
        raise ValidationError("q-product tail did not converge")
    # e^w for |w| <= T lies within 2T of 1 (T <= 1/2)
    wide = 2 * t_hi
    prod = BallComplex(
        prod.re.widen(wide * float(abs(prod.re).magnitude()) + wide * float(abs(prod.im).magnitude())),
        prod.im.widen(wide * float(abs(prod.re).magnitude()) + wide * float(abs(prod.im).magnitude())),
    )
    delta = q * prod / (two_pi**12)

    e = (-(two_pi * tau.im)).exp()
    a_bound = 24 * e / (1 - e)
    if not (a_bound <= BallReal.exact(Fraction(1, 9), prec)):
        raise LemmaViolationError("the remainder bound exceeded 1/9 despite Im tau >= sqrt(3)/2")
    return delta, a_bound


def elliptic_log_delta_lower_check(tau, precision=DEFAULT_PRECISION):
    """(-log|Delta(tau)|, 2 pi Im tau + 12 log 2 pi + 1/9): the stated domination."""
    prec = precision
    delta, _ = elliptic_delta(tau, prec)
    if not isinstance(tau, BallComplex):
        tau = BallComplex.exact(tau, 0, prec) if not isinstance(tau, complex) else BallComplex.exact(tau, prec=prec)
    lhs = -abs(delta).log()
    pi = BallReal.pi(prec)
    rhs = 2 * pi * tau.im + 12 * (2 * pi).log() + Fraction(1, 9)
    return lhs, rhs


def elliptic_faltings_upper(Tr, log_norm_disc, d: int, precision=DEFAULT_PRECISION) -> BallReal:
    """h'_F(E) <= 32/(12 d) Tr + 1/(12 d) log N(Delta_E)."""
    if d < 1:
        raise ValidationError("degree d must be >= 1")
    prec = precision
    tr = _as_ball(Tr, prec)
    ld = _as_ball(log_norm_disc, prec)
    if tr.is_negative() or ld.is_negative():
        raise ValidationError("inputs must be nonnegative")
    return Fraction(32, 12 * d) * tr + Fraction(1, 12 * d) * ld


def elliptic_chain_inequality(im_tau, precision=DEFAULT_PRECISION):
    """(2 pi Im tau + 1/9 + 12 log 2 pi, 32 Im tau): LHS <= RHS for Im tau >= sqrt(3)/2."""
    prec = precision
    t = _as_ball(im_tau, prec)
    pi = BallReal.pi(prec)
    lhs = 2 * pi * t + Fraction(1, 9) + 12 * (2 * pi).log()
    rhs = 32 * t
    return lhs, rhs


def elliptic_height_lower(Tr, log_norm_disc, d: int, m: int, precision=DEFAULT_PRECISION) -> BallReal:
    """c1 (Tr - log N(Delta)/7.2) with c1 = 0.3/(d 20^{4m}); may be negative."""
    if d < 1 or m < 1:
        raise ValidationError("d and m must be >= 1")
    prec = precision
    c1 = Fraction(3, 10) / (d * Fraction(20) ** (4 * m))
    tr = _as_ball(Tr, prec)
    ld = _as_ball(log_norm_disc, prec)
    return c1 * (tr - ld * Fraction(5, 36))
