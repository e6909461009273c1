"""Genus-2 theta functions with half-integer characteristics, rigorously.

Everything returns balls.  The lattice sum is truncated at an adaptively
chosen box; the discarded tail is bounded through the smallest eigenvalue
of Im(tau) and a geometric-series estimate, and is added to the radius, so
a returned ball always contains the exact theta value.

The archimedean local height of a torus point Z = X + tau Y off the theta
divisor is  -log(|theta(Z)| e^{-pi tY Im(tau) Y})  for the fixed odd
characteristic a = (1/2, 1/2), b = (0, 1/2), whose zero locus is the curve
inside the Jacobian.

The explicit lower bounds for this height and for the ten even theta
constants, the 80-term sum over the order-3 points, and the auxiliary
Gaussian-series estimates they rest on are all implemented as checkable
inequalities; the evaluation path never assumes them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .balls import DEFAULT_PRECISION, BallComplex, BallReal
from .errors import (
    DivisorProximityError,
    HypothesisError,
    LemmaViolationError,
    PrecisionError,
    ValidationError,
)

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# period matrices


@dataclass(frozen=True)
class PeriodMatrix:
    """Symmetric 2x2 period matrix with positive definite imaginary part."""

    tau11: BallComplex
    tau12: BallComplex
    tau22: BallComplex

    @classmethod
    def from_entries(cls, tau11, tau12, tau22, precision=DEFAULT_PRECISION) -> "PeriodMatrix":
        def scalar(v):
            return Fraction(v) if isinstance(v, str) else v

        def conv(z):
            if isinstance(z, BallComplex):
                return z
            if isinstance(z, complex):
                return BallComplex.exact(z.real, z.imag, precision)
            if isinstance(z, (tuple, list)):
                return BallComplex.exact(scalar(z[0]), scalar(z[1]), precision)
            return BallComplex.exact(scalar(z), 0, precision)

        tau = cls(conv(tau11), conv(tau12), conv(tau22))
        if not tau.det_im().is_positive() or not tau.im11().is_positive():
            raise ValidationError("Im(tau) is not positive definite")
        return tau

    def im11(self) -> BallReal:
        return self.tau11.im

    def im12(self) -> BallReal:
        return self.tau12.im

    def im22(self) -> BallReal:
        return self.tau22.im

    def trace_im(self) -> BallReal:
        return self.tau11.im + self.tau22.im

    def det_im(self) -> BallReal:
        return self.tau11.im * self.tau22.im - self.tau12.im * self.tau12.im

    def lambda_min(self) -> BallReal:
        """Smallest eigenvalue of Im(tau), as a ball."""
        t = self.trace_im()
        disc = (t * t - 4 * self.det_im()).sqrt()
        return 2 * self.det_im() / (t + disc)

    def is_reduced(self) -> bool:
        """Certainly Im tau2 >= Im tau1 >= 2 Im tau12 >= 0 and |Re| <= 1/2."""
        b1, b12, b2 = self.im11(), self.im12(), self.im22()
        ordering = (
            b1 <= b2
            and 2 * b12 <= b1
            and (b12.is_positive() or (b12.mid == 0 and b12.rad == 0))
        )
        re_ok = all(
            abs(z.re) <= BallReal.exact(HALF, z.re.prec)
            for z in (self.tau11, self.tau12, self.tau22)
        )
        return bool(ordering and re_ok)


# ---------------------------------------------------------------------------
# characteristics


@dataclass(frozen=True)
class ThetaCharacteristic:
    a: tuple
    b: tuple

    @classmethod
    def make(cls, a1, a2, b1, b2) -> "ThetaCharacteristic":
        vals = tuple(Fraction(v) for v in (a1, a2, b1, b2))
        if any(v not in (0, HALF) for v in vals):
            raise ValidationError("characteristics must have entries in {0, 1/2}")
        return cls((vals[0], vals[1]), (vals[2], vals[3]))

    def parity(self) -> int:
        """+1 for even, -1 for odd: (-1)^(4 a.b)."""
        s = 4 * (self.a[0] * self.b[0] + self.a[1] * self.b[1])
        return -1 if int(s) % 2 else 1

    def is_even(self) -> bool:
        return self.parity() == 1


# the odd characteristic whose divisor is the embedded curve
LAMBDA_CHARACTERISTIC = ThetaCharacteristic.make(HALF, HALF, 0, HALF)

# the ten even characteristics, in the order of the two standard lists
EVEN_CHARACTERISTICS = tuple(
    ThetaCharacteristic.make(*c)
    for c in [
        (0, 0, 0, 0),
        (0, 0, 0, HALF),
        (0, 0, HALF, 0),
        (0, 0, HALF, HALF),
        (HALF, 0, 0, 0),
        (0, HALF, 0, 0),
        (HALF, HALF, 0, 0),
        (0, HALF, HALF, 0),
        (HALF, 0, 0, HALF),
        (HALF, HALF, HALF, HALF),
    ]
)


# ---------------------------------------------------------------------------
# theta evaluation


def _exp_2pii(w: BallComplex, two_pi: BallReal) -> BallComplex:
    mag = (-(two_pi * w.im)).exp()
    ang = two_pi * w.re
    return BallComplex(mag * ang.cos(), mag * ang.sin())


class _PowerCache:
    def __init__(self, base: BallComplex):
        self.pos = {0: BallComplex.exact(1, 0, base.prec), 1: base}
        self.neg = None
        self.base = base

    def get(self, n: int) -> BallComplex:
        if n < 0:
            if self.neg is None:
                self.neg = _PowerCache(BallComplex.exact(1, 0, self.base.prec) / self.base)
            return self.neg.get(-n)
        got = self.pos.get(n)
        if got is None:
            half = self.get(n // 2)
            got = half * half if n % 2 == 0 else half * half * self.base
            self.pos[n] = got
        return got


def _theta_tail(tau: PeriodMatrix, y_inf, N: int, prec: int):
    """Upper bound for the discarded |terms| with max|n_i + a_i| > N.

    Uses t(u) Im(tau) u >= lambda ||u||_inf^2 and |2 t(u) Im(Z)| <=
    4 ||u||_inf ||Im Z||_inf, then sums shells of size <= 16(m+1).
    """
    lam = tau.lambda_min()
    if not lam.is_positive():
        raise ValidationError("Im(tau) is not positive definite")
    pi = BallReal.pi(prec)
    lam_lo = BallReal.from_endpoints(lam.lower(), lam.lower(), prec)
    m0 = BallReal.exact(N, prec)  # ||u||_inf >= N over the discarded set
    phi = pi * (lam_lo * m0 * m0 - 4 * m0 * y_inf)
    first = 16 * (m0 + 1) * (-phi).exp()
    # ratio between consecutive shell bounds
    ratio = 2 * (-(pi * (lam_lo * (2 * m0 + 1) - 4 * y_inf))).exp()
    if not (ratio < BallReal.exact(HALF, prec)):
        return None
    return (first * 2).magnitude()


def theta(
    char: ThetaCharacteristic,
    Z,
    tau: PeriodMatrix,
    precision=DEFAULT_PRECISION,
) -> BallComplex:
    """theta_{a,b}(Z, tau) = sum over n of e^{2 pi i (t(n+a) tau (n+a)/2 + t(n+a)(Z+b))}."""
    prec = precision
    z1, z2 = (
        z if isinstance(z, BallComplex) else BallComplex.exact(Fraction(z), 0, prec)
        for z in Z
    )
    if not tau.det_im().is_positive() or not tau.im11().is_positive():
        raise ValidationError("Im(tau) is not positive definite")
    two_pi = 2 * BallReal.pi(prec)
    a1, a2 = char.a
    z1b = z1 + BallComplex.exact(char.b[0], 0, prec)
    z2b = z2 + BallComplex.exact(char.b[1], 0, prec)

    # integer-power bases: the exponent of each lattice term decomposes as
    #   (4u1^2) tau11/8 + (4u1u2) tau12/4 + (4u2^2) tau22/8 + (2u1)(z1+b1)/2 + ...
    bases = [
        _PowerCache(_exp_2pii(tau.tau11 / 8, two_pi)),
        _PowerCache(_exp_2pii(tau.tau12 / 4, two_pi)),
        _PowerCache(_exp_2pii(tau.tau22 / 8, two_pi)),
        _PowerCache(_exp_2pii(z1b / 2, two_pi)),
        _PowerCache(_exp_2pii(z2b / 2, two_pi)),
    ]

    y_inf_ball = abs(z1b.im).union(abs(z2b.im))
    y_inf = BallReal.from_endpoints(0, y_inf_ball.upper(), prec)

    # initial truncation guess from a float model
    import math

    lam_f = max(float(tau.lambda_min().lower()), 1e-6)
    y_f = float(y_inf.upper())
    N = 2
    while lam_f * math.pi * N * N - 4 * math.pi * N * y_f < (prec + 8) * math.log(2) + math.log(
        32 * (N + 1)
    ):
        N += 1
        if N > 4000:
            raise PrecisionError("theta truncation did not stabilize")

    for _ in range(12):
        tail = _theta_tail(tau, y_inf, N, prec)
        if tail is not None:
            acc = BallComplex.exact(0, 0, prec)
            max_term = None
            for n1 in range(-N, N + 1):
                u1 = n1 + a1
                for n2 in range(-N, N + 1):
                    u2 = n2 + a2
                    term = (
                        bases[0].get(int(4 * u1 * u1))
                        * bases[1].get(int(4 * u1 * u2))
                        * bases[2].get(int(4 * u2 * u2))
                        * bases[3].get(int(2 * u1))
                        * bases[4].get(int(2 * u2))
                    )
                    acc = acc + term
                    m = max(abs(term.re).upper(), abs(term.im).upper())
                    if max_term is None or m > max_term:
                        max_term = m
            scale = (abs(acc.re) + abs(acc.im) + BallReal.from_endpoints(max_term, max_term, prec)).magnitude()
            ok = BallReal.from_endpoints(0, tail, prec) <= BallReal.exact(
                Fraction(1, 2**prec), prec
            ) * BallReal.from_endpoints(scale, scale, prec)
            if ok:
                tail_ball = BallReal.from_endpoints(0, tail, prec)
                wide = tail_ball.magnitude()
                return BallComplex(acc.re.widen(wide), acc.im.widen(wide))
        N += max(2, N // 4)
    raise PrecisionError("theta truncation did not reach the target tail")


def theta_constant(char: ThetaCharacteristic, tau: PeriodMatrix, precision=DEFAULT_PRECISION) -> BallComplex:
    zero = BallComplex.exact(0, 0, precision)
    return theta(char, (zero, zero), tau, precision)


# ---------------------------------------------------------------------------
# the archimedean local height


@dataclass(frozen=True)
class TorusPoint:
    """Z = X + tau Y with real 2-vectors X, Y (exact rationals)."""

    X: tuple
    Y: tuple

    @classmethod
    def make(cls, x1, x2, y1, y2) -> "TorusPoint":
        return cls((Fraction(x1), Fraction(x2)), (Fraction(y1), Fraction(y2)))

    def reduced(self) -> "TorusPoint":
        def red(v):
            f = v - Fraction(int(v))  # in (-1, 1)
            if f >= HALF:
                f -= 1
            if f < -HALF:
                f += 1
            return f

        return TorusPoint(tuple(red(v) for v in self.X), tuple(red(v) for v in self.Y))

    def norm_inf(self) -> Fraction:
        return max(abs(v) for v in self.X + self.Y)


def torus_coordinates(P: TorusPoint, tau: PeriodMatrix, precision=DEFAULT_PRECISION):
    """The complex coordinates Z = X + tau Y as a pair of balls."""
    prec = precision
    x1, x2 = (BallComplex.exact(v, 0, prec) for v in P.X)
    y1, y2 = P.Y
    z1 = x1 + tau.tau11 * y1 + tau.tau12 * y2
    z2 = x2 + tau.tau12 * y1 + tau.tau22 * y2
    return (z1, z2)


def big_lambda(P: TorusPoint, tau: PeriodMatrix, precision=DEFAULT_PRECISION) -> BallReal:
    """-log(|theta(Z)| e^{-pi tY Im(tau) Y}) for the fixed odd characteristic.

    The quadratic correction t(Im Z) (Im tau)^-1 (Im Z) equals t(Y) Im(tau) Y
    for Z = X + tau Y with real X, Y.
    """
    prec = precision
    th = theta(LAMBDA_CHARACTERISTIC, torus_coordinates(P, tau, prec), tau, prec)
    mod = abs(th)
    if not mod.is_positive():
        raise DivisorProximityError(
            "theta ball contains zero: point too close to the theta divisor"
        )
    y1, y2 = P.Y
    q = tau.im11() * (y1 * y1) + 2 * tau.im12() * (y1 * y2) + tau.im22() * (y2 * y2)
    return -(mod.log()) + BallReal.pi(prec) * q


def archimedean_normalization_gap(lambda_hat: BallReal, lam: BallReal) -> BallReal:
    """The empirical difference lambda_hat - 2 Lambda at matching inputs.

    The additive constant relating the two local-height normalizations is
    not pinned down here; this helper only reports the observed difference.
    """
    return lambda_hat - 2 * lam


# ---------------------------------------------------------------------------
# the explicit archimedean lower bound


def min_distance_to_z(v: Fraction) -> Fraction:
    f = v - Fraction(int(v))
    if f < 0:
        f += 1
    return min(f, 1 - f)


def theta_offset_distance(Y) -> Fraction:
    """min_i d(1/2 + y_i, ZZ): the distance entering the lower bound."""
    return min(min_distance_to_z(HALF + Fraction(y)) for y in Y)


def c3_bound(Y, precision=DEFAULT_PRECISION) -> BallReal:
    """max_i 8 pi (4/pi + 2|y_i| + ((y_i^2 + 8/pi)^{1/2} + 2)^2 / 2 + 1/2)."""
    from .balls import ball_max

    prec = precision
    pi = BallReal.pi(prec)
    vals = []
    for y in Y:
        y = abs(Fraction(y))
        t = (BallReal.exact(y * y, prec) + 8 / pi).sqrt() + 2
        vals.append(8 * pi * (4 / pi + BallReal.exact(2 * y, prec) + t * t * HALF + HALF))
    return ball_max(vals)


def lambda_lower_bound(X, Y, tau: PeriodMatrix, precision=DEFAULT_PRECISION) -> BallReal:
    """The explicit lower bound for big_lambda at Z = X + tau Y, ||(X,Y)|| <= 1/2.

    pi (Tr Im tau - 2 Im tau12) d^2 - log(4 + 3/2 Tr Im tau)
      + log(1/||(X,Y)||) - log C3(Y),
    with d = min_i d(1/2 + y_i, ZZ).
    """
    prec = precision
    X = tuple(Fraction(x) for x in X)
    Y = tuple(Fraction(y) for y in Y)
    norm = max(abs(v) for v in X + Y)
    if norm > HALF:
        raise ValidationError("the bound requires ||(X, Y)|| <= 1/2")
    if norm == 0:
        raise ValidationError("the bound requires (X, Y) != 0")
    pi = BallReal.pi(prec)
    d = theta_offset_distance(Y)
    tr = tau.trace_im()
    main = pi * (tr - 2 * tau.im12()) * BallReal.exact(d * d, prec)
    penalty = (4 + tr * Fraction(3, 2)).log()
    return main - penalty + BallReal.exact(Fraction(1) / norm, prec).log() - c3_bound(Y, prec).log()


# ---------------------------------------------------------------------------
# Siegel-domain predicates


@dataclass(frozen=True)
class SiegelReport:
    s2: bool
    s3_partial: bool
    in_f2_eps: bool
    in_f2_inf: bool
    epsilon: object
    s1: str = "not checked"

    def product_locus(self) -> bool:
        """Whether Im tau12 is exactly zero (product-of-elliptic-curves locus)."""
        return bool(self._im12_zero)

    _im12_zero: bool = False


def siegel_checks(tau: PeriodMatrix, epsilon, precision=DEFAULT_PRECISION) -> SiegelReport:
    """Finitely checkable membership predicates; maximality is never asserted."""
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValidationError("epsilon must be positive")
    prec = precision
    half = BallReal.exact(HALF, prec)
    b1, b12, b2 = tau.im11(), tau.im12(), tau.im22()
    s2 = all(abs(z.re) <= half for z in (tau.tau11, tau.tau12, tau.tau22))
    sqrt3_2 = (BallReal.exact(3, prec).sqrt()) * HALF
    s3 = (
        b1 <= b2
        and sqrt3_2 <= b1
        and 2 * b12 <= b1
        and 2 * abs(b12) <= b1
        and (b12.is_positive() or (b12.mid == 0 and b12.rad == 0))
    )
    thresh = BallReal.exact(max(Fraction(1) / eps, 31), prec)
    in_eps = (BallReal.exact(eps, prec) <= b12) and (thresh <= b1)
    in_inf = (BallReal.exact(1, prec) <= b1 * b12) and (BallReal.exact(31, prec) <= b1)
    return SiegelReport(
        s2=bool(s2),
        s3_partial=bool(s3),
        in_f2_eps=bool(in_eps),
        in_f2_inf=bool(in_inf),
        epsilon=eps,
        _im12_zero=bool(b12.mid == 0 and b12.rad == 0),
    )


# ---------------------------------------------------------------------------
# the 80-point sum over order-3 points


def three_torsion_lambda_sum(
    tau: PeriodMatrix, epsilon, precision=DEFAULT_PRECISION
):
    """(sum of Lambda over the 80 order-3 torus points, explicit upper bound).

    Hypotheses: Im tau12 >= eps > 0, Im tau2 >= 31, Im tau1 >= max(sqrt(3)/2, 1/eps).
    Raises if the certified sum exceeds the bound.
    """
    prec = precision
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValidationError("epsilon must be positive")
    b1, b12, b2 = tau.im11(), tau.im12(), tau.im22()
    sqrt3_2 = BallReal.exact(3, prec).sqrt() * HALF
    hyp = (
        BallReal.exact(eps, prec) <= b12
        and BallReal.exact(31, prec) <= b2
        and BallReal.exact(Fraction(1) / eps, prec) <= b1
        and sqrt3_2 <= b1
    )
    if not hyp:
        raise HypothesisError("tau does not satisfy the order-3 sum hypotheses")

    total = BallReal.exact(0, prec)
    third = Fraction(1, 3)
    for a1 in range(3):
        for a2 in range(3):
            for a3 in range(3):
                for a4 in range(3):
                    if (a1, a2, a3, a4) == (0, 0, 0, 0):
                        continue
                    P = TorusPoint.make(a1 * third, a2 * third, a3 * third, a4 * third)
                    total = total + big_lambda(P, tau, prec)
    pi = BallReal.pi(prec)
    bound = 8 * pi * tau.trace_im() - 8 * pi * b12 + 10 * BallReal.exact(
        max(Fraction(1) / eps, 15), prec
    ).log()
    if total <= bound:
        return total, bound
    if bound < total:
        raise LemmaViolationError("order-3 archimedean sum exceeds its stated bound")
    raise PrecisionError("order-3 sum comparison is indeterminate at this precision")


# ---------------------------------------------------------------------------
# even theta constants and their lower bounds


@dataclass(frozen=True)
class EvenThetaEntry:
    char: ThetaCharacteristic
    theta: BallComplex
    value: BallReal  # |theta_{ab}(0)| e^{pi t(a) Im tau a}
    lower_bound: object  # BallReal or None when hypotheses fail


def _bound_a00(tau, prec):
    b1, b2 = tau.im11(), tau.im22()
    pi = BallReal.pi(prec)
    f1 = 1 + (2 + (2 / b1).sqrt()) * (-(pi * b1 * HALF)).exp()
    f2 = 1 + (2 + (2 / b2).sqrt()) * (-(pi * b2 * HALF)).exp()
    return 2 - f1 * f2


def _bound_a1000(tau, prec, swap=False):
    b1, b2 = (tau.im22(), tau.im11()) if swap else (tau.im11(), tau.im22())
    pi = BallReal.pi(prec)
    t1 = 1 + (1 + (6 / b1).sqrt()) * (-(pi * b1 / 6)).exp()
    t2 = 2 + (1 + 2 / b2.sqrt()) * (-(pi * b2 / 4)).exp()
    t3 = 1 + (2 + (2 / b2).sqrt()) * (-(pi * b2 * HALF)).exp()
    t4 = (-(pi * b2)).exp()
    t5 = (1 + (1 + (2 / b2).sqrt()) * (-(pi * b2 * HALF)).exp()) * (-(2 * pi * b1)).exp()
    return 4 - t1 * t2 - t3 - t4 - t5


def _bound_a1100(tau, prec):
    b1, b12 = tau.im11(), tau.im12()
    pi = BallReal.pi(prec)
    t = 18 + 6 * (2 / b1).sqrt() + (1 + (8 / b1).sqrt()) ** 2
    return 2 * (pi * b12).exp() - 1 - t * (-(pi * b1 / 4)).exp()


def _bound_f2eps(tau, prec):
    """min(eps/2, 0.31) for the largest usable eps = Im tau12."""
    b1, b12 = tau.im11(), tau.im12()
    if not (BallReal.exact(31, prec) <= b1 and BallReal.exact(1, prec) <= b1 * b12):
        return None
    eps_half = BallReal.from_endpoints(b12.lower(), b12.lower(), prec) * HALF
    cap = BallReal.exact(Fraction(31, 100), prec)
    if eps_half <= cap:
        return eps_half
    if cap <= eps_half:
        return cap
    return eps_half.union(cap)  # indeterminate order: keep the hull


def even_theta_constants(tau: PeriodMatrix, precision=DEFAULT_PRECISION):
    """The ten even theta constants with the applicable lower bounds.

    Bounds are attached only when their hypotheses certainly hold (the
    reduction inequalities, plus the tubular-neighbourhood condition for the
    characteristic that degenerates on the product locus); a certain
    violation raises.
    """
    prec = precision
    pi = BallReal.pi(prec)
    reduced = tau.is_reduced()
    out = []
    for char in EVEN_CHARACTERISTICS:
        th = theta_constant(char, tau, prec)
        a1, a2 = char.a
        quad = (
            tau.im11() * (a1 * a1) + 2 * tau.im12() * (a1 * a2) + tau.im22() * (a2 * a2)
        )
        value = abs(th) * (pi * quad).exp()
        bound = None
        if reduced:
            if char.a == (Fraction(0), Fraction(0)):
                bound = _bound_a00(tau, prec)
            elif char.a == (HALF, Fraction(0)):
                bound = _bound_a1000(tau, prec, swap=False)
            elif char.a == (Fraction(0), HALF):
                bound = _bound_a1000(tau, prec, swap=True)
            elif char.a == (HALF, HALF) and char.b == (Fraction(0), Fraction(0)):
                bound = _bound_a1100(tau, prec)
            else:  # a = b = (1/2, 1/2): degenerates on the product locus
                bound = _bound_f2eps(tau, prec)
        if bound is not None:
            if value < bound:
                raise LemmaViolationError(
                    f"theta-constant bound violated for characteristic {char}"
                )
        out.append(EvenThetaEntry(char, th, value, bound))
    return out


# ---------------------------------------------------------------------------
# auxiliary Gaussian-series estimates (checkable inequality helpers)


def gaussian_comb_sum(alpha, beta, precision=DEFAULT_PRECISION, exclude=()) -> BallReal:
    """A rigorous upper ball for sum over n in ZZ (minus exclusions) of
    e^{-alpha (n + beta)^2}."""
    prec = precision
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha <= 0:
        raise ValidationError("alpha must be positive")
    a_ball = BallReal.exact(alpha, prec)
    import math

    M = max(4, int(math.isqrt(int((prec + 16) / max(float(alpha), 1e-9))) + abs(beta)) + 2)
    acc = BallReal.exact(0, prec)
    for n in range(-M, M + 1):
        if n in exclude:
            continue
        u = Fraction(n) + beta
        acc = acc + (-(a_ball * (u * u))).exp()
    m0 = min(abs(Fraction(M + 1) + beta), abs(Fraction(-M - 1) + beta))
    head = (-(a_ball * (m0 * m0))).exp()
    ratio = (-(2 * a_ball * m0)).exp()
    if not (ratio < BallReal.exact(HALF, prec)):
        raise PrecisionError("series tail ratio too large; increase the cutoff")
    tail = 4 * head  # two sides, each bounded by head / (1 - ratio) <= 2 head
    return acc.widen(tail.magnitude())


def gaussian_comb_bound(alpha, beta, precision=DEFAULT_PRECISION, case="generic") -> BallReal:
    """The stated upper bounds for the shifted Gaussian comb.

    case 'generic' (beta not in ZZ): (2 + sqrt(pi/alpha)) e^{-alpha d(beta,ZZ)^2};
    case 'integer': 1 + sqrt(pi/alpha);
    case 'half_excluded': sqrt(pi/alpha) e^{-25 alpha/4}, for beta = 1/2 with
    n in {-3..2} removed; case 'zero_excluded': sqrt(pi/alpha) e^{-alpha},
    for beta = 0 with n in {-1,0,1} removed.
    """
    prec = precision
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    a_ball = BallReal.exact(alpha, prec)
    pi = BallReal.pi(prec)
    root = (pi / a_ball).sqrt()
    if case == "generic":
        d = min_distance_to_z(beta)
        return (2 + root) * (-(a_ball * (d * d))).exp()
    if case == "integer":
        return 1 + root
    if case == "half_excluded":
        return root * (-(a_ball * Fraction(25, 4))).exp()
    if case == "zero_excluded":
        return root * (-a_ball).exp()
    raise ValidationError(f"unknown case {case!r}")


def weighted_gaussian_sum(alpha, beta, precision=DEFAULT_PRECISION) -> BallReal:
    """Rigorous upper ball for sum over n of |n + 1/2| e^{-alpha (n + beta)^2}."""
    prec = precision
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha <= 0:
        raise ValidationError("alpha must be positive")
    a_ball = BallReal.exact(alpha, prec)
    import math

    M = max(6, int(math.isqrt(int((prec + 16) / max(float(alpha), 1e-9))) + abs(beta)) + 3)
    acc = BallReal.exact(0, prec)
    for n in range(-M, M + 1):
        u = Fraction(n) + beta
        w = abs(Fraction(n) + HALF)
        acc = acc + w * (-(a_ball * (u * u))).exp()
    m0 = min(abs(Fraction(M + 1) + beta), abs(Fraction(-M - 1) + beta))
    wmax = Fraction(M + 2) + abs(beta)
    head = (-(a_ball * (m0 * m0))).exp()
    ratio = 2 * (-(2 * a_ball * m0)).exp()  # weight growth absorbed in factor 2
    if not (ratio < BallReal.exact(HALF, prec)):
        raise PrecisionError("series tail ratio too large; increase the cutoff")
    # per side: wmax sum_k (1+k) ratio^k <= 4 wmax; two sides
    tail = 8 * wmax * head
    return acc.widen(tail.magnitude())


def weighted_gaussian_constant(alpha, beta, precision=DEFAULT_PRECISION) -> BallReal:
    """C(alpha, beta) = 1/alpha + |beta - 1/2| sqrt(pi/alpha)
    + ((beta - 1/2)^2 + 2/alpha)^{1/2} + 2)^2 / 2 + 1/2."""
    prec = precision
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    a_ball = BallReal.exact(alpha, prec)
    pi = BallReal.pi(prec)
    b = abs(beta - HALF)
    t = (BallReal.exact(b * b, prec) + 2 / a_ball).sqrt() + 2
    return 1 / a_ball + b * (pi / a_ball).sqrt() + t * t * HALF + HALF


def weighted_lattice_sum(tau: PeriodMatrix, Y, u, i: int, precision=DEFAULT_PRECISION) -> BallReal:
    """Rigorous upper ball for sum over n in ZZ^2 of |n_i + 1/2|
    e^{-pi t(n + a + Y u) Im tau (n + a + Y u)}, a = (1/2, 1/2), u in [0, 1]."""
    prec = precision
    pi = BallReal.pi(prec)
    y1, y2 = (Fraction(v) for v in Y)
    u = Fraction(u)
    c1, c2 = HALF + y1 * u, HALF + y2 * u
    b1, b12, b2 = tau.im11(), tau.im12(), tau.im22()
    lam = tau.lambda_min()
    import math

    lam_f = max(float(lam.lower()), 1e-9)
    M = max(4, int(math.sqrt((prec + 16) / (lam_f * math.pi))) + 2)
    acc = BallReal.exact(0, prec)
    for n1 in range(-M, M + 1):
        v1 = Fraction(n1) + c1
        w1 = abs(Fraction(n1) + HALF)
        for n2 in range(-M, M + 1):
            v2 = Fraction(n2) + c2
            q = b1 * (v1 * v1) + 2 * b12 * (v1 * v2) + b2 * (v2 * v2)
            w = w1 if i == 0 else abs(Fraction(n2) + HALF)
            acc = acc + w * (-(pi * q)).exp()
    lam_lo = BallReal.from_endpoints(lam.lower(), lam.lower(), prec)
    m0 = BallReal.exact(M - 1, prec)
    head = 16 * (m0 + 2) * (m0 + 2) * (-(pi * lam_lo * m0 * m0)).exp()
    ratio = 4 * (-(pi * lam_lo * (2 * m0 + 1))).exp()
    if not (ratio < BallReal.exact(HALF, prec)):
        raise PrecisionError("lattice tail ratio too large")
    return acc.widen((2 * head).magnitude())


def weighted_lattice_bound(tau: PeriodMatrix, Y, i: int, precision=DEFAULT_PRECISION) -> BallReal:
    """C2(y_i) e^{-pi (Tr Im tau - 2 Im tau12) d(a + Y, ZZ)^2}."""
    prec = precision
    pi = BallReal.pi(prec)
    y = abs(Fraction(Y[i]))
    t = (BallReal.exact(y * y, prec) + 8 / pi).sqrt() + 2
    c2 = 4 * (4 / pi + BallReal.exact(2 * y, prec) + t * t * HALF + HALF)
    d = theta_offset_distance(Y)
    expo = pi * (tau.trace_im() - 2 * tau.im12()) * BallReal.exact(d * d, prec)
    return c2 * (-expo).exp()
