"""Kummer-surface embedding, duplication, and canonical heights.

The degree-4 duplication forms delta_1..delta_4 and the surface quartic are
loaded from ``data/kummer_duplication.txt`` (one monomial per line, grammar
documented in the file header and in the README).  The data is validated in
the test suite by exact comparison against Cantor doubling; nothing in this
module trusts it beyond that check.

Heights follow the normalization in which a projective Kummer point has its
first nonzero coordinate equal to 1, the naive height of a rational point
is log max |k_i| over coprime integer coordinates, and the canonical height
is the limit of h(K_{[2^n]P}) / 4^n.

The canonical-height iteration never forms the (doubly exponentially large)
integer coordinate vectors: the archimedean factor is tracked with ball
arithmetic on sup-normalized vectors, and the gcd removed at each doubling
is tracked exactly modulo high powers of the bad primes, which is enough
because the content of delta(K) divides 2^4 disc(F) (Stoll's bound).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .balls import DEFAULT_PRECISION, BallComplex, BallReal, ball_max, log_int
from .errors import (
    InternalConsistencyError,
    PrecisionError,
    ValidationError,
)
from .exactpoly import is_prime
from .jacobian import CurveModel, MumfordDivisor, pdeg

_DATA_PATH = os.path.join(os.path.dirname(__file__), "data", "kummer_duplication.txt")

_AVARS = ("a0", "a1", "a2", "a3", "a4", "a5")


def load_duplication_table(path=_DATA_PATH):
    """Parse the data file into {index: [(k_exponents, a_exponents, coeff)]}."""
    table = {i: [] for i in range(5)}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(None, 5)
            idx = int(parts[0])
            ke = tuple(int(x) for x in parts[1:5])
            for ae, c in _parse_coeff_poly(parts[5]):
                table[idx].append((ke, ae, c))
    return table


def _parse_coeff_poly(text):
    """Parse 'c*a0^2*a3-4*a1+7' into [(a_exponents, int_coefficient)]."""
    out = []
    for term in text.replace("-", "+-").split("+"):
        if not term:
            continue
        factors = term.split("*")
        if factors[0] in ("", "-"):
            c = -1 if factors[0] == "-" else 1
            factors = factors[1:]
        else:
            try:
                c = int(factors[0])
                factors = factors[1:]
            except ValueError:
                c = 1
        ae = [0] * 6
        for f in factors:
            if "^" in f:
                name, e = f.split("^")
                ae[int(name[1])] += int(e)
            else:
                ae[int(f[1])] += 1
        out.append((tuple(ae), c))
    return out


_TABLE = None


def _raw_table():
    global _TABLE
    if _TABLE is None:
        _TABLE = load_duplication_table()
    return _TABLE


class SpecializedKummer:
    """The duplication data with a0..a5 specialized at an integral curve."""

    def __init__(self, curve: CurveModel):
        self.curve = curve
        raw = _raw_table()
        a = curve.coeffs
        self.deltas = [self._specialize(raw[i], a) for i in (1, 2, 3, 4)]
        self.quartic = self._specialize(raw[0], a)
        # split of the quartic in powers of k4 (for the diagonal branch)
        self.quartic_by_k4 = {0: [], 1: [], 2: []}
        for ke, c in self.quartic:
            self.quartic_by_k4[ke[3]].append(((ke[0], ke[1], ke[2], 0), c))
        self.coeff_sum_bound = max(sum(abs(c) for _, c in d) for d in self.deltas)

    @staticmethod
    def _specialize(rows, a):
        acc = {}
        for ke, ae, c in rows:
            val = c
            for i, e in enumerate(ae):
                val *= a[i] ** e
            if val:
                acc[ke] = acc.get(ke, 0) + val
        return [(ke, c) for ke, c in sorted(acc.items(), reverse=True) if c]


_SPECIALIZED_CACHE: dict = {}


def specialize(curve: CurveModel) -> SpecializedKummer:
    spec = _SPECIALIZED_CACHE.get(curve.coeffs)
    if spec is None:
        spec = SpecializedKummer(curve)
        _SPECIALIZED_CACHE[curve.coeffs] = spec
    return spec


def eval_form(terms, coords):
    """Evaluate a specialized form at 4 coordinates of any commutative ring."""
    pows = [None] * 4
    for i in range(4):
        x = coords[i]
        row = [1, x]
        for _ in range(3):
            row.append(row[-1] * x)
        pows[i] = row
    acc = None
    for ke, c in terms:
        term = c
        for i in range(4):
            if ke[i]:
                term = term * pows[i][ke[i]]
        acc = term if acc is None else acc + term
    return 0 if acc is None else acc


def eval_form_mod(terms, coords, m):
    """Evaluate a specialized form on integers modulo m."""
    pows = []
    for x in coords:
        row = [1, x % m]
        for _ in range(3):
            row.append(row[-1] * row[1] % m)
        pows.append(row)
    acc = 0
    for ke, c in terms:
        t = c % m
        for i in range(4):
            if ke[i]:
                t = t * pows[i][ke[i]] % m
        acc = (acc + t) % m
    return acc


# ---------------------------------------------------------------------------
# Kummer points


@dataclass(frozen=True)
class KummerPoint:
    """Projective 4-tuple; exact Fractions or BallComplex coordinates."""

    coords: tuple
    normalized: bool = False

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coords)

    def normalize(self) -> "KummerPoint":
        if self.normalized:
            return self
        if self.is_exact():
            pivot = next((c for c in self.coords if c != 0), None)
            if pivot is None:
                raise ValidationError("zero Kummer tuple")
            return KummerPoint(tuple(c / pivot for c in self.coords), True)
        pivot = None
        for c in self.coords:
            if not isinstance(c, BallComplex):
                raise ValidationError("mixed exact/ball Kummer coordinates")
            if not c.contains_zero():
                pivot = c
                break
            if c.re.rad != 0 or c.im.rad != 0 or c.re.mid != 0 or c.im.mid != 0:
                # a ball straddling zero that is not the exact zero
                raise PrecisionError("cannot decide the first nonzero coordinate")
        if pivot is None:
            raise ValidationError("zero Kummer tuple")
        return KummerPoint(tuple(c / pivot for c in self.coords), True)

    def coprime_integers(self) -> tuple:
        """The integer representative with coprime entries (exact points)."""
        if not self.is_exact():
            raise ValidationError("integer representative needs exact coordinates")
        den = 1
        for c in self.coords:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coords]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if g == 0:
            raise ValidationError("zero Kummer tuple")
        return tuple(c // g for c in ints)


def kummer_map(curve: CurveModel, D: MumfordDivisor) -> KummerPoint:
    """The image of a Mumford divisor on the Kummer surface, normalized."""
    d = pdeg(D.u)
    if d == 0:
        return KummerPoint((Fraction(0), Fraction(0), Fraction(0), Fraction(1)), True)
    a = curve.coeffs
    if d == 1:
        x = -D.u[0]
        return KummerPoint((Fraction(0), Fraction(1), x, a[5] * x * x), True)
    s, p = -D.u[1], D.u[0]
    den = s * s - 4 * p
    if den != 0:
        v1 = D.v[1] if len(D.v) == 2 else Fraction(0)
        v0 = D.v[0] if len(D.v) >= 1 else Fraction(0)
        G = 2 * a[0] + a[1] * s + 2 * a[2] * p + a[3] * s * p + 2 * a[4] * p * p + a[5] * s * p * p
        yy = v1 * v1 * p + v1 * v0 * s + v0 * v0
        return KummerPoint((Fraction(1), s, p, (G - 2 * yy) / den), True)
    # diagonal divisor 2(x, y) - 2*infinity: u has a double root, and the
    # quartic degenerates to a linear equation in k4 (its k4^2 coefficient
    # R = k2^2 - 4 k1 k3 vanishes), so k4 is forced
    spec = specialize(curve)
    k123 = (Fraction(1), s, p, Fraction(0))
    r_val = eval_form(spec.quartic_by_k4[2], k123)
    s_val = eval_form(spec.quartic_by_k4[1], k123)
    t_val = eval_form(spec.quartic_by_k4[0], k123)
    if r_val != 0 or s_val == 0:
        raise InternalConsistencyError("degenerate diagonal quartic expected")
    return KummerPoint((Fraction(1), s, p, -Fraction(t_val) / Fraction(s_val)), True)


def duplicate(curve: CurveModel, K: KummerPoint):
    """delta(K) normalized, plus the raw delta_1(K) value."""
    if not K.normalized:
        raise ValidationError("duplicate expects a normalized Kummer point")
    spec = specialize(curve)
    vals = [eval_form(d, K.coords) for d in spec.deltas]
    if K.is_exact():
        vals = [Fraction(v) for v in vals]
        if all(v == 0 for v in vals):
            raise InternalConsistencyError("duplication vanished on the quartic")
        return KummerPoint(tuple(vals)).normalize(), vals[0]
    return KummerPoint(tuple(vals)).normalize(), vals[0]


def quartic_value(curve: CurveModel, coords):
    """The Kummer quartic evaluated at the given coordinates."""
    return eval_form(specialize(curve).quartic, coords)


def naive_height(K: KummerPoint, precision=DEFAULT_PRECISION) -> BallReal:
    """log max |k_i| over coprime integer coordinates."""
    ints = K.coprime_integers()
    return log_int(max(abs(c) for c in ints), precision)


# ---------------------------------------------------------------------------
# canonical height


@dataclass(frozen=True)
class LocalHeightReport:
    place: object  # prime p or "archimedean"
    lambda_naive: BallReal
    mu: BallReal
    lambda_canonical: BallReal
    truncation_depth: int
    tail_bound: BallReal


class _PadicTracker:
    """Tracks the Kummer orbit modulo p^E and the gcd valuations removed."""

    def __init__(self, spec, p, e_p, coords, steps):
        self.spec = spec
        self.p = p
        self.e = e_p
        self.exponent = steps * e_p + e_p + 4
        self.modulus = p ** self.exponent
        self.state = [c % self.modulus for c in coords]

    def step(self):
        """Advance one doubling; returns ord_p of the removed content."""
        p, m = self.p, self.modulus
        vals = [eval_form_mod(d, self.state, m) for d in self.spec.deltas]
        v = None
        for x in vals:
            if x == 0:
                continue
            o = 0
            while x % p == 0:
                x //= p
                o += 1
            v = o if v is None else min(v, o)
            if v == 0:
                break
        if v is None or v > self.e:
            raise InternalConsistencyError(
                f"content valuation at p={p} exceeded the Stoll bound"
            )
        self.exponent -= v
        self.modulus = p**self.exponent
        if self.exponent <= self.e:
            raise PrecisionError("p-adic tracking precision exhausted")
        self.state = [(x // p**v) % self.modulus for x in vals]
        return v


def _arch_normalized(ints, precision):
    mx = max(abs(c) for c in ints)
    return [BallReal.exact(Fraction(c, mx), precision) for c in ints]


def canonical_height(
    curve: CurveModel,
    D: MumfordDivisor,
    target_radius=1e-10,
    precision=None,
    max_steps=64,
) -> BallReal:
    """A ball of radius <= target_radius around the canonical height of D.

    Iterates n -> log max|delta(K_n)| - log(content) at the archimedean place
    (balls) and exactly at the bad primes, with the tail after N doublings
    bounded by B(C) 4^-N / 3 where B(C) = log(coefficient sum bound) +
    sum_p ord_p(2^4 disc F) log p.
    """
    import math

    spec = specialize(curve)
    bad = curve.bad_primes()
    b_ball = log_int(spec.coeff_sum_bound, 64)
    for p, e in bad.items():
        b_ball = b_ball + e * log_int(p, 64)
    b_const = float(b_ball.magnitude())
    target = float(target_radius)
    if target <= 0:
        raise ValidationError("target radius must be positive")
    steps = 1
    while b_const / 3 * 0.25**steps > target / 2 and steps < max_steps:
        steps += 1
    if b_const / 3 * 0.25**steps > target / 2:
        raise PrecisionError(
            "iteration cap reached before the tail bound met the target",
            achieved=b_const / 3 * 0.25**steps,
        )
    if precision is None:
        precision = max(DEFAULT_PRECISION, int(-math.log2(target)) + 16 * steps)

    K = kummer_map(curve, D)
    ints = K.coprime_integers()
    h = log_int(max(abs(c) for c in ints), precision)

    logs = {p: log_int(p, precision) for p in bad}
    trackers = {p: _PadicTracker(spec, p, e, ints, steps) for p, e in bad.items()}
    x = _arch_normalized(ints, precision)

    acc = BallReal.exact(0, precision)
    w = Fraction(1, 4)
    for _ in range(steps):
        vals = [eval_form(d, x) for d in spec.deltas]
        emax = ball_max([abs(v) for v in vals])
        if not emax.is_positive():
            raise PrecisionError("archimedean duplication ratio ball touches zero")
        step_log = emax.log()
        for p, tr in trackers.items():
            v = tr.step()
            if v:
                step_log = step_log - v * logs[p]
        acc = acc + w * step_log
        x = [v / emax for v in vals]
        w /= 4
    tail = (Fraction(1, 3) * w) * b_ball
    out = (h + acc).widen(tail.magnitude())
    if float(out.rad) > target:
        raise PrecisionError("canonical height radius above target", achieved=float(out.rad))
    return out


def local_lambda_finite(
    curve: CurveModel,
    D: MumfordDivisor,
    p: int,
    depth: int = 12,
    precision=DEFAULT_PRECISION,
) -> LocalHeightReport:
    """Canonical local height at a finite place, truncated at ``depth``.

    The local correction series has terms in [log|2^4 disc F|_p, 0] (Stoll's
    two-sided bound), so the truncation tail lies in [-4^-depth/3 * e_p log p, 0].
    """
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if pdeg(D.u) <= 1:
        raise ValidationError("local height has a pole on the theta divisor")
    spec = specialize(curve)
    K = kummer_map(curve, D)
    ints = K.coprime_integers()

    # naive local height on the first-nonzero-normalized representative
    k_first = next(c for c in ints if c)
    v_first = 0
    while k_first % p == 0:
        k_first //= p
        v_first += 1
    lam = v_first * log_int(p, precision)

    e_p = curve.bad_primes().get(p, 0)
    if e_p == 0:
        mu = BallReal.exact(0, precision)
        tail = BallReal.exact(0, precision)
        return LocalHeightReport(p, lam, mu, lam + mu, depth, tail)

    tracker = _PadicTracker(spec, p, e_p, ints, depth)
    logp = log_int(p, precision)
    mu = BallReal.exact(0, precision)
    w = Fraction(1, 4)
    for _ in range(depth):
        v = tracker.step()
        if v:
            mu = mu - (w * v) * logp
        w /= 4
    tail = (Fraction(1, 3) * w * e_p) * logp
    lam_hat = (lam + mu).union(lam + mu - tail)
    return LocalHeightReport(p, lam, mu, lam_hat, depth, tail)


def duplication_content_valuation(curve: CurveModel, ints, p: int) -> int:
    """ord_p of the content of delta at coprime integer coordinates.

    E_p = p^(-result); Stoll's sandwich is 0 <= result <= ord_p(2^4 disc F).
    """
    spec = specialize(curve)
    vals = [eval_form(d, tuple(ints)) for d in spec.deltas]
    v = None
    for x in vals:
        if x == 0:
            continue
        o = 0
        while x % p == 0:
            x //= p
            o += 1
        v = o if v is None else min(v, o)
    if v is None:
        raise InternalConsistencyError("duplication vanished on the quartic")
    return v
