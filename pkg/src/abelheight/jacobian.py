"""Exact group arithmetic on Jac(C) for C: y^2 = F(x), deg F = 5.

Points are Mumford pairs (u, v) with u monic of degree <= 2, deg v < deg u,
and u | v^2 - F.  The group law is Cantor composition + reduction, which is
fully general and doubles as the trusted oracle for the Kummer duplication
data shipped with the package.

The low-level polynomial helpers are deliberately field-generic (they only
use +, -, *, / and truthiness of coefficients), so the same Cantor code runs
over QQ here and over finite fields in the table-derivation tooling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .exactpoly import factorint, poly_discriminant

# ---------------------------------------------------------------------------
# field-generic univariate polynomial helpers (ascending coefficient tuples)


def ptrim(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return tuple(f)


def pdeg(f):
    return len(f) - 1


def padd(f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return ptrim(out)


def pneg(f):
    return tuple(-c for c in f)


def psub(f, g):
    return padd(f, pneg(g))


def pmul(f, g):
    if not f or not g:
        return ()
    out = [f[0] * g[0] * 0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return ptrim(out)


def pscale(f, c):
    return ptrim(tuple(a * c for a in f))


def pdivmod(f, g):
    """Euclidean division over a field; leading coefficient of g invertible."""
    f, g = ptrim(f), ptrim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if pdeg(f) < pdeg(g):
        return (), f
    rem = list(f)
    lead = g[-1]
    dg = pdeg(g)
    q = [f[0] * 0] * (pdeg(f) - dg + 1)
    for i in range(pdeg(f) - dg, -1, -1):
        if rem[i + dg]:
            c = rem[i + dg] / lead
            q[i] = c
            for j, b in enumerate(g):
                rem[i + j] = rem[i + j] - c * b
    return ptrim(q), ptrim(rem)


def pmod(f, g):
    return pdivmod(f, g)[1]


def pmonic(f):
    f = ptrim(f)
    if not f:
        return f
    lead = f[-1]
    return tuple(c / lead for c in f)


def pxgcd(f, g):
    """(d, s, t) with d = s f + t g monic."""
    f, g = ptrim(f), ptrim(g)
    if not f and not g:
        return (), (), ()
    one = (f or g)[-1] / (f or g)[-1]
    r0, r1 = f, g
    s0, s1 = (one,), ()
    t0, t1 = (), (one,)
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    inv = one / r0[-1]
    return pmonic(r0), pscale(s0, inv), pscale(t0, inv)


def pexactdiv(f, g):
    q, r = pdivmod(f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# Cantor composition and reduction, genus 2, odd model


def cantor_compose(u1, v1, u2, v2, F):
    d1, e1, e2 = pxgcd(u1, u2)
    d, c1, c2 = pxgcd(d1, padd(v1, v2))
    s1 = pmul(c1, e1)
    s2 = pmul(c1, e2)
    u = pexactdiv(pmul(u1, u2), pmul(d, d))
    w = padd(
        padd(pmul(pmul(s1, u1), v2), pmul(pmul(s2, u2), v1)),
        pmul(c2, padd(pmul(v1, v2), F)),
    )
    v = pmod(pexactdiv(w, d), u)
    return u, v


def cantor_reduce(u, v, F):
    while pdeg(u) > 2:
        u = pexactdiv(psub(F, pmul(v, v)), u)
        v = pmod(pneg(v), u)
    return pmonic(u), pmod(v, u)


# ---------------------------------------------------------------------------
# public exact types over QQ


@dataclass(frozen=True)
class CurveModel:
    """Integral model y^2 = a5 x^5 + ... + a0 with nonzero discriminant."""

    coeffs: tuple
    disc: int
    normalized_disc: int  # D = 2^8 disc(F)

    @classmethod
    def from_coeffs(cls, coeffs) -> "CurveModel":
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 6:
            raise ValidationError("expected six coefficients a0..a5")
        if coeffs[5] == 0:
            raise ValidationError("a5 must be nonzero (degree-5 model)")
        disc = poly_discriminant(coeffs)
        if disc == 0:
            raise ValidationError("curve is singular: disc(F) = 0")
        return cls(coeffs, disc, 2**8 * disc)

    @property
    def F(self):
        return tuple(Fraction(c) for c in self.coeffs)

    def f_eval(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def bad_primes(self):
        """Primes dividing 2 disc(F), each with e_p = ord_p(2^4 disc F)."""
        return factorint(abs(2**4 * self.disc))


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced Mumford pair (u, v) over QQ; u monic, deg u <= 2."""

    u: tuple
    v: tuple

    @classmethod
    def make(cls, curve: CurveModel, u, v) -> "MumfordDivisor":
        u = ptrim(tuple(Fraction(c) for c in u))
        v = ptrim(tuple(Fraction(c) for c in v))
        if not u or u[-1] != 1:
            raise ValidationError("u must be monic")
        if pdeg(u) > 2:
            raise ValidationError("u must have degree <= 2")
        if pdeg(v) >= max(pdeg(u), 1):
            raise ValidationError("v must satisfy deg v < max(deg u, 1)")
        if pmod(psub(pmul(v, v), curve.F), u):
            raise ValidationError("u does not divide v^2 - F")
        return cls(u, v)

    def is_identity(self) -> bool:
        return pdeg(self.u) == 0


def identity() -> MumfordDivisor:
    return MumfordDivisor((Fraction(1),), ())


def embed_point(curve: CurveModel, x, y) -> MumfordDivisor:
    """Class of [(x, y) - (infinity)], Mumford form (X - x, y)."""
    x, y = Fraction(x), Fraction(y)
    if y * y != curve.f_eval(x):
        raise ValidationError("point is not on the curve")
    if y == 0:
        return MumfordDivisor((-x, Fraction(1)), ())
    return MumfordDivisor((-x, Fraction(1)), (y,))


def inverse(D: MumfordDivisor) -> MumfordDivisor:
    return MumfordDivisor(D.u, pmod(pneg(D.v), D.u) if pdeg(D.u) >= 1 else ())


def cantor_add(curve: CurveModel, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
    u, v = cantor_compose(D1.u, D1.v, D2.u, D2.v, curve.F)
    u, v = cantor_reduce(u, v, curve.F)
    return MumfordDivisor(u, v)


def cantor_double(curve: CurveModel, D: MumfordDivisor) -> MumfordDivisor:
    return cantor_add(curve, D, D)


def scalar_mul(curve: CurveModel, D: MumfordDivisor, n: int) -> MumfordDivisor:
    if n == 0:
        return identity()
    if n < 0:
        return scalar_mul(curve, inverse(D), -n)
    out = identity()
    base = D
    while n:
        if n & 1:
            out = cantor_add(curve, out, base)
        base = cantor_double(curve, base)
        n >>= 1
    return out


def is_on_theta(D: MumfordDivisor) -> bool:
    """True iff D is a class [(P) - (infinity)] or the identity."""
    return pdeg(D.u) <= 1
