"""Exact arithmetic substrate: big-integer/rational polynomials.

Univariate integer polynomials are plain tuples of coefficients in
ascending degree.  Multivariate polynomials are :class:`SparsePoly`
(exponent-vector -> coefficient maps), which is what the Kummer
duplication data and the 3-torsion elimination chains live in.

Everything here is immutable and pure; no global state.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError

# ---------------------------------------------------------------------------
# primes and valuations


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Miller-Rabin with these bases is deterministic below 3.317e24.
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic for n < 3.3e24, strong pseudoprime test beyond."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        bases = _SMALL_PRIMES
    else:
        bases = _SMALL_PRIMES + tuple(range(41, 200, 2))
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n."""
    import math

    if n % 3 == 0:
        return 3
    c = 1
    while True:
        x = y = 2
        d = 1
        f = lambda z: (z * z + c) % n
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorint(n: int) -> dict:
    """Prime factorization of n >= 1 as {p: e}."""
    if n < 1:
        raise ValidationError("factorint expects a positive integer")
    out: dict = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    d = 49
    while d * d <= n and d < 100000:
        while n % d == 0:
            n //= d
            out[d] = out.get(d, 0) + 1
        d += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.extend([f, m // f])
    return dict(sorted(out.items()))


def valuation(q, p: int) -> int:
    """ord_p(q) for a nonzero rational q; negative on denominators."""
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        raise ValidationError("valuation of zero is undefined")
    v = 0
    num = abs(q.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = q.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


# ---------------------------------------------------------------------------
# univariate integer polynomials (ascending coefficient tuples)


def poly_trim(f) -> tuple:
    """Strip trailing zero coefficients; () is the zero polynomial."""
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def poly_degree(f) -> int:
    """Degree, with deg 0 = -1 by convention."""
    f = poly_trim(f)
    return len(f) - 1


def poly_eval(f, x):
    acc = 0
    for c in reversed(poly_trim(f)):
        acc = acc * x + c
    return acc


def poly_derivative(f) -> tuple:
    return poly_trim(tuple(i * c for i, c in enumerate(f) if i >= 1))


def poly_shift(f, c) -> tuple:
    """f(x + c) by synthetic division, exact in ZZ."""
    out = list(poly_trim(f))
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return poly_trim(out)


def sylvester_matrix(f, g) -> list:
    """Sylvester matrix of f, g as a list of rows (ints)."""
    f, g = poly_trim(f), poly_trim(g)
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise ValidationError("Sylvester matrix of the zero polynomial")
    size = m + n
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return rows


def _exact_div(a, b):
    """a / b, exact; works for int, Fraction and SparsePoly entries."""
    if isinstance(a, SparsePoly) or isinstance(b, SparsePoly):
        if not isinstance(a, SparsePoly):
            a = b.const_like(a)
        return a.exact_div(b)
    if isinstance(a, Fraction) or isinstance(b, Fraction):
        return Fraction(a) / Fraction(b)
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in Bareiss elimination")
    return q


def bareiss_determinant(rows):
    """Fraction-free determinant; entries may be ints, Fractions or SparsePolys."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0  # zero of the right type
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev)
            m[i][k] = 0
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant_univariate(f, g):
    """Res(f, g) over ZZ via Bareiss on the Sylvester matrix."""
    return bareiss_determinant(sylvester_matrix(f, g))


def poly_discriminant(F) -> int:
    """disc(F) for a quintic; zero exactly when F has a repeated root."""
    F = poly_trim(F)
    if poly_degree(F) != 5:
        raise ValidationError("discriminant implemented for degree-5 models only")
    res = resultant_univariate(F, poly_derivative(F))
    # disc = (-1)^{n(n-1)/2} Res(F, F')/lc, and the sign is +1 for n = 5.
    disc, r = divmod(res, F[-1])
    if r:
        raise ArithmeticError("resultant not divisible by leading coefficient")
    return disc


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class SparsePoly:
    """Multivariate polynomial over ZZ (or QQ), stored sparse.

    ``vars`` is a tuple of names fixing the exponent-vector order; ``terms``
    maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            nv = len(self.vars)
            for exps, c in terms.items():
                if c:
                    if len(exps) != nv:
                        raise ValidationError("exponent vector length mismatch")
                    clean[tuple(exps)] = clean.get(tuple(exps), 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, vars, c):
        vars = tuple(vars)
        if not c:
            return cls(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def gen(cls, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): 1})

    def const_like(self, c):
        return SparsePoly.const(self.vars, c)

    # -- predicates --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self):
        if not self.terms:
            return 0
        [(exps, c)] = self.terms.items()
        if any(exps):
            raise ValidationError("not a constant polynomial")
        return c

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.vars == other.vars and self.terms == other.terms
        return self.is_constant() and (self.constant_value() == other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            if other.vars != self.vars:
                raise ValidationError("variable mismatch")
            return other
        return SparsePoly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return SparsePoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            if not other:
                return SparsePoly(self.vars)
            return SparsePoly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return SparsePoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValidationError("negative power of a polynomial")
        out = SparsePoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- structure ---------------------------------------------------------

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name):
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def coeffs_in(self, name):
        """Coefficients of powers of ``name``, ascending, as SparsePolys."""
        i = self.vars.index(name)
        d = self.degree_in(name)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            buckets[k][tuple(e2)] = buckets[k].get(tuple(e2), 0) + c
        return [SparsePoly(self.vars, b) for b in buckets]

    def substitute(self, assignments: dict):
        """Fold the named variables to ring constants; result keeps all vars."""
        idx = {self.vars.index(n): v for n, v in assignments.items()}
        terms = {}
        for e, c in self.terms.items():
            coeff = c
            e2 = list(e)
            for i, v in idx.items():
                coeff = coeff * v ** e[i]
                e2[i] = 0
            e2 = tuple(e2)
            terms[e2] = terms.get(e2, 0) + coeff
        return SparsePoly(self.vars, terms)

    def evaluate(self, assignments: dict):
        """Full evaluation in any commutative ring with 0/1 mixing with ints."""
        vals = [assignments[n] for n in self.vars]
        pows = [dict() for _ in self.vars]
        acc = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    pw = pows[i].get(k)
                    if pw is None:
                        pw = vals[i] ** k
                        pows[i][k] = pw
                    term = term * pw
            acc = term if acc is None else acc + term
        return 0 if acc is None else acc

    def map_coeffs(self, fn):
        return SparsePoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    # -- exact division ----------------------------------------------------

    @staticmethod
    def _deglex_key(e):
        return (sum(e), e)

    def _leading(self):
        e = max(self.terms, key=self._deglex_key)
        return e, self.terms[e]

    def exact_div(self, divisor: "SparsePoly"):
        """self / divisor, raising if the division is not exact."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = dict(self.terms)
        out = {}
        de, dc = divisor._leading()
        while rem:
            e = max(rem, key=self._deglex_key)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in qe):
                raise ArithmeticError("inexact polynomial division")
            qc = _exact_div(c, dc)
            out[qe] = out.get(qe, 0) + qc
            for e2, c2 in divisor.terms.items():
                e3 = tuple(a + b for a, b in zip(qe, e2))
                nc = rem.get(e3, 0) - qc * c2
                if nc:
                    rem[e3] = nc
                else:
                    rem.pop(e3, None)
        return SparsePoly(self.vars, out)

    # -- display -----------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=self._deglex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{n}^{k}" if k > 1 else n for n, k in zip(self.vars, e) if k
            )
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


def resultant(f: SparsePoly, g: SparsePoly, var: str) -> SparsePoly:
    """Res_var(f, g): vanishes exactly when f and g share a root in var."""
    if f.degree_in(var) < 1 or g.degree_in(var) < 1:
        raise ValidationError(f"both polynomials must be nonconstant in {var}")
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = SparsePoly(f.vars)
    rows = []
    fr = list(reversed(fc))
    gr = list(reversed(gc))
    for i in range(n):
        rows.append([zero] * i + fr + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gr + [zero] * (size - n - 1 - i))
    return bareiss_determinant(rows)
