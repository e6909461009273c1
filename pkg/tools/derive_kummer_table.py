#!/usr/bin/env python3
"""Regenerate the Kummer duplication data table.

The package ships four quartic forms delta_1..delta_4 in (k1..k4) with
coefficients in ZZ[a0..a5] realizing multiplication by 2 on the Kummer
surface of y^2 = a5 x^5 + ... + a0, together with the surface quartic
R k4^2 + S k4 + T (stored as delta_0).

The quartic is derived exactly by symmetric-function elimination.  The
duplication forms are recovered by interpolation: for many specializations
of (a0..a5) over finite fields, the unique (up to scale, and up to adding a
multiple of the quartic) tuple of quartic forms mapping kummer(D) to
kummer([2]D) -- with [2]D computed by Cantor's algorithm -- is solved for
by modular linear algebra; the coefficient polynomials in a0..a5 are then
reconstructed from restrictions to random lines through a base curve,
lifted by CRT and rational reconstruction, and finally verified exactly
over QQ against Cantor doubling.

The representative choice is pinned by requiring a zero k2^2*k4^2
coefficient in each delta_i during interpolation; a final reduction step
moves back to a representative whose coefficients have total degree <= 3
in a0..a5.  The overall scale is fixed separately (see calibrate_scale).

Run time is a few minutes.  Usage:

    python tools/derive_kummer_table.py --out src/abelheight/data/kummer_duplication.txt
"""

import argparse
import itertools
import random
import sys
from fractions import Fraction
from math import isqrt

import numpy as np

sys.path.insert(0, "src")

from abelheight.exactpoly import SparsePoly, is_prime
from abelheight.jacobian import cantor_compose, cantor_reduce

AVARS = ("a0", "a1", "a2", "a3", "a4", "a5")
KVARS = ("k1", "k2", "k3", "k4") + AVARS
T_SAMPLES = (0, 1, -1, 2, -2, 3, -3, 4)

# all exponent vectors of total degree 4 in k1..k4, fixed order
K_MONOMIALS = sorted(
    (e for e in itertools.product(range(5), repeat=4) if sum(e) == 4),
    reverse=True,
)
SLICE_MONOMIAL = (0, 2, 0, 2)  # k2^2 k4^2; its quartic coefficient is 1


# ---------------------------------------------------------------------------
# exact derivation of the Kummer quartic  R k4^2 + S k4 + T


def symmetric_to_elementary(poly, xvars=("x1", "x2"), out_vars=("s", "p")):
    """Rewrite a symmetric polynomial in x1, x2 in terms of s = x1+x2, p = x1 x2."""
    sv = poly.vars
    i1, i2 = sv.index(xvars[0]), sv.index(xvars[1])
    ovars = out_vars + tuple(n for n in sv if n not in xvars)
    out = SparsePoly(ovars)
    s_x = SparsePoly.gen(sv, xvars[0]) + SparsePoly.gen(sv, xvars[1])
    p_x = SparsePoly.gen(sv, xvars[0]) * SparsePoly.gen(sv, xvars[1])
    rest_idx = [sv.index(n) for n in sv if n not in xvars]
    work = poly
    while work:
        e = max(work.terms, key=lambda t: (t[i1], t[i2]))
        c = work.terms[e]
        i, j = e[i1], e[i2]
        if i < j:
            i, j = j, i
        # subtract c * (rest monomial) * s^(i-j) p^j, expanded back into x1, x2
        rest_exp = tuple(0 if idx in (i1, i2) else ek for idx, ek in enumerate(e))
        rest = SparsePoly(sv, {rest_exp: 1})
        oexp = [0] * len(ovars)
        oexp[0], oexp[1] = i - j, j
        for pos, idx in enumerate(rest_idx):
            oexp[2 + pos] = e[idx]
        out = out + SparsePoly(ovars, {tuple(oexp): c})
        work = work - c * rest * s_x ** (i - j) * p_x**j
    return out


def derive_quartic():
    """The forms R, S, T with R k4^2 + S k4 + T = 0 on the Kummer surface."""
    xv = ("x1", "x2") + AVARS
    a = {n: SparsePoly.gen(xv, n) for n in AVARS}
    x1, x2 = SparsePoly.gen(xv, "x1"), SparsePoly.gen(xv, "x2")
    F1 = sum((a[f"a{i}"] * x1**i for i in range(6)), SparsePoly(xv))
    F2 = sum((a[f"a{i}"] * x2**i for i in range(6)), SparsePoly(xv))
    ff = symmetric_to_elementary(F1 * F2)

    sp = ("s", "p") + AVARS
    s, p = SparsePoly.gen(sp, "s"), SparsePoly.gen(sp, "p")
    b = {n: SparsePoly.gen(sp, n) for n in AVARS}
    G = (
        2 * b["a0"]
        + b["a1"] * s
        + 2 * b["a2"] * p
        + b["a3"] * s * p
        + 2 * b["a4"] * p * p
        + b["a5"] * s * p * p
    )
    T_sp = (G * G - 4 * ff).exact_div(s * s - 4 * p)

    def homogenize(poly_sp, deg):
        si, pi = 0, 1
        terms = {}
        for e, c in poly_sp.terms.items():
            i, j = e[si], e[pi]
            if i + j > deg:
                raise AssertionError("degree bound violated in homogenization")
            ke = [deg - i - j, i, j, 0] + list(e[2:])
            terms[tuple(ke)] = c
        return SparsePoly(KVARS, terms)

    k1 = SparsePoly.gen(KVARS, "k1")
    k2 = SparsePoly.gen(KVARS, "k2")
    k3 = SparsePoly.gen(KVARS, "k3")
    k4 = SparsePoly.gen(KVARS, "k4")
    R = k2 * k2 - 4 * k1 * k3
    S = -2 * homogenize(G, 3)
    T = homogenize(T_sp, 4)
    return R, S, T, R * k4 * k4 + S * k4 + T


# ---------------------------------------------------------------------------
# finite fields


def make_field(p):
    class Fp:
        __slots__ = ("v",)
        modulus = p

        def __init__(self, v):
            self.v = v % p

        def __add__(self, o):
            return Fp(self.v + (o.v if isinstance(o, Fp) else o))

        __radd__ = __add__

        def __sub__(self, o):
            return Fp(self.v - (o.v if isinstance(o, Fp) else o))

        def __rsub__(self, o):
            return Fp((o.v if isinstance(o, Fp) else o) - self.v)

        def __mul__(self, o):
            return Fp(self.v * (o.v if isinstance(o, Fp) else o))

        __rmul__ = __mul__

        def __truediv__(self, o):
            ov = o.v if isinstance(o, Fp) else o % p
            return Fp(self.v * pow(ov, p - 2, p))

        def __rtruediv__(self, o):
            return Fp((o.v if isinstance(o, Fp) else o) * pow(self.v, p - 2, p))

        def __neg__(self):
            return Fp(-self.v)

        def __pow__(self, n):
            return Fp(pow(self.v, n, p))

        def __bool__(self):
            return self.v != 0

        def __eq__(self, o):
            return self.v == (o.v if isinstance(o, Fp) else o % p)

        def __repr__(self):
            return f"{self.v}"

    return Fp


def sqrt_mod(x, p):
    """Square root mod p for p = 3 mod 4, or None."""
    x %= p
    if x == 0:
        return 0
    r = pow(x, (p + 1) // 4, p)
    return r if r * r % p == x else None


# ---------------------------------------------------------------------------
# Kummer coordinates (field generic, generic branch only)


def kummer_coords_generic(a, u, v):
    """(1, k2, k3, k4) for a degree-2 Mumford pair off the diagonal, else None."""
    if len(u) != 3:
        return None
    one = u[-1] / u[-1]
    s = -u[1]
    pp = u[0]
    den = s * s - 4 * pp
    if not den:
        return None
    if len(v) == 2:
        v1, v0 = v[1], v[0]
    elif len(v) == 1:
        v1, v0 = one * 0, v[0]
    else:
        v1 = v0 = one * 0
    G = (
        2 * a[0]
        + a[1] * s
        + 2 * a[2] * pp
        + a[3] * s * pp
        + 2 * a[4] * pp * pp
        + a[5] * s * pp * pp
    )
    yy = v1 * v1 * pp + v1 * v0 * s + v0 * v0
    k4 = (G - 2 * yy) / den
    return (one, s, pp, k4)


def random_divisor(acoeffs, p, Fp, rng):
    """A random reduced degree-2 divisor over GF(p), plus its Cantor double."""
    F = tuple(Fp(c) for c in acoeffs)
    while True:
        x1, x2 = rng.randrange(p), rng.randrange(p)
        if x1 == x2:
            continue
        f1 = sum(acoeffs[i] * pow(x1, i, p) for i in range(6)) % p
        f2 = sum(acoeffs[i] * pow(x2, i, p) for i in range(6)) % p
        y1, y2 = sqrt_mod(f1, p), sqrt_mod(f2, p)
        if y1 is None or y2 is None:
            continue
        v1 = Fp(y2 - y1) / Fp(x2 - x1)
        v0 = Fp(y1) - v1 * x1
        u = (Fp(x1) * x2, -Fp(x1 + x2), Fp(1))
        v = (v0, v1)
        K = kummer_coords_generic([Fp(c) for c in acoeffs], u, v)
        if K is None:
            continue
        u2, v2 = cantor_compose(u, v, u, v, F)
        u2, v2 = cantor_reduce(u2, v2, F)
        K2 = kummer_coords_generic([Fp(c) for c in acoeffs], u2, v2)
        if K2 is None:
            continue
        return K, K2


# ---------------------------------------------------------------------------
# modular linear algebra (numpy int64, p < 2^30)


def rref_mod(A, p):
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace_mod(A, p):
    R, pivots = rref_mod(A, p)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-R[r, f]) % p
        basis.append(v)
    return basis


def solve_mod(A, B, p):
    """Solve A X = B (consistent, unique); asserts consistency of extra rows."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    n = A.shape[1]
    M = np.concatenate([A, B], axis=1)
    R, pivots = rref_mod(M, p)
    piv_in_a = [c for c in pivots if c < n]
    if len(piv_in_a) != n:
        raise AssertionError("underdetermined reconstruction system")
    if len(pivots) > len(piv_in_a):
        raise AssertionError("inconsistent reconstruction system")
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for r, c in enumerate(piv_in_a):
        X[c] = R[r, n:]
    return X


# ---------------------------------------------------------------------------
# per-curve interpolation


def curve_nullvector(acoeffs, p, Fp, rng, n_divisors=55):
    """The canonical-slice duplication coefficient vector mod p, up to scale."""
    nm = len(K_MONOMIALS)
    rows = []
    for _ in range(n_divisors):
        K, K2 = random_divisor(acoeffs, p, Fp, rng)
        mono = [
            (K[0].v ** 0 * pow(K[1].v, e[1], p) * pow(K[2].v, e[2], p) * pow(K[3].v, e[3], p)) % p
            for e in K_MONOMIALS
        ]
        for i in (1, 2, 3):  # delta_{i+1}(K) - K2[i] * delta_1(K) = 0
            row = np.zeros(4 * nm, dtype=np.int64)
            row[(i) * nm : (i + 1) * nm] = mono
            row[0:nm] = (-K2[i].v * np.array(mono, dtype=np.int64)) % p
            rows.append(row)
    si = K_MONOMIALS.index(SLICE_MONOMIAL)
    for i in range(4):
        row = np.zeros(4 * nm, dtype=np.int64)
        row[i * nm + si] = 1
        rows.append(row)
    basis = nullspace_mod(np.array(rows, dtype=np.int64), p)
    if len(basis) != 1:
        raise AssertionError(f"nullity {len(basis)} != 1 for curve {acoeffs} mod {p}")
    return basis[0] % p


def fit_line(vectors, p, degree):
    """Scale the per-curve vectors onto a degree-<=degree polynomial in t.

    vectors[j] corresponds to t = T_SAMPLES[j]; vectors[0] (t = 0) keeps its
    scale.  Returns the (degree+1) x dim matrix of t-coefficients, or None.
    """
    ts = T_SAMPLES
    m = len(ts)
    V = np.array([[pow(t, e) if e or t else 1 for e in range(degree + 1)] for t in ts], dtype=object)
    V = np.array([[int(x) % p for x in row] for row in V], dtype=np.int64)
    W = nullspace_mod(V.T % p, p)  # vectors orthogonal to the columns of V
    if len(W) != m - degree - 1:
        raise AssertionError("bad Vandermonde rank")
    dim = len(vectors[0])
    rows = []
    for r in range(dim):
        vals = np.array([int(vec[r]) for vec in vectors], dtype=np.int64) % p
        for w in W:
            rows.append((np.array(w, dtype=np.int64) * vals) % p)
    sigma_basis = nullspace_mod(np.array(rows, dtype=np.int64), p)
    if len(sigma_basis) != 1:
        return None
    sigma = sigma_basis[0] % p
    if sigma[0] == 0:
        return None
    inv0 = pow(int(sigma[0]), p - 2, p)
    sigma = (sigma * inv0) % p
    scaled = np.array(
        [(int(sigma[j]) * np.array([int(x) for x in vectors[j]], dtype=np.int64)) % p for j in range(m)],
        dtype=np.int64,
    )
    try:
        return solve_mod(V, scaled, p)  # (degree+1) x dim
    except AssertionError:
        return None


# ---------------------------------------------------------------------------
# reconstruction of the coefficient polynomials in a0..a5


def a_monomials(degree):
    return sorted(
        (e for e in itertools.product(range(degree + 1), repeat=6) if sum(e) <= degree),
        reverse=True,
    )


def line_functional_rows(base, direction, monos, degree, p):
    """Row r_(e) with r_(e)[alpha] = [t^e] prod_i (base_i + t dir_i)^alpha_i mod p."""
    rows = np.zeros((degree + 1, len(monos)), dtype=np.int64)
    for ci, alpha in enumerate(monos):
        poly = [1]
        for i, ai in enumerate(alpha):
            for _ in range(ai):
                b, d = base[i] % p, direction[i] % p
                new = [0] * (len(poly) + 1)
                for k, c in enumerate(poly):
                    new[k] = (new[k] + c * b) % p
                    new[k + 1] = (new[k + 1] + c * d) % p
                poly = new
        for e in range(min(len(poly), degree + 1)):
            rows[e, ci] = poly[e]
    return rows


def crt_pair(r1, m1, r2, m2):
    g, x = m1, pow(m1, -1, m2)
    t = ((r2 - r1) * x) % m2
    return (r1 + m1 * t) % (m1 * m2), m1 * m2


def rational_reconstruct(u, m):
    """n/d = u mod m with |n|, d <= sqrt(m/2)."""
    u %= m
    bound = isqrt(m // 2)
    a0, a1 = m, u
    b0, b1 = 0, 1
    while a1 > bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        b0, b1 = b1, b0 - q * b1
    if b1 == 0 or abs(b1) > bound:
        raise ArithmeticError("rational reconstruction failed")
    if b1 < 0:
        a1, b1 = -a1, -b1
    fr = Fraction(a1, b1)
    if (fr.numerator - u * fr.denominator) % m:
        raise ArithmeticError("rational reconstruction inconsistent")
    return fr


# ---------------------------------------------------------------------------
# the pipeline


def derive_family(primes, n_lines, seed=20240401, verbose=True):
    base = (2, -1, 3, 1, -2, 1)
    rng = random.Random(seed)

    from abelheight.exactpoly import poly_discriminant

    assert poly_discriminant(base) != 0

    directions = []
    guard = 0
    while len(directions) < n_lines:
        guard += 1
        if guard > 20 * n_lines:
            raise AssertionError("could not find enough good directions")
        d = tuple(rng.randint(-4, 4) for _ in range(6))
        if all(d[i] == 0 for i in range(6)):
            continue
        ok = True
        for t in T_SAMPLES[1:]:
            c = tuple(base[i] + t * d[i] for i in range(6))
            if c[5] == 0:
                ok = False
                break
            try:
                disc = poly_discriminant(c)
            except Exception:
                ok = False
                break
            if disc == 0 or any(disc % p == 0 or c[5] % p == 0 for p in primes):
                ok = False
                break
        if ok:
            directions.append(d)

    degree = None
    nm = len(K_MONOMIALS)

    per_prime_solutions = []
    r_stars = []
    for p in primes:
        Fp = make_field(p)
        prng = random.Random(seed ^ p)
        n0 = curve_nullvector(base, p, Fp, prng)
        r_star = int(np.nonzero(n0)[0][0])
        r_stars.append(r_star)
        if len(set(r_stars)) != 1:
            raise AssertionError("normalization coordinate differs across primes")
        n0 = (n0 * pow(int(n0[r_star]), p - 2, p)) % p

        line_coeffs = []
        used_dirs = []
        for li, d in enumerate(directions):
            vecs = [n0]
            for t in T_SAMPLES[1:]:
                c = tuple(base[i] + t * d[i] for i in range(6))
                vecs.append(curve_nullvector(c, p, Fp, prng))
            if degree is None:
                for dg in (3, 4, 5):
                    X = fit_line(vecs, p, dg)
                    if X is not None:
                        degree = dg
                        break
                else:
                    raise AssertionError("no polynomial degree <= 5 fits the line data")
                if verbose:
                    print(f"[derive] detected coefficient degree {degree}")
            else:
                X = fit_line(vecs, p, degree)
                if X is None:
                    # degenerate direction (leading part vanishes along the line)
                    if verbose:
                        print(f"[derive] p={p}: skipping degenerate line {li}")
                    continue
            line_coeffs.append(X)
            used_dirs.append(d)
            if verbose and (li + 1) % 20 == 0:
                print(f"[derive] p={p}: {li + 1}/{len(directions)} lines")

        monos = a_monomials(degree)
        if len(used_dirs) * degree + 1 < len(monos) + 10:
            raise AssertionError("not enough usable lines for reconstruction")
        A_rows = []
        B_rows = []
        for d, X in zip(used_dirs, line_coeffs):
            A_rows.append(line_functional_rows(base, d, monos, degree, p))
            B_rows.append(X)
        A = np.concatenate(A_rows, axis=0)
        B = np.concatenate(B_rows, axis=0)
        sol = solve_mod(A, B, p)  # len(monos) x 140
        per_prime_solutions.append((p, sol))
        if verbose:
            print(f"[derive] p={p}: reconstruction solved ({sol.shape})")

    monos = a_monomials(degree)
    coeffs = {}
    for mi in range(len(monos)):
        for ci in range(4 * nm):
            r, m = 0, 1
            for p, sol in per_prime_solutions:
                r, m = crt_pair(r, m, int(sol[mi, ci]), p) if m > 1 else (int(sol[mi, ci]), p)
            if r:
                coeffs[(mi, ci)] = rational_reconstruct(r, m)

    # assemble SparsePolys over KVARS
    deltas = []
    for i in range(4):
        terms = {}
        for (mi, ci), c in coeffs.items():
            if ci // nm != i:
                continue
            ke = K_MONOMIALS[ci % nm]
            ae = monos[mi]
            terms[tuple(ke) + tuple(ae)] = c
        deltas.append(SparsePoly(KVARS, terms))

    # clear denominators, divide content
    dens = [c.denominator for dl in deltas for c in dl.terms.values()]
    from math import gcd, lcm

    L = 1
    for d in dens:
        L = lcm(L, d)
    nums = []
    ideltas = []
    for dl in deltas:
        dl = dl.map_coeffs(lambda c: int(c * L))
        ideltas.append(dl)
        nums.extend(dl.terms.values())
    g = 0
    for n in nums:
        g = gcd(g, n)
    ideltas = [dl.map_coeffs(lambda c: c // g) for dl in ideltas]
    return ideltas, degree


def degree_reduce(deltas, quartic):
    """Representatives delta_i + q_i(a) * quartic with a-degree <= 3."""
    amon3 = a_monomials(3)
    # coefficient polynomial of each k-monomial in the quartic
    quartic_k = {}
    for e, c in quartic.terms.items():
        ke, ae = e[:4], e[4:]
        quartic_k.setdefault(ke, {})[ae] = c

    out = []
    for dl in deltas:
        delta_k = {}
        for e, c in dl.terms.items():
            ke, ae = e[:4], e[4:]
            delta_k.setdefault(ke, {})[ae] = c
        # unknowns: q_alpha for alpha in amon3; rows: for each k-monomial and
        # each a-monomial of degree >= 4 in delta + q*quartic: coefficient = 0
        unknowns = amon3
        rows = []
        rhs = []
        row_index = {}
        for ke, qk in quartic_k.items():
            for alpha in unknowns:
                for beta, qc in qk.items():
                    gamma = tuple(x + y for x, y in zip(alpha, beta))
                    if sum(gamma) <= 3:
                        continue
                    key = (ke, gamma)
                    if key not in row_index:
                        row_index[key] = len(rows)
                        rows.append([Fraction(0)] * len(unknowns))
                        rhs.append(Fraction(0))
        for ke, dk in delta_k.items():
            for gamma, c in dk.items():
                if sum(gamma) <= 3:
                    continue
                key = (ke, gamma)
                if key not in row_index:
                    row_index[key] = len(rows)
                    rows.append([Fraction(0)] * len(unknowns))
                    rhs.append(Fraction(0))
        for (ke, gamma), ri in row_index.items():
            rhs[ri] = -Fraction(delta_k.get(ke, {}).get(gamma, 0))
            qk = quartic_k.get(ke, {})
            for ai, alpha in enumerate(unknowns):
                beta = tuple(g - a for g, a in zip(gamma, alpha))
                if any(b < 0 for b in beta):
                    continue
                if beta in qk:
                    rows[ri][ai] += qk[beta]
        q = _solve_fraction_lsq(rows, rhs)
        if q is None:
            return None
        qpoly = SparsePoly(KVARS, {(0, 0, 0, 0) + alpha: c for alpha, c in zip(amon3, q) if c})
        out.append(dl + qpoly * quartic)
    return out


def _solve_fraction_lsq(rows, rhs):
    """Solve an overdetermined consistent rational system, or None."""
    m, n = len(rows), len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    # consistency
    for i in range(r, m):
        if aug[i][n]:
            return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv):
        sol[c] = aug[i][n]
    return sol


# ---------------------------------------------------------------------------
# data file io


def poly_to_text(poly):
    parts = []
    for e in sorted(poly.terms, reverse=True):
        c = poly.terms[e]
        mono = "*".join(
            (f"{AVARS[i]}^{k}" if k > 1 else AVARS[i]) for i, k in enumerate(e[4:]) if k
        )
        if mono:
            parts.append(f"{c}*{mono}" if abs(c) != 1 else (mono if c > 0 else f"-{mono}"))
        else:
            parts.append(str(c))
    text = "+".join(parts).replace("+-", "-")
    return text or "0"


def write_table(path, quartic, deltas):
    lines = [
        "# Kummer surface data for y^2 = a5 x^5 + a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0.",
        "# One monomial per line: <delta_index> <e1> <e2> <e3> <e4> <coefficient>.",
        "# delta_index 0 is the surface quartic R*k4^2 + S*k4 + T; indices 1..4 are",
        "# the duplication forms delta_1..delta_4 (multiplication by 2).",
        "# <coefficient> is an integer polynomial in a0..a5: terms joined by '+',",
        "# each term '<int>' or '<int>*a_i^e*...' ('*' separated, '^' omitted for 1).",
    ]
    for idx, poly in enumerate([quartic] + list(deltas)):
        groups = {}
        for e, c in poly.terms.items():
            groups.setdefault(e[:4], {})[e] = c
        for ke in sorted(groups, reverse=True):
            sub = SparsePoly(KVARS, groups[ke])
            lines.append(f"{idx} {ke[0]} {ke[1]} {ke[2]} {ke[3]} {poly_to_text(sub)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="src/abelheight/data/kummer_duplication.txt")
    # the degree-4 homogeneous part of the coefficient polynomials has 126
    # independent components, and each line only probes one of them
    ap.add_argument("--lines", type=int, default=150)
    ap.add_argument("--nprimes", type=int, default=4)
    ap.add_argument("--scale-num", type=int, default=1, help="final rescale numerator")
    ap.add_argument("--scale-den", type=int, default=1, help="final rescale denominator")
    args = ap.parse_args()

    primes = []
    c = 10**9 + 3
    while len(primes) < args.nprimes:
        if c % 4 == 3 and is_prime(c):
            primes.append(c)
        c += 4
    print(f"[derive] primes: {primes}")

    print("[derive] deriving the Kummer quartic exactly ...")
    R, S, T, quartic = derive_quartic()
    print(f"[derive] quartic has {len(quartic.terms)} terms")

    deltas, degree = derive_family(primes, args.lines)
    print(f"[derive] interpolated family (slice representative, a-degree {degree})")

    # delta_4's class has no a-degree <= 3 representative; reduce the others
    # where possible (in practice the slice representative is already minimal).
    reduced = []
    for j, dl in enumerate(deltas):
        r = degree_reduce([dl], quartic)
        if r is None:
            print(f"[derive] delta_{j + 1}: keeping a-degree-4 representative")
            reduced.append(dl)
        else:
            reduced.append(r[0])

    from math import gcd, lcm

    Lden = 1
    for dl in reduced:
        for c in dl.terms.values():
            Lden = lcm(Lden, Fraction(c).denominator)
    ints = [dl.map_coeffs(lambda c: int(Fraction(c) * Lden)) for dl in reduced]
    g = 0
    for dl in ints:
        for c in dl.terms.values():
            g = gcd(g, c)
    reduced = [dl.map_coeffs(lambda c: c // g) for dl in ints]

    if (args.scale_num, args.scale_den) != (1, 1):
        sc = Fraction(args.scale_num, args.scale_den)
        reduced = [dl.map_coeffs(lambda c: c * sc) for dl in reduced]
        assert all(Fraction(c).denominator == 1 for dl in reduced for c in dl.terms.values())
        reduced = [dl.map_coeffs(lambda c: int(c)) for dl in reduced]

    write_table(args.out, quartic, reduced)
    print(f"[derive] wrote {args.out}")


if __name__ == "__main__":
    main()
