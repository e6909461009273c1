"""Canonical heights on a genus-2 Jacobian, step by step.

We work on y^2 = x^5 + x + 1, embed a couple of rational points into the
Jacobian, push them to the Kummer surface, and compute naive, local, and
canonical heights.  Every analytic number below is a rigorous ball.
"""

from fractions import Fraction

from abelheight import (
    CurveModel,
    cantor_add,
    cantor_double,
    canonical_height,
    duplicate,
    embed_point,
    inverse,
    kummer_map,
    local_lambda_finite,
    naive_height,
)

curve = CurveModel.from_coeffs([1, 1, 0, 0, 0, 1])
print(f"curve y^2 = x^5 + x + 1, disc(F) = {curve.disc}, D = 2^8 disc = {curve.normalized_disc}")
print(f"bad primes (with ord_p of 2^4 disc): {curve.bad_primes()}")

# two rational points and their difference class on the Jacobian
P = embed_point(curve, 0, 1)
Q = embed_point(curve, 0, -1)
D = cantor_add(curve, P, inverse(Q))  # [(0,1)] - [(0,-1)] as divisor classes
print(f"\nMumford pair of [(0,1) - (0,-1)]: u = {D.u}, v = {D.v}")

K = kummer_map(curve, D)
print(f"Kummer image: {tuple(str(c) for c in K.coords)}")
print(f"naive height h(K) = {naive_height(K)}")

# duplication on the Kummer surface agrees with Cantor doubling
dup, delta1 = duplicate(curve, K)
K2 = kummer_map(curve, cantor_double(curve, D))
print(f"\nduplicate(K) == kummer([2]D): {dup.coords == K2.coords}, delta_1(K) = {delta1}")

# canonical height: the 4^-n-limit of naive heights, with a rigorous tail
h = canonical_height(curve, D, target_radius=1e-12)
h2 = canonical_height(curve, cantor_double(curve, D), target_radius=1e-12)
print(f"\nhhat(D)   = {h}")
print(f"hhat(2D)  = {h2}")
print(f"4 hhat(D) = {4 * h}   (quadraticity: overlap = {h2.overlaps(4 * h)})")

# local canonical heights at the bad primes; mu vanishes at good primes
from abelheight.exactpoly import is_prime

good = next(p for p in range(3, 100) if is_prime(p) and p not in curve.bad_primes())
print("\nlocal canonical heights (finite places):")
for p in sorted(curve.bad_primes()) + [good]:
    rep = local_lambda_finite(curve, D, p, depth=10)
    tag = "" if p in curve.bad_primes() else "   (good reduction: mu = 0 exactly)"
    print(f"  p = {p:>2}: lambda_hat_p = {rep.lambda_canonical}{tag}")

# the local lower bound -(1/3)(4 ord_p 2 + ord_p disc F) log p
from abelheight.balls import log_int
from abelheight.exactpoly import valuation

for p in sorted(curve.bad_primes()):
    e2 = 4 if p == 2 else 0
    ed = valuation(curve.disc, p) if curve.disc % p == 0 else 0
    bound = -(Fraction(1, 3) * (e2 + ed)) * log_int(p, 128)
    rep = local_lambda_finite(curve, D, p, depth=10)
    print(f"  p = {p:>2}: bound {float(bound.mid):+.6f} <= lambda_hat_p: {bound <= rep.lambda_canonical}")
