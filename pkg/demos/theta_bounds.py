"""Theta functions, the archimedean local height, and the explicit bounds.

All evaluations return balls; all inequalities below are checked with
certified interval comparisons, never with floats.
"""

from fractions import Fraction

from abelheight import (
    EVEN_CHARACTERISTICS,
    LAMBDA_CHARACTERISTIC,
    PeriodMatrix,
    TorusPoint,
    big_lambda,
    even_theta_constants,
    lambda_lower_bound,
    siegel_checks,
    theta_constant,
    three_torsion_lambda_sum,
)

# a period matrix well inside the admissible region: tau = [[31i, i], [i, 40i]]
tau = PeriodMatrix.from_entries((0, 31), (0, 1), (0, 40), precision=128)
rep = siegel_checks(tau, Fraction(1, 31))
print(f"Siegel membership: S2 = {rep.s2}, partial S3 = {rep.s3_partial}, "
      f"F_2_eps = {rep.in_f2_eps}, F_2_inf = {rep.in_f2_inf}, S1 {rep.s1}")

# the odd characteristic cutting out the curve vanishes at the origin
v = theta_constant(LAMBDA_CHARACTERISTIC, tau, 128)
print(f"\ntheta_odd(0) ball: re radius {float(v.re.rad):.1e} (contains 0: {v.contains_zero()})")

# the archimedean local height and its explicit lower bound
P = TorusPoint.make(Fraction(1, 7), Fraction(-1, 9), Fraction(1, 11), Fraction(2, 13))
lam = big_lambda(P, tau, 128)
bound = lambda_lower_bound(P.X, P.Y, tau, 128)
print(f"\nLambda(P)     = {float(lam.mid):+.6f} +/- {float(lam.rad):.1e}")
print(f"lower bound   = {float(bound.mid):+.6f}  (holds: {bound <= lam})")

# the 80-point sum over the order-3 points against its closed-form bound
s, b = three_torsion_lambda_sum(tau, Fraction(1, 31), 128)
print(f"\nsum of Lambda over the 80 order-3 points = {float(s.mid):.4f}")
print(f"closed-form bound                        = {float(b.mid):.4f}  (holds: {s <= b})")

# the ten even theta constants with their lower bounds
print("\neven theta constants |theta_ab(0)| e^(pi a.Im(tau).a):")
for e in even_theta_constants(tau, 128):
    ab = "".join("0" if x == 0 else "h" for x in e.char.a + e.char.b)
    bd = f"{float(e.lower_bound.mid):10.4f}" if e.lower_bound is not None else "       n/a"
    ok = "" if e.lower_bound is None else f"  value >= bound: {e.lower_bound <= e.value}"
    print(f"  [{ab}]  value {float(e.value.mid):10.4f}   bound {bd}{ok}")
