"""The global bound certificates and the pigeonhole multiplier search.

The headline constants live far beyond floating range (240 to the power
8 * 3^16 = 344373768), so certificates carry exact symbolic expressions
plus log10 values.
"""

from fractions import Fraction

from abelheight import (
    PeriodMatrix,
    TorusPoint,
    constants_manifest,
    faltings_arch_term,
    faltings_upper_bound,
    jacobian_lower_bound,
    pigeonhole_multiplier,
    product_case_bound,
    rational_points_bound,
    siegel_checks,
    torsion_bound,
)

print("displayed constants:")
for k, v in constants_manifest().items():
    print(f"  {k:32s} {v}")

tau = PeriodMatrix.from_entries((0, 31), (0, 1), (0, 40), 128)
report = siegel_checks(tau, Fraction(1, 31))

# height lower bound certificate: Tr_inf = 64 logD makes the bracket = logD
cert = jacobian_lower_bound(1, Fraction(640), Fraction(10), [report])
print(f"\nheight lower bound: conclusive = {cert.conclusive}, "
      f"bracket sign = {cert.details['bracket_sign']}")
print(f"  c1 = {cert.constants['c1']}  (exponent {cert.constants['c1_exponent']})")
print(f"  log10 of the bound = {cert.value_log10:.6g}")

print(f"\ntorsion bound: {torsion_bound(1).value_exact} "
      f"(log10 = {torsion_bound(1).value_log10:.6g})")
print(f"rational points (rank 2): {rational_points_bound(1, 2).value_exact}")

cert = product_case_bound(10, 70, 10, 70, 1, 1)
print(f"product case: c0 exact = {cert.constants['c0_exact']} "
      f"vs displayed {cert.constants['c0_paper']}")

# the Faltings upper bound for this tau with logD = log(2^8 * 3125)
import math

logD = Fraction(math.log(2**8 * 3125)).limit_denominator(10**9)
arch = faltings_arch_term(tau, 128)
rep = faltings_upper_bound(tau.trace_im(), logD, 1, 128, arch_term=arch)
print(f"\nFaltings: arch term = {float(rep.arch_term.mid):.4f}, "
      f"h'_F <= {float(rep.h_prime_upper.mid):.4f}")

# the pigeonhole search at desk scale: M = 2, one place
M = 2
count = 2 * M**4 + 1
z0 = (Fraction(1, 5), Fraction(2, 7), Fraction(0), Fraction(1, 3))
orbit = [TorusPoint.make(n * z0[0], n * z0[1], n * z0[2], n * z0[3]).reduced()
         for n in range(count)]
flags = [False] * count
n, wit = pigeonhole_multiplier([orbit], M, flags)
red = orbit[n].reduced()
print(f"\npigeonhole at M = {M}: selected n = {n} from collision {wit['collision']}")
print(f"  reduced coordinates of [n]P: {tuple(str(v) for v in red.X + red.Y)} "
      f"(all within 1/{M})")
