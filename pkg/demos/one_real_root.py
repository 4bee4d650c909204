"""
When does a quartic have exactly one real root?
===============================================

A monic quartic with a single real root must have that root doubled (or
quadrupled), so the discriminant vanishes.  The certificate then looks at two
auxiliary quantities to decide.  Every verdict here is checked against a Sturm
count that knows nothing about the certificate.
"""

from fractions import Fraction

from quadplane import Poly1, quartic_exactly_one_real, sturm_count

x = Poly1.x()

# (x - 1)^2 (x^2 + 1): one real root, doubled
p = (x - 1) ** 2 * (x * x + 1)
a1, a2, a3, a4 = p.coeffs[3::-1]
cert = quartic_exactly_one_real(a1, a2, a3, a4)
print(p)
print("  branch:", cert.branch.value, " x0 =", cert.x0, " verdict:", cert.exactly_one_real)
print("  Sturm says", sturm_count(p).distinct_real, "distinct real root(s)")

# (x - 1)^2 (x^2 - 2): the cofactor has real roots, so three in total
p = (x - 1) ** 2 * (x * x - 2)
cert = quartic_exactly_one_real(*p.coeffs[3::-1])
rc = sturm_count(p)
print(p)
print("  verdict:", cert.exactly_one_real, " B2 =", cert.B2)
for iv, m in zip(rc.intervals, rc.multiplicities):
    print(f"    root in [{float(iv.lo):.6f}, {float(iv.hi):.6f}] with multiplicity {m}")

# the fourth power of a linear factor goes down the other branch
p = (x - Fraction(1, 3)) ** 4
cert = quartic_exactly_one_real(*p.coeffs[3::-1])
print(p)
print("  branch:", cert.branch.value, " verdict:", cert.exactly_one_real)

# (x^2 + 1)^2 also has a vanishing discriminant but no real root at all
p = (x * x + 1) ** 2
cert = quartic_exactly_one_real(*p.coeffs[3::-1])
print(p)
print("  branch:", cert.branch.value, " verdict:", cert.exactly_one_real,
      " Sturm:", sturm_count(p).distinct_real)
