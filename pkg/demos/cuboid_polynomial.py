"""
The tenth-degree cuboid polynomial
==================================

The search for perfect cuboids leads to a polynomial in ``t`` with two
coprime parameters ``p`` and ``q``.  Here it is only evaluated, together with
the cubic involution of the parameter plane.
"""

import warnings

from quadplane import cubic_param_transform, cuboid_char_eval, cuboid_char_poly

print(cuboid_char_poly(1, 2))

for p, q in [(1, 2), (2, 3), (3, 5)]:
    values = [cuboid_char_eval(t, p, q) for t in range(1, 6)]
    print(f"p={p} q={q}:", values)

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    print("t=p=q=1 gives", cuboid_char_eval(1, 1, 1), "with warning:", caught[0].message)

B = 3
pt = (5, 2)
once = cubic_param_transform(B, *pt)
print(pt, "->", once, "->", cubic_param_transform(B, *once))
