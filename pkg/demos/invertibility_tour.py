"""
Which quadratic maps of the plane are invertible?
=================================================

Up to affine changes of variables on both sides there is only one
invertible quadratic map, the shear ``p~ = p + q^2, q~ = q``.  The other three
representative shapes all fail, and the library finds an explicit pair of
points with the same image for each of them.
"""

from fractions import Fraction

from quadplane import (
    AffineMap2,
    compose_source,
    compose_target,
    decide_invertibility,
    definite_canonical,
    indefinite_canonical,
    invert,
    semidefinite_canonical,
    shear_map,
)

shapes = {
    "shear": shear_map(),
    "indefinite": indefinite_canonical(),
    "semi-definite": semidefinite_canonical(),
    "definite": definite_canonical(),
}

for name, f in shapes.items():
    v = decide_invertibility(f, falsifier_bound=4)
    print(f"{name:14s} {str(f):40s} {v.status.value}")
    if v.witness is not None:
        w = v.witness
        pts = ", ".join(f"({p.mid}, {q.mid})" if p.exact and q.exact else "(box)" for p, q in w.preimages)
        print(f"{'':14s} {w.kind}: target {tuple(map(str, w.target))} hit by {pts}")

# %%
# Hide the shear behind two affine maps.  The exact reduction undoes them and
# the inverse comes out as a quadratic map as well.

outer = AffineMap2(2, 1, 1, 1, 3, -1)
inner = AffineMap2(1, Fraction(-1, 2), 3, 1, 0, 5)
f = compose_target(outer, compose_source(shear_map(), inner))
v = decide_invertibility(f)
print()
print("disguised map:", f)
print("status:       ", v.status.value, "after", len(v.transcript.steps), "steps")
print("inverse:      ", v.inverse)

target = (Fraction(7, 3), Fraction(-2))
pre = invert(v, *target)
print("preimage of", tuple(map(str, target)), "is", tuple(map(str, pre)), "and f maps it back to",
      tuple(map(str, f(*pre))))
