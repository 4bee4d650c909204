"""
Reducing a map to its representative shape
==========================================

``precanonicalize`` records every affine change it applies.  Replaying the
transcript reproduces the final map, exactly when all steps are rational.
The indefinite shape needs cube roots, so those scalings are done in
binary64 and flagged.
"""

from fractions import Fraction

from quadplane import QuadMap, precanonicalize

f = QuadMap(a20=4, a01=Fraction(1, 2), b02=1, b10=Fraction(1, 2))
tr = precanonicalize(f)
print("start:", f)
for step in tr.steps:
    flag = " (numeric)" if step.numeric else ""
    print(f"  {step.rule}{flag}")
print("end:  ", tr.final)
print("replay matches:", tr.replay_matches())

# %%
# A semi-definite map needs no roots, so the transcript stays exact and the
# leftover parameter of the shape comes out as a rational number.

g = QuadMap(a20=1, a02=-1, a10=1, b20=1, b11=Fraction(1, 2), b01=2)
tr = precanonicalize(g)
print()
print("start:", g)
for step in tr.steps:
    print(f"  {step.rule}")
print("end:  ", tr.final, "| numeric steps:", tr.numeric)
print("replay is exact:", tr.replay() == tr.final)
