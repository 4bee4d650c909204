"""The cuboid characteristic polynomial and the cubic parameter involution.

Only evaluation is offered; nothing here searches for cuboids.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd

from .exactnum import Poly1


class CuboidWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CuboidParams:
    t: int
    p: int
    q: int

    def warnings(self) -> list[str]:
        out = []
        if self.p == self.q:
            out.append("p == q")
        if gcd(self.p, self.q) != 1:
            out.append(f"gcd(p, q) = {gcd(self.p, self.q)} != 1")
        if min(self.t, self.p, self.q) <= 0:
            out.append("parameters are expected to be positive")
        return out


def cuboid_char_poly(p: int, q: int) -> Poly1:
    """The degree-10 polynomial in ``t`` with parameters ``p, q``."""
    p2, q2 = p * p, q * q
    c8 = (2 * q2 + p2) * (3 * q2 - 2 * p2)
    c6 = q2**4 + 10 * p2 * q2**3 + 4 * p2**2 * q2**2 - 14 * p2**3 * q2 + p2**4
    c4 = -p2 * q2 * (q2**4 - 14 * p2 * q2**3 + 4 * p2**2 * q2**2 + 10 * p2**3 * q2 + p2**4)
    c2 = -(p2**3) * q2**3 * (q2 + 2 * p2) * (3 * p2 - 2 * q2)
    c0 = -(q2**5) * p2**5
    return Poly1([c0, 0, c2, 0, c4, 0, c6, 0, c8, 0, 1])


def cuboid_char_eval(t: int, p: int, q: int) -> int:
    """Exact value at ``(t, p, q)``; warns when ``p == q`` or ``gcd(p, q) != 1``."""
    for w in CuboidParams(t, p, q).warnings():
        warnings.warn(w, CuboidWarning, stacklevel=2)
    v = cuboid_char_poly(p, q)(t)
    return int(v)


def cubic_param_transform(B: int, p: int, q: int) -> tuple[int, int]:
    """``(p, q) -> (B q^3 - p, q)``; an involution of the integer lattice."""
    return B * q**3 - p, q
