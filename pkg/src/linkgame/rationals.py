"""Exact extended-rational arithmetic for tangle fractions.

A tangle fraction is a reduced pair p/q with q >= 0, where q = 0 encodes
the point at infinity.  The twist maps applied while evaluating a word
are total Mobius maps over this extended line, so no operation here can
fail on valid input.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True, order=False)
class ExtFrac:
    """Reduced extended rational p/q (q >= 0; q == 0 means infinity)."""

    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ValueError("0/0 is not an extended rational")
        g = gcd(abs(self.p), self.q if self.q >= 0 else -self.q)
        p, q = self.p, self.q
        if q < 0:
            p, q = -p, -q
        if g > 1:
            p, q = p // g, q // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @property
    def is_zero(self) -> bool:
        return self.p == 0

    def reciprocal(self) -> "ExtFrac":
        return ExtFrac(self.q, self.p)

    def __neg__(self) -> "ExtFrac":
        return ExtFrac(-self.p, self.q)

    def __add__(self, n: int) -> "ExtFrac":
        if not isinstance(n, int):
            return NotImplemented
        return ExtFrac(self.p + n * self.q, self.q)

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


INFINITY = ExtFrac(1, 0)
ZERO = ExtFrac(0, 1)


def bottom_twist(f: ExtFrac, net: int) -> ExtFrac:
    """Apply a bottom-twist block of signed size ``net``: f -> 1/(net + 1/f)."""
    return (f.reciprocal() + net).reciprocal()


def right_twist(f: ExtFrac, net: int) -> ExtFrac:
    """Apply a right-twist block of signed size ``net``: f -> f + net."""
    return f + net
