"""Exact scalar arithmetic over QQ or a prime field, plus sparse rank.

Characteristic 0 uses `fractions.Fraction`; characteristic p uses plain
ints reduced mod p.  Homology and Groebner code never touch floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParams


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: QQ (characteristic 0) or F_p for a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p >= 2 ** 31 or not _is_prime(p):
            raise BadParams(f"characteristic must be 0 or a prime < 2^31, got {p}")

    # scalar helpers --------------------------------------------------

    @property
    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def of(self, n: int):
        """Image of the integer n in the field."""
        if self.characteristic:
            return n % self.characteristic
        return Fraction(n)

    def add(self, a, b):
        if self.characteristic:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a, b):
        if self.characteristic:
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a, b):
        if self.characteristic:
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a):
        if self.characteristic:
            return (-a) % self.characteristic
        return -a

    def inv(self, a):
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return Fraction(1) / a

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)
GF2 = FieldSpec(2)
GF3 = FieldSpec(3)


def matrix_rank(rows, field: FieldSpec) -> int:
    """Rank of a sparse matrix given as a list of {col: scalar} rows.

    Destroys nothing: rows are copied.  Elimination keeps one reduced
    pivot row per leading column, which is enough at the matrix sizes
    arising from links and Betti-number strips.
    """
    pivots = {}  # leading column -> reduced row
    for row in rows:
        r = {c: v for c, v in row.items() if v != field.zero}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                s = field.inv(r[lead])
                pivots[lead] = {c: field.mul(s, v) for c, v in r.items()}
                break
            factor = r[lead]
            for c, v in piv.items():
                newv = field.sub(r.get(c, field.zero), field.mul(factor, v))
                if newv == field.zero:
                    r.pop(c, None)
                else:
                    r[c] = newv
    return len(pivots)
