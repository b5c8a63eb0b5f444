"""The three-block ambient ring of the Gorenstein presentation.

Variables come in blocks x_1..x_n, y_1..y_n (dropped in the Artinian
reduction) and one z_F per facet F.  Monomials are dense exponent tuples;
polynomials are {monomial: coefficient} dicts handled by the groebner
module together with a term order.
"""

from __future__ import annotations

from .complexes import SimplicialComplex, _mask_bits
from .errors import NotPure


class RingContext:
    """Variable bookkeeping for a fixed pure complex.

    z-variables are indexed by the canonical facet order of the complex and
    named by the concatenated vertex labels of the facet (z_145 style).
    """

    def __init__(self, delta: SimplicialComplex, artinian: bool = False):
        if not delta.is_pure():
            raise NotPure("the presentation ring needs a pure complex")
        self.delta = delta
        self.artinian = artinian
        self.n = delta.n
        self.facet_masks = delta.facet_masks
        self.r = len(self.facet_masks)
        self.d = delta.dim() + 1
        self.a_invariant = self.d - self.n
        labels = delta.vertices
        if artinian:
            self.nvars = self.n + self.r
            self.names = [f"x_{v}" for v in labels] + [
                "z_" + "".join(delta.labels_of(m)) for m in self.facet_masks
            ]
        else:
            self.nvars = 2 * self.n + self.r
            self.names = (
                [f"x_{v}" for v in labels]
                + [f"y_{v}" for v in labels]
                + ["z_" + "".join(delta.labels_of(m)) for m in self.facet_masks]
            )

    # variable indices -------------------------------------------------

    def x(self, i: int) -> int:
        return i

    def y(self, i: int) -> int:
        if self.artinian:
            return i
        return self.n + i

    def z(self, k: int) -> int:
        return (self.n if self.artinian else 2 * self.n) + k

    @property
    def z_range(self):
        base = self.n if self.artinian else 2 * self.n
        return range(base, base + self.r)

    def facet_label(self, k: int) -> str:
        return "".join(self.delta.labels_of(self.facet_masks[k]))

    def facet_index_by_label(self, label: str):
        for k in range(self.r):
            if self.facet_label(k) == label:
                return k
        return None

    # monomial constructors ---------------------------------------------

    def unit(self) -> tuple:
        return (0,) * self.nvars

    def variable(self, idx: int) -> tuple:
        e = [0] * self.nvars
        e[idx] = 1
        return tuple(e)

    def monomial(self, pairs) -> tuple:
        e = [0] * self.nvars
        for idx, exp in pairs:
            e[idx] += exp
        return tuple(e)

    def x_monomial(self, mask: int) -> tuple:
        return self.monomial((self.x(i), 1) for i in _mask_bits(mask))

    def y_monomial(self, mask: int) -> tuple:
        return self.monomial((self.y(i), 1) for i in _mask_bits(mask))

    def monomial_str(self, mono: tuple) -> str:
        parts = []
        for idx, e in enumerate(mono):
            if e == 1:
                parts.append(self.names[idx])
            elif e > 1:
                parts.append(f"{self.names[idx]}^{e}")
        return "*".join(parts) if parts else "1"


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple):
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: tuple) -> int:
    return sum(a)


def mono_coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))
