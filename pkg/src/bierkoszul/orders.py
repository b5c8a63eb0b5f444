"""Term orders on the three-block ring, as additive key vectors.

Every order here maps a monomial to a tuple that adds under monomial
multiplication, so comparing keys gives a multiplicative total order with 1
minimal.  The facet-compatible block order makes the z-variables dominate,
ranked by a chosen facet order; random weight orders drive the
universal-Groebner-basis sampling.
"""

from __future__ import annotations

from random import Random

from .errors import BadParams
from .rings import RingContext


class TermOrder:
    def __init__(self, ring: RingContext, key_fn, description: str):
        self.ring = ring
        self._key = key_fn
        self.description = description

    def key(self, mono: tuple) -> tuple:
        return self._key(mono)

    def greater(self, a: tuple, b: tuple) -> bool:
        return self._key(a) > self._key(b)

    def sort_terms(self, poly: dict) -> list:
        return sorted(poly.items(), key=lambda kv: self._key(kv[0]), reverse=True)

    def __repr__(self):
        return f"TermOrder({self.description})"


def _grevlex_key(indices):
    idx = list(indices)

    def part(mono):
        return (sum(mono[i] for i in idx),) + tuple(-mono[i] for i in reversed(idx))

    return part


def compatible_term_order(ring: RingContext, facet_order) -> TermOrder:
    """Block order compatible with the given facet order.

    Monomials compare first on the z-block (position-over-term, a later facet
    in the order beating an earlier one), then by graded reverse lex on the
    y-block, then on the x-block.  With facets F < G in the order, the
    binomial of the pair {F, G} leads with its z_G term.
    """
    if sorted(facet_order) != list(range(ring.r)):
        raise BadParams("facet order must be a permutation of all facets")
    # z-variables sorted so the last facet of the order comes first
    z_desc = [ring.z(k) for k in reversed(facet_order)]
    y_part = _grevlex_key([] if ring.artinian else [ring.y(i) for i in range(ring.n)])
    x_part = _grevlex_key([ring.x(i) for i in range(ring.n)])

    def key(mono):
        zdeg = sum(mono[i] for i in ring.z_range)
        return (zdeg,) + tuple(mono[i] for i in z_desc) + y_part(mono) + x_part(mono)

    labels = ",".join(ring.facet_label(k) for k in facet_order)
    return TermOrder(ring, key, f"compatible({labels})")


def weight_order(ring: RingContext, rows) -> TermOrder:
    """Weight-matrix order, ties broken by graded reverse lex on all variables.

    The first row must be strictly positive so that 1 stays minimal.
    """
    rows = [tuple(r) for r in rows]
    if not rows or any(len(r) != ring.nvars for r in rows):
        raise BadParams("weight rows must match the variable count")
    if any(w <= 0 for w in rows[0]):
        raise BadParams("first weight row must be strictly positive")
    tail = _grevlex_key(range(ring.nvars))

    def key(mono):
        return tuple(
            sum(w * e for w, e in zip(row, mono)) for row in rows
        ) + tail(mono)

    return TermOrder(ring, key, f"weight({len(rows)} rows)")


def random_weight_order(ring: RingContext, rng: Random) -> TermOrder:
    rows = [
        [rng.randrange(1, 10 ** 6) for _ in range(ring.nvars)],
        [rng.randrange(0, 10 ** 6) for _ in range(ring.nvars)],
    ]
    return weight_order(ring, rows)


def grevlex_order(ring: RingContext) -> TermOrder:
    return TermOrder(ring, _grevlex_key(range(ring.nvars)), "grevlex")
