"""Bier balls: the whiskered complex, its shelling, boundary sphere, and
the combinatorial generators of the canonical module."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import SimplicialComplex, _mask_bits, _popcount
from .errors import IsSimplex, NotPure


def x_label(v: str) -> str:
    return f"x:{v}"


def y_label(v: str) -> str:
    return f"y:{v}"


@dataclass(frozen=True)
class BierBall:
    """The pure (n-1)-dimensional complex whose faces avoid all whisker pairs.

    Facets are F# = {x_i : i in F} союз {y_j : j not in F} over the faces F of
    the source complex, so the facet count equals the source's face count.
    """

    gamma: SimplicialComplex
    source: SimplicialComplex

    @property
    def n(self) -> int:
        return self.source.n


def _sharp_mask(ball_n: int, face_mask: int) -> int:
    """F -> F#: x-bits are 0..n-1, y-bits are n..2n-1."""
    m = face_mask
    for i in range(ball_n):
        if not face_mask & (1 << i):
            m |= 1 << (ball_n + i)
    return m


def bier_ball(delta: SimplicialComplex) -> BierBall:
    n = delta.n
    vertices = [x_label(v) for v in delta.vertices] + [y_label(v) for v in delta.vertices]
    facets = [_sharp_mask(n, f) for f in sorted(delta.face_masks())]
    gamma = SimplicialComplex(vertices, facets)
    return BierBall(gamma=gamma, source=delta)


def bier_shelling_order(ball: BierBall) -> tuple:
    """Facets F# ordered by dim(F) ascending, ties broken lexicographically.

    Any refinement of the dimension order shells the ball; this particular
    one is fixed so outputs are reproducible.
    """
    faces = sorted(
        ball.source.face_masks(), key=lambda m: (_popcount(m), tuple(_mask_bits(m)))
    )
    n = ball.n
    return tuple(ball.gamma.labels_of(_sharp_mask(n, f)) for f in faces)


def boundary_sphere(ball: BierBall) -> SimplicialComplex:
    """Subcomplex generated by the codimension-1 faces lying in one facet only."""
    if not ball.source.minimal_nonface_masks():
        raise IsSimplex("the source is a full simplex, so the ball is a sphere")
    gamma = ball.gamma
    boundary = []
    seen = set()
    for f in gamma.facet_masks:
        for b in _mask_bits(f):
            sub = f & ~(1 << b)
            if sub in seen:
                continue
            seen.add(sub)
            if sum(1 for g in gamma.facet_masks if g & sub == sub) == 1:
                boundary.append(sub)
    support = 0
    for m in boundary:
        support |= m
    verts = [v for i, v in enumerate(gamma.vertices) if support & (1 << i)]
    facets = [[gamma.vertices[i] for i in _mask_bits(m)] for m in boundary]
    if not facets:
        return SimplicialComplex.irrelevant(verts)
    c = SimplicialComplex(verts, [])
    return SimplicialComplex(verts, [c.mask_of(f) for f in facets])


def cofacet_counts(ball: BierBall) -> dict:
    """Map codim-1 face mask -> number of facets of the ball containing it."""
    gamma = ball.gamma
    counts = {}
    for f in gamma.facet_masks:
        for b in _mask_bits(f):
            sub = f & ~(1 << b)
            if sub not in counts:
                counts[sub] = sum(1 for g in gamma.facet_masks if g & sub == sub)
    return counts


def canonical_module_generators(delta: SimplicialComplex) -> tuple:
    """The y-monomials y^([n] minus F) over facets F, each of degree n - d.

    For the full simplex the single generator is the empty product.
    """
    if not delta.is_pure():
        raise NotPure("canonical module generators need a pure source complex")
    full = (1 << delta.n) - 1
    gens = sorted(full & ~f for f in delta.facet_masks)
    return tuple(tuple(delta.vertices[i] for i in _mask_bits(m)) for m in gens)
