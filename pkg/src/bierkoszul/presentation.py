"""Defining generators of the Gorenstein idealization ring of a pure complex.

Five families: nonface monomials x^N, whisker monomials x_i*y_i, z-quadrics
z_F*z_G (squares included), mixed monomials x_i*z_F with i outside F, and the
syzygy binomials y^(F1-F2) z_F1 - y^(F2-F1) z_F2.  The presentation is
characteristic-free.  By default the redundant binomials (those expressible
through codimension-1 chains) are dropped, which reproduces the displayed
ideals of the worked examples; pass all_binomials=True to keep every pair.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations

from .complexes import SimplicialComplex, _mask_bits, _popcount, canonical_json
from .errors import NotFlag, NotPure, UnsupportedFormat
from .fields import FieldSpec
from .homology import serre_condition
from .rings import RingContext, mono_mul


@dataclass(frozen=True)
class Binomial:
    """y^(F_hi - F_lo) z_F_hi  -  y^(F_lo - F_hi) z_F_lo, F_hi lex-larger."""

    plus: tuple
    minus: tuple
    facet_hi: int
    facet_lo: int

    def poly(self, field: FieldSpec) -> dict:
        return {self.plus: field.one, self.minus: field.neg(field.one)}

    def degree(self) -> int:
        return sum(self.plus)


@dataclass(frozen=True)
class Presentation:
    ring: RingContext
    nonfaces: tuple
    whiskers: tuple
    z_quadrics: tuple
    mixed: tuple
    binomials: tuple

    def monomial_generators(self) -> list:
        out = []
        for family, monos in (
            ("nonface", self.nonfaces),
            ("whisker", self.whiskers),
            ("z_quadric", self.z_quadrics),
            ("mixed", self.mixed),
        ):
            out.extend((family, m) for m in monos)
        return out

    def generators(self, field: FieldSpec = FieldSpec(0)) -> list:
        """All generators as (family, polynomial-dict) pairs, canonical order."""
        out = [(fam, {m: field.one}) for fam, m in self.monomial_generators()]
        out.extend(("binomial", b.poly(field)) for b in self.binomials)
        return out

    def generator_count(self) -> int:
        return (
            len(self.nonfaces)
            + len(self.whiskers)
            + len(self.z_quadrics)
            + len(self.mixed)
            + len(self.binomials)
        )

    def ambient_variable_count(self) -> int:
        return self.ring.nvars


def make_binomial(ring: RingContext, k1: int, k2: int) -> Binomial:
    """Representative for the unordered facet pair; the lex-larger facet
    (which is the later one in the canonical facet order) carries the plus."""
    hi, lo = (k1, k2) if k1 > k2 else (k2, k1)
    f_hi, f_lo = ring.facet_masks[hi], ring.facet_masks[lo]
    plus = mono_mul(ring.y_monomial(f_hi & ~f_lo), ring.variable(ring.z(hi)))
    minus = mono_mul(ring.y_monomial(f_lo & ~f_hi), ring.variable(ring.z(lo)))
    return Binomial(plus=plus, minus=minus, facet_hi=hi, facet_lo=lo)


def surviving_binomial_pairs(delta: SimplicialComplex) -> list:
    """Unordered facet pairs whose binomial the redundancy filter keeps.

    Codimension-1 pairs always stay.  A pair meeting in higher codimension is
    redundant exactly when its facets are joined by a chain of codimension-1
    steps inside the set of facets containing the intersection.
    """
    masks = delta.facet_masks
    d = delta.dim() + 1
    kept = []
    for k1, k2 in combinations(range(len(masks)), 2):
        inter = masks[k1] & masks[k2]
        if _popcount(inter) == d - 1:
            kept.append((k1, k2))
            continue
        nodes = [k for k, m in enumerate(masks) if m & inter == inter]
        reached = {k1}
        frontier = [k1]
        while frontier:
            cur = frontier.pop()
            for k in nodes:
                if k not in reached and _popcount(masks[cur] & masks[k]) == d - 1:
                    reached.add(k)
                    frontier.append(k)
        if k2 not in reached:
            kept.append((k1, k2))
    return kept


def r_delta_presentation(
    delta: SimplicialComplex, *, all_binomials: bool = False
) -> Presentation:
    if not delta.is_pure():
        raise NotPure("the Gorenstein presentation needs a pure complex")
    ring = RingContext(delta)
    nonfaces = tuple(ring.x_monomial(m) for m in delta.minimal_nonface_masks())
    whiskers = tuple(
        ring.monomial([(ring.x(i), 1), (ring.y(i), 1)]) for i in range(ring.n)
    )
    z_quadrics = tuple(
        ring.monomial([(ring.z(k1), 1), (ring.z(k2), 1)])
        for k1 in range(ring.r)
        for k2 in range(k1, ring.r)
    )
    mixed = tuple(
        ring.monomial([(ring.x(i), 1), (ring.z(k), 1)])
        for k in range(ring.r)
        for i in range(ring.n)
        if not ring.facet_masks[k] & (1 << i)
    )
    if all_binomials:
        pairs = list(combinations(range(ring.r), 2))
    else:
        pairs = surviving_binomial_pairs(delta)
    binomials = tuple(make_binomial(ring, k1, k2) for k1, k2 in pairs)
    return Presentation(
        ring=ring,
        nonfaces=nonfaces,
        whiskers=whiskers,
        z_quadrics=z_quadrics,
        mixed=mixed,
        binomials=binomials,
    )


def binomial_redundancy_filter(pres: Presentation) -> Presentation:
    """Drop binomials whose facet pair is chained through codimension-1 meets."""
    kept_pairs = set(map(frozenset, surviving_binomial_pairs(pres.ring.delta)))
    kept = tuple(
        b for b in pres.binomials if frozenset((b.facet_hi, b.facet_lo)) in kept_pairs
    )
    return replace(pres, binomials=kept)


def is_quadratic(delta: SimplicialComplex, field: FieldSpec) -> bool:
    """Quadraticity of the Gorenstein ring: (S_2), which is field-independent."""
    if not delta.is_pure():
        raise NotPure("quadraticity test needs a pure complex")
    if not delta.is_flag():
        raise NotFlag("quadraticity test needs a flag complex")
    return serre_condition(delta, 2, field)


def h_vector_r_delta(delta: SimplicialComplex) -> tuple:
    """(1, f_0 + f_{d-1}, f_1 + f_{d-2}, ..., f_{d-1} + f_0, 1)."""
    if not delta.is_pure():
        raise NotPure("needs a pure complex")
    f = delta.f_vector()
    d = delta.dim() + 1
    return (1,) + tuple(f[i] + f[d - i + 1] for i in range(1, d + 1)) + (1,)


def artinian_reduction(pres: Presentation) -> Presentation:
    """Substitute y_i -> x_i, landing in the ring on x- and z-variables only."""
    old = pres.ring
    ring = RingContext(old.delta, artinian=True)
    n, r = old.n, old.r

    def convert(mono: tuple) -> tuple:
        e = [0] * ring.nvars
        for i in range(n):
            e[ring.x(i)] = mono[old.x(i)] + mono[old.y(i)]
        for k in range(r):
            e[ring.z(k)] = mono[old.z(k)]
        return tuple(e)

    return Presentation(
        ring=ring,
        nonfaces=tuple(convert(m) for m in pres.nonfaces),
        whiskers=tuple(convert(m) for m in pres.whiskers),
        z_quadrics=tuple(convert(m) for m in pres.z_quadrics),
        mixed=tuple(convert(m) for m in pres.mixed),
        binomials=tuple(
            Binomial(convert(b.plus), convert(b.minus), b.facet_hi, b.facet_lo)
            for b in pres.binomials
        ),
    )


# -- text export ---------------------------------------------------------------


def _m2_name(name: str) -> str:
    head, _, label = name.partition("_")
    if label.isdigit() or label.isalpha():
        return name
    return f'{head}_("{label}")'


def _poly_str(ring: RingContext, family: str, poly_terms, namer) -> str:
    def term(mono):
        parts = []
        for idx, e in enumerate(mono):
            if e == 1:
                parts.append(namer(ring.names[idx]))
            elif e > 1:
                parts.append(f"{namer(ring.names[idx])}^{e}")
        return "*".join(parts) if parts else "1"

    if family == "binomial":
        plus, minus = poly_terms
        return f"{term(plus)} - {term(minus)}"
    return term(poly_terms)


def _generator_strings(pres: Presentation, namer) -> list:
    out = [
        _poly_str(pres.ring, fam, m, namer) for fam, m in pres.monomial_generators()
    ]
    out.extend(
        _poly_str(pres.ring, "binomial", (b.plus, b.minus), namer)
        for b in pres.binomials
    )
    return out


def export(pres: Presentation, fmt: str) -> str:
    """Serialize a presentation as macaulay2, singular, or canonical JSON."""
    if fmt == "json":
        return canonical_json(presentation_json_obj(pres))
    if fmt == "macaulay2":
        names = ", ".join(_m2_name(n) for n in pres.ring.names)
        gens = _generator_strings(pres, _m2_name)
        body = ",\n  ".join(gens) if gens else "0"
        return f"R = QQ[{names}];\nI = ideal(\n  {body}\n);\n"
    if fmt == "singular":
        safe = lambda n: "".join(c if c.isalnum() or c == "_" else "_" for c in n)
        names = ", ".join(safe(n) for n in pres.ring.names)
        gens = _generator_strings(pres, safe)
        body = ",\n  ".join(gens) if gens else "0"
        return f"ring R = 0, ({names}), dp;\nideal I =\n  {body};\n"
    raise UnsupportedFormat(f"unknown export format {fmt!r}")


def presentation_json_obj(pres: Presentation) -> dict:
    ring = pres.ring

    def mono_obj(mono):
        return {ring.names[i]: e for i, e in enumerate(mono) if e}

    gens = [
        {"family": fam, "terms": [[1, mono_obj(m)]]}
        for fam, m in pres.monomial_generators()
    ]
    gens.extend(
        {
            "family": "binomial",
            "facets": [ring.facet_label(b.facet_hi), ring.facet_label(b.facet_lo)],
            "terms": [[1, mono_obj(b.plus)], [-1, mono_obj(b.minus)]],
        }
        for b in pres.binomials
    )
    return {
        "ring": {
            "artinian": ring.artinian,
            "variables": list(ring.names),
            "vertices": list(ring.delta.vertices),
            "facets": [ring.facet_label(k) for k in range(ring.r)],
            "a_invariant": ring.a_invariant,
        },
        "generators": gens,
    }
