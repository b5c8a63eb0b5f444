"""Simplicial complexes: face queries, f/h-vectors, duals, builtin families.

Vertices carry arbitrary string labels mapped to dense indices 0..n-1 in
declared order; faces are bitmasks internally and label tuples at the API
boundary.  All objects are immutable after construction.
"""

from __future__ import annotations

import json
from itertools import combinations
from math import comb

from .errors import (
    BadParams,
    EmptyInput,
    NotAFace,
    NotPure,
    ParseError,
    UnknownVertex,
    VoidComplex,
)


def _mask_bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class SimplicialComplex:
    """An abstract simplicial complex with labelled vertices.

    `facet_masks` is the canonical antichain of maximal faces, sorted
    lexicographically by vertex index.  The complex {emptyset} (facets
    == (0,)) is distinct from the void complex (facets == ()).
    """

    __slots__ = ("vertices", "_index", "facet_masks")

    def __init__(self, vertices, facet_masks, *, _canonical=False):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise BadParams("duplicate vertex labels")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        masks = list(facet_masks)
        if not _canonical:
            masks = _antichain(masks)
        self.facet_masks = tuple(masks)

    # -- constructors --------------------------------------------------

    @classmethod
    def void(cls, vertices):
        return cls(vertices, [])

    @classmethod
    def irrelevant(cls, vertices):
        """The complex whose only face is the empty set."""
        return cls(vertices, [0])

    # -- basics ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index_of(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {label!r}") from None

    def mask_of(self, face) -> int:
        m = 0
        for v in face:
            m |= 1 << self.index_of(v)
        return m

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.vertices[i] for i in _mask_bits(mask))

    @property
    def facets(self) -> tuple:
        return tuple(self.labels_of(m) for m in self.facet_masks)

    def is_void(self) -> bool:
        return not self.facet_masks

    def dim(self) -> int:
        if self.is_void():
            raise VoidComplex("the void complex has no dimension")
        return max(_popcount(m) for m in self.facet_masks) - 1

    def is_pure(self) -> bool:
        if self.is_void():
            return True
        sizes = {_popcount(m) for m in self.facet_masks}
        return len(sizes) == 1

    def has_face_mask(self, mask: int) -> bool:
        return any(mask & f == mask for f in self.facet_masks)

    def has_face(self, face) -> bool:
        return self.has_face_mask(self.mask_of(face))

    def face_masks(self) -> set:
        """All faces of the complex, as a set of bitmasks."""
        seen = set()
        for f in self.facet_masks:
            bits = list(_mask_bits(f))
            for k in range(len(bits) + 1):
                for sub in combinations(bits, k):
                    m = 0
                    for i in sub:
                        m |= 1 << i
                    seen.add(m)
        return seen

    def faces_by_dim(self) -> dict:
        """Map dimension -> sorted list of face masks (dimension -1 is {0})."""
        out = {}
        for m in self.face_masks():
            out.setdefault(_popcount(m) - 1, []).append(m)
        for lst in out.values():
            lst.sort()
        return out

    # -- counting --------------------------------------------------------

    def f_vector(self) -> tuple:
        """(f_-1, f_0, ..., f_{d-1})."""
        if self.is_void():
            raise VoidComplex("the void complex has no f-vector")
        by_dim = self.faces_by_dim()
        d = self.dim() + 1
        return tuple(len(by_dim.get(i - 1, ())) for i in range(d + 1))

    def h_vector(self) -> tuple:
        if not self.is_pure():
            raise NotPure("h-vector requires a pure complex")
        return h_from_f(self.f_vector())

    def reduced_euler_characteristic(self) -> int:
        """-f_{-1} + f_0 - f_1 + ..."""
        f = self.f_vector()
        return sum(f[j] if j % 2 else -f[j] for j in range(len(f)))

    # -- structure -------------------------------------------------------

    def minimal_nonface_masks(self) -> tuple:
        out = []
        n = self.n
        face = self.has_face_mask
        for size in range(1, n + 1):
            for sub in combinations(range(n), size):
                m = 0
                for i in sub:
                    m |= 1 << i
                if face(m):
                    continue
                if all(face(m & ~(1 << i)) for i in sub):
                    out.append(m)
        return tuple(sorted(out))

    def minimal_nonfaces(self) -> tuple:
        return tuple(self.labels_of(m) for m in self.minimal_nonface_masks())

    def is_flag(self) -> bool:
        return all(_popcount(m) == 2 for m in self.minimal_nonface_masks())

    def link(self, face) -> "SimplicialComplex":
        fm = self.mask_of(face)
        if not self.has_face_mask(fm):
            raise NotAFace(f"{tuple(face)} is not a face")
        verts = [v for i, v in enumerate(self.vertices) if not fm & (1 << i)]
        cofacets = [g & ~fm for g in self.facet_masks if g & fm == fm]
        remap = _remap_masks(self.vertices, verts, cofacets)
        return SimplicialComplex(verts, remap)

    def restriction(self, vertex_subset) -> "SimplicialComplex":
        sub = sorted({self.index_of(v) for v in vertex_subset})
        sm = 0
        for i in sub:
            sm |= 1 << i
        verts = [self.vertices[i] for i in sub]
        inside = [f & sm for f in self.facet_masks]
        remap = _remap_masks(self.vertices, verts, inside)
        return SimplicialComplex(verts, remap)

    def alexander_dual_generators(self) -> tuple:
        """Complements of facets: the minimal generators of the dual ideal."""
        full = (1 << self.n) - 1
        comps = sorted({full & ~f for f in self.facet_masks})
        return tuple(self.labels_of(m) for m in comps)

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets]}

    def to_json(self) -> str:
        return canonical_json(self.to_json_obj())

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and self.facet_masks == other.facet_masks
        )

    def __hash__(self):
        return hash((self.vertices, self.facet_masks))

    def __repr__(self):
        if self.is_void():
            return f"SimplicialComplex(void on {self.n} vertices)"
        return f"SimplicialComplex({[''.join(f) for f in self.facets]})"


def _antichain(masks):
    """Drop dominated masks and sort by sorted index tuple."""
    kept = []
    for m in set(masks):
        if not any(m != o and m & o == m for o in masks):
            kept.append(m)
    kept.sort(key=lambda m: tuple(_mask_bits(m)))
    return kept


def _remap_masks(old_vertices, new_vertices, masks):
    pos = {v: j for j, v in enumerate(new_vertices)}
    out = []
    for m in masks:
        nm = 0
        for i in _mask_bits(m):
            nm |= 1 << pos[old_vertices[i]]
        out.append(nm)
    return out


def new_complex(vertices, facet_list, *, empty_complex=False) -> SimplicialComplex:
    """Build a complex from labelled facets, normalizing to an antichain."""
    c = SimplicialComplex(vertices, [])
    if not facet_list:
        if empty_complex:
            return SimplicialComplex.irrelevant(vertices)
        raise EmptyInput("no facets given; pass empty_complex=True for {emptyset}")
    return SimplicialComplex(vertices, [c.mask_of(f) for f in facet_list])


# -- f/h transforms ----------------------------------------------------------


def h_from_f(f: tuple) -> tuple:
    """h_i = sum_j (-1)^(i-j) C(d-j, d-i) f_{j-1}, for i = 0..d."""
    d = len(f) - 1
    return tuple(
        sum((-1) ** (i - j) * comb(d - j, d - i) * f[j] for j in range(i + 1))
        for i in range(d + 1)
    )


def f_from_h(h: tuple, d: int) -> tuple:
    """Inverse transform: f_{i-1} = sum_j C(d-j, d-i) h_j."""
    if len(h) != d + 1:
        raise BadParams(f"h-vector of length {len(h)} does not match d={d}")
    return tuple(
        sum(comb(d - j, d - i) * h[j] for j in range(i + 1)) for i in range(d + 1)
    )


# -- builtin families ---------------------------------------------------------


def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope; antipodal pairs (2i-1, 2i)."""
    if d < 1:
        raise BadParams("d must be >= 1")
    vertices = [str(i) for i in range(1, 2 * d + 1)]
    facets = []
    for choice in range(2 ** d):
        face = [2 * i + 1 + ((choice >> i) & 1) for i in range(d)]
        facets.append([str(v) for v in face])
    return new_complex(vertices, facets)


def glued_cross_polytopes(d: int, c: int) -> SimplicialComplex:
    """c copies of the cross-polytope boundary sharing the facet {1,3,..,2d-1}.

    Copy 1 is cross_polytope_boundary(d) verbatim; copy k >= 2 replaces the
    even-labelled antipodes by fresh vertices 2d+(k-2)d+1 ... 2d+(k-1)d.
    """
    if d < 1 or c < 1:
        raise BadParams("need d >= 1 and c >= 1")
    shared = [2 * i + 1 for i in range(d)]
    vertices = [str(i) for i in range(1, 2 * d + 1)]
    facets = []

    def copy_facets(partners):
        for choice in range(2 ** d):
            yield [
                str(shared[i]) if not (choice >> i) & 1 else str(partners[i])
                for i in range(d)
            ]

    facets.extend(copy_facets([2 * i + 2 for i in range(d)]))
    for k in range(2, c + 1):
        partners = [2 * d + (k - 2) * d + i + 1 for i in range(d)]
        vertices.extend(str(p) for p in partners)
        facets.extend(copy_facets(partners))
    return new_complex(vertices, facets)


_RP2_FACETS = [
    "145", "126", "156", "237", "347", "267", "148", "478", "129", "189",
    "23a", "34a", "45a", "29a", "56b", "67b", "78b", "89b", "5ab", "9ab",
]


def rp2_flag() -> SimplicialComplex:
    """An 11-vertex flag triangulation of the real projective plane."""
    vertices = [str(i) for i in range(1, 10)] + ["a", "b"]
    return new_complex(vertices, [list(f) for f in _RP2_FACETS])


def path3() -> SimplicialComplex:
    """The 2-dimensional path of three triangles 123, 234, 345."""
    return new_complex([str(i) for i in range(1, 6)], [["1", "2", "3"], ["2", "3", "4"], ["3", "4", "5"]])


def bier_example() -> SimplicialComplex:
    """Non-pure complex on three vertices with facets {1,2} and {3}."""
    return new_complex(["1", "2", "3"], [["1", "2"], ["3"]])


_BUILTINS = {
    "cross_polytope_boundary": (cross_polytope_boundary, ("d",)),
    "glued_cross_polytopes": (glued_cross_polytopes, ("d", "c")),
    "rp2_flag": (rp2_flag, ()),
    "path3": (path3, ()),
    "bier_example": (bier_example, ()),
}


def builtin(name: str, **params) -> SimplicialComplex:
    if name not in _BUILTINS:
        raise BadParams(f"unknown builtin {name!r}; know {sorted(_BUILTINS)}")
    fn, wanted = _BUILTINS[name]
    if set(params) != set(wanted):
        raise BadParams(f"builtin {name!r} takes parameters {wanted}")
    return fn(**{k: int(v) for k, v in params.items()})


# -- I/O -----------------------------------------------------------------------


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def from_json(text: str) -> SimplicialComplex:
    try:
        obj = json.loads(text)
        vertices = obj["vertices"]
        facets = obj["facets"]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise ParseError(f"bad complex JSON: {e}") from None
    return new_complex(vertices, facets, empty_complex=not facets)


def from_text(text: str) -> SimplicialComplex:
    """Plain format: one facet per line, vertices whitespace-separated."""
    facets = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        facets.append(line.split())
    if not facets:
        raise ParseError("no facets in text input")
    seen = []
    for f in facets:
        for v in f:
            if v not in seen:
                seen.append(v)
    return new_complex(seen, facets)


def load_complex(path: str) -> SimplicialComplex:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return from_json(text)
    return from_text(text)
