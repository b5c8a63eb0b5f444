"""Reduced simplicial homology over QQ or F_p, and Serre's conditions.

Everything is computed from ranks of augmented boundary matrices over the
requested field; no Smith normal form, no floats.  Torsion shows up only
indirectly, by comparing characteristics.
"""

from __future__ import annotations

from .complexes import SimplicialComplex, _mask_bits
from .errors import BadParams, NotPure, VoidComplex
from .fields import FieldSpec, matrix_rank


def _boundary_rows(faces_lower, faces_upper, field):
    """Columns of the boundary map as rows of its transpose (rank is the same)."""
    pos = {m: i for i, m in enumerate(faces_lower)}
    rows = []
    one = field.one
    for m in faces_upper:
        bits = list(_mask_bits(m))
        row = {}
        for j, b in enumerate(bits):
            sign = one if j % 2 == 0 else field.neg(one)
            row[pos[m & ~(1 << b)]] = sign
        rows.append(row)
    return rows


def reduced_homology(complex_: SimplicialComplex, field: FieldSpec) -> dict:
    """Map degree -> dim H~_degree(complex; field), for degrees -1..dim.

    The complex {emptyset} has H~_{-1} of dimension one; the void complex is
    rejected.  Augmented chain complex, exact rank computations.
    """
    if complex_.is_void():
        raise VoidComplex("the void complex has no homology")
    by_dim = complex_.faces_by_dim()
    d = complex_.dim()
    counts = {i: len(by_dim.get(i, ())) for i in range(-1, d + 1)}
    # rank of the boundary map C_i -> C_{i-1}; the map out of C_{-1} is zero
    ranks = {}
    for i in range(0, d + 1):
        rows = _boundary_rows(by_dim.get(i - 1, []), by_dim.get(i, []), field)
        ranks[i] = matrix_rank(rows, field)
    ranks[d + 1] = 0
    dims = {}
    for i in range(-1, d + 1):
        kernel = counts[i] - ranks.get(i, 0)
        dims[i] = kernel - ranks[i + 1]
    return dims


def _serre_bound_for_link(link: SimplicialComplex, field: FieldSpec) -> int:
    """Largest r such that this link imposes no (S_r) violation (capped later).

    A nonvanishing H~_i with i < dim(link) forbids every r > i + 1.
    """
    dl = link.dim()
    if dl <= 0:
        return 10 ** 9
    dims = reduced_homology(link, field)
    bound = 10 ** 9
    for i in range(-1, dl):
        if dims.get(i, 0) != 0:
            bound = min(bound, i + 1)
    return bound


def serre_condition(complex_: SimplicialComplex, r: int, field: FieldSpec) -> bool:
    """Serre's condition (S_r): vanishing of low homology of all links.

    (S_1) always holds.  For r >= 2 the complex must be pure, and every link
    (including the link of the empty face, i.e. the complex itself) must have
    H~_i = 0 for i < min(r-1, dim link).
    """
    if r < 1:
        raise BadParams("r must be >= 1")
    if r == 1:
        return True
    if complex_.is_void() or not complex_.is_pure():
        return False
    for face_mask in complex_.face_masks():
        link = complex_.link(complex_.labels_of(face_mask))
        dl = link.dim()
        cutoff = min(r - 1, dl)
        if cutoff <= -1:
            continue
        dims = reduced_homology(link, field)
        if any(dims.get(i, 0) != 0 for i in range(-1, cutoff)):
            return False
    return True


def is_cohen_macaulay(complex_: SimplicialComplex, field: FieldSpec) -> bool:
    """Reisner-style test: (S_d) for a pure (d-1)-dimensional complex."""
    if not complex_.is_pure():
        raise NotPure("Cohen-Macaulayness is only tested on pure complexes")
    return serre_condition(complex_, complex_.dim() + 1, field)


def serre_profile(complex_: SimplicialComplex, characteristics) -> dict:
    """For each characteristic, the largest r <= d with (S_r).

    Link homology is computed once per field and reused over all r.
    """
    if not complex_.is_pure():
        raise NotPure("serre_profile requires a pure complex")
    d = complex_.dim() + 1
    links = [
        complex_.link(complex_.labels_of(m)) for m in sorted(complex_.face_masks())
    ]
    out = {}
    for char in characteristics:
        field = FieldSpec(char)
        bound = d
        for link in links:
            bound = min(bound, _serre_bound_for_link(link, field))
            if bound <= 1:
                break
        out[char] = max(bound, 1)
    return out
