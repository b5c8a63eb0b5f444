"""Truncated minimal Betti numbers of monomial modules over a flag face ring.

Tor_i(J, F) in a fixed multidegree m is the degree-m homology of J tensored
with the word-class resolution of the residue field.  A multidegree is blue
when no two variables in its support span a defining quadric (equivalently,
the monomial survives in the face ring); ideals generated by blue monomials
are swept over a bounded set of multidegrees, with the regularity of the
corresponding polynomial-ring ideal bounding the strand width.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb

from .betti import BettiTable, hochster_betti
from .complexes import SimplicialComplex, _mask_bits
from .errors import BadParams, NotBlueGenerators, SweepTooLarge
from .fields import FieldSpec, matrix_rank
from .gk import GKComplex


def _as_exponents(gamma: SimplicialComplex, mono) -> tuple:
    if isinstance(mono, dict):
        e = [0] * gamma.n
        for label, exp in mono.items():
            e[gamma.index_of(label)] = int(exp)
        return tuple(e)
    mono = tuple(mono)
    if len(mono) == gamma.n and all(isinstance(x, int) for x in mono):
        return mono
    e = [0] * gamma.n
    for label in mono:
        e[gamma.index_of(label)] += 1
    return tuple(e)


def classify_multidegree(gamma: SimplicialComplex, mono):
    """('blue', None) or ('red', (u, v)) with a witness nonface pair."""
    m = _as_exponents(gamma, mono)
    support = [i for i, e in enumerate(m) if e > 0]
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            u, v = support[a], support[b]
            if not gamma.has_face_mask((1 << u) | (1 << v)):
                return "red", (gamma.vertices[u], gamma.vertices[v])
    return "blue", None


class GammaModule:
    """The ideal of the face ring generated by a set of blue monomials."""

    def __init__(self, gamma: SimplicialComplex, generators):
        self.gamma = gamma
        self.gk = GKComplex(gamma)
        self.gens = [_as_exponents(gamma, g) for g in generators]
        for g in self.gens:
            color, witness = classify_multidegree(gamma, g)
            if color != "blue":
                raise NotBlueGenerators(f"generator {g} is red, witness {witness}")
        n = gamma.n
        # bad_mask[v]: vertices u with {u, v} a nonface (v itself excluded)
        self.bad_mask = []
        for v in range(n):
            bad = 0
            for u in range(n):
                if u != v and not gamma.has_face_mask((1 << u) | (1 << v)):
                    bad |= 1 << u
            self.bad_mask.append(bad)

    def _support_mask(self, m: tuple) -> int:
        s = 0
        for i, e in enumerate(m):
            if e:
                s |= 1 << i
        return s

    def is_blue(self, m: tuple) -> bool:
        s = self._support_mask(m)
        return all(not s & self.bad_mask[u] for u in _mask_bits(s))

    def contains(self, m: tuple) -> bool:
        """Is m a nonzero monomial of the ideal?"""
        return self.is_blue(m) and any(
            all(x >= y for x, y in zip(m, g)) for g in self.gens
        )

    # -- per-multidegree homology -------------------------------------------

    def _level_supports(self, j: int):
        lvl = self.gk.level(j)
        groups = {}
        for idx, s in enumerate(lvl["support"]):
            groups.setdefault(s, []).append(idx)
        return groups

    def _basis(self, m: tuple, j: int):
        """Pairs (ideal monomial, class index) in multidegree m, level j."""
        out = []
        for supp, classes in self._level_supports(j).items():
            rest = tuple(x - y for x, y in zip(m, supp))
            if any(x < 0 for x in rest):
                continue
            if not self.contains(rest):
                continue
            out.extend((rest, c) for c in classes)
        return out

    def strip_homology(self, m, i_lo: int, i_hi: int, field: FieldSpec) -> dict:
        """dim Tor_i at multidegree m for i_lo <= i <= i_hi."""
        m = _as_exponents(self.gamma, m)
        bases = {}
        for j in range(max(i_lo - 1, 0), i_hi + 2):
            bases[j] = self._basis(m, j)
        index = {
            j: {key: t for t, key in enumerate(bases[j])} for j in bases
        }
        ranks = {}
        for j in range(max(i_lo, 1), i_hi + 2):
            cols = []
            lower = index.get(j - 1, {})
            lvl = self.gk.level(j)
            for n_mono, c in bases.get(j, ()):
                col = {}
                for coeff, v, t in lvl["diff"][c]:
                    smask = self._support_mask(n_mono)
                    if smask & self.bad_mask[v]:
                        continue  # the product is zero in the face ring
                    n2 = list(n_mono)
                    n2[v] += 1
                    row = lower[(tuple(n2), t)]
                    col[row] = field.add(col.get(row, field.zero), field.of(coeff))
                cols.append({k: v for k, v in col.items() if v != field.zero})
            ranks[j] = matrix_rank(cols, field)
        out = {}
        for i in range(i_lo, i_hi + 1):
            out[i] = len(bases.get(i, ())) - ranks.get(i, 0) - ranks.get(i + 1, 0)
        return out

    def multidegree_key(self, m: tuple):
        return tuple(
            (self.gamma.vertices[i], e) for i, e in enumerate(m) if e
        )


def tor_dimension(
    gamma: SimplicialComplex, generators, i: int, multidegree, field: FieldSpec
) -> int:
    """dim of the degree-m homology of (ideal tensor resolution) at index i."""
    mod = GammaModule(gamma, generators)
    return mod.strip_homology(multidegree, i, i, field)[i]


def _sweep_multidegrees(mod: GammaModule, i_max: int, reg_bound: int, sweep_limit: int):
    V = mod.gamma.n
    budgets = []
    estimate = 0
    for g in mod.gens:
        b = i_max + reg_bound - sum(g)
        if b < 0:
            continue
        budgets.append((g, b))
        estimate += comb(b + V, V)
    if estimate > sweep_limit:
        raise SweepTooLarge(estimate, sweep_limit)
    degrees = set()
    for g, b in budgets:
        for t in range(b + 1):
            for extra in combinations_with_replacement(range(V), t):
                m = list(g)
                for v in extra:
                    m[v] += 1
                degrees.add(tuple(m))
    return sorted(degrees)


def module_betti_over_gamma(
    gamma: SimplicialComplex,
    generators,
    i_max: int,
    field: FieldSpec,
    reg_bound: int | None = None,
    sweep_limit: int = 500_000,
) -> BettiTable:
    """Betti table of the blue-generated ideal through homological degree i_max.

    The sweep covers every multidegree divisible by a generator of total
    degree at most i_max + reg_bound, where reg_bound defaults to the
    polynomial-ring regularity of the same generators (which bounds the face
    ring one).  Raises SweepTooLarge with an estimate if that set is bigger
    than sweep_limit.
    """
    if i_max < 0:
        raise BadParams("i_max must be >= 0")
    mod = GammaModule(gamma, generators)
    if reg_bound is None:
        gen_exps = [
            {gamma.vertices[i]: e for i, e in enumerate(g) if e} for g in mod.gens
        ]
        poly_table = hochster_betti(gen_exps, gamma.vertices, field)
        reg_bound = poly_table.regularity()
    entries = {}
    multigraded = {}
    for m in _sweep_multidegrees(mod, i_max, reg_bound, sweep_limit):
        total = sum(m)
        i_lo = max(0, total - reg_bound)
        if i_lo > i_max:
            continue
        dims = mod.strip_homology(m, i_lo, i_max, field)
        for i, dim in dims.items():
            if dim <= 0:
                continue
            entries[(i, total)] = entries.get((i, total), 0) + dim
            multigraded[(i, mod.multidegree_key(m))] = dim
    return BettiTable(
        entries=entries,
        variables=gamma.vertices,
        multigraded=multigraded,
        i_max=i_max,
    )
