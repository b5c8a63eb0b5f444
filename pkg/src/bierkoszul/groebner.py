"""Buchberger's algorithm, shellability, and the quadratic-Groebner-basis test.

Polynomials are {monomial: coefficient} dicts over a RingContext, compared
through an explicit TermOrder.  The engine carries general field arithmetic,
although on the Gorenstein generating sets every coefficient stays +-1.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations, permutations

from .complexes import SimplicialComplex, _popcount
from .errors import (
    BadParams,
    BudgetExceeded,
    CapExceeded,
    NotFlag,
    NotPure,
    NotS2,
)
from .fields import FieldSpec
from .homology import serre_condition
from .orders import TermOrder, compatible_term_order
from .presentation import make_binomial, r_delta_presentation
from .rings import RingContext, mono_coprime, mono_deg, mono_div, mono_lcm, mono_mul


def lead(poly: dict, order: TermOrder) -> tuple:
    return max(poly, key=order.key)


def poly_scale(poly: dict, c, field: FieldSpec) -> dict:
    return {m: field.mul(c, v) for m, v in poly.items()}


def poly_sub(p: dict, q: dict, field: FieldSpec) -> dict:
    out = dict(p)
    for m, v in q.items():
        nv = field.sub(out.get(m, field.zero), v)
        if nv == field.zero:
            out.pop(m, None)
        else:
            out[m] = nv
    return out


def poly_mul_mono(poly: dict, mono: tuple, field: FieldSpec) -> dict:
    return {mono_mul(m, mono): v for m, v in poly.items()}


def monic(poly: dict, order: TermOrder, field: FieldSpec) -> dict:
    c = poly[lead(poly, order)]
    if c == field.one:
        return dict(poly)
    return poly_scale(poly, field.inv(c), field)


def s_polynomial(f: dict, g: dict, order: TermOrder, field: FieldSpec) -> dict:
    """lcm/lt(f) * f/lc(f)  -  lcm/lt(g) * g/lc(g)."""
    lf, lg = lead(f, order), lead(g, order)
    l = mono_lcm(lf, lg)
    a = poly_mul_mono(poly_scale(f, field.inv(f[lf]), field), mono_div(l, lf), field)
    b = poly_mul_mono(poly_scale(g, field.inv(g[lg]), field), mono_div(l, lg), field)
    return poly_sub(a, b, field)


class _Basis:
    """Basis elements with cached leading data for reduction loops."""

    def __init__(self, order: TermOrder, field: FieldSpec):
        self.order = order
        self.field = field
        self.polys = []
        self.leads = []

    def add(self, poly: dict):
        p = monic(poly, self.order, self.field)
        self.polys.append(p)
        self.leads.append(lead(p, self.order))

    def find_divisor(self, mono: tuple):
        for i, lm in enumerate(self.leads):
            q = mono_div(mono, lm)
            if q is not None:
                return i, q
        return None, None


def normal_form(p: dict, basis: _Basis, trace=None) -> dict:
    """Full normal form of p modulo the basis (no result term divisible)."""
    field = basis.field
    order = basis.order
    work = dict(p)
    remainder = {}
    while work:
        t = lead(work, order)
        i, q = basis.find_divisor(t)
        if i is None:
            remainder[t] = work.pop(t)
            continue
        if trace is not None:
            trace.append((i, q))
        work = poly_sub(work, poly_mul_mono(poly_scale(basis.polys[i], work[t], field), q, field), field)
    return remainder


def reduce_mod(p: dict, generators, order: TermOrder, field: FieldSpec, trace=None) -> dict:
    basis = _Basis(order, field)
    for g in generators:
        if g:
            basis.add(g)
    return normal_form(p, basis, trace)


@dataclass
class GroebnerResult:
    basis: list
    complete: bool
    degree_cap: int
    pairs_processed: int
    pairs_skipped_by_cap: int
    new_elements: int

    def leading_monomials(self, order: TermOrder) -> list:
        return [lead(g, order) for g in self.basis]


def buchberger(
    generators,
    order: TermOrder,
    field: FieldSpec,
    degree_cap: int = 6,
    use_product_criterion: bool = True,
) -> GroebnerResult:
    """Degree-capped Buchberger with the normal (lowest-degree-first) strategy.

    Pairs whose lcm exceeds the cap are skipped and flagged, making the
    output a partial basis valid through the cap degree.
    """
    basis = _Basis(order, field)
    for g in generators:
        if g:
            basis.add(g)
    if any(mono_deg(lm) > degree_cap for lm in basis.leads):
        raise BadParams("degree_cap below a generator degree")

    heap = []
    counter = 0

    def push_pairs(j):
        nonlocal counter
        for i in range(j):
            l = mono_lcm(basis.leads[i], basis.leads[j])
            heapq.heappush(heap, (mono_deg(l), order.key(l), counter, i, j))
            counter += 1

    for j in range(len(basis.polys)):
        push_pairs(j)

    processed = 0
    skipped = 0
    added = 0
    while heap:
        deg, _, _, i, j = heapq.heappop(heap)
        if use_product_criterion and mono_coprime(basis.leads[i], basis.leads[j]):
            continue
        if deg > degree_cap:
            skipped += 1
            continue
        processed += 1
        s = s_polynomial(basis.polys[i], basis.polys[j], order, field)
        rem = normal_form(s, basis)
        if rem:
            basis.add(rem)
            added += 1
            push_pairs(len(basis.polys) - 1)
    return GroebnerResult(
        basis=basis.polys,
        complete=skipped == 0,
        degree_cap=degree_cap,
        pairs_processed=processed,
        pairs_skipped_by_cap=skipped,
        new_elements=added,
    )


# -- shellability ---------------------------------------------------------------


def _can_extend(used_masks, f: int, d: int) -> bool:
    """Is <used> cut with <f> pure of dimension d-2?"""
    inters = {f & g for g in used_masks}
    big = [m for m in inters if _popcount(m) == d - 1]
    if not big:
        return False
    for m in inters:
        if _popcount(m) == d - 1:
            continue
        if not any(m & b == m for b in big):
            return False
    return True


def is_shelling_order(delta: SimplicialComplex, facet_order) -> bool:
    """Check the pure-codimension-one condition at every step of the order."""
    if not delta.is_pure():
        raise NotPure("shelling orders are defined for pure complexes")
    masks = delta.facet_masks
    if sorted(facet_order) != list(range(len(masks))):
        raise BadParams("facet order must be a permutation of all facets")
    d = delta.dim() + 1
    for i in range(1, len(facet_order)):
        used = [masks[k] for k in facet_order[:i]]
        if not _can_extend(used, masks[facet_order[i]], d):
            return False
    return True


@dataclass
class ShellingSearch:
    status: str  # found | not_shellable | budget_exceeded
    order: tuple | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Budget(Exception):
    pass


def find_shelling(delta: SimplicialComplex, node_budget: int = 10 ** 7) -> ShellingSearch:
    """DFS over partial shellings with memoized dead facet-sets.

    Whether a partial shelling extends depends only on the set of placed
    facets, so failed sets prune exponentially.  `not_shellable` is reported
    only when the whole tree was exhausted within budget.
    """
    if not delta.is_pure():
        raise NotPure("shellability is defined for pure complexes")
    masks = delta.facet_masks
    r = len(masks)
    if r == 0:
        return ShellingSearch("found", (), 0)
    d = delta.dim() + 1
    failed = set()
    nodes = 0
    order = []

    def dfs(used_key) -> bool:
        nonlocal nodes
        if len(order) == r:
            return True
        if used_key in failed:
            return False
        placed = [masks[i] for i in order]
        for k in range(r):
            if used_key >> k & 1:
                continue
            if order and not _can_extend(placed, masks[k], d):
                continue
            nodes += 1
            if nodes > node_budget:
                raise _Budget()
            order.append(k)
            if dfs(used_key | (1 << k)):
                return True
            order.pop()
        failed.add(used_key)
        return False

    try:
        if dfs(0):
            return ShellingSearch("found", tuple(order), nodes)
        return ShellingSearch("not_shellable", None, nodes)
    except _Budget:
        return ShellingSearch("budget_exceeded", None, nodes)


# -- quadratic Groebner bases ------------------------------------------------------


def quadratic_binomials(delta: SimplicialComplex):
    """The binomials of facet pairs meeting in codimension one."""
    ring = RingContext(delta)
    d = ring.d
    out = []
    for k1, k2 in combinations(range(ring.r), 2):
        if _popcount(ring.facet_masks[k1] & ring.facet_masks[k2]) == d - 1:
            out.append(make_binomial(ring, k1, k2))
    return ring, out


def parse_facet_order(delta: SimplicialComplex, text: str) -> tuple:
    """Facet order from comma-separated concatenated labels, e.g. '123,234,345'."""
    ring = RingContext(delta)
    order = []
    for part in text.split(","):
        k = ring.facet_index_by_label(part.strip())
        if k is None:
            raise BadParams(f"unknown facet {part!r}")
        order.append(k)
    if sorted(order) != list(range(ring.r)):
        raise BadParams("facet order must list every facet exactly once")
    return tuple(order)


def _require_s2_flag(delta: SimplicialComplex, field: FieldSpec):
    if not delta.is_pure():
        raise NotPure("needs a pure complex")
    if not delta.is_flag():
        raise NotFlag("needs a flag complex")
    if not serre_condition(delta, 2, field):
        raise NotS2("the complex is not (S_2), so the quadratic part does not generate")


def quadratic_gb_test(
    delta: SimplicialComplex,
    facet_order,
    field: FieldSpec = FieldSpec(0),
    log: list | None = None,
) -> bool:
    """Does the quadratic generating set form a Groebner basis under an
    order compatible with the given facet order?

    Every S-pair of the quadratic monomials plus the codimension-one
    binomials is reduced; monomial-monomial pairs have S-polynomial zero and
    are skipped as such.
    """
    _require_s2_flag(delta, field)
    pres = r_delta_presentation(delta)
    ring = pres.ring
    order = compatible_term_order(ring, tuple(facet_order))
    _, quads = quadratic_binomials(delta)
    gens = [(fam, {m: field.one}) for fam, m in pres.monomial_generators()]
    gens += [("binomial", b.poly(field)) for b in quads]

    basis = _Basis(order, field)
    for _, g in gens:
        basis.add(g)

    ok = True
    for i, j in combinations(range(len(gens)), 2):
        if gens[i][0] != "binomial" and gens[j][0] != "binomial":
            continue  # S-polynomial of two monomials is identically zero
        trace = [] if log is not None else None
        s = s_polynomial(gens[i][1], gens[j][1], order, field)
        rem = normal_form(s, basis, trace)
        if log is not None:
            log.append(
                {
                    "pair": (i, j),
                    "s_polynomial": _poly_repr(ring, order, s),
                    "steps": len(trace),
                    "normal_form": _poly_repr(ring, order, rem),
                    "reduces_to_zero": not rem,
                }
            )
        if rem:
            ok = False
            if log is None:
                return False
    return ok


def _poly_repr(ring: RingContext, order: TermOrder, poly: dict) -> str:
    if not poly:
        return "0"
    parts = []
    for m, c in order.sort_terms(poly):
        sign = "-" if c < 0 or (hasattr(c, "numerator") and c < 0) else "+"
        parts.append(f"{sign} {ring.monomial_str(m)}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def valley_qgb_test(delta: SimplicialComplex, facet_order) -> bool:
    """Order-combinatorial form of the quadratic Groebner test.

    Under a block order compatible with the facet order, every S-pair of the
    quadratic generating set reduces automatically except those of two
    codimension-one binomials sharing their leading z-variable; such a pair
    reduces exactly when the two lower facets are joined, inside the facets
    containing their intersection, by a codimension-one chain that first
    descends and then ascends in the order.  Agrees with quadratic_gb_test
    on every facet order; exponentially cheaper for exhaustive scans.
    """
    masks = delta.facet_masks
    r = len(masks)
    if sorted(facet_order) != list(range(r)):
        raise BadParams("facet order must be a permutation of all facets")
    d = delta.dim() + 1
    pos = {k: p for p, k in enumerate(facet_order)}
    neighbors = {
        k: [l for l in range(r) if l != k and _popcount(masks[k] & masks[l]) == d - 1]
        for k in range(r)
    }

    def descending_set(start, nodes):
        reach = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for nb in neighbors[cur]:
                if nb in nodes and nb not in reach and pos[nb] < pos[cur]:
                    reach.add(nb)
                    stack.append(nb)
        return reach

    for k in range(r):
        below = [l for l in neighbors[k] if pos[l] < pos[k]]
        for a in range(len(below)):
            for b in range(a + 1, len(below)):
                f1, f2 = below[a], below[b]
                inter = masks[f1] & masks[f2]
                if _popcount(inter) == d - 1:
                    continue
                nodes = {m for m in range(r) if masks[m] & inter == inter}
                if not descending_set(f1, nodes) & descending_set(f2, nodes):
                    return False
    return True


def quadratic_gb_order_exists(
    delta: SimplicialComplex, field: FieldSpec = FieldSpec(0)
) -> bool:
    """Scan all facet orders with the valley criterion; exact but fast.

    Preconditions as for quadratic_gb_test.  Stops at the first passing
    order.
    """
    _require_s2_flag(delta, field)
    r = len(delta.facet_masks)
    return any(valley_qgb_test(delta, perm) for perm in permutations(range(r)))


def has_quadratic_gb(
    delta: SimplicialComplex,
    strategy: str = "theorem",
    *,
    field: FieldSpec = FieldSpec(0),
    node_budget: int = 10 ** 7,
    order_cap: int = 40320,
) -> bool:
    """Existence of a quadratic Groebner basis for the Gorenstein ideal.

    strategy 'theorem' searches for a shelling order; 'direct' enumerates
    facet orders (capped at order_cap) and tests each one.  A complex that is
    not (S_2) is not even quadratic, hence False without further work.
    """
    if not delta.is_pure():
        raise NotPure("needs a pure complex")
    if not delta.is_flag():
        raise NotFlag("needs a flag complex")
    if not serre_condition(delta, 2, field):
        return False
    if strategy == "theorem":
        result = find_shelling(delta, node_budget)
        if result.status == "budget_exceeded":
            raise BudgetExceeded(f"shelling search exhausted {result.nodes} nodes")
        return result.found
    if strategy == "direct":
        r = len(delta.facet_masks)
        total = 1
        for k in range(2, r + 1):
            total *= k
        if total > order_cap:
            raise BudgetExceeded(f"{total} facet orders exceed the cap {order_cap}")
        return any(
            quadratic_gb_test(delta, perm, field) for perm in permutations(range(r))
        )
    raise BadParams(f"unknown strategy {strategy!r}")


# -- normal-form counting -----------------------------------------------------------


def hilbert_function_by_normal_forms(
    gb: GroebnerResult, order: TermOrder, up_to_degree: int
) -> tuple:
    """Count monomials of each degree 0..up_to_degree avoiding the GB leads."""
    if not gb.complete and up_to_degree >= gb.degree_cap:
        raise CapExceeded(
            f"basis capped at degree {gb.degree_cap}; counts beyond are unreliable"
        )
    leads = gb.leading_monomials(order)
    nvars = order.ring.nvars

    def standard(mono):
        return all(mono_div(mono, lm) is None for lm in leads)

    counts = [1]
    level = [(order.ring.unit(), 0)]
    for _ in range(up_to_degree):
        nxt = []
        for mono, start in level:
            for idx in range(start, nvars):
                e = list(mono)
                e[idx] += 1
                m2 = tuple(e)
                if standard(m2):
                    nxt.append((m2, idx))
        counts.append(len(nxt))
        level = nxt
    return tuple(counts)
