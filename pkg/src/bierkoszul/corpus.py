"""Exhaustive small-complex corpus and the theorem cross-check harness.

The harness runs, per complex: the Serre-vs-dual-linearity agreement in every
characteristic asked for, shellability against the existence of a facet order
passing the quadratic Groebner test, the two independent gamma computations,
and the h-vector identity of the whiskered ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations

from .betti import terai_yanagawa_sides
from .bier import bier_ball
from .complexes import SimplicialComplex, new_complex
from .errors import BudgetExceeded
from .fields import FieldSpec
from .gamma import gamma_closed_formula, gamma_from_h
from .groebner import find_shelling, quadratic_gb_test
from .homology import serre_condition
from .presentation import h_vector_r_delta


def _canonical_iso_form(n: int, facet_index_sets) -> tuple:
    best = None
    for perm in permutations(range(n)):
        relabeled = tuple(
            sorted(tuple(sorted(perm[v] for v in f)) for f in facet_index_sets)
        )
        if best is None or relabeled < best:
            best = relabeled
    return best


def pure_flag_complexes(max_vertices: int = 5, dedupe_iso: bool = True) -> list:
    """Every pure flag complex supported on exactly 1..max_vertices vertices.

    With dedupe_iso one representative per isomorphism class is returned;
    every property the harness checks is isomorphism-invariant.
    """
    out = []
    seen = set()
    for n in range(1, max_vertices + 1):
        vertices = [str(i + 1) for i in range(n)]
        for k in range(1, n + 1):
            ksets = list(combinations(range(n), k))
            for mask in range(1, 1 << len(ksets)):
                facets = [ksets[b] for b in range(len(ksets)) if mask >> b & 1]
                support = set().union(*facets)
                if len(support) != n:
                    continue
                c = new_complex(vertices, [[vertices[v] for v in f] for f in facets])
                if not c.is_flag():
                    continue
                if dedupe_iso:
                    key = _canonical_iso_form(n, facets)
                    if key in seen:
                        continue
                    seen.add(key)
                out.append(c)
    return out


@dataclass
class HarnessReport:
    checks: list = dc_field(default_factory=list)

    def add(self, name: str, subject: str, ok: bool, detail=""):
        self.checks.append(
            {
                "check": name,
                "complex": subject,
                "status": "pass" if ok else "fail",
                "detail": detail,
            }
        )

    def skip(self, name: str, subject: str, detail=""):
        self.checks.append(
            {"check": name, "complex": subject, "status": "skip", "detail": detail}
        )

    @property
    def all_ok(self) -> bool:
        return not self.failures()

    def failures(self) -> list:
        return [c for c in self.checks if c["status"] == "fail"]

    def skipped(self) -> list:
        return [c for c in self.checks if c["status"] == "skip"]

    def summary(self) -> dict:
        by_name = {}
        for c in self.checks:
            agg = by_name.setdefault(
                c["check"], {"run": 0, "failed": 0, "skipped": 0}
            )
            agg["run"] += 1
            if c["status"] == "fail":
                agg["failed"] += 1
            elif c["status"] == "skip":
                agg["skipped"] += 1
        return by_name

    def to_json_obj(self) -> dict:
        return {
            "all_ok": self.all_ok,
            "summary": self.summary(),
            "failures": self.failures(),
            "skipped": self.skipped(),
        }


def _qgb_order_exists(delta, shelling_result, node_budget, order_cap) -> bool:
    """Exact existence of a facet order passing the quadratic GB test.

    Non-(S_2) complexes are not even quadratically presented, so no order can
    pass.  For shellable complexes the found shelling order is run through
    the full reduction engine (it must pass); otherwise every facet order is
    scanned with the valley criterion, which agrees with the engine test and
    makes factorial scans affordable.
    """
    if not serre_condition(delta, 2, FieldSpec(0)):
        return False
    if shelling_result.found:
        return quadratic_gb_test(delta, shelling_result.order)
    r = len(delta.facet_masks)
    total = 1
    for k in range(2, r + 1):
        total *= k
    if total > order_cap:
        raise BudgetExceeded(f"{total} facet orders exceed cap {order_cap}")
    if total <= 720:
        # small enough to keep the reduction engine in the loop directly
        return any(quadratic_gb_test(delta, p) for p in permutations(range(r)))
    return quadratic_gb_order_exists(delta)


def theorem_harness(
    complexes,
    characteristics=(0, 2, 3),
    node_budget: int = 10 ** 6,
    order_cap: int = 40320,
) -> HarnessReport:
    report = HarnessReport()
    for idx, delta in enumerate(complexes):
        name = f"#{idx}:{','.join(''.join(f) for f in delta.facets)}"
        ball = bier_ball(delta)
        hg = ball.gamma.h_vector()
        f = delta.f_vector()
        ok = all(
            (hg[i] if i < len(hg) else 0) == (f[i] if i < len(f) else 0)
            for i in range(max(len(hg), len(f)))
        )
        report.add("bier_h_equals_f", name, ok, f"h(ball)={hg} f={f}")

        d = delta.dim() + 1
        for char in characteristics:
            fld = FieldSpec(char)
            for r in range(2, d + 1):
                lhs, rhs = terai_yanagawa_sides(delta, fld, r)
                report.add(
                    "serre_vs_dual_linearity",
                    f"{name} char={char} r={r}",
                    lhs == rhs,
                    f"serre={lhs} dual={rhs}",
                )

        if not delta.is_pure():
            continue

        g1 = gamma_from_h(h_vector_r_delta(delta))
        g2 = gamma_closed_formula(delta.h_vector(), d)
        report.add("gamma_methods_agree", name, g1 == g2, f"{g1} vs {g2}")

        if delta.is_flag():
            shelling = find_shelling(delta, node_budget)
            if shelling.status == "budget_exceeded":
                report.skip(
                    "shellable_iff_qgb",
                    name,
                    f"shelling search budget ({node_budget} nodes) exhausted",
                )
                continue
            try:
                exists = _qgb_order_exists(delta, shelling, node_budget, order_cap)
            except BudgetExceeded as e:
                report.skip("shellable_iff_qgb", name, str(e))
                continue
            report.add(
                "shellable_iff_qgb",
                name,
                shelling.found == exists,
                f"shellable={shelling.found} qgb_order_exists={exists}",
            )
    return report
