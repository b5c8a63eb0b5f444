"""Command-line surface: analyze | present | gb | shelling | betti | gamma | verify.

Reports are canonical JSON on stdout (sorted keys, fixed separators), so a
fixed configuration and input give byte-identical output.  Exit codes:
0 ok, 2 parse error, 3 precondition violation, 4 budget or cap exhausted,
5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import betti as betti_mod
from . import complexes as cx
from .bier import bier_ball, bier_shelling_order, boundary_sphere
from .errors import (
    BadParams,
    BierKoszulError,
    BudgetError,
    ParseError,
    PreconditionError,
    UnsupportedFormat,
)
from .corpus import pure_flag_complexes, theorem_harness
from .fields import FieldSpec, QQ
from .gamma import gamma_closed_formula, gamma_from_h, verify_identities
from .groebner import (
    buchberger,
    find_shelling,
    is_shelling_order,
    parse_facet_order,
    quadratic_gb_test,
)
from .homology import is_cohen_macaulay, serre_profile
from .modbetti import module_betti_over_gamma
from .orders import compatible_term_order, random_weight_order
from .presentation import (
    artinian_reduction,
    export,
    h_vector_r_delta,
    is_quadratic,
    r_delta_presentation,
)
from .rings import mono_deg
from .series import koszul_verdict, poincare_from_hilbert, poincare_r_delta


@dataclass
class RunConfig:
    characteristics: tuple = (0, 2, 3, 5)
    i_max: int = 4
    degree_cap: int = 6
    node_budget: int = 10 ** 7
    seed: int = 0
    fmt: str = "json"
    sweep_limit: int = 500_000

    # analyze keeps its embedded shelling search short so output stays cheap
    analyze_budget: int = 200_000


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig()
    if args.chars:
        try:
            cfg.characteristics = tuple(int(c) for c in args.chars.split(","))
        except ValueError:
            raise ParseError(f"bad --chars value {args.chars!r}")
    if args.imax is not None:
        cfg.i_max = args.imax
    if args.degree_cap is not None:
        cfg.degree_cap = args.degree_cap
    if args.budget is not None:
        cfg.node_budget = args.budget
    if args.seed is not None:
        cfg.seed = args.seed
    if args.format:
        cfg.fmt = args.format
    return cfg


def _load_complex(spec: str) -> cx.SimplicialComplex:
    """A path to a JSON/text file, or builtin:name[:k=v,...]."""
    if spec.startswith("builtin:"):
        parts = spec.split(":", 2)
        name = parts[1]
        params = {}
        if len(parts) == 3 and parts[2]:
            for kv in parts[2].split(","):
                k, _, v = kv.partition("=")
                if not v:
                    raise ParseError(f"bad builtin parameter {kv!r}")
                params[k] = v
        try:
            return cx.builtin(name, **params)
        except BadParams as e:
            raise ParseError(str(e))
    path = Path(spec)
    if not path.exists():
        raise ParseError(f"no such complex file: {spec}")
    return cx.load_complex(str(path))


def _emit(obj, cfg: RunConfig, table_text=None) -> None:
    if cfg.fmt == "table" and table_text is not None:
        sys.stdout.write(table_text if table_text.endswith("\n") else table_text + "\n")
    else:
        sys.stdout.write(cx.canonical_json(obj))


# -- commands -------------------------------------------------------------------


def cmd_analyze(args) -> int:
    cfg = _config_from_args(args)
    delta = _load_complex(args.complex)
    out = {
        "vertices": list(delta.vertices),
        "facets": [list(f) for f in delta.facets],
        "pure": delta.is_pure(),
        "flag": delta.is_flag(),
        "dim": delta.dim(),
        "f_vector": list(delta.f_vector()),
        "reduced_euler_characteristic": delta.reduced_euler_characteristic(),
        "minimal_nonfaces": [list(f) for f in delta.minimal_nonfaces()],
        "warnings": [],
    }
    if not delta.is_pure():
        out["warnings"].append("complex is not pure: ring-level analysis skipped")
        _emit(out, cfg, _analyze_table(out))
        return 0
    out["h_vector"] = list(delta.h_vector())
    out["h_gorenstein"] = list(h_vector_r_delta(delta))
    pres = r_delta_presentation(delta)
    out["ambient_variables"] = pres.ambient_variable_count()
    out["generator_count"] = pres.generator_count()
    out["serre_profile"] = {
        str(c): r for c, r in serre_profile(delta, cfg.characteristics).items()
    }
    out["cohen_macaulay"] = {
        str(c): is_cohen_macaulay(delta, FieldSpec(c)) for c in cfg.characteristics
    }
    if delta.is_flag():
        out["quadratic"] = is_quadratic(delta, QQ)
        out["koszul"] = {
            str(c): koszul_verdict(delta, FieldSpec(c)).to_json_obj()
            for c in cfg.characteristics
        }
        search = find_shelling(delta, cfg.analyze_budget)
        out["shelling_search"] = {
            "status": search.status,
            "order": _order_labels(delta, search.order),
            "nodes": search.nodes,
        }
        if search.found:
            out["quadratic_groebner_basis"] = quadratic_gb_test(delta, search.order)
    else:
        out["warnings"].append("complex is not flag: Koszul analysis skipped")
    _emit(out, cfg, _analyze_table(out))
    return 0


def _order_labels(delta, order):
    if order is None:
        return None
    ring_labels = ["".join(delta.labels_of(delta.facet_masks[k])) for k in order]
    return ring_labels


def _analyze_table(out: dict) -> str:
    lines = [f"complex on {len(out['vertices'])} vertices, dim {out['dim']}"]
    for key in (
        "pure",
        "flag",
        "f_vector",
        "h_vector",
        "h_gorenstein",
        "generator_count",
        "ambient_variables",
        "quadratic",
        "serre_profile",
        "cohen_macaulay",
    ):
        if key in out:
            lines.append(f"  {key}: {out[key]}")
    if "koszul" in out:
        verdicts = {c: v["koszul"] for c, v in out["koszul"].items()}
        lines.append(f"  koszul: {verdicts}")
    if "shelling_search" in out:
        lines.append(f"  shelling_search: {out['shelling_search']['status']}")
    return "\n".join(lines)


def cmd_present(args) -> int:
    cfg = _config_from_args(args)
    delta = _load_complex(args.complex)
    pres = r_delta_presentation(delta, all_binomials=args.all_binomials)
    if args.artinian:
        pres = artinian_reduction(pres)
    fmt = {"m2": "macaulay2", "json": "json", "singular": "singular"}.get(cfg.fmt)
    if cfg.fmt == "table":
        text = export(pres, "macaulay2")
        sys.stdout.write(text)
        return 0
    if fmt is None:
        raise UnsupportedFormat(f"present cannot emit format {cfg.fmt!r}")
    sys.stdout.write(export(pres, fmt))
    return 0


def cmd_gb(args) -> int:
    cfg = _config_from_args(args)
    delta = _load_complex(args.complex)
    field = FieldSpec(cfg.characteristics[0])
    out = {}
    if args.sample:
        out["sampled_orders"] = _sample_universal(delta, args.sample, cfg, field)
        _emit(out, cfg)
        return 0
    if args.order:
        order = parse_facet_order(delta, args.order)
    else:
        search = find_shelling(delta, cfg.node_budget)
        if search.status == "budget_exceeded":
            raise BudgetError(f"shelling search exhausted budget ({search.nodes} nodes)")
        if not search.found:
            out["shellable"] = False
            out["quadratic_groebner_basis"] = False
            _emit(out, cfg)
            return 0
        order = search.order
    log = [] if args.log else None
    verdict = quadratic_gb_test(delta, order, field, log=log)
    out["order"] = _order_labels(delta, order)
    out["is_shelling_order"] = is_shelling_order(delta, order)
    out["quadratic_groebner_basis"] = verdict
    if args.log:
        out["log"] = log
    _emit(out, cfg)
    return 0


def _sample_universal(delta, n_orders, cfg, field):
    import random

    pres = r_delta_presentation(delta, all_binomials=True)
    gens = [p for _, p in pres.generators(field)]
    cap = 2 * max(mono_deg(m) for g in gens for m in g)
    rng = random.Random(cfg.seed)
    results = []
    for k in range(n_orders):
        order = random_weight_order(pres.ring, rng)
        res = buchberger(gens, order, field, degree_cap=cap, use_product_criterion=False)
        shapes_ok = all(
            sorted(g.values()) in ([field.one], sorted([field.one, field.neg(field.one)]))
            for g in res.basis
        )
        results.append(
            {
                "order": k,
                "complete": res.complete,
                "new_elements": res.new_elements,
                "monomials_and_pure_differences_only": shapes_ok,
            }
        )
    return results


def cmd_shelling(args) -> int:
    cfg = _config_from_args(args)
    delta = _load_complex(args.complex)
    if args.order:
        order = parse_facet_order(delta, args.order)
        _emit(
            {
                "order": _order_labels(delta, order),
                "is_shelling_order": is_shelling_order(delta, order),
            },
            cfg,
        )
        return 0
    search = find_shelling(delta, cfg.node_budget)
    out = {
        "status": search.status,
        "order": _order_labels(delta, search.order),
        "nodes": search.nodes,
    }
    if args.bier:
        ball = bier_ball(delta)
        out["bier_ball_facets"] = [list(f) for f in ball.gamma.facets]
        out["bier_shelling_order"] = [list(f) for f in bier_shelling_order(ball)]
        try:
            out["bier_boundary_facets"] = [
                list(f) for f in boundary_sphere(ball).facets
            ]
        except PreconditionError:
            out["bier_boundary_facets"] = None
    _emit(out, cfg)
    if search.status == "budget_exceeded":
        raise BudgetError(f"shelling search exhausted budget ({search.nodes} nodes)")
    return 0


def _load_ideal(path: str):
    try:
        obj = json.loads(Path(path).read_text())
        return obj["variables"], obj["generators"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        raise ParseError(f"bad ideal file {path}: {e}")


def cmd_betti(args) -> int:
    cfg = _config_from_args(args)
    field = FieldSpec(cfg.characteristics[0])
    if args.mode == "hochster":
        if args.ideal:
            variables, gens = _load_ideal(args.ideal)
        else:
            delta = _load_complex(args.complex)
            variables = delta.vertices
            gens = [tuple(g) for g in delta.alexander_dual_generators()]
        table = betti_mod.hochster_betti(gens, variables, field, i_max=args.table_imax)
        _emit(table.to_json_obj(), cfg, table.format_table())
        return 0
    if args.mode == "gamma-module":
        delta = _load_complex(args.complex)
        ball = bier_ball(delta)
        if args.module:
            obj = json.loads(Path(args.module).read_text())
            gens = obj["generators"] if isinstance(obj, dict) else obj
        else:
            from .bier import canonical_module_generators, y_label

            gens = [
                {y_label(v): 1 for v in g} for g in canonical_module_generators(delta)
            ]
        table = module_betti_over_gamma(
            ball.gamma, gens, cfg.i_max, field, sweep_limit=cfg.sweep_limit
        )
        _emit(table.to_json_obj(), cfg, table.format_table())
        return 0
    if args.mode == "poincare":
        delta = _load_complex(args.complex)
        h = h_vector_r_delta(delta)
        strand = poincare_from_hilbert(h, delta.n, cfg.i_max)
        out = {
            "h_gorenstein": list(h),
            "linear_strand": list(strand),
            "note": "strand values assume linearity through the window",
        }
        if args.sweep:
            res = poincare_r_delta(delta, field, cfg.i_max, cfg.sweep_limit)
            out["series"] = res.series.to_json_obj()
            out["module_regularity_bound"] = res.reg_bound
        _emit(out, cfg)
        return 0
    raise ParseError(f"unknown betti mode {args.mode!r}")


def cmd_gamma(args) -> int:
    cfg = _config_from_args(args)
    if args.h:
        try:
            h = tuple(int(x) for x in args.h.split(","))
        except ValueError:
            raise ParseError(f"bad --h value {args.h!r}")
        gamma = gamma_from_h(h)
        methods_agree = True
    else:
        delta = _load_complex(args.complex)
        h = h_vector_r_delta(delta)
        gamma = gamma_from_h(h)
        closed = gamma_closed_formula(delta.h_vector(), delta.dim() + 1)
        methods_agree = gamma == closed
    sign_ok = all(
        (g >= 0 if i % 2 == 1 else g <= 0) for i, g in enumerate(gamma) if i >= 1
    )
    _emit(
        {
            "h": list(h),
            "gamma": list(gamma),
            "methods_agree": methods_agree,
            "sign_pattern_ok": sign_ok,
        },
        cfg,
    )
    return 0


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    corpus_dir = Path(args.corpus) if args.corpus else Path("fixtures")
    complexes = []
    names = []
    if corpus_dir.is_dir():
        for p in sorted(corpus_dir.glob("*.json")):
            if p.name.startswith(("echo", "golden")):
                continue
            complexes.append(cx.load_complex(str(p)))
            names.append(p.name)
    for b in ("path3", "bier_example", "cross_polytope_boundary"):
        if b == "cross_polytope_boundary":
            complexes.append(cx.builtin(b, d=3))
        else:
            complexes.append(cx.builtin(b))
        names.append(f"builtin:{b}")
    if args.exhaustive:
        extra = pure_flag_complexes(args.exhaustive)
        complexes.extend(extra)
        names.extend(f"corpus:{i}" for i in range(len(extra)))

    # long searches (e.g. non-shellability by exhaustion) are opt-in via --budget
    harness_budget = args.budget if args.budget is not None else 200_000
    report = theorem_harness(
        complexes, characteristics=cfg.characteristics, node_budget=harness_budget
    )
    identities = verify_identities(12)
    report.add("gamma_identities", "r,n,m <= 12", identities["ok"])

    golden = corpus_dir / "golden_echo_tables.json"
    if golden.exists():
        ok, detail = _check_echo_golden(golden, field=FieldSpec(cfg.characteristics[0]),
                                        sweep_limit=cfg.sweep_limit)
        report.add("echo_golden_tables", golden.name, ok, detail)

    out = report.to_json_obj()
    out["complexes_checked"] = names
    _emit(out, cfg)
    return 0 if report.all_ok else 5


def _check_echo_golden(path: Path, field: FieldSpec, sweep_limit: int):
    spec = json.loads(path.read_text())
    delta = cx.from_json(json.dumps(spec["delta"]))
    gens = spec["module_generators"]
    left = betti_mod.hochster_betti(
        [{k: v for k, v in g.items()} for g in spec["polynomial_generators"]],
        spec["polynomial_variables"],
        field,
    )
    left_got = {f"{i},{j}": v for (i, j), v in left.entries.items()}
    right = module_betti_over_gamma(
        bier_ball(delta).gamma, gens, spec["i_max"], field, sweep_limit=sweep_limit
    )
    right_got = {f"{i},{j}": v for (i, j), v in right.entries.items()}
    ok = left_got == spec["left_table"] and right_got == spec["right_table"]
    detail = ""
    if not ok:
        diff_l = {
            k: (left_got.get(k), spec["left_table"].get(k))
            for k in set(left_got) | set(spec["left_table"])
            if left_got.get(k) != spec["left_table"].get(k)
        }
        diff_r = {
            k: (right_got.get(k), spec["right_table"].get(k))
            for k in set(right_got) | set(spec["right_table"])
            if right_got.get(k) != spec["right_table"].get(k)
        }
        detail = f"left diff {diff_l} right diff {diff_r}"
    return ok, detail


# -- argument plumbing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="bierkoszul",
        description="Gorenstein algebras from pure flag simplicial complexes",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, needs_complex=True):
        if needs_complex:
            p.add_argument(
                "complex",
                help="complex file (JSON or text) or builtin:name[:k=v,...]",
            )
        p.add_argument("--chars", help="comma-separated characteristics, e.g. 0,2,3,5")
        p.add_argument("--imax", type=int, help="homological truncation")
        p.add_argument("--degree-cap", dest="degree_cap", type=int)
        p.add_argument("--budget", type=int, help="search node budget")
        p.add_argument("--seed", type=int)
        p.add_argument(
            "--format", choices=["json", "table", "m2", "singular"], default=None
        )

    p = sub.add_parser("analyze", help="purity, flagness, Serre profile, Koszulness")
    common(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("present", help="emit the defining generators")
    common(p)
    p.add_argument("--artinian", action="store_true", help="substitute y_i -> x_i")
    p.add_argument(
        "--all-binomials",
        action="store_true",
        help="keep every facet-pair binomial instead of the filtered set",
    )
    p.set_defaults(fn=cmd_present)

    p = sub.add_parser("gb", help="quadratic Groebner basis test")
    common(p)
    p.add_argument("--order", help='facet order, e.g. "123,234,345"')
    p.add_argument("--search", action="store_true", help="search for a shelling order")
    p.add_argument("--log", action="store_true", help="include the reduction log")
    p.add_argument(
        "--sample",
        type=int,
        help="run Buchberger under this many seeded random weight orders",
    )
    p.set_defaults(fn=cmd_gb)

    p = sub.add_parser("shelling", help="check or search shelling orders")
    common(p)
    p.add_argument("--order", help="facet order to check")
    p.add_argument(
        "--bier", action="store_true", help="include the whiskered ball and its boundary"
    )
    p.set_defaults(fn=cmd_shelling)

    p = sub.add_parser("betti", help="Betti tables and Poincare data")
    common(p, needs_complex=False)
    p.add_argument("complex", nargs="?", help="complex file or builtin:...")
    p.add_argument("--ideal", help="ideal file (hochster mode)")
    p.add_argument(
        "--mode", choices=["hochster", "gamma-module", "poincare"], required=True
    )
    p.add_argument("--module", help="module generator file (gamma-module mode)")
    p.add_argument("--table-imax", dest="table_imax", type=int, default=None)
    p.add_argument("--sweep", action="store_true", help="poincare mode: full series")
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("gamma", help="gamma-vector report")
    common(p, needs_complex=False)
    p.add_argument("complex", nargs="?", help="complex file or builtin:...")
    p.add_argument("--h", help="explicit palindromic h-vector, e.g. 1,14,24,14,1")
    p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("verify", help="run the theorem harness over a corpus")
    common(p, needs_complex=False)
    p.add_argument("--corpus", help="directory of complex fixtures (default fixtures/)")
    p.add_argument(
        "--exhaustive",
        type=int,
        metavar="N",
        help="also enumerate all pure flag complexes on up to N vertices",
    )
    p.set_defaults(fn=cmd_verify)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # commands that accept an optional complex still need one from somewhere
    if args.command in ("betti",) and not args.complex and not args.ideal:
        sys.stderr.write("error: need a complex or --ideal\n")
        return 2
    if args.command == "gamma" and not args.complex and not args.h:
        sys.stderr.write("error: need a complex or --h\n")
        return 2
    try:
        return args.fn(args)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return 2
    except PreconditionError as e:
        sys.stderr.write(f"precondition violated: {e}\n")
        return 3
    except BudgetError as e:
        sys.stderr.write(f"budget exhausted: {e}\n")
        return 4
    except BierKoszulError as e:
        sys.stderr.write(f"error: {e}\n")
        return 5


if __name__ == "__main__":
    sys.exit(main())
