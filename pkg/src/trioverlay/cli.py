"""Experiment runner: build, verify, measure, and sweep instances.

Subcommands
-----------
build     derive or take explicit parameters, build one overlay graph, write it
hyper     same for the triple-system variant (desk scale only)
verify    reload an instance file and check its hard invariants
alpha     independence-number bounds for an instance file
diagnose  concentration report and k-set classification for a built instance
sweep     CSV comparison of constructions over a grid of n and seeds

Exit codes: 0 ok, 1 invariant/I-O violation, 2 usage error.  Reports print as
aligned text by default; ``--json`` switches to the full JSON record.  Any
subcommand accepts ``--config FILE`` with ``key=value`` lines mirroring the
flags; command-line flags override the file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .analysis import classify_sets, concentration_report, f_function, sample_k_sets
from .baselines import edge_deletion_baseline, triangle_free_process
from .construction import BaseGraph, Placement, apply_deletion_rule, build, \
    conormal_product, induce_final_graph
from .graphview import count_triangles
from .hypergraph import extract_link, hyper_product, inject_hyper, \
    s4_reduction, sample_base_3graphs, verify_s4_free
from .independence import DEFAULT_BUDGET, independence_exact, independence_greedy
from .params import Params, derive_params, explicit_params, feasible_params
from .serialize import graph_record, read_instance, triple_record, write_instance

__all__ = ["main"]

VERSION = "0.1.0"
SWEEP_SCHEMA = f"# trioverlay sweep schema=1 version={VERSION}"


class _Usage(Exception):
    pass


def _resolve_params(args) -> Params:
    if args.explicit:
        for name in ("N", "p", "n", "k"):
            if getattr(args, name) is None:
                raise _Usage(f"--explicit requires --{name}")
        return explicit_params(n=args.n, N=args.N, p=args.p, k=args.k,
                               epsilon=args.eps)
    if args.n is None:
        raise _Usage("--n is required (or use --explicit)")
    kw = {"epsilon": args.eps, "beta": args.beta}
    if args.kappa is not None:
        kw["kappa"] = args.kappa
    if getattr(args, "clamp", False):
        return feasible_params(args.n, **kw)
    return derive_params(args.n, **kw)


def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(_plain(report), sort_keys=True, indent=1))
        return
    for line in _render(report):
        print(line)


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _render(report: dict, indent: str = "") -> list[str]:
    lines = []
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_render(val, indent + "  "))
        elif isinstance(val, (list, tuple)) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.extend(_render(item, indent + "  "))
                lines.append(f"{indent}  -")
            lines.pop()
        else:
            lines.append(f"{indent}{key}: {_plain(val)}")
    return lines


# ---------------------------------------------------------------- build


def cmd_build(args) -> int:
    params = _resolve_params(args)
    placed = build(params, args.seed)
    rec = graph_record(placed)
    out = args.out or f"overlay_n{params.n}_seed{args.seed}.edges"
    files = write_instance(rec, out, fmt=args.format)
    report = {
        "command": "build", "version": VERSION, "files": files,
        "seed": args.seed, "params": params.to_dict(), "stats": placed.stats,
    }
    _emit(report, args.json)
    return 0


# ---------------------------------------------------------------- hyper


def cmd_hyper(args) -> int:
    params = _resolve_params(args)
    hr, hb = sample_base_3graphs(params, args.seed)
    h1 = hyper_product(hr, hb)
    h2 = inject_hyper(h1, params, args.seed)
    h3 = s4_reduction(h2)
    ok = verify_s4_free(h3)
    stats = {
        "base_red_triples": hr.edge_count(),
        "base_blue_triples": hb.edge_count(),
        "product_triples": h1.edge_count(),
        "induced_triples": h2.edge_count(),
        "reduced_triples": h3.edge_count(),
        "reduced_red": h3.count_with(1),
        "reduced_blue": h3.count_with(2),
        "s4_free": ok,
    }
    rec = triple_record(h3, params=params, seed=args.seed, stats=stats)
    out = args.out or f"hyper_n{params.n}_seed{args.seed}.triples"
    files = write_instance(rec, out, fmt=args.format)
    report = {"command": "hyper", "version": VERSION, "files": files,
              "seed": args.seed, "params": params.to_dict(), "stats": stats}
    _emit(report, args.json)
    if not ok:
        print("error: reduction left a forbidden star", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- verify


def _placed_from_record(rec):
    """Rebuild the full instance from stored provenance (bases + placement)."""
    if (rec.params is None or rec.placement_rows is None
            or rec.base_red_edges is None or rec.base_blue_edges is None):
        return None
    par = rec.params
    gr = BaseGraph.from_edges("red", par.N, rec.base_red_edges)
    gb = BaseGraph.from_edges("blue", par.N, rec.base_blue_edges)
    g2 = apply_deletion_rule(conormal_product(gr, gb), gr, gb)
    placement = Placement(par.N, rec.placement_rows, rec.placement_cols)
    return induce_final_graph(g2, placement, params=par, seed=rec.seed,
                              base_red=gr, base_blue=gb)


def _verify_graph(rec, report: dict) -> bool:
    g = rec.graph()
    tri = count_triangles(g)
    delta = g.max_degree()
    alpha = independence_greedy(g, restarts=1, seed=0)
    checks = {
        "triangle_free": tri == 0,
        "alpha_at_least_max_degree": alpha.value >= delta,
    }
    report["triangles"] = tri
    report["max_degree"] = delta
    report["alpha_greedy"] = alpha.value
    if rec.params is not None:
        checks["params_roundtrip"] = \
            Params.from_dict(rec.params.to_dict()) == rec.params
        checks["n_matches_params"] = rec.params.n == rec.n
    placed = _placed_from_record(rec)
    if placed is not None:
        rebuilt = placed.graph.edge_array()
        checks["edges_rederivable"] = (
            rebuilt.shape == rec.edges.shape and bool((rebuilt == rec.edges).all()))
        conc = concentration_report(placed.base_red, placed.base_blue,
                                    placed.placement, placed.params)
        # soft: concentration is a trend, not an invariant
        report["concentration"] = conc.to_dict()
    report["checks"] = checks
    return all(checks.values())


def _verify_triples(rec, report: dict) -> bool:
    h = rec.system()
    ok = verify_s4_free(h)
    links = [extract_link(h, v) for v in range(h.order)]
    sizes = [lk.edge_count() for lk in links]
    report["links"] = {
        "nonempty": sum(1 for s in sizes if s),
        "max_edges": max(sizes, default=0),
        "total_edges": sum(sizes),
        "triple_count_times_3": 3 * h.edge_count(),
    }
    checks = {
        "s4_free": ok,
        "link_edge_identity": sum(sizes) == 3 * h.edge_count(),
    }
    if rec.params is not None:
        checks["params_roundtrip"] = \
            Params.from_dict(rec.params.to_dict()) == rec.params
    report["checks"] = checks
    return all(checks.values())


def cmd_verify(args) -> int:
    rec = read_instance(args.path)
    report = {"command": "verify", "version": VERSION, "path": args.path,
              "kind": rec.kind, "n": rec.n, "seed": rec.seed,
              "params": None if rec.params is None else rec.params.to_dict()}
    if rec.kind == "graph":
        ok = _verify_graph(rec, report)
    else:
        ok = _verify_triples(rec, report)
    report["ok"] = ok
    _emit(report, args.json)
    return 0 if ok else 1


# ---------------------------------------------------------------- alpha


def cmd_alpha(args) -> int:
    rec = read_instance(args.path)
    if rec.kind != "graph":
        raise _Usage("alpha runs on graph instances")
    g = rec.graph()
    report = {"command": "alpha", "version": VERSION, "path": args.path,
              "n": rec.n, "m": g.m, "seed": rec.seed,
              "params": None if rec.params is None else rec.params.to_dict()}
    norm = math.sqrt(rec.n * math.log(rec.n)) if rec.n > 1 else float("nan")
    if args.method in ("greedy", "both"):
        res = independence_greedy(g, restarts=args.restarts, seed=0)
        report["greedy"] = {"value": res.value, "ratio": res.value / norm,
                            "certificate": sorted(res.certificate)}
    if args.method in ("exact", "both"):
        res = independence_exact(g, budget=args.budget)
        report["exact"] = {"value": res.value, "optimal": res.optimal,
                           "nodes": res.nodes, "ratio": res.value / norm,
                           "certificate": sorted(res.certificate)}
    _emit(report, args.json)
    return 0


# ---------------------------------------------------------------- diagnose


def cmd_diagnose(args) -> int:
    rec = read_instance(args.path)
    if rec.kind != "graph":
        raise _Usage("diagnose runs on graph instances")
    placed = _placed_from_record(rec)
    if placed is None:
        print("error: instance lacks provenance (params/placement/base edges);"
              " rebuild with the build subcommand", file=sys.stderr)
        return 1
    conc = concentration_report(placed.base_red, placed.base_blue,
                                placed.placement, placed.params)
    sets = sample_k_sets(placed, n_random=args.sets, seed=args.seed,
                         adversarial=not args.no_adversarial)
    rows = []
    for label, I in sets:
        cl = classify_sets(I, placed)
        entry = {"set": label}
        entry.update(cl.to_dict())
        entry["f_value"] = float(f_function(cl.proj_rows, cl.proj_cols,
                                            placed.params))
        rows.append(entry)
    report = {"command": "diagnose", "version": VERSION, "path": args.path,
              "seed": rec.seed, "params": placed.params.to_dict(),
              "concentration": conc.to_dict(), "k_sets": rows,
              "all_bounds_pass": conc.all_passed}
    _emit(report, args.json)
    return 0


# ---------------------------------------------------------------- sweep


def _sweep_cell(construction: str, n: int, seed: int, args):
    norm = math.sqrt(n * math.log(n))
    diag_parts = []
    if construction == "overlay":
        par = feasible_params(n, epsilon=args.eps, beta=args.beta)
        placed = build(par, seed)
        g = placed.graph
        conc = concentration_report(placed.base_red, placed.base_blue,
                                    placed.placement, par)
        npass = sum(1 for c in conc.checks if c.passed)
        diag_parts.append(f"mode={par.mode}")
        diag_parts.append(f"p={par.p:.6g}")
        diag_parts.append(f"conc={npass}/{len(conc.checks)}")
    elif construction == "edge-deletion":
        par = feasible_params(n, epsilon=args.eps, beta=args.beta)
        res = edge_deletion_baseline(n, par.p, seed)
        g = res.graph
        diag_parts.append(f"p={par.p:.6g}")
        diag_parts.append(f"deleted={res.stats['edges_deleted']}")
    elif construction == "process":
        res = triangle_free_process(n, seed, max_steps=args.max_steps)
        g = res.graph
        diag_parts.append(f"steps={res.stats['steps']}")
        diag_parts.append(f"maximal={res.stats['maximal']}")
    else:
        raise _Usage(f"unknown construction {construction!r}")

    restarts = 1 if n >= 5000 else 2
    alpha = independence_greedy(g, restarts=restarts, seed=0)
    row = {
        "construction": construction, "n": n, "seed": seed,
        "edges": g.m, "max_degree": g.max_degree(),
        "alpha_greedy": alpha.value, "alpha_exact": "",
        "ratio_greedy": repr(alpha.value / norm),
        "diag": ";".join(diag_parts),
    }
    if args.exact:
        res = independence_exact(g, budget=args.budget)
        if res.optimal:
            row["alpha_exact"] = res.value
        else:
            row["diag"] += f";exact_lb={res.value}"
    return row


def cmd_sweep(args) -> int:
    if args.n is None:
        raise _Usage("sweep needs --n n1,n2,...")
    try:
        ns = [int(x) for x in str(args.n).split(",") if x != ""]
        constructions = [c.strip() for c in args.constructions.split(",") if c.strip()]
    except ValueError as exc:
        raise _Usage(f"bad sweep grid: {exc}") from None
    if not ns or not constructions:
        raise _Usage("sweep needs --n n1,n2,... and --constructions c1,c2,...")
    fields = ["construction", "n", "seed", "edges", "max_degree",
              "alpha_greedy", "alpha_exact", "ratio_greedy", "diag"]
    out = args.out or "sweep.csv"
    out_dir = os.path.dirname(os.path.abspath(out))
    if not os.path.isdir(out_dir):
        raise FileNotFoundError(f"output directory does not exist: {out_dir}")
    lines = [SWEEP_SCHEMA, ",".join(fields)]
    for construction in constructions:
        for n in ns:
            for seed in range(args.seeds):
                row = _sweep_cell(construction, n, seed, args)
                lines.append(",".join(str(row[f]) for f in fields))
                print(lines[-1])
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"# wrote {out}")
    return 0


# ---------------------------------------------------------------- wiring


def _add_common(sp):
    sp.add_argument("--config", help="key=value file; flags override it")
    sp.add_argument("--json", action="store_true",
                    help="print the JSON report instead of a table")


def _add_param_flags(sp):
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--kappa", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--explicit", action="store_true",
                    help="pass N, p, k directly instead of deriving them")
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--clamp", action="store_true",
                    help="widen N to the smallest injectable grid if needed")
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("edgelist", "json"), default="edgelist")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trioverlay",
        description="two-layer overlay constructions of triangle-free graphs")
    sub = parser.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("build", help="build one overlay graph instance")
    _add_param_flags(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("hyper", help="build one reduced triple system")
    _add_param_flags(sp)
    _add_common(sp)
    sp.set_defaults(func=cmd_hyper)

    sp = sub.add_parser("verify", help="check invariants of an instance file")
    sp.add_argument("path")
    _add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("alpha", help="independence bounds for an instance file")
    sp.add_argument("path")
    sp.add_argument("--method", choices=("greedy", "exact", "both"),
                    default="greedy")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--restarts", type=int, default=3)
    _add_common(sp)
    sp.set_defaults(func=cmd_alpha)

    sp = sub.add_parser("diagnose",
                        help="concentration + k-set classification report")
    sp.add_argument("path")
    sp.add_argument("--sets", type=int, default=5,
                    help="random k-sets to classify")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-adversarial", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=cmd_diagnose)

    sp = sub.add_parser("sweep", help="CSV comparison across constructions")
    sp.add_argument("--n", default=None,
                    help="comma-separated n grid, e.g. 2000,5000")
    sp.add_argument("--seeds", type=int, default=3,
                    help="seeds 0..S-1 per cell")
    sp.add_argument("--constructions", default="overlay,edge-deletion")
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--exact", action="store_true",
                    help="also run the exact solver per cell")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--max-steps", type=int, default=None)
    sp.add_argument("--out", default=None)
    _add_common(sp)
    sp.set_defaults(func=cmd_sweep)
    return parser


_FLAG_KEYS = {"explicit", "clamp", "json", "exact", "no-adversarial",
              "no_adversarial"}


def _apply_config(argv: list[str]) -> list[str]:
    """Splice config-file pairs in front of the explicit flags (last wins)."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise _Usage("--config needs a file path")
    path = argv[i + 1]
    injected: list[str] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _Usage(f"bad config line {raw.rstrip()!r}: want key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            flag = "--" + key.replace("_", "-") if key in _FLAG_KEYS else "--" + key
            if key in _FLAG_KEYS:
                if val.lower() in ("1", "true", "yes", "on"):
                    injected.append(flag)
                elif val.lower() not in ("0", "false", "no", "off"):
                    raise _Usage(f"bad boolean {val!r} for config key {key!r}")
            else:
                injected.extend((flag, val))
    # keep the subcommand first, then config pairs, then explicit flags
    head, rest = argv[:1], argv[1:]
    return head + injected + rest


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config(argv)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"usage error: cannot read config: {exc}", file=sys.stderr)
        return 2
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError, OSError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
