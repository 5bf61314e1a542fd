"""Command-line entry point.

Every subcommand accepts --json and then emits exactly one JSON object on
stdout (schema tag "lhom/1").  Exit codes: 0 success, 1 for a negative
decision answer, 2 usage or input-format errors, 3 exhausted budgets or
failed certifications.  LHOM_NODE_BUDGET overrides the oracle node budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import formats, generators, invariants, kernels, reductions
from .bitset import bit_list, mask_of
from .errors import BudgetExceededError, CertificationError, FormatError
from .forbid import ForbidRequest, forbid
from .graphs import Graph, is_incomparable_set
from .solver import decide, node_budget_from_env

SCHEMA = "lhom/1"


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False) or getattr(args, "stats_json", False):
        payload = {"schema": SCHEMA, **payload}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _load_target(path: str) -> tuple[Graph, dict]:
    return formats.parse_hgraph(_read(path))


def _pmap(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _cmd_invariants(args) -> int:
    hg, hints = _load_target(args.hgraph)
    report = invariants.classify(hg, cycle_power=hints.get("cycle_power"))
    nba = invariants.find_non_bi_arc_witness(hg)
    report["non_bi_arc_witness"] = None if nba is None else list(nba.walk)
    human = (f"c_star={report['c_star']} d_star={report['d_star']} "
             f"delta={report['delta']} recommended_degree="
             f"{report['recommended_degree']} ({report['recommended_by']})")
    _emit(args, report, human)
    return 0


def _cmd_solve(args) -> int:
    hg, _ = _load_target(args.target)
    inst, h = formats.parse_instance(_read(args.instance))
    if h != hg.n:
        raise FormatError("instance and target disagree on the color count")
    yes, witness = decide(inst, hg, node_budget=node_budget_from_env())
    payload = {"answer": yes}
    if yes and args.witness:
        payload["witness"] = list(witness)
    human = "yes" if yes else "no"
    if yes and args.witness:
        human += " " + " ".join(f"{v}->{c}" for v, c in enumerate(witness))
    _emit(args, payload, human)
    return 0 if yes else 1


def _kernel_report(args, hg, hints, inst) -> kernels.KernelReport:
    return kernels.kernelize(inst, hg, args.method,
                             cycle_power=hints.get("cycle_power"))


def _cmd_kernel(args) -> int:
    hg, hints = _load_target(args.target)
    inst, h = formats.parse_instance(_read(args.instance))
    if h != hg.n:
        raise FormatError("instance and target disagree on the color count")
    report = _kernel_report(args, hg, hints, inst)
    if args.emit:
        comments = (f"method={report.method} degree={report.degree_used} "
                    f"vin={report.vertices_in} vout={report.vertices_out}",)
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(formats.write_instance(report.kernel, hg.n, comments))
    payload = {
        "method": report.method, "degree": report.degree_used,
        "vertices_in": report.vertices_in, "edges_in": report.edges_in,
        "vertices_out": report.vertices_out, "edges_out": report.edges_out,
        "bound_k": report.bound_k, "bound_formula_ok": report.bound_formula_ok,
        "constraints_total": report.constraints_total,
        "constraints_retained": report.constraints_retained,
    }
    human = (f"{report.method}: {report.vertices_in}v/{report.edges_in}e -> "
             f"{report.vertices_out}v/{report.edges_out}e "
             f"(degree {report.degree_used}, k={report.bound_k})")
    _emit(args, payload, human)
    return 0


def _cmd_verify_kernel(args) -> int:
    hg, hints = _load_target(args.target)
    inst, h = formats.parse_instance(_read(args.instance))
    if h != hg.n:
        raise FormatError("instance and target disagree on the color count")
    report = _kernel_report(args, hg, hints, inst)
    budget = node_budget_from_env()
    before, _ = decide(inst, hg, node_budget=budget)
    after, _ = decide(report.kernel, hg, node_budget=budget)
    agree = before == after
    _emit(args, {"input": before, "kernel": after, "agree": agree},
          f"input={before} kernel={after} agree={agree}")
    return 0 if agree else 1


def _parse_colors(text: str) -> list[int]:
    items = text.replace(",", " ").split()
    return [int(x) for x in items]


def _default_list_for(hg: Graph, color: int) -> int:
    mask = 1 << color
    for v in range(hg.n):
        if v == color:
            continue
        trial = mask | 1 << v
        if is_incomparable_set(hg, trial):
            mask = trial
    return mask


def _cmd_forbid(args) -> int:
    hg, hints = _load_target(args.target)
    colors = tuple(_parse_colors(args.tuple))
    l_mask = mask_of(_parse_colors(args.list))
    if args.lists:
        lists = tuple(mask_of(_parse_colors(part))
                      for part in args.lists.split(";"))
    else:
        lists = tuple(_default_list_for(hg, c) for c in colors)
    verts = tuple(range(len(colors)))
    req = ForbidRequest(hg, l_mask, lists, verts, colors)
    result = forbid(req, cycle_power=hints.get("cycle_power"))
    if args.degree is not None and result.degree > args.degree:
        raise CertificationError(
            f"no certified polynomial of degree <= {args.degree}; "
            f"best construction has degree {result.degree}")
    payload = {"method": result.method, "degree": result.degree,
               "polynomial": str(result.poly)}
    _emit(args, payload, f"{result.poly}  (degree {result.degree}, "
                         f"{result.method})")
    return 0


def _cmd_reduce_sat(args) -> int:
    hg, _ = _load_target(args.target)
    nvars, clauses = formats.parse_dimacs(_read(args.cnf))
    if args.lbs_order is not None:
        lbs = invariants.find_lbs(hg, args.lbs_order)
        if lbs is None:
            raise FormatError(f"no lower bound structure of order {args.lbs_order}")
    else:
        _, lbs = invariants.compute_d_star(hg)
    if lbs is None or lbs.order < 3:
        raise FormatError("target admits no structure of order >= 3; "
                          "pick another target or pass --lbs-order")
    inst = reductions.reduce_sat(nvars, clauses, hg, lbs)
    comments = (f"reduce-sat vars={nvars} clauses={len(clauses)} "
                f"order={lbs.order}",)
    text = formats.write_instance(inst, hg.n, comments)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(args, {"vertices": inst.graph.n,
                     "cover_size": len(bit_list(inst.cover)),
                     "out": args.out},
              f"wrote {args.out}: {inst.graph.n} vertices, "
              f"cover {len(bit_list(inst.cover))}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gadget_check(args) -> int:
    hg, _ = _load_target(args.target)
    d, lbs = invariants.compute_d_star(hg)
    if lbs is None or d < 3:
        raise FormatError("gadgets need a lower bound structure of order >= 3")
    jobs = [("NEQ", (i,)) for i in range(d)]
    jobs += [("COMP", (i, j)) for i in range(d) for j in range(d) if i != j]

    def run(job):
        kind, params = job
        if kind == "NEQ":
            g = reductions.build_neq(hg, lbs, *params)
        else:
            g = reductions.build_comp(hg, lbs, *params)
        return {"kind": kind, "params": list(params), "vertices": g.graph.n,
                "certified": True}

    results = _pmap(run, jobs, args.threads)
    vg = reductions.build_variable_gadget(hg, lbs)
    results.append({"kind": "VAR", "params": [], "vertices": vg.graph.n,
                    "certified": True})
    payload = {"order": d, "gadgets": results}
    _emit(args, payload,
          f"order {d}: {len(results)} gadgets certified "
          f"({len(results) - 1} pair gadgets, variable gadget "
          f"{vg.graph.n} vertices)")
    return 0


def _cmd_gen(args) -> int:
    if args.what == "hgraph":
        if args.kind == "cycle-power":
            if args.k is None or args.p is None:
                raise FormatError("cycle-power needs --k and --p")
            g = generators.gen_cycle_power(args.k, args.p)
            comments = (f"gen: cycle-power k={args.k} p={args.p}",)
        else:
            if args.r is None:
                raise FormatError("subdivided-star needs --r")
            g = generators.gen_subdivided_star(args.r)
            comments = (f"gen: subdivided-star r={args.r}",)
        text = formats.write_hgraph(g, comments)
    else:
        hg, _ = _load_target(args.target)
        inst = generators.gen_instance(hg, args.n, args.k, args.seed, args.mode)
        comments = (f"gen: instance seed={args.seed} mode={args.mode}",)
        text = formats.write_instance(inst, hg.n, comments)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lhom",
        description="List homomorphism kernelization toolkit")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker bound for enumeration-heavy subcommands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="invariants and kernel degrees")
    p.add_argument("hgraph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("solve", help="decide list-homomorphism existence")
    p.add_argument("instance")
    p.add_argument("--target", required=True)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("kernel", help="shrink an instance")
    p.add_argument("instance")
    p.add_argument("--target", required=True)
    p.add_argument("--method", required=True, choices=["marking", "poly"])
    p.add_argument("--emit")
    p.add_argument("--json", action="store_true")
    p.add_argument("--stats-json", dest="stats_json", action="store_true")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("verify-kernel", help="oracle check input vs kernel")
    p.add_argument("instance")
    p.add_argument("--target", required=True)
    p.add_argument("--method", required=True, choices=["marking", "poly"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify_kernel)

    p = sub.add_parser("forbid", help="certified forbidding polynomial")
    p.add_argument("--target", required=True)
    p.add_argument("--list", required=True, help="target list colors")
    p.add_argument("--tuple", required=True, help="forbidden colors")
    p.add_argument("--lists", help="semicolon-separated candidate lists")
    p.add_argument("--degree", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_forbid)

    p = sub.add_parser("reduce-sat", help="CNF to list-homomorphism instance")
    p.add_argument("cnf")
    p.add_argument("--target", required=True)
    p.add_argument("--lbs-order", dest="lbs_order", type=int)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_reduce_sat)

    p = sub.add_parser("gadget-check", help="build and certify all gadgets")
    p.add_argument("--target", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_gadget_check)

    p = sub.add_parser("gen", help="write seeded graphs and instances")
    gsub = p.add_subparsers(dest="what", required=True)
    g = gsub.add_parser("hgraph")
    g.add_argument("kind", choices=["cycle-power", "subdivided-star"])
    g.add_argument("--k", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)
    g = gsub.add_parser("instance")
    g.add_argument("--target", required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--mode", default="random",
                   choices=["random", "planted-yes"])
    g.add_argument("--out")
    g.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceededError, CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
