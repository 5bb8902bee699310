"""Command-line front end.

Verb-style subcommands over the library: classification, threshold values,
regime tables, witness constructions, and seeded experiments. Output is JSON
(or a plain table for regime verbs) on stdout; diagnostics go to stderr.

Exit codes: 0 success, 1 domain error, 2 budget exceeded, 3 parse or usage
error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from .errors import Budget, BudgetExceededError, DomainError, GraphFormatError
from .graphs import Graph
from .formats import parse_edge_list, parse_graph6, write_graph6
from .exact import chromatic_number, two_density
from .classify import (
    decomposition_family,
    has_forest_in_decomposition_family,
    is_cloud_forest,
    is_near_acyclic,
    is_r_near_acyclic,
    is_thundercloud_forest,
)
from .thresholds import (
    chromatic_threshold,
    chromatic_threshold_star,
    regime_table,
    regime_table_star,
)
from .constructions import ZykovSpec, make_template, search_zykov_witness, zykov
from .harness import (
    GnpParams,
    RNG_NAME,
    check_ambient_properties,
    parse_probability,
    run_template_experiment,
    sample_gnp,
)

SCHEMA = "1"

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_graph_input(sub):
    sub.add_argument("--graph6", help="inline graph6 string")
    sub.add_argument("--edge-list", help="path to an edge-list file")
    sub.add_argument("--stdin", action="store_true",
                     help="read a graph6 string from standard input")


def _add_common(sub, graph_input=True):
    if graph_input:
        _add_graph_input(sub)
    sub.add_argument("--budget", type=int, default=None,
                     help="node budget for exact searches")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--trials", type=int, default=100)
    sub.add_argument("--format", choices=["json", "table"], default="json")


def build_parser() -> _Parser:
    parser = _Parser(prog="threshold-lab", description=__doc__)
    subs = parser.add_subparsers(dest="verb", required=True)
    for verb in ["classify", "threshold", "threshold-star", "regimes", "regimes-star"]:
        _add_common(subs.add_parser(verb))

    z = subs.add_parser("zykov", help="build a modified Zykov graph")
    _add_common(z, graph_input=False)
    z.add_argument("--trees", required=True,
                   help="comma-separated graph6 codes of the trees")
    z.add_argument("--r", type=int, default=3)
    z.add_argument("--t", type=int, default=1)

    zs = subs.add_parser("zykov-search", help="bounded witness search")
    _add_common(zs)
    zs.add_argument("--max-l", type=int, default=2)
    zs.add_argument("--max-t", type=int, default=3)
    zs.add_argument("--max-tree-size", type=int, default=4)

    sa = subs.add_parser("sample", help="sample one G(n,p)")
    _add_common(sa, graph_input=False)
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--p", required=True)

    ex = subs.add_parser("experiment", help="two-round template embedding trials")
    _add_common(ex, graph_input=False)
    ex.add_argument("--config", help="JSON config file (flags override)")
    ex.add_argument("--n", type=int)
    ex.add_argument("--p")
    ex.add_argument("--k", type=int)
    ex.add_argument("--gamma")
    ex.add_argument("--d")

    au = subs.add_parser("audit", help="ambient pseudorandomness report")
    _add_common(au)
    au.add_argument("--p", required=True)
    au.add_argument("--set-size-cap", type=int, default=3)
    au.add_argument("--samples", type=int, default=200)
    return parser


def _load_graph(args) -> Graph:
    sources = [args.graph6 is not None, args.edge_list is not None,
               bool(getattr(args, "stdin", False))]
    if sum(sources) != 1:
        raise _UsageError("exactly one graph input required "
                          "(--graph6, --edge-list, or --stdin)")
    if args.graph6 is not None:
        return parse_graph6(args.graph6.encode("ascii"))
    if args.edge_list is not None:
        with open(args.edge_list, "rb") as fh:
            return parse_edge_list(fh.read())
    return parse_graph6(sys.stdin.buffer.read().strip())


def _budget(args) -> Optional[Budget]:
    limit = args.budget
    env = os.environ.get("THRESHOLD_LAB_BUDGET")
    if limit is None and env is not None:
        try:
            limit = int(env)
        except ValueError:
            raise _UsageError("THRESHOLD_LAB_BUDGET must be an integer")
    return None if limit is None else Budget(limit)


def _opt(witness) -> Optional[dict]:
    return None if witness is None else witness.to_json()


def _cmd_classify(args, budget) -> dict:
    h = _load_graph(args)
    chi = chromatic_number(h, budget)
    cloud = is_cloud_forest(h, budget)
    thunder = is_thundercloud_forest(h, budget)
    near = is_near_acyclic(h, budget)
    out = {
        "chromatic_number": chi,
        "cloud_forest": cloud is not None,
        "thundercloud_forest": thunder is not None,
        "near_acyclic": near is not None,
        "witnesses": {
            "cloud_forest": _opt(cloud),
            "thundercloud_forest": _opt(thunder),
            "near_acyclic": _opt(near),
        },
    }
    if chi >= 3:
        forest = has_forest_in_decomposition_family(h, budget)
        out["forest_in_decomposition_family"] = forest is not None
        out["witnesses"]["forest_in_decomposition_family"] = _opt(forest)
        r_near = is_r_near_acyclic(h, chi, budget)
        out["r_near_acyclic"] = r_near is not None
        if r_near is not None:
            removals, witness = r_near
            out["witnesses"]["r_near_acyclic"] = {
                "removals": removals.to_json(), "near_acyclic": witness.to_json(),
            }
        out["decomposition_family_size"] = len(decomposition_family(h, budget))
    else:
        out["forest_in_decomposition_family"] = None
        out["r_near_acyclic"] = None
    return out


def _cmd_threshold(args, budget) -> dict:
    h = _load_graph(args)
    value, witness = chromatic_threshold(h, budget)
    return {"delta_chi": str(value.lo), "value": value.to_json(), "witness": witness}


def _cmd_threshold_star(args, budget) -> dict:
    h = _load_graph(args)
    value, witness = chromatic_threshold_star(h, budget)
    return {"delta_chi_star": str(value.lo), "value": value.to_json(),
            "witness": witness}


def _regime_payload(table) -> dict:
    return table.to_json()


def _regime_lines(table) -> str:
    width = max(len(r.describe_range()) for r in table.rows)
    lines = []
    for row in table.rows:
        v = row.value
        shown = str(v.lo) if v.kind == "Exact" else (
            f"[{v.lo}, {v.hi}]" if v.kind == "Interval" else "unknown")
        lines.append(f"{row.describe_range():<{width}}  {shown}  ({row.source})")
    return "\n".join(lines)


def _cmd_regimes(args, budget) -> dict:
    table = regime_table(_load_graph(args), budget)
    return {**_regime_payload(table), "_table_text": _regime_lines(table)}


def _cmd_regimes_star(args, budget) -> dict:
    table = regime_table_star(_load_graph(args), budget)
    return {**_regime_payload(table), "_table_text": _regime_lines(table)}


def _cmd_zykov(args, budget) -> dict:
    trees = tuple(parse_graph6(code.strip().encode("ascii"))
                  for code in args.trees.split(","))
    spec = ZykovSpec(trees, args.r, args.t)
    built = zykov(spec)
    return {
        "spec": spec.to_json(),
        "graph6": write_graph6(built.graph).decode("ascii"),
        "vertices": built.graph.n,
        "edges": built.graph.edge_count(),
        **built.roles_json(),
    }


def _cmd_zykov_search(args, budget) -> dict:
    h = _load_graph(args)
    found = search_zykov_witness(h, args.max_l, args.max_t,
                                 args.max_tree_size, budget)
    if found is None:
        return {"found": False, "note": "not found within bounds"}
    spec, emb = found
    return {"found": True, "spec": spec.to_json(), "embedding": list(emb.mapping)}


def _cmd_sample(args, budget) -> dict:
    params = GnpParams(args.n, parse_probability(args.p), args.seed)
    g = sample_gnp(params)
    return {"params": params.to_json(),
            "graph6": write_graph6(g).decode("ascii"),
            "edges": g.edge_count()}


def _cmd_experiment(args, budget) -> dict:
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    n = args.n if args.n is not None else cfg.get("n")
    p = args.p if args.p is not None else cfg.get("p")
    k = args.k if args.k is not None else cfg.get("k")
    gamma = args.gamma if args.gamma is not None else cfg.get("gamma", "1/10")
    d = args.d if args.d is not None else cfg.get("d", "3/5")
    if n is None or p is None or k is None:
        raise _UsageError("experiment requires n, p, and k (flags or config)")
    template = make_template(Graph.complete(k), n, k)
    report = run_template_experiment(template, n, parse_probability(p),
                                     args.seed, args.trials,
                                     Fraction(gamma), Fraction(d), budget)
    return {"trials": report.trials, "successes": report.successes,
            "rng": RNG_NAME,
            "per_trial": list(report.per_trial), "summary": report.summary}


def _cmd_audit(args, budget) -> dict:
    g = _load_graph(args)
    return check_ambient_properties(g, parse_probability(args.p),
                                    args.set_size_cap, args.samples, args.seed)


_COMMANDS = {
    "classify": _cmd_classify,
    "threshold": _cmd_threshold,
    "threshold-star": _cmd_threshold_star,
    "regimes": _cmd_regimes,
    "regimes-star": _cmd_regimes_star,
    "zykov": _cmd_zykov,
    "zykov-search": _cmd_zykov_search,
    "sample": _cmd_sample,
    "experiment": _cmd_experiment,
    "audit": _cmd_audit,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        budget = _budget(args)
        payload = _COMMANDS[args.verb](args, budget)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    table_text = payload.pop("_table_text", None)
    if args.format == "table" and table_text is not None:
        print(table_text)
    else:
        payload = {"schema": SCHEMA, "verb": args.verb, **payload}
        print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
