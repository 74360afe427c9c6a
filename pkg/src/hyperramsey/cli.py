"""Command-line entry point: ``hyperramsey <command> ...``.

Exit codes: 0 ok, 1 failure, 2 search budget exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .acceptance import SuiteOptions, run_all, suite_exit_code
from .bounds import FAMILIES, PATH, TREE, InconsistentBounds, best_interval, goodness_target, n_good_status
from .coloring import ColoringCapExceeded, min_color_class, weak_chromatic_number
from .hypergraph import Hypergraph, HypergraphError, complete_hypergraph, components, is_isomorphic
from .search import EXHAUSTED, SearchConfig, arrows, default_budget, ramsey_number
from .tables import FORMATS, parse_range, render_table
from .trees import (
    TREE_METHODS,
    enumerate_trees,
    is_tree,
    is_tree_order,
    loose_cycle_c4,
    loose_path,
    star_tree,
    tree_certificate,
)
from .witness import TwoColoring, burr_witness, cubic_residue_witness, extend_red_clique, verify_witness

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64

CENSUS_MAX_ORDER = 9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- manifest ------------------------------------------------------------------------


class RunManifest:
    def __init__(self, command: str, parameters: dict) -> None:
        self.command = command
        self.parameters = parameters
        self.verdicts: list = []
        self.started = time.perf_counter()
        self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")

    def to_dict(self, exit_code: int) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "versions": {"hyperramsey": __version__, "python": platform.python_version()},
            "wall_time": round(time.perf_counter() - self.started, 6),
            "timestamp": self.timestamp,
            "verdicts": self.verdicts,
            "exit_code": exit_code,
        }


# --- input helpers -------------------------------------------------------------------


def load_shape(spec: str) -> Hypergraph:
    """A hypergraph JSON file, or a named shape: path:M[:R], star:K[:R], complete:N[:R], c4."""
    p = Path(spec)
    if p.is_file():
        return Hypergraph.from_json(p.read_text())
    name, *args = spec.split(":")
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise UsageError(f"bad shape {spec!r}") from None
    if name == "c4" and not nums:
        return loose_cycle_c4()
    if name in ("path", "star", "complete") and 1 <= len(nums) <= 2:
        r = nums[1] if len(nums) == 2 else 3
        return {"path": loose_path, "star": star_tree, "complete": complete_hypergraph}[name](nums[0], r)
    raise UsageError(f"{spec!r} is neither a file nor a shape (path:M[:R], star:K[:R], complete:N[:R], c4)")


def _load_coloring(path: str) -> TwoColoring:
    return TwoColoring.from_json(Path(path).read_text())


def _config(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(
        node_budget=args.budget if args.budget is not None else default_budget(),
        symmetry=args.symmetry,
        edge_order=args.edge_order,
    )


def _interval_json(iv) -> dict:
    return {
        "lower": iv.lower,
        "upper": iv.upper,
        "lower_source": iv.lower_src.source,
        "upper_source": iv.upper_src.source if iv.upper_src else None,
    }


# --- commands ------------------------------------------------------------------------


def cmd_table(args, man: RunManifest) -> int:
    rows = [m for m in parse_range(args.rows) if is_tree_order(m, args.r)]
    cols = parse_range(args.cols)
    if not rows:
        raise UsageError(f"no tree orders for r={args.r} in {args.rows}")
    sys.stdout.write(render_table(args.family, rows, cols, args.format, args.r))
    man.verdicts.append({"cells": len(rows) * len(cols)})
    return EXIT_OK


def cmd_cell(args, man: RunManifest) -> int:
    iv = best_interval(args.family, args.m, args.n, args.r)
    status = n_good_status(args.family, args.m, args.n, args.r)
    print(f"R({args.family} m={args.m}, K_{args.n}^({args.r})) in {iv.text()}")
    print(f"  lower {iv.lower} from {iv.lower_src.source} ({iv.lower_src.conditions})")
    if iv.upper_src:
        print(f"  upper {iv.upper} from {iv.upper_src.source} ({iv.upper_src.conditions})")
    print(f"  goodness target {goodness_target(args.m, args.n, args.r)}: {status}")
    for skip in iv.skipped:
        print(f"  inapplicable {skip.source}: {skip.guard}")
    man.verdicts.append({**_interval_json(iv), "status": status})
    return EXIT_OK


def cmd_trees_enum(args, man: RunManifest) -> int:
    trees = enumerate_trees(args.order, args.uniformity)
    print(json.dumps([t.to_dict() for t in trees]))
    man.verdicts.append({"count": len(trees)})
    return EXIT_OK


def cmd_trees_check(args, man: RunManifest) -> int:
    h = Hypergraph.from_json(Path(args.input).read_text())
    verdict = is_tree(h, args.method)
    out: dict = {"method": args.method, "tree": verdict}
    if verdict and args.method == "build":
        cert = tree_certificate(h)
        out["certificate"] = {"build_order": list(cert.build_order), "attach_vertex": list(cert.attach_vertex)}
    print(json.dumps(out))
    man.verdicts.append(out)
    return EXIT_OK


def cmd_invariants(args, man: RunManifest) -> int:
    h = Hypergraph.from_json(Path(args.input).read_text())
    chi, wc = weak_chromatic_number(h, args.cap)
    out = {
        "chi_w": chi,
        "t": min_color_class(h, args.cap),
        "c": components(h).largest,
        "delta": h.min_degree(),
        "coloring": list(wc.assignment),
    }
    print(json.dumps(out))
    man.verdicts.append(out)
    return EXIT_OK


def cmd_witness(args, man: RunManifest) -> int:
    if args.kind == "verify":
        c = _load_coloring(args.coloring)
        red = load_shape(args.red)
        if (args.blue_clique is None) == (args.blue is None):
            raise UsageError("give exactly one of --blue-clique and --blue")
        blue = load_shape(args.blue) if args.blue else None
        verdict = verify_witness(c, red, args.blue_clique, blue)
        out = {"verdict": verdict.kind}
        if verdict.found is not None:
            out["found"] = {str(k): v for k, v in sorted(verdict.found.items())}
        print(json.dumps(out))
        man.verdicts.append(out)
        return EXIT_OK if verdict.clean else EXIT_FAIL
    if args.kind == "burr":
        c = burr_witness(args.chi_w, args.t, args.c, args.r)
        if args.swap:
            c = c.swapped()
    elif args.kind == "extend":
        c = extend_red_clique(_load_coloring(args.base), args.m)
    else:
        c = cubic_residue_witness(args.j)
    print(c.to_json())
    man.verdicts.append({"order": c.order, "red_edges": len(c.edges_of(0))})
    return EXIT_OK


def cmd_arrows(args, man: RunManifest) -> int:
    res = arrows(args.p, load_shape(args.red), args.blue_clique, _config(args))
    out: dict = {"verdict": res.verdict, "nodes": res.nodes}
    if res.coloring is not None:
        out["coloring"] = res.coloring.to_dict()
    print(json.dumps(out))
    man.verdicts.append({"verdict": res.verdict, "nodes": res.nodes})
    return EXIT_BUDGET if res.verdict == EXHAUSTED else EXIT_OK


def cmd_ramsey(args, man: RunManifest) -> int:
    res = ramsey_number(load_shape(args.red), args.blue_clique, _config(args), start=args.start)
    out = {
        "value": res.value,
        "lower": res.lower,
        "upper": res.upper,
        "nodes": res.nodes,
        "checked": [list(c) for c in res.checked],
        "witness": res.witness.to_dict() if res.witness else None,
    }
    print(json.dumps(out))
    man.verdicts.append({k: out[k] for k in ("value", "lower", "upper", "nodes")})
    return EXIT_BUDGET if res.value is None else EXIT_OK


def cmd_census(args, man: RunManifest) -> int:
    if args.r != 3 or args.m > CENSUS_MAX_ORDER:
        raise UsageError(f"census is limited to r = 3 and m <= {CENSUS_MAX_ORDER}")
    trees = enumerate_trees(args.m, args.r)
    path_form = loose_path(args.m, args.r)
    budget_hit = False
    rows = []
    for tree in trees:
        family = PATH if is_isomorphic(tree, path_form) else TREE
        iv = best_interval(family, args.m, args.n, args.r)
        lo, hi, how = iv.lower, iv.upper, "bounds"
        if args.search and not iv.exact:
            res = ramsey_number(tree, args.n, _config(args), start=iv.lower)
            if res.value is None:
                budget_hit = True
                lo = max(lo, res.lower)
                how = "bounds; search budget exhausted"
            else:
                lo = hi = res.value
                how = "search"
        rows.append({"edges": [list(e) for e in tree.edges], "family": family, "lower": lo, "upper": hi, "via": how})
    exact = {(r["lower"]) for r in rows if r["lower"] == r["upper"]}
    disjoint = any(a["upper"] is not None and a["upper"] < b["lower"] for a in rows for b in rows)
    signal = len(exact) > 1 or disjoint
    for r in rows:
        cell = str(r["lower"]) if r["lower"] == r["upper"] else f"[{r['lower']}, {r['upper']}]"
        print(f"{r['family']:5} {cell:10} {r['via']:32} {r['edges']}")
    print("divergence: values differ between trees" if signal else "no divergence detected (heuristic probe)")
    man.verdicts.append({"trees": rows, "divergence": signal})
    if signal:
        return EXIT_FAIL
    return EXIT_BUDGET if budget_hit else EXIT_OK


def cmd_verify_all(args, man: RunManifest) -> int:
    opts = SuiteOptions(
        golden_dir=Path(args.golden_dir) if args.golden_dir else None,
        budget=args.budget,
        host_count=args.hosts,
    )
    results = run_all(opts, emit=print)
    code = suite_exit_code(results)
    print({EXIT_OK: "all criteria passed", EXIT_FAIL: "FAILED", EXIT_BUDGET: "budget exhausted"}[code])
    man.verdicts.extend({"criterion": r.number, "status": r.status} for r in results)
    return code


# --- parser --------------------------------------------------------------------------


def _add_table(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES, default=TREE)
    p.add_argument("--rows", default="5..15", help="tree orders m, e.g. 5..15")
    p.add_argument("--cols", default="4..10", help="clique orders n, e.g. 4..10")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("-r", type=int, default=3)
    p.set_defaults(func=cmd_table)


def _add_cell(p: argparse.ArgumentParser) -> None:
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, default=3)
    p.add_argument("--family", choices=FAMILIES, default=TREE)
    p.set_defaults(func=cmd_cell)


def _add_search(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, help="node budget (default 10^8 or $RAMSEY_BUDGET)")
    p.add_argument("--symmetry", action="store_true", help="lex-leader symmetry breaking")
    p.add_argument("--edge-order", choices=("colex", "degree-guided"), default="colex")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperramsey", description=__doc__.splitlines()[0])
    parser.add_argument("--manifest", help="write the run manifest here instead of stderr")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _add_table(sub.add_parser("table", help="grid of best intervals"))
    _add_cell(sub.add_parser("cell", help="one interval with provenance"))
    bounds = sub.add_parser("bounds", help="table and cell under one name").add_subparsers(dest="sub", required=True)
    _add_table(bounds.add_parser("table"))
    _add_cell(bounds.add_parser("cell"))

    trees = sub.add_parser("trees", help="enumerate or recognise trees").add_subparsers(dest="sub", required=True)
    p = trees.add_parser("enum")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--uniformity", type=int, default=3)
    p.set_defaults(func=cmd_trees_enum)
    p = trees.add_parser("check")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=TREE_METHODS, default="build")
    p.set_defaults(func=cmd_trees_check)

    p = sub.add_parser("invariants", help="chi_w, t, c and min degree of a hypergraph")
    p.add_argument("--input", required=True)
    p.add_argument("--cap", type=int, default=12, help="largest order searched exhaustively")
    p.set_defaults(func=cmd_invariants)

    wit = sub.add_parser("witness", help="build or verify colourings").add_subparsers(dest="kind", required=True)
    p = wit.add_parser("burr")
    p.add_argument("--chi-w", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("-r", type=int, default=3)
    p.add_argument("--swap", action="store_true", help="exchange red and blue")
    p = wit.add_parser("extend")
    p.add_argument("--base", required=True)
    p.add_argument("-m", type=int, required=True)
    p = wit.add_parser("cubic")
    p.add_argument("-j", type=int, required=True)
    p = wit.add_parser("verify")
    p.add_argument("--coloring", required=True)
    p.add_argument("--red", required=True)
    p.add_argument("--blue-clique", type=int)
    p.add_argument("--blue")
    for name in ("burr", "extend", "cubic", "verify"):
        wit.choices[name].set_defaults(func=cmd_witness)

    p = sub.add_parser("arrows", help="decide K_p -> (red pattern, blue clique)")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--red", required=True)
    p.add_argument("--blue-clique", type=int, required=True)
    _add_search(p)
    p.set_defaults(func=cmd_arrows)

    p = sub.add_parser("ramsey", help="exact Ramsey number by search")
    p.add_argument("--red", required=True)
    p.add_argument("--blue-clique", type=int, required=True)
    p.add_argument("--start", type=int, help="scan from here instead of the generic lower bound")
    _add_search(p)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("census", help="compare every tree of one order against K_n")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-r", type=int, default=3)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--search", action="store_true", help="try exact search on open intervals")
    _add_search(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify-all", help="run every acceptance check")
    p.add_argument("--golden-dir", help="directory holding replacement reference tables")
    p.add_argument("--budget", type=int)
    p.add_argument("--hosts", type=int, default=1000, help="random hosts per tree order")
    p.set_defaults(func=cmd_verify_all)
    return parser


def _params(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "manifest")}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = " ".join(x for x in (args.command, getattr(args, "sub", None), getattr(args, "kind", None)) if x)
    man = RunManifest(command, _params(args))
    try:
        code = args.func(args, man)
    except (UsageError, HypergraphError, ColoringCapExceeded, ValueError, OSError) as exc:
        print(f"hyperramsey: error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except InconsistentBounds as exc:
        print(f"hyperramsey: internal inconsistency: {exc}", file=sys.stderr)
        code = EXIT_FAIL
    text = json.dumps(man.to_dict(code), sort_keys=True)
    if args.manifest:
        Path(args.manifest).write_text(text + "\n")
    else:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
