"""Command-line front end.

Subcommands operate on Newick files (one tree per file) and write data to
stdout, diagnostics to stderr.  Exit codes are stable:

* 0 - success
* 1 - bad usage or configuration (missing file, bad flag values)
* 2 - Newick parse error (diagnostic includes the byte offset)
* 3 - semantic tree error (not equidistant, three-point violation, height
      mismatch)
* 4 - leaf-set mismatch between the two input trees
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import (LeafSetMismatchError, NewickParseError,
                     NotEquidistantError, NotUltrametricError, TropTreeError)
from .newick import RootedTree, parse_newick, write_newick
from .sim import SampleConfig, check_nni_conjecture, estimate_star_probability
from .treespace import topology_sequence, tree_segment, ultrametric_of
from .trees import is_equidistant, one_nni_apart
from .tropical import trop_dist
from .util import DEFAULT_TOL

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_LEAVES = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse from sys.exit(2)
        raise _UsageError(message)


def _load_tree(path: str) -> RootedTree:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_newick(text)
    except NewickParseError as exc:
        raise NewickParseError(f"{path}: {exc.args[0]}", exc.offset) from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="troptree", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, two_trees=True):
        p.add_argument("tree1", help="Newick file (one tree)")
        if two_trees:
            p.add_argument("tree2", help="Newick file (one tree)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="absolute tolerance (default 1e-9)")
        p.add_argument("--precision", type=int, default=10,
                       help="significant digits on output (default 10)")

    p = sub.add_parser("segment", help="bend points of the tropical segment")
    add_common(p)
    p.add_argument("--format", choices=["csv", "newick", "json"], default="csv")

    p = sub.add_parser("topologies", help="topology changes along the segment")
    add_common(p)

    p = sub.add_parser("dist", help="tropical distance between the ultrametrics")
    add_common(p)

    p = sub.add_parser("validate", help="check a tree file (equidistant + ultrametric)")
    add_common(p, two_trees=False)

    p = sub.add_parser("simulate", help="Monte Carlo experiments")
    p.add_argument("kind", choices=["star-prob", "nni-conjecture"])
    p.add_argument("--n", type=int, required=True, help="number of leaves")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--height", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    return parser


def cmd_segment(args) -> int:
    t1 = _load_tree(args.tree1)
    t2 = _load_tree(args.tree2)
    seg = tree_segment(t1, t2, args.tol)
    if args.format == "csv":
        sys.stdout.write(seg.to_csv(args.precision))
    elif args.format == "newick":
        for tree in seg.bend_trees:
            print(write_newick(tree, args.precision))
    else:
        rows = [{
            "index": k,
            "lambda": float(seg.segment.bend_parameters[k]),
            "ultrametric": [float(x) for x in bu.entries],
            "newick": write_newick(seg.bend_trees[k], args.precision),
            "topology": seg.bend_topologies[k].canonical_str(),
        } for k, bu in enumerate(seg.bend_ultrametrics)]
        print(json.dumps(rows, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_topologies(args) -> int:
    t1 = _load_tree(args.tree1)
    t2 = _load_tree(args.tree2)
    seg = tree_segment(t1, t2, args.tol)
    topos = topology_sequence(seg)
    for topo in topos:
        print(topo.canonical_str())
    star = any(topo.is_star for topo in topos)
    print(f"star-crossing: {'yes' if star else 'no'}")
    reps = {}
    for topo, tree in seg.positions():
        reps.setdefault(topo, tree)
    for k in range(len(topos) - 1):
        a, b = topos[k], topos[k + 1]
        if a.is_binary and b.is_binary:
            flag = "yes" if one_nni_apart(reps[a], reps[b], args.tol) else "no"
        else:
            flag = "degenerate"
        print(f"transition {k}: single-nni {flag}")
    return EXIT_OK


def cmd_dist(args) -> int:
    u = ultrametric_of(_load_tree(args.tree1), args.tol)
    v = ultrametric_of(_load_tree(args.tree2), args.tol)
    if set(u.labels) != set(v.labels):
        raise LeafSetMismatchError(
            f"leaf sets differ: {sorted(set(u.labels) ^ set(v.labels))} not shared")
    print(format(trop_dist(u.entries, v.entries), f".{args.precision}g"))
    return EXIT_OK


def cmd_validate(args) -> int:
    tree = _load_tree(args.tree1)
    if not is_equidistant(tree, args.tol):
        # re-raise with the deviant leaf named
        from .trees import require_equidistant
        require_equidistant(tree, args.tol)
    ultrametric_of(tree, args.tol)  # raises NotUltrametricError on failure
    print(f"valid: {tree.n_leaves} leaves, height {tree.height():.12g}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        cfg = SampleConfig(n=args.n, height=args.height,
                           samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    start = time.perf_counter()
    if args.kind == "star-prob":
        report = estimate_star_probability(cfg)
    else:
        report = check_nni_conjecture(cfg)
    print(report.to_json())
    print(f"wall-clock: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        handler = {
            "segment": cmd_segment,
            "topologies": cmd_topologies,
            "dist": cmd_dist,
            "validate": cmd_validate,
            "simulate": cmd_simulate,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except NewickParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LeafSetMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LEAVES
    except (NotEquidistantError, NotUltrametricError, TropTreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
