"""Command-line entry point.

Exit status: 0 for success or a true verdict, 1 for a false verdict, 2 for
usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from .arrayfile import format_array, read_array, write_array
from .core import InputError, PermArray, distribution_vectors, verify
from .distributions import (
    DistributionVector,
    enumerate_feasible,
    filter_chain,
    is_feasible,
)
from .groups import (
    GroupSpec,
    GroupTooLarge,
    builtin,
    builtin_names,
    close,
    conjugate_search,
    coset,
    format_cycles,
    group_order,
    is_group,
    sample_conjugates,
)
from .iso import canonical_form, isomorphic
from .search import build_catalogue, read_catalogue, realised_distributions, write_catalogue

OK, FALSE, ERROR = 0, 1, 2


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer vector: {text!r}") from None


def _default_jobs() -> int:
    raw = os.environ.get("PSCA_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- subcommands -------------------------------------------------------------

def cmd_verify(args) -> int:
    x = read_array(args.file)
    res = verify(x, args.t)
    data = {"v": x.v, "t": args.t, "rows": len(x), "is_psca": res.is_psca, "lambda": res.lam}
    if res:
        _emit(args, data, f"PSCA({x.v},{args.t},{res.lam})")
        return OK
    text = f"not a PSCA of strength {args.t}: {res.reason}"
    if res.first_violation is not None:
        seq, count = res.first_violation
        data["violation"] = {"sequence": list(seq), "count": count}
        text += f" (sequence {''.join(map(str, seq)) if x.v <= 10 else seq} covered {count} times)"
    _emit(args, data, text)
    return FALSE


def cmd_feasible(args) -> int:
    fs = filter_chain(args.v, args.t, args.lam) if args.survivors else enumerate_feasible(args.v, args.t, args.lam)
    data = {"v": fs.v, "t": fs.t, "lambda": fs.lam, "feasible": len(fs.vectors)}
    if fs.survivors is not None:
        data["survivors"] = len(fs.survivors)
    lines = [fs.summary()]
    if args.list:
        shown = fs.survivors if fs.survivors is not None else fs.vectors
        data["vectors"] = [list(d) for d in shown]
        lines.extend(",".join(map(str, d)) for d in shown)
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_enumerate(args) -> int:
    cat = build_catalogue(args.v, args.t, args.lam, method=args.method, jobs=args.jobs,
                          limit_classes=args.limit_classes, time_limit=args.time_limit,
                          checkpoint_dir=args.checkpoint_dir,
                          require_distribution=args.require_distribution,
                          seed_class=args.seed_class)
    if args.out:
        write_catalogue(args.out, cat)
    flags = cat.group_flags()
    data = {"v": cat.v, "t": cat.t, "lambda": cat.lam, "classes": len(cat),
            "complete": cat.complete, "groups": sum(flags)}
    _emit(args, data, f"classes={len(cat)} complete={str(cat.complete).lower()}")
    return OK


def cmd_realised(args) -> int:
    cat = read_catalogue(args.catalogue)
    found, complete = realised_distributions(cat)
    vecs = sorted(found)
    data = {"v": cat.v, "t": cat.t, "lambda": cat.lam, "realised": len(vecs),
            "complete": complete, "vectors": [list(d) for d in vecs]}
    lines = [" ".join(map(str, d)) for d in vecs]
    lines.append(f"realised={len(vecs)} complete={str(complete).lower()}")
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_canon(args) -> int:
    x = read_array(args.file)
    cf = canonical_form(x)
    data = {"v": x.v, "rows": [list(r) for r in cf.rows()], "digest": cf.digest()}
    _emit(args, data, format_array(cf.array(), header=f"digest {cf.digest()}").rstrip("\n"))
    return OK


def cmd_iso(args) -> int:
    a, b = read_array(args.file_a), read_array(args.file_b)
    same = isomorphic(a, b)
    _emit(args, {"isomorphic": same}, "isomorphic" if same else "not isomorphic")
    return OK if same else FALSE


def cmd_distributions(args) -> int:
    x = read_array(args.file)
    rows = []
    lines = []
    for w, d in enumerate(distribution_vectors(x)):
        feasible = None
        if args.t is not None:
            m, f = len(x), math.factorial(args.t)
            if m % f == 0:
                feasible = is_feasible(DistributionVector(d, args.t, m // f))
        rows.append({"symbol": w, "vector": list(d), "feasible": feasible})
        tail = "" if feasible is None else ("  feasible" if feasible else "  infeasible")
        lines.append(f"{w}: {' '.join(map(str, d))}{tail}")
    _emit(args, {"v": x.v, "rows": len(x), "symbols": rows}, "\n".join(lines))
    return OK


def _group_spec(args) -> GroupSpec:
    if args.builtin:
        spec = builtin(args.builtin)
        if not isinstance(spec, GroupSpec):
            raise InputError(f"{args.builtin!r} is an array, not a group")
        return spec
    if args.v is None or not args.generators:
        raise InputError("give --builtin NAME or --v V with generators in cycle notation")
    return GroupSpec.from_cycles(args.v, args.generators)


def cmd_group_close(args) -> int:
    spec = _group_spec(args)
    if args.order_only:
        n = group_order(spec)
        _emit(args, {"v": spec.v, "order": n}, f"order={n}")
        return OK
    g = close(spec, args.max_order)
    data = {"v": g.v, "order": g.order, "transitive": g.is_transitive()}
    if args.out:
        write_array(args.out, g.array())
    _emit(args, data, f"order={g.order} transitive={str(g.is_transitive()).lower()}")
    return OK


def cmd_group_is_group(args) -> int:
    x = read_array(args.file)
    ans = is_group(x)
    _emit(args, {"is_group": ans}, "group" if ans else "not a group")
    return OK if ans else FALSE


def cmd_group_search(args) -> int:
    g = close(_group_spec(args), args.max_order)
    if args.samples:
        h = sample_conjugates(g, args.t, args.lam, args.samples, args.seed)
        data = {"witness": list(h) if h else None, "samples": args.samples, "seed": args.seed}
        exhaustive = False
    else:
        res = conjugate_search(g, args.t, args.lam, args.budget)
        h = res.witness
        exhaustive = res.exhaustive
        data = {"witness": list(h) if h else None, "nodes": res.nodes, "exhaustive": exhaustive}
    if h is None:
        _emit(args, data, "no witness" + (" (search exhaustive)" if exhaustive else ""))
        return FALSE
    if args.out:
        write_array(args.out, coset(g, h))
    _emit(args, data, "witness " + " ".join(map(str, h)))
    return OK


def cmd_group_builtin(args) -> int:
    if args.name is None:
        _emit(args, {"names": builtin_names()}, "\n".join(builtin_names()))
        return OK
    obj = builtin(args.name)
    if isinstance(obj, PermArray):
        if args.out:
            write_array(args.out, obj)
        _emit(args, {"v": obj.v, "rows": [list(r) for r in obj.rows]}, format_array(obj).rstrip("\n"))
    else:
        gens = [format_cycles(g) for g in obj.generators]
        _emit(args, {"v": obj.v, "name": obj.name, "generators": gens},
              f"v={obj.v} {obj.name}\n" + "\n".join(gens))
    return OK


# -- parser ------------------------------------------------------------------

def _group_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("generators", nargs="*", help="generators in cycle notation, e.g. '(0,1,2)(3,4)'")
    p.add_argument("--v", type=int, help="degree of the generators")
    p.add_argument("--builtin", metavar="NAME", help="use a named built-in group")
    p.add_argument("--max-order", type=int, default=10**6)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="psca", description="Perfect sequence covering arrays.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check an array file")
    p.add_argument("file", type=Path)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("feasible", parents=[common], help="count feasible distribution vectors")
    p.add_argument("v", type=int)
    p.add_argument("t", type=int)
    p.add_argument("lam", type=int)
    p.add_argument("--survivors", action="store_true", help="also apply the compatibility chain")
    p.add_argument("--list", action="store_true", help="print the vectors (only survivors with --survivors)")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("enumerate", parents=[common], help="catalogue isomorphism classes")
    p.add_argument("v", type=int)
    p.add_argument("t", type=int)
    p.add_argument("lam", type=int)
    p.add_argument("--out", type=Path)
    p.add_argument("--method", choices=["fixed", "dynamic"], default="fixed")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--limit-classes", type=int)
    p.add_argument("--time-limit", type=float, help="seconds")
    p.add_argument("--checkpoint-dir", type=Path)
    p.add_argument("--require-distribution", type=_vector, metavar="D")
    p.add_argument("--seed-class", metavar="DIGEST", help="extend only the class with this digest prefix")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("realised", parents=[common], help="distribution vectors in a catalogue")
    p.add_argument("catalogue", type=Path)
    p.set_defaults(func=cmd_realised)

    p = sub.add_parser("canon", parents=[common], help="canonical representative and digest")
    p.add_argument("file", type=Path)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", parents=[common], help="test two arrays for isomorphism")
    p.add_argument("file_a", type=Path)
    p.add_argument("file_b", type=Path)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("distributions", parents=[common], help="per-symbol distribution vectors")
    p.add_argument("file", type=Path)
    p.add_argument("--t", type=int, help="also test feasibility at this strength")
    p.set_defaults(func=cmd_distributions)

    g = sub.add_parser("group", help="permutation-group tools")
    gsub = g.add_subparsers(dest="group_command", required=True)

    p = gsub.add_parser("close", parents=[common], help="generate a group")
    _group_source(p)
    p.add_argument("--order-only", action="store_true", help="order via a stabiliser chain")
    p.add_argument("--out", type=Path, help="write the elements as an array")
    p.set_defaults(func=cmd_group_close)

    p = gsub.add_parser("is-group", parents=[common], help="is the array a relabelled group")
    p.add_argument("file", type=Path)
    p.set_defaults(func=cmd_group_is_group)

    p = gsub.add_parser("search", parents=[common], help="column permutation making a PSCA")
    _group_source(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--lam", type=int, required=True)
    p.add_argument("--budget", type=int, help="node limit for the backtracking search")
    p.add_argument("--samples", type=int, help="random sampling instead of backtracking")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_group_search)

    p = gsub.add_parser("builtin", parents=[common], help="print a named construction")
    p.add_argument("name", nargs="?")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_group_builtin)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, GroupTooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
