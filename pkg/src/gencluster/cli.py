"""Command-line front end: ``gencluster {mutate,verify,fpoly,graph,recover}``.

Exit codes: 0 ok, 1 identity failure, 2 input error, 3 internal invariant
violation, 4 a check needs a complete exchange graph but enumeration was
truncated.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .dmat import DMatrixPattern, d_matrix
from .fpolys import GradingError, f_polynomials, g_matrix_from_grading, principal_companion
from .jacobian import RecoveryError, recover_B_from_cluster, recover_C_from_cluster
from .pattern import ClusterPattern, PatternError, standard_pattern
from .schema import InputError, load_pattern, parse_walk, seed_from_dict, seed_to_dict
from .symalg import NotLaurentError
from .verify import IDENTITIES, random_walks
from .xgraph import (IncompleteGraphError, adjacency_iff_common_variables, enumerate_exchange_graph,
                     graphs_agree, seed_determined_by_cluster)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL, EXIT_INCOMPLETE = 0, 1, 2, 3, 4
SHOW = ("x", "y", "b", "c", "g", "d")


def _matrix(m) -> list:
    return np.asarray(m).tolist()


def _dump(obj) -> str:
    """JSON with one line per top-level key (matrices stay on one line)."""
    if not isinstance(obj, dict):
        return json.dumps(obj, default=str)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, default=str)}" for k, v in obj.items())
    return "{\n" + body + "\n}"


def _principal(p: ClusterPattern) -> ClusterPattern:
    if p.frozen and len(p.frozen) == p.n and np.array_equal(p.C0, np.eye(p.n, dtype=np.int64)):
        return p
    return principal_companion(p)[0]


def _load(args) -> ClusterPattern:
    p = load_pattern(args.file)
    return standard_pattern(p) if getattr(args, "standard", False) else p


def _c_matrix(p: ClusterPattern, walk) -> list:
    if p.frozen:
        return _matrix(p.c_matrix(p.seed(walk)))
    pr = _principal(p)
    return _matrix(pr.c_matrix(pr.seed(walk)))


def cmd_mutate(args) -> int:
    p = _load(args)
    walk = parse_walk(args.walk, p.n)
    show = set(SHOW) if "all" in args.show else set(args.show)
    s = p.seed(walk)
    rec = seed_to_dict(s)
    out = {"walk": rec["walk"]}
    if "x" in show:
        out["X"] = rec["X"]
    if "y" in show:
        out["Y"] = [str(y) for y in s.Y]
    if "b" in show:
        out["B"] = rec["B"]
    if "c" in show:
        out["C"] = _c_matrix(p, walk)
    if "g" in show:
        out["G"] = _matrix(g_matrix_from_grading(_principal(p), walk))
    if "d" in show:
        out["D"] = _matrix(d_matrix(s))
    if args.format == "json":
        if "x" in show and "y" in show and "b" in show:
            out["Y"] = rec["Y"]
            out["schema"] = rec["schema"]
        print(_dump(out))
        return EXIT_OK
    print("walk: " + ",".join(str(k) for k in out["walk"]))
    for i, x in enumerate(out.get("X", [])):
        print(f"x{i + 1} = {x}")
    for i, y in enumerate(out.get("Y", [])):
        print(f"y{i + 1} = {y}")
    for name in ("B", "C", "G", "D"):
        if name in out:
            print(f"{name} = {out[name]}")
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _load(args)
    check = IDENTITIES[args.identity]
    rng = np.random.default_rng(args.rng_seed)
    walks = random_walks(rng, p.n, args.walks, args.max_len)
    result = {"identity": args.identity, "pass": True, "walks_checked": 0, "walk": None}
    for walk in walks:
        rep = check(p, walk)
        result["walks_checked"] += 1
        if not rep:
            result.update({"pass": False, "walk": [k + 1 for k in walk], "witness": rep.witness})
            break
    print(_dump(result))
    return EXIT_OK if result["pass"] else EXIT_FAIL


def cmd_fpoly(args) -> int:
    p = _load(args)
    walk = parse_walk(args.walk, p.n)
    pr = _principal(p)
    Fs = f_polynomials(pr, walk)
    G = g_matrix_from_grading(pr, walk)
    C = pr.c_matrix(pr.seed(walk))
    rows = [{"index": i + 1, "F": str(Fs[i]), "g": G[:, i].tolist(), "c": C[:, i].tolist()}
            for i in range(p.n)]
    if args.format == "json":
        print(_dump({"walk": [k + 1 for k in walk], "variables": rows}))
        return EXIT_OK
    print("walk: " + ",".join(str(k + 1) for k in walk))
    for r in rows:
        print(f"F{r['index']} = {r['F']}")
        print(f"g{r['index']} = {r['g']}")
        print(f"c{r['index']} = {r['c']}")
    return EXIT_OK


def cmd_graph(args) -> int:
    p = _load(args)
    if args.budget < 1:
        raise InputError("budget must be at least 1")
    target = DMatrixPattern(p.B0, p.R) if args.matrix_seeds else p
    g = enumerate_exchange_graph(target, args.budget, workers=args.workers)
    text = g.to_dot() if args.format == "dot" else _dump(g.to_json()) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    status = EXIT_OK
    for name in args.check or []:
        if not g.complete:
            print(f"{name}: incomplete exchange graph ({len(g)} vertices, budget {args.budget})",
                  file=sys.stderr)
            return EXIT_INCOMPLETE
        if name == "agree":
            rep = graphs_agree(p, args.budget)
        elif name == "cluster-determines-seed":
            rep = seed_determined_by_cluster(g)
        else:
            rep = adjacency_iff_common_variables(g)
        print(json.dumps(rep.to_json(), default=str), file=sys.stderr)
        if not rep:
            status = EXIT_FAIL
    return status


def cmd_recover(args) -> int:
    p = _load(args)
    try:
        data = json.loads(Path(args.cluster).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read cluster file {args.cluster}: {exc}") from None
    s = seed_from_dict(p, data)
    out = {}
    try:
        if args.what in ("b", "both"):
            out["B"] = _matrix(recover_B_from_cluster(s.X, p))
        if args.what in ("c", "both"):
            if not p.frozen:
                raise InputError("C recovery needs weakly geometric coefficients with frozen generators")
            out["C"] = _matrix(recover_C_from_cluster(s.X, p))
    except RecoveryError as exc:
        raise InputError(f"not a cluster of this pattern: {exc}") from None
    print(_dump(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gencluster", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("file", help="pattern file (JSON)")
        sp.add_argument("--standard", action="store_true",
                        help="use the induced standard pattern with matrix B0 R and R = I")

    sp = sub.add_parser("mutate", help="seed at the end of a walk")
    common(sp)
    sp.add_argument("walk", nargs="?", default="", help="comma-separated 1-based directions")
    sp.add_argument("--show", default="all",
                    type=lambda v: [t.strip() for t in v.split(",")],
                    help="comma-separated subset of x,y,b,c,g,d or 'all'")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_mutate)

    sp = sub.add_parser("verify", help="check an identity on pseudorandom walks")
    common(sp)
    sp.add_argument("--identity", required=True, choices=sorted(IDENTITIES))
    sp.add_argument("--walks", type=int, default=20)
    sp.add_argument("--max-len", type=int, default=4)
    sp.add_argument("--rng-seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("fpoly", help="F-polynomials, g-vectors and c-vectors at a walk")
    common(sp)
    sp.add_argument("walk", nargs="?", default="")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_fpoly)

    sp = sub.add_parser("graph", help="enumerate and export the exchange graph")
    common(sp)
    sp.add_argument("--budget", type=int, default=100)
    sp.add_argument("--format", choices=("dot", "json"), default="json")
    sp.add_argument("--check", action="append",
                    choices=("agree", "cluster-determines-seed", "adjacency"))
    sp.add_argument("--matrix-seeds", action="store_true", help="enumerate the D-matrix pattern instead")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output", help="write the export here instead of stdout")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("recover", help="recover B_t (and C_t) from a cluster")
    common(sp)
    sp.add_argument("--cluster", required=True, help='JSON file with "X": [expressions]')
    sp.add_argument("--what", choices=("b", "c", "both"), default="b")
    sp.set_defaults(func=cmd_recover)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "show", None):
        bad = [v for v in args.show if v not in SHOW + ("all",)]
        if bad:
            print(f"error: unknown --show value(s) {bad}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, PatternError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotLaurentError, GradingError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except IncompleteGraphError as exc:
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE


if __name__ == "__main__":
    sys.exit(main())
