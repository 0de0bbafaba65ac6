"""Command-line surface over the library APIs.

Everything here is plumbing: parse arguments, load/save JSON, print
results.  No norm or combinatorics logic lives in this module.

Exit codes: 0 pass, 1 claim failure, 2 usage error, 3 infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .esstree import EssParams, EssUniverse, full_params, toy_params
from .exactval import RadSum
from .games import TruncationTooSmall, simulate_game
from .measures import InfeasibleError
from .norms import (FinVec, G0, G1_SIGNS, G2, GSUM, Gp, G1_weighted,
                    essinc_norm, ground_norm, jt_norm, tinc_norm, wg_norm)
from .scc import LExhausted, plegma_generate, repeated_average, verify_scc
from .experiments import experiment_names, run_experiment
from .trees import TreeSpec, build_tree, load_tree, save_tree

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _frac(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("expected a rational p/q, got %r" % s)


def _load_vec(path: str) -> FinVec:
    with open(path) as fh:
        return FinVec.from_json(json.load(fh))


def _load_params(args) -> EssParams:
    if args.params:
        with open(args.params) as fh:
            data = json.load(fh)
        return EssParams(tuple(data["m"]), tuple(data["n"]),
                         toy=bool(data.get("toy", False)))
    if args.toy:
        return toy_params(args.toy)
    return full_params()


def _show_value(value) -> dict:
    if isinstance(value, RadSum):
        return {"exact": value.to_json(), "repr": repr(value),
                "approx": float(value)}
    return {"approx": float(value)}


def _cmd_tree(args) -> int:
    tree = build_tree(TreeSpec(xi=args.xi, n_max=args.nmax))
    save_tree(tree, args.out)
    print("wrote %s: xi=%d n_max=%d, %d nodes, %d roots"
          % (args.out, args.xi, args.nmax, len(tree.nodes()),
             len(tree.roots)))
    return EXIT_OK


_GROUNDS = {"G0": G0, "G1_signs": G1_SIGNS, "G2": G2, "Gsum": GSUM}


def _cmd_norm(args) -> int:
    x = _load_vec(args.vec)
    if args.space in ("tinc", "jt", "wg") or (
            args.space == "ground" and args.ground in ("G2",)):
        if not args.tree:
            raise ValueError("--tree is required for space %r" % args.space)
        tree = load_tree(args.tree)
    else:
        tree = load_tree(args.tree) if args.tree else None

    if args.space == "tinc":
        res = tinc_norm(x, tree)
        out = res.to_json()
    elif args.space == "jt":
        res = jt_norm(x, tree, r=args.r, p=args.p, signed=not args.unsigned)
        out = res.to_json()
    elif args.space == "essinc":
        params = _load_params(args)
        # pin the sigma registry deterministically before evaluating
        window = args.window or min(max(x.support()), 14)
        EssUniverse(params, 1, window, max_depth=2)
        res = essinc_norm(x, params)
        out = res.to_json()
    elif args.space == "ground":
        kind = _ground_kind(args)
        value, leaf = ground_norm(x, kind, tree)
        out = {"value": _show_value(value),
               "witness": leaf.to_json() if leaf else None}
    elif args.space == "wg":
        kind = _ground_kind(args)
        value = wg_norm(x, kind, tree)
        out = {"value": _show_value(value)}
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError("unknown space %r" % args.space)
    json.dump(out, sys.stdout, indent=2)
    print()
    return EXIT_OK


def _ground_kind(args):
    if args.ground in _GROUNDS:
        return _GROUNDS[args.ground]
    if args.ground.startswith("Gp:"):
        return Gp(Fraction(args.ground[3:]))
    if args.ground == "G1_weighted":
        return G1_weighted(_load_params(args))
    raise ValueError("unknown ground kind %r" % args.ground)


def _cmd_scc(args) -> int:
    start = args.start
    hi = start + 4
    while True:
        try:
            x = repeated_average(args.order, range(start, hi))
            break
        except LExhausted:
            hi *= 2
            if hi > start << 40:  # pragma: no cover - safety stop
                raise
    ok = verify_scc(x, args.order, args.eps)
    out = x.to_json()
    out["eps"] = str(args.eps)
    out["is_scc"] = ok
    json.dump(out, sys.stdout, indent=2)
    print()
    return EXIT_OK if ok else EXIT_FAIL


def _parse_mset(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(s) for s in spec.split(",") if s]


def _cmd_plegma(args) -> int:
    M = _parse_mset(args.m_set)
    count = 0
    for fam in plegma_generate(args.l, args.k, M, strict=args.strict):
        count += 1
        if count <= args.limit:
            print(json.dumps([list(r) for r in fam]))
    print("# %d famil%s" % (count, "y" if count == 1 else "ies"))
    return EXIT_OK if count else EXIT_INFEASIBLE


def _cmd_game(args) -> int:
    tree = build_tree(TreeSpec(xi=1, n_max=args.nmax))
    transcript = simulate_game(args.n, p=args.p, C=args.C, tree=tree)
    json.dump(transcript.to_json(), sys.stdout, indent=2)
    print()
    if args.C is not None and not transcript.c_sufficient:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_experiment(args) -> int:
    report = run_experiment(args.name, params=None)
    for c in report.claims:
        print("[%s] %s  (%s, tol %s): %s"
              % ("PASS" if c["passed"] else "FAIL", c["claim"],
                 c["provenance"], c["tolerance"], c["observed"]))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json(), fh, indent=2)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())
    return EXIT_OK if report.passed else EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bspace")
    sub = ap.add_subparsers(dest="cmd", required=True)

    tp = sub.add_parser("tree", help="tree truncation utilities")
    tsub = tp.add_subparsers(dest="tree_cmd", required=True)
    tb = tsub.add_parser("build", help="build and serialize a truncation")
    tb.add_argument("--xi", type=int, required=True)
    tb.add_argument("--nmax", type=int, required=True)
    tb.add_argument("--out", required=True)
    tb.set_defaults(func=_cmd_tree)

    np_ = sub.add_parser("norm", help="evaluate a norm exactly")
    np_.add_argument("--space", required=True,
                     choices=["tinc", "essinc", "jt", "ground", "wg"])
    np_.add_argument("--tree", help="serialized truncation (tree build)")
    np_.add_argument("--vec", required=True,
                     help='vector JSON {"coords": [[node, "p/q"], ...]}')
    np_.add_argument("--r", type=_frac, default=Fraction(1))
    np_.add_argument("--p", type=_frac, default=Fraction(2))
    np_.add_argument("--unsigned", action="store_true",
                     help="conditional (plain-sum) JT variant")
    np_.add_argument("--ground", default="G2",
                     help="ground kind: G0|G1_signs|G2|Gsum|Gp:q|G1_weighted")
    np_.add_argument("--params", help="essinc parameters JSON {m, n, toy}")
    np_.add_argument("--toy", type=int, default=0,
                     help="use toy parameters of this length")
    np_.add_argument("--window", type=int, default=0,
                     help="registry pin window for essinc (0 = auto)")
    np_.set_defaults(func=_cmd_norm)

    sp = sub.add_parser("scc", help="build and verify a repeated average")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--eps", type=_frac, required=True)
    sp.add_argument("--from", dest="start", type=int, required=True)
    sp.set_defaults(func=_cmd_scc)

    pp = sub.add_parser("plegma", help="enumerate plegma families")
    pp.add_argument("--l", type=int, required=True)
    pp.add_argument("--k", type=int, required=True)
    pp.add_argument("--m-set", required=True,
                    help='ground set, "1,3,8" or "1..20"')
    pp.add_argument("--strict", action="store_true")
    pp.add_argument("--limit", type=int, default=20,
                    help="print at most this many families")
    pp.set_defaults(func=_cmd_plegma)

    gp = sub.add_parser("game", help="simulate the n-turn game")
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--p", type=int, choices=[1, 2],
                    help="JT variant; omit for the T_inc variant")
    gp.add_argument("--nmax", type=int, default=600)
    gp.add_argument("--C", type=_frac, help="candidate equivalence constant")
    gp.set_defaults(func=_cmd_game)

    ep = sub.add_parser("experiment", help="run a named experiment")
    ep.add_argument("name", choices=experiment_names())
    ep.add_argument("--json", help="write the report as JSON here")
    ep.add_argument("--csv", help="write the claims as CSV here")
    ep.set_defaults(func=_cmd_experiment)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except TruncationTooSmall as exc:
        print("infeasible: %s" % exc, file=sys.stderr)
        return EXIT_INFEASIBLE
    except InfeasibleError as exc:
        print("infeasible%s: %s"
              % (" (proven)" if exc.proven else "", exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    except LExhausted as exc:
        print("infeasible: %s" % exc, file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
