"""Command-line front end. Machine output is JSON on stdout; --verbose adds a summary on stderr.

Exit codes: 0 success, 1 domain error (or a failing verification report),
2 usage or parse error.
"""
import argparse
import json
import sys

from . import classifier, invariants, oracle, subgroup_calc
from .errors import DomainError, ParseError
from .groupdsl import parse, to_text

SCHEMA = "1"


class UsageError(Exception):
    pass


def _emit(obj):
    out = {"schema": SCHEMA}
    out.update(obj)
    sys.stdout.write(json.dumps(out) + "\n")


def _say(args, msg):
    if args.verbose:
        sys.stderr.write(msg + "\n")


def _load_subgroup(path, ambient):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError("cannot read subgroup file %s: %s" % (path, e))
    if "ambient" in obj and parse(obj["ambient"]) != ambient:
        raise UsageError("subgroup file %s lives in %s, not %s" % (path, obj["ambient"], to_text(ambient)))
    try:
        return subgroup_calc.from_json(obj, ambient)
    except ValueError as e:
        raise UsageError(str(e))


def _load_family(path, ambient):
    try:
        with open(path) as fh:
            objs = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError("cannot read family file %s: %s" % (path, e))
    if isinstance(objs, dict):
        objs = objs.get("family", [])
    try:
        return [subgroup_calc.from_json(o, ambient) for o in objs]
    except ValueError as e:
        raise UsageError(str(e))


def cmd_invariants(args):
    G = parse(args.expr)
    prof = invariants.profile(G)
    _say(args, "%s: h=%s, critical primes %s" % (to_text(G), prof.to_json()["h"], list(prof.cr)))
    _emit(dict(group=to_text(G), **prof.to_json()))


def cmd_classify(args):
    t = classifier.classify(parse(args.expr))
    _say(args, "%s: %s" % (args.expr, t.text()))
    _emit(t.to_json())


def cmd_rank(args):
    A = parse(args.expr)
    S = _load_subgroup(args.subgroup, A)
    rep = subgroup_calc.rank_report(S)
    _say(args, "w=%d lambda=%d d=%d" % (rep.w, rep.lam, rep.d))
    _emit(rep.to_json())


def cmd_compare(args):
    G1, G2 = parse(args.left), parse(args.right)
    same, clause = classifier.homeo_equal(G1, G2)
    t1, t2 = classifier.classify(G1), classifier.classify(G2)
    _say(args, "%s vs %s: %s" % (t1.text(), t2.text(), "homeomorphic" if same else "not homeomorphic"))
    _emit({"homeomorphic": same, "clause": clause, "left": t1.to_json(), "right": t2.to_json()})


RELATIONS = {
    "parallel": subgroup_calc.are_parallel,
    "commensurable": subgroup_calc.are_commensurable,
    "converges": subgroup_calc.converges_to,
}


def cmd_relate(args):
    A = parse(args.expr)
    S1 = _load_subgroup(args.first, A)
    S2 = _load_subgroup(args.second, A)
    value = RELATIONS[args.relation](S1, S2)
    _say(args, "%s: %s" % (args.relation, value))
    _emit({"relation": args.relation, "value": value})


def cmd_descend(args):
    A = parse(args.expr)
    S = _load_subgroup(args.subgroup, A)
    H = subgroup_calc.descend_weight(S) if args.mode == "weight" else subgroup_calc.descend_level(S)
    before, after = subgroup_calc.rank_report(S), subgroup_calc.rank_report(H)
    _say(args, "w %d -> %d, lambda %d -> %d" % (before.w, after.w, before.lam, after.lam))
    _emit({"mode": args.mode, "subgroup": subgroup_calc.to_json(H),
           "before": before.to_json(), "after": after.to_json(),
           "converges": subgroup_calc.converges_to(H, S)})


def cmd_oracle(args):
    if args.oracle_cmd == "count":
        G = parse(args.expr)
        T = oracle.enumerate_subgroups_finite(G, max_order=args.max_order)
        _emit({"group": to_text(G), "subgroups": T.count(), "formula": invariants.nA(G)})
        return 0
    if args.oracle_cmd == "cb-profile":
        A = parse(args.expr)
        fam = _load_family(args.family, A)
        prof = oracle.chabauty_profile(fam, args.windows, A)
        preds = [subgroup_calc.weight(S) for S in fam]
        _emit(dict(prof.to_json(), predicted_w=preds))
        return 0
    rep = oracle.property_harness(args.corpus, seed=args.seed, max_index=args.max_index,
                                  windows=tuple(args.windows))
    _say(args, "%s: %s" % (args.corpus, "pass" if rep["pass"] else "FAIL"))
    _emit(rep)
    return 0 if rep["pass"] else 1


def _windows(text):
    try:
        hs = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("windows must be a comma-separated list of heights")
    if not hs or any(h < 1 for h in hs) or hs != sorted(set(hs)):
        raise argparse.ArgumentTypeError("windows must be increasing positive heights")
    return hs


GLOBAL_DEFAULTS = {"verbose": False, "seed": 0, "max_order": oracle.DEFAULT_MAX_ORDER, "max_index": 6,
                   "windows": list(oracle.DEFAULT_WINDOWS)}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-order", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-index", type=int, default=argparse.SUPPRESS)
    common.add_argument("--windows", type=_windows, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="chabauty", parents=[common],
                                description="Spaces of subgroups of countable abelian groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="group invariants")
    s.add_argument("expr")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("classify", parents=[common], help="homeomorphism type of the subgroup space")
    s.add_argument("expr")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("rank", parents=[common], help="rank functions of a subgroup")
    s.add_argument("expr")
    s.add_argument("--subgroup", required=True)
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("compare", parents=[common], help="decide homeomorphism of two subgroup spaces")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("relate", parents=[common], help="relation between two subgroups")
    s.add_argument("expr")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("relation", choices=sorted(RELATIONS))
    s.set_defaults(func=cmd_relate)

    s = sub.add_parser("descend", parents=[common], help="constructive descent witness")
    s.add_argument("expr")
    s.add_argument("subgroup")
    s.add_argument("mode", choices=["weight", "level"])
    s.set_defaults(func=cmd_descend)

    s = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    osub = s.add_subparsers(dest="oracle_cmd", required=True)
    o = osub.add_parser("count", parents=[common], help="count subgroups of a finite group")
    o.add_argument("expr")
    o = osub.add_parser("cb-profile", parents=[common], help="empirical Cantor-Bendixson strata")
    o.add_argument("expr")
    o.add_argument("--family", required=True, help="JSON list of subgroup descriptions")
    o = osub.add_parser("verify", parents=[common], help="run the property harness")
    o.add_argument("corpus", nargs="?", default="Z^2",
                   help="f.g. group expression, 'cyclic-count:p,m' or 'quasi:p,J'")
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    # global flags may sit before or after the subcommand; fill in the rest
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        code = args.func(args)
        return code or 0
    except ParseError as e:
        sys.stderr.write("parse error: %s\n" % e)
        _emit({"error": "ParseError", "message": str(e)})
        return 2
    except UsageError as e:
        sys.stderr.write("usage error: %s\n" % e)
        _emit({"error": "UsageError", "message": str(e)})
        return 2
    except DomainError as e:
        _say(args, "%s: %s" % (e.kind, e))
        _emit(e.to_json())
        return 1
    except AssertionError as e:
        _emit({"error": "InternalCheckFailed", "message": str(e)})
        return 1
    except ValueError as e:
        _emit({"error": "ValueError", "message": str(e)})
        return 1


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
