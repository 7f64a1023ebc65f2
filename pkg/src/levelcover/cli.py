"""Command-line interface: ``levelcover <group> <command> [flags]``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import graphs as gr
from . import nilpotent as nil
from . import surface as sf
from .errors import LevelCoverError
from .freenil import power_subgroup_lattice
from .identities import check_identities, random_word, verify_congruence_identities
from .words import parse_word

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "json" or text is None:
        print(json.dumps(payload, indent=None if args.format == "json" else 2, default=list))
    else:
        print(text)


def _elements(args) -> list:
    out = []
    for e in args.elt or []:
        try:
            v = json.loads(e)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--elt expects a JSON array of 14 integers: {exc}") from None
        if not isinstance(v, list) or len(v) != 14 or not all(isinstance(x, int) for x in v):
            raise UsageError("--elt expects a JSON array of 14 integers")
        out.append(nil.element(v))
    for w in args.word or []:
        out.append(nil.eval_word(w))
    return out


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


# ------------------------------------------------------------ nilpotent

def cmd_nilpotent(args) -> int:
    elts = _elements(args)
    op = args.op
    if op in ("mul",):
        if not elts:
            raise UsageError("mul needs at least one --elt or --word")
        acc = nil.IDENTITY
        for e in elts:
            acc = nil.mul(acc, e)
        _emit(args, list(acc), json.dumps(list(acc)))
    elif op in ("pow", "invert"):
        if len(elts) != 1:
            raise UsageError(f"{op} needs exactly one --elt or --word")
        if op == "pow":
            _require(args, "m")
            res = nil.pow(elts[0], args.m)
        else:
            res = nil.inverse(elts[0])
        _emit(args, list(res), json.dumps(list(res)))
    elif op == "eval":
        if not args.word:
            raise UsageError("eval needs --word")
        res = nil.eval_word(args.word[0])
        _emit(args, list(res), json.dumps(list(res)))
    elif op == "member":
        _require(args, "n")
        if len(elts) != 1:
            raise UsageError("member needs exactly one --elt or --word")
        depth = args.depth if args.depth is not None else 4
        bad = nil.congruence_failures(elts[0], args.n, depth)
        _emit(args, {"member": not bad, "failed": bad}, "true" if not bad else "false  " + "; ".join(bad))
    return EXIT_OK


# ------------------------------------------------------------ graph

def _load_graph(args) -> gr.StableGraph:
    _require(args, "input")
    try:
        if args.input == "-":
            data = sys.stdin.read()
        else:
            with open(args.input) as fh:
                data = fh.read()
        return gr.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read graph from {args.input}: {exc}") from None


def cmd_graph(args) -> int:
    op = args.op
    if op == "enumerate":
        _require(args, "g")
        graphs = gr.enumerate_stable_graphs(args.g)
        payload = {"g": args.g, "count": len(graphs), "graphs": [G.to_json() for G in graphs]}
        _emit(args, payload, f"genus {args.g}: {len(graphs)} stable graphs")
        return EXIT_OK
    G = _load_graph(args)
    if op == "classify":
        c = gr.classify_edges(G)
        payload = {
            "genus": G.genus, "bridges": list(c.bridges), "genus_one_bridges": list(c.genus_one_bridges),
            "cut_systems": [list(s) for s in c.cut_systems], "plain": list(c.plain),
        }
        text = "\n".join(f"{k}: {v}" for k, v in payload.items())
        _emit(args, payload, text)
    elif op == "filtration":
        F = gr.filtration(G)
        payload = {"edges": list(F.edges)}
        for key in ("F0", "F1", "F2", "F21"):
            payload[key] = [list(r) for r in getattr(F, key).normal_form]
        text = "\n".join(f"{k}: {v}" for k, v in payload.items())
        _emit(args, payload, text)
    elif op == "stabilizer":
        _require(args, "k", "n")
        S = gr.stabilizer_lattice(G, args.k, args.n)
        payload = {"edges": list(S.edges), "k": S.k, "n": S.n, "hnf": [list(r) for r in S.lattice.normal_form]}
        text = "\n".join(" ".join(f"{x:>4}" for x in r) for r in S.lattice.normal_form)
        _emit(args, payload, f"edges: {' '.join(S.edges)}\n{text}")
    elif op == "smooth":
        _require(args, "k", "n")
        rep = gr.is_smooth_point(G, args.k, args.n)
        text = f"smooth: {str(rep.smooth).lower()}"
        if rep.smooth:
            text += "\nmultipliers: " + json.dumps(rep.multipliers)
        else:
            text += "\nwitness generators:\n" + "\n".join(json.dumps(r) for r in rep.hnf)
        _emit(args, rep.to_json(), text)
    return EXIT_OK


# ------------------------------------------------------------ twist

def _twist(args) -> sf.TwistEndomorphism:
    if args.input:
        try:
            with open(args.input) if args.input != "-" else sys.stdin as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read twist file: {exc}") from None
        if args.m is not None:
            data["m"] = args.m
        return sf.twist_from_json(data)
    _require(args, "kind", "g")
    return sf.make_twist(args.kind, args.g, args.g1 or 0, 1 if args.m is None else args.m, args.edge or "")


def cmd_twist(args) -> int:
    t = _twist(args)
    if args.op == "apply":
        names = sf.generator_names(t.g)
        words = args.word or list(names)
        payload = {}
        for w in words:
            payload[w] = str(sf.apply(t, parse_word(w, names)))
        text = "\n".join(f"{k} -> {v}" for k, v in payload.items())
        _emit(args, {"twist": t.to_json(), "images": payload}, text)
        return EXIT_OK
    _require(args, "k", "n")
    v = sf.check_twist(t, args.k, args.n)
    _emit(args, {"twist": t.to_json(), **v.to_json()}, f"verdict: {v.status}\n{json.dumps(v.certificate)}")
    return EXIT_OK


# ------------------------------------------------------------ theorem

def _ns(args, default):
    return [args.n] if args.n is not None else default


def cmd_theorem(args) -> int:
    if args.op == "glad":
        _require(args, "g", "k", "n")
        v = gr.theorem_glad_check(args.g, args.k, args.n)
        text = f"smooth: {str(v.smooth).lower()}"
        if not v.matches:
            text += f"\nMISMATCH: predicted smooth: {str(v.predicted).lower()}"
        if v.witnesses:
            text += "\nwitness: " + json.dumps(v.witnesses[0]["graph"])
        _emit(args, v.to_json(), text)
        return EXIT_OK if v.matches else EXIT_CHECK
    gs = [args.g] if args.g is not None else [2, 3, 4]
    ks = [args.k] if args.k is not None else [1, 2, 3]
    rows = sf.mono_grid(gs, ks, _ns(args, [3, 4, 5, 6, 8, 9, 12]))
    bad = [r for r in rows if r["verdict"] != r["expected"]]
    text = f"{len(rows)} verdicts, {len(bad)} disagreements"
    for r in bad:
        text += f"\n  {r['kind']}{('/' + r['edge']) if r['edge'] else ''} g={r['g']} g1={r['g1']} k={r['k']} n={r['n']} m={r['m']}: {r['verdict']}"
    _emit(args, {"rows": rows, "disagreements": len(bad)}, text)
    return EXIT_OK if not bad else EXIT_CHECK


# ------------------------------------------------------------ selftest

def selftest(trials: int = 200, seed: int = 0) -> list:
    """Run every cross-check; return (name, ok, detail) triples."""
    rng = random.Random(seed)
    results = []

    words = [random_word(rng, 10) for _ in range(trials)]
    agree = sum(nil.oracle_agreement(w) for w in words)
    results.append(("coordinates agree with series oracle", agree == trials, f"{agree}/{trials}"))

    rep = check_identities(trials, seed)
    results.append(("commutator identities", rep.ok, rep.trials))
    rep = verify_congruence_identities(trials, seed)
    results.append(("power congruences", rep.ok, rep.trials))

    for n in (3, 4, 5, 6, 7, 8, 9, 12):
        powers_ok = all(nil.is_member(nil.pow(nil.eval_word(random_word(rng, 6)), n), n, 4) for _ in range(trials // 4 + 1))
        results.append((f"n-th powers satisfy congruences, n={n}", powers_ok, ""))
        results.append((f"explicit products span congruence lattice, n={n}",
                        nil.witness_lattice(n) == nil.congruence_lattice(n), ""))
    for n in (3, 4, 5, 6):
        results.append((f"saturation reproduces congruence lattice, n={n}",
                        power_subgroup_lattice(3, n, 4) == nil.congruence_lattice(n), ""))

    rows = sf.mono_grid()
    bad = [r for r in rows if r["verdict"] != r["expected"]]
    results.append(("twist verdicts follow divisibility table", not bad, f"{len(rows)} verdicts, {len(bad)} off"))

    for g in (2, 3):
        bad = []
        for k in (1, 2, 3):
            for n in range(3, 13):
                v = gr.theorem_glad_check(g, k, n)
                if not v.matches:
                    bad.append((k, n))
        for n in (5, 7, 11):
            if not gr.theorem_glad_check(g, 4, n).matches:
                bad.append((4, n))
        results.append((f"smoothness predicate, g={g}", not bad, f"mismatches (k,n): {bad}" if bad else ""))
    return results


def cmd_selftest(args) -> int:
    results = selftest(args.trials or 200, args.seed or 0)
    ok = all(r[1] for r in results)
    text = "\n".join(f"[{'PASS' if r[1] else 'FAIL'}] {r[0]}" + (f"  ({r[2]})" if r[2] else "") for r in results)
    payload = {"ok": ok, "checks": [{"name": r[0], "ok": r[1], "detail": r[2]} for r in results]}
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_CHECK


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int, help="twist exponent, or the exponent for 'nilpotent pow'")
    common.add_argument("--g1", type=int)
    common.add_argument("--kind", choices=sf.KINDS)
    common.add_argument("--edge", choices=sf.CUTPAIR_EDGES)
    common.add_argument("--input")
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--elt", action="append", help="JSON array of 14 integers")
    common.add_argument("--word", action="append")
    common.add_argument("--format", choices=("json", "text"), default="text")

    p = argparse.ArgumentParser(prog="levelcover", description=__doc__)
    sub = p.add_subparsers(dest="group", required=True)
    for group, ops in (
        ("nilpotent", ("mul", "pow", "invert", "eval", "member")),
        ("graph", ("classify", "filtration", "stabilizer", "smooth", "enumerate")),
        ("twist", ("apply", "check")),
        ("theorem", ("mono-grid", "glad")),
    ):
        gp = sub.add_parser(group)
        gsub = gp.add_subparsers(dest="op", required=True)
        for op in ops:
            gsub.add_parser(op, parents=[common])
    sub.add_parser("selftest", parents=[common])
    return p


HANDLERS = {
    "nilpotent": cmd_nilpotent,
    "graph": cmd_graph,
    "twist": cmd_twist,
    "theorem": cmd_theorem,
    "selftest": cmd_selftest,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return HANDLERS[args.group](args)
    except (UsageError, LevelCoverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
