"""Command-line front end.

Exit codes: 0 success, 1 verified negative (invalid proof, unprovable
sequent), 2 usage errors and exhausted limits.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cutelim import eliminate
from .errors import BudgetExceeded, GrzError, InvalidProof, ParseError
from .formula import Multiset, parse_formula, parse_sequent
from .proofs import (CUT, DEFAULT_BUDGET, GRZ_INF, GRZ_INF_CUT, GRZ_SEQ, GRZ_SEQ_CUT, CyclicProof,
                     FiniteProof, Hole, InfProof, check_cyclic, check_finite, cut_profile,
                     distance, expand, in_P_n, local_height, normalize_system, unfold)
from .reduction import ReductionRequest, reduce
from .search import PROVED, UNPROVABLE, prove_inf, prove_seq
from .serialize import dumps, read_proof, to_dot
from .transforms import KINDS, TransformSpec, apply_transform
from .translate import TranslationContext, cutelim_grzseq, inf_to_seq, seq_to_inf

OK, NEGATIVE, USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_proof(args, proof, system: str, depth: int | None = None) -> None:
    fmt = getattr(args, "emit", "json")
    _emit(args, to_dot(proof, depth) if fmt == "dot" else dumps(proof, system, depth) + "\n")


def _is_finite(proof) -> bool:
    return isinstance(proof, FiniteProof) and not any(isinstance(n, Hole) for _, n in proof.walk())


def _as_inf(proof, system: str) -> InfProof:
    if isinstance(proof, CyclicProof):
        return unfold(proof, system)
    if isinstance(proof, FiniteProof) and _is_finite(proof):
        report = check_finite(proof, system)
        if not report.ok:
            raise InvalidProof(report)
        return InfProof.from_finite(proof)
    raise _Usage("a proof with holes cannot be used as input")


def _load_inf(path: str, system: str | None = None) -> tuple[InfProof, str]:
    proof, declared = read_proof(path)
    system = normalize_system(system or declared)
    if system in (GRZ_SEQ, GRZ_SEQ_CUT):
        raise _Usage(f"{path} holds a {system} proof; translate it first")
    return _as_inf(proof, system), system


def _formulas(texts) -> Multiset:
    return Multiset(parse_formula(t) for t in (texts or []))


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args) -> int:
    proof, declared = read_proof(args.proof)
    system = normalize_system(args.system or declared)
    if isinstance(proof, CyclicProof):
        report = check_cyclic(proof, system)
    else:
        report = check_finite(proof, system, allow_holes=args.allow_holes)
    if not report.ok:
        print(f"invalid: {report}")
        for v in report.violations:
            print(f"  {v}")
        return NEGATIVE
    if system in (GRZ_INF, GRZ_INF_CUT) and (isinstance(proof, CyclicProof) or _is_finite(proof)):
        p = unfold(proof, system) if isinstance(proof, CyclicProof) else InfProof.from_finite(proof)
        print(f"valid; local height {local_height(p)}")
    else:
        print(f"valid; {report.nodes_checked} nodes")
    return OK


def cmd_prove(args) -> int:
    goal = parse_sequent(args.sequent)
    system = {"seq": GRZ_SEQ, "inf": GRZ_INF}[args.system]
    if args.system == "seq":
        res = prove_seq(goal, args.limit_nodes)
    else:
        res = prove_inf(goal, args.limit_nodes)
    print(f"{res.status} ({res.nodes} search nodes)", file=sys.stderr)
    if res.status == PROVED:
        _emit(args, dumps(res.proof, system) + "\n")
        return OK
    return NEGATIVE if res.status == UNPROVABLE else USAGE


def cmd_transform(args) -> int:
    p, system = _load_inf(args.proof)
    spec = TransformSpec(args.kind, parse_formula(args.formula) if args.formula else None,
                         _formulas(args.pi), _formulas(args.sigma))
    out = apply_transform(p, spec)
    _emit_proof(args, out, system, args.depth)
    return OK


def cmd_reduce(args) -> int:
    left, _ = _load_inf(args.left)
    right, _ = _load_inf(args.right)
    out = reduce(ReductionRequest(parse_formula(args.formula), left, right))
    _emit_proof(args, out, GRZ_INF_CUT, args.depth)
    return OK


def cmd_cutelim(args) -> int:
    p, _ = _load_inf(args.proof)
    out = eliminate(p)
    _emit_proof(args, out, GRZ_INF, args.depth)
    return OK


def cmd_translate(args) -> int:
    proof, declared = read_proof(args.proof)
    if args.to == "inf":
        if not isinstance(proof, FiniteProof):
            raise _Usage("--to inf expects a finite proof")
        _emit_proof(args, seq_to_inf(proof), GRZ_INF_CUT, args.depth)
        return OK
    p = _as_inf(proof, GRZ_INF_CUT if declared == GRZ_INF_CUT else GRZ_INF)
    lam = frozenset(parse_formula(t) for t in (args.lam or []))
    out = inf_to_seq(p, TranslationContext(lam, args.budget))
    _emit_proof(args, out, GRZ_SEQ)
    return OK


def cmd_pipeline(args) -> int:
    proof, _ = read_proof(args.proof)
    if not isinstance(proof, FiniteProof):
        raise _Usage("pipeline expects a finite proof")
    report = check_finite(proof, GRZ_SEQ_CUT)
    if not report.ok:
        print(f"invalid input: {report}")
        return NEGATIVE
    normal = eliminate(seq_to_inf(proof, check=False))
    inf_ok = all(in_P_n(normal, n) for n in range(1, args.depth + 1))
    out = cutelim_grzseq(proof, args.budget)
    final = check_finite(out, GRZ_SEQ)
    print(f"non-well-founded stage: cut-free to depth {args.depth}: {inf_ok}", file=sys.stderr)
    print(f"finite stage: {final}; cuts {out.count(CUT)}", file=sys.stderr)
    _emit(args, dumps(out, GRZ_SEQ) + "\n")
    return OK if inf_ok and final.ok and out.count(CUT) == 0 else NEGATIVE


def cmd_distance(args) -> int:
    p, _ = _load_inf(args.first)
    q, _ = _load_inf(args.second)
    d = distance(p, q, args.max_n)
    print(json.dumps({"distance": str(d), "exponent": d.exponent, "exact": d.exact}))
    return OK


def cmd_stats(args) -> int:
    proof, declared = read_proof(args.proof)
    if declared in (GRZ_SEQ, GRZ_SEQ_CUT):
        stats = {"system": declared, "nodes": proof.size(), "height": proof.height(),
                 "cuts": proof.count(CUT)}
    else:
        p = _as_inf(proof, declared)
        stats = {
            "system": declared,
            "local_height": local_height(p),
            "graph_nodes": len(proof.nodes) if isinstance(proof, CyclicProof) else proof.size(),
            "expansion_nodes": {n: _size(expand(p, n)) for n in range(1, args.depth + 1)},
            "cuts_per_level": cut_profile(p, args.depth),
            "in_P_n": {n: in_P_n(p, n) for n in range(1, args.depth + 1)},
        }
    print(json.dumps(stats, indent=1))
    return OK


def _size(tree) -> int:
    return 0 if isinstance(tree, Hole) else tree.size()


def cmd_export(args) -> int:
    proof, declared = read_proof(args.proof)
    if args.format == "dot":
        if isinstance(proof, CyclicProof) and args.depth:
            _emit(args, to_dot(unfold(proof, declared), args.depth))
        else:
            _emit(args, to_dot(proof))
    else:
        _emit(args, dumps(proof, declared) + "\n")
    return OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grz", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def out(p, emit=False):
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        if emit:
            p.add_argument("--emit", choices=("json", "dot"), default="json")

    p = sub.add_parser("check", help="validate a proof file")
    p.add_argument("proof")
    p.add_argument("--system", help="grz-seq, grz-seq-cut, grz-inf or grz-inf-cut")
    p.add_argument("--allow-holes", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("prove", help="search for a proof of a sequent")
    p.add_argument("sequent")
    p.add_argument("--system", choices=("seq", "inf"), default="seq")
    p.add_argument("--limit-nodes", type=int, default=200_000)
    out(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("transform", help="apply a weakening, inversion or contraction")
    p.add_argument("proof")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--formula")
    p.add_argument("--pi", action="append", help="formula added on the left (repeatable)")
    p.add_argument("--sigma", action="append", help="formula added on the right (repeatable)")
    p.add_argument("--depth", type=int, default=4)
    out(p, emit=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("reduce", help="apply the reducing mapping for a cut formula")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--formula", required=True)
    p.add_argument("--depth", type=int, default=4)
    out(p, emit=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("cutelim", help="eliminate cuts from a non-well-founded proof")
    p.add_argument("proof")
    p.add_argument("--depth", type=int, default=4)
    out(p, emit=True)
    p.set_defaults(func=cmd_cutelim)

    p = sub.add_parser("translate", help="translate between the two calculi")
    p.add_argument("proof")
    p.add_argument("--to", choices=("inf", "seq"), required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--lam", action="append", help="formula of the finitizing set (repeatable)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    out(p, emit=True)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("pipeline", help="finite cut elimination through the non-well-founded calculus")
    p.add_argument("proof")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    out(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("distance", help="distance between two non-well-founded proofs")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("stats", help="heights, node and cut counts")
    p.add_argument("proof")
    p.add_argument("--depth", type=int, default=4)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", help="re-emit a proof file as JSON or DOT")
    p.add_argument("proof")
    p.add_argument("--format", choices=("json", "dot"), default="dot")
    p.add_argument("--depth", type=int, help="unfold a cyclic proof to this depth first")
    out(p)
    p.set_defaults(func=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except InvalidProof as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return NEGATIVE
    except (_Usage, BudgetExceeded, ParseError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except GrzError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
