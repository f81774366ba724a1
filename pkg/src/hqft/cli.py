"""Command-line entry point (``hqft``).

Exit status: 0 on success or agreement, 1 on a validation or usage error,
2 when a cross-check finds disagreeing values.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .center import build_homset_algebra, check_biangular, check_nondegenerate, pi_center, \
    trace_algebra
from .crossed import classify, cocycle_algebra, group_ring, pi_F_algebra, pushforward_crossed, \
    rescale, transfer
from .errors import HQFTError, SchemaError, UnknownCommand
from .graded import CrossedAlgebra, FrobeniusAlgebra, GradedAlgebra, combine, dual, inner, pullback
from .groups import Cocycle2, FiniteGroup, builtin_group, make_subgroup
from .invariants import cross_check, verlinde_closed
from .linalg import Matrix, format_scalar, scalar
from .statesum import tau
from .surfaces import PiSystem, SurfaceSignature

AXIOM_RANGE = "3.1.1–3.2.4"
MODELS = ("biangular", "nondeg")
CONSTRUCTIONS = ("cocycle", "transfer", "pushforward", "piF", "homset", "groupring",
                 "rescale", "combine", "dual", "pullback")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UnknownCommand(message)


class _Report:
    """Ordered key/value report, printed as text lines or as one JSON object."""

    def __init__(self):
        self.items = []

    def add(self, key, value):
        self.items.append((key, value))

    def emit(self, as_json: bool, out):
        if as_json:
            out.write(json.dumps(dict(self.items), indent=2) + "\n")
            return
        for k, v in self.items:
            out.write(f"{v}\n" if k is None else f"{k}: {_text(v)}\n")


def _text(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return " ".join(_text(x) for x in v)
    return str(v)


def _s(x):
    return format_scalar(x)


# --- argument helpers --------------------------------------------------------
def _group(ref: str) -> FiniteGroup:
    if ref.startswith("builtin:"):
        ref = ref[len("builtin:"):]
    try:
        return builtin_group(ref)
    except KeyError:
        pass
    obj = io.load(ref)
    if not isinstance(obj, FiniteGroup):
        raise SchemaError(f"{ref} is not a group", witness="group")
    return obj


def _algebra(ref: str) -> GradedAlgebra:
    obj = io.load(ref)
    if not isinstance(obj, GradedAlgebra):
        raise SchemaError(f"{ref} is not an algebra", witness="algebra")
    return obj


def _crossed(ref: str) -> CrossedAlgebra:
    obj = _algebra(ref)
    if not isinstance(obj, CrossedAlgebra):
        raise SchemaError(f"{ref} is not a crossed algebra", witness="algebra")
    return obj


def _cocycle(ref: str) -> Cocycle2:
    obj = io.load(ref)
    if not isinstance(obj, Cocycle2):
        raise SchemaError(f"{ref} is not a cocycle", witness="cocycle")
    return obj


def _surface(text: str, group: FiniteGroup):
    if text.startswith("genus="):
        return io.parse_surface_shorthand(text, group)
    return io.load(text, group=group)


def _elements(text: str, group: FiniteGroup) -> list:
    return [group.element(t) for t in text.split(",") if t]


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise SchemaError(f"expected comma-separated integers, got {text!r}") from None


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return io.read_json(text)


# --- commands ----------------------------------------------------------------
def cmd_check(args, rep):
    obj = io.load(args.target)
    if isinstance(obj, CrossedAlgebra):
        rep.add("axioms " + AXIOM_RANGE, "pass")
    elif isinstance(obj, FrobeniusAlgebra):
        rep.add("frobenius axioms 3.1.1–3.1.2", "pass")
    elif isinstance(obj, Cocycle2):
        rep.add("cocycle", "pass")
    elif isinstance(obj, FiniteGroup):
        rep.add("group", "pass")
    elif isinstance(obj, SurfaceSignature):
        rep.add("surface", f"genus {obj.genus}: pass")
    elif isinstance(obj, PiSystem):
        rep.add("surface", f"genus {obj.skeleton.genus}, {obj.skeleton.num_faces} faces: pass")
    if isinstance(obj, GradedAlgebra) and not isinstance(obj, CrossedAlgebra):
        rep.add("graded algebra", "pass")
        for model, fn in (("biangular", check_biangular), ("nondeg", check_nondegenerate)):
            try:
                fn(obj)
                rep.add(model, "pass")
            except HQFTError as e:
                rep.add(model, f"fail {e}")
    return 0


def _build(args) -> object:
    c = args.construction
    if c == "groupring":
        return group_ring(_group(args.group))
    if c == "cocycle":
        th = _cocycle(args.cocycle)
        return cocycle_algebra(th.group, th)
    if c == "transfer":
        G = _group(args.group)
        sub = make_subgroup(G, _elements(args.subgroup, G))
        L = _crossed(args.algebra)
        emb = _elements(args.embedding, G) if args.embedding else None
        return transfer(G, sub, L, emb)
    if c == "pushforward":
        return pushforward_crossed(_int_list(args.map), _group(args.group), _crossed(args.algebra))
    if c == "pullback":
        return pullback(_int_list(args.map), _group(args.group), _algebra(args.algebra))
    if c == "piF":
        A = _algebra(args.algebra)
        G = _group(args.group)
        raw = _json_arg(args.action)
        # file matrices use rows = source, like the phi field of algebra documents
        action = {b: Matrix([[scalar(x) for x in r] for r in raw[str(b)]]).T
                  if str(b) in raw else Matrix.identity(A.dims[0]) for b in G.elements}
        return pi_F_algebra(A, G, action)
    if c == "homset":
        G = _group(args.group)
        return build_homset_algebra(G, _json_arg(args.perm), _int_list(args.dims), args.mode)
    if c == "rescale":
        return rescale(_crossed(args.algebra), scalar(args.k))
    if c == "combine":
        return combine(args.mode, _algebra(args.algebra), _algebra(args.other))
    if c == "dual":
        return dual(_algebra(args.algebra))
    raise UnknownCommand(f"unknown construction {c!r}")


def cmd_build(args, rep):
    obj = _build(args)
    text = io.dumps(io.to_json(obj))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        rep.add("wrote", args.out)
    else:
        rep.add(None, text)
    return 0


def cmd_invariant(args, rep):
    alg = _algebra(args.algebra)
    surf = _surface(args.surface, alg.group)
    rep.add(None if not args.json else "tau", _s(tau(args.model, alg, surf)))
    return 0


def cmd_center(args, rep):
    alg = _algebra(args.algebra)
    C = pi_center(args.model, trace_algebra(args.model, alg))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(io.dumps(io.to_json(C)) + "\n")
    rep.add("dims", list(C.dims))
    rep.add("eta(1,1)", _s(inner(C.one(), C.one())))
    rep.add("axioms " + AXIOM_RANGE, "pass")
    return 0


def cmd_classify(args, rep):
    res = classify(_crossed(args.algebra), args.i0)
    big = res.subgroup.parent
    rep.add("subgroup", [big.names[a] for a in res.subgroup.elements])
    rep.add("scale", _s(res.scale))
    rep.add("cocycle", [[_s(x) for x in row] for row in res.cocycle.values] if args.json else
            "; ".join(" ".join(_s(x) for x in row) for row in res.cocycle.values))
    return 0


def cmd_verlinde(args, rep):
    alg = _algebra(args.algebra)
    if not isinstance(alg, CrossedAlgebra):
        if not args.model:
            raise SchemaError("a non-crossed algebra needs --model to form its center", witness="model")
        alg = pi_center(args.model, trace_algebra(args.model, alg))
    sig = _surface(args.surface, alg.group)
    if args.breakdown:
        total, terms = verlinde_closed(alg, sig, breakdown=True)
        rep.add("verlinde", _s(total))
        rep.add("terms", [_s(t) for t in terms])
    else:
        rep.add(None if not args.json else "verlinde", _s(verlinde_closed(alg, sig)))
    return 0


def cmd_compare(args, rep):
    alg = _algebra(args.algebra)
    sig = _surface(args.surface, alg.group)
    res = cross_check(args.model, alg, sig)
    for k in ("tau", "genus_formula", "verlinde"):
        rep.add(k, _s(res[k]))
    rep.add("agree", res["agree"])
    return 0 if res["agree"] else 2


COMMANDS = {"check": cmd_check, "build": cmd_build, "invariant": cmd_invariant,
            "center": cmd_center, "classify": cmd_classify, "verlinde": cmd_verlinde,
            "compare": cmd_compare}


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable report")
    p = _Parser(prog="hqft", description="Exact state sums and crossed algebras for surfaces.")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="validate an object")
    s.add_argument("target")

    s = sub.add_parser("build", parents=[common], help="run a construction")
    s.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    for opt in ("group", "subgroup", "embedding", "algebra", "other", "cocycle", "map",
                "action", "perm", "dims", "k", "out"):
        s.add_argument(f"--{opt}")
    s.add_argument("--mode", default=None)

    for name in ("invariant", "compare"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--model", required=True, choices=MODELS)
        s.add_argument("--algebra", required=True)
        s.add_argument("--surface", required=True)

    s = sub.add_parser("center", parents=[common])
    s.add_argument("--model", required=True, choices=MODELS)
    s.add_argument("--algebra", required=True)
    s.add_argument("--out")

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("--algebra", required=True)
    s.add_argument("--i0", type=int, default=0)

    s = sub.add_parser("verlinde", parents=[common])
    s.add_argument("--algebra", required=True)
    s.add_argument("--surface", required=True)
    s.add_argument("--model", choices=MODELS)
    s.add_argument("--breakdown", action="store_true")
    return p


def _defaults(args):
    if args.command == "build" and args.mode is None:
        args.mode = "direct_sum" if args.construction == "combine" else "sum"
    return args


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = make_parser().parse_args(argv)
        if args.command is None:
            raise UnknownCommand("no command given")
        args = _defaults(args)
        rep = _Report()
        code = COMMANDS[args.command](args, rep)
        rep.emit(args.json, out)
        return code
    except HQFTError as e:
        as_json = "--json" in argv
        if as_json:
            out.write(json.dumps({"error": type(e).__name__, "axiom": e.axiom,
                                  "message": str(e)}, indent=2) + "\n")
        else:
            err.write(f"error: {type(e).__name__}: {e}\n")
        return 1
    except (OSError, KeyError, ValueError) as e:
        err.write(f"error: {e}\n")
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
