"""``satkit`` command line.

Exit codes: 0 success, 1 input or parse error, 2 precondition violation,
3 size guard tripped, 4 ``--oracle`` disagreement.
"""
from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from .catfib import (WideSubcategory, all_hom_congruences, cat_syntactic, is_saturated_morphisms,
                     load_category, restrict_hom)
from .centralizer import (centralizer, group_centralizer_oracle, is_connected,
                          largest_centralizing_below, semantics)
from .core.algebra import DEFAULT_MAX_ARITY, FiniteAlgebra, SubUniverse
from .core.congruence import all_congruences, check_shifting_lemma, is_congruence
from .core.io import format_algebra, load_algebra
from .core.partition import Partition, format_partition, parse_partition
from .errors import ParseError, PreconditionError, ResourceLimitError
from .lang import load_dfa, syntactic_monoid
from .oracles import brute_forall, brute_syntactic, maximum
from .saturation import forall, normal_sup, syntactic_congruence
from .varieties import VarietyTag, check_variety, detect_varieties

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_GUARD, EXIT_ORACLE = 0, 1, 2, 3, 4

VERBS = ("check", "congruences", "syn", "forall", "normal-sup", "centralizer",
         "connected", "synmon", "cat-syn", "shift")


class _OracleMismatch(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would collide with our code 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _subset(text: str) -> list[int]:
    parts = [t for t in text.replace(" ", "").split(",") if t]
    try:
        return [int(t) for t in parts]
    except ValueError:
        raise ParseError(f"bad subset {text!r}: expected a comma list of integers") from None


def _partition(text: str, n: int, labels: bool) -> Partition:
    if labels and not text.lstrip().startswith("labels"):
        text = "labels " + text
    p = parse_partition(text, n)
    if p.n != n:
        raise PreconditionError(f"partition covers {p.n} elements, carrier has {n}")
    return p


def _guard(n: int, args) -> None:
    if n > args.max_size:
        raise ResourceLimitError(f"carrier size {n} exceeds --max-size {args.max_size}")


def _algebra(args) -> FiniteAlgebra:
    return load_algebra(args.file, max_arity=args.max_arity)


def _subuniverse(a: FiniteAlgebra, text: str) -> SubUniverse:
    elems = sorted(set(_subset(text)))
    for x in elems:
        if not 0 <= x < a.size:
            raise PreconditionError(f"element {x} out of range")
    return SubUniverse(a, tuple(elems))


def _diff(label: str, got: Partition, oracle: Callable[[], Partition], out) -> None:
    want = oracle()
    if got != want:
        raise _OracleMismatch(f"{label}: engine {format_partition(got)} vs oracle {format_partition(want)}")
    print("oracle: agree", file=out)


# verbs --------------------------------------------------------------------------

def cmd_check(args, out) -> int:
    a = _algebra(args)
    if args.variety:
        print(f"{args.variety}: {check_variety(a, args.variety)}", file=out)
        return EXIT_OK
    tags = ",".join(t.value for t in detect_varieties(a)) or "-"
    print(f"algebra {a.name}: size {a.size}, valid", file=out)
    print(f"varieties: {tags}", file=out)
    return EXIT_OK


def cmd_congruences(args, out) -> int:
    a = _algebra(args)
    _guard(a.size, args)
    cons = all_congruences(a)
    for p in cons:
        print(format_partition(p), file=out)
    print(f"count {len(cons)}", file=out)
    return EXIT_OK


def cmd_syn(args, out) -> int:
    a = _algebra(args)
    w = _subset(args.subset)
    theta = syntactic_congruence(a, w)
    print(format_partition(theta), file=out)
    if args.oracle:
        _guard(a.size, args)
        _diff("syn", theta, lambda: brute_syntactic(a, w), out)
    return EXIT_OK


def cmd_forall(args, out) -> int:
    a = _algebra(args)
    u = _subuniverse(a, args.subset)
    s = (_partition(args.cong, len(u), args.labels) if args.cong is not None
         else Partition.indiscrete(len(u)))
    f = forall(a, u, s)
    print(format_partition(f), file=out)
    if args.oracle:
        _guard(a.size, args)
        _diff("forall", f, lambda: brute_forall(a, u, s), out)
    return EXIT_OK


def cmd_normal_sup(args, out) -> int:
    a = _algebra(args)
    u = _subuniverse(a, args.subset)
    f = normal_sup(a, u)
    print("not normal" if f is None else format_partition(f), file=out)
    if args.oracle:
        _guard(a.size, args)
        # the oracle: the largest congruence having u as a class, if any
        cands = [r for r in all_congruences(a) if sorted(r.block_of(u.elements[0])) == list(u.elements)]
        want = maximum(cands) if cands else None
        if want != f:
            raise _OracleMismatch(f"normal-sup: engine {f} vs oracle {want}")
        print("oracle: agree", file=out)
    return EXIT_OK


def cmd_centralizer(args, out) -> int:
    a = _algebra(args)
    r = _partition(args.cong, a.size, args.labels)
    if args.below is not None:
        s = _partition(args.below, a.size, args.labels)
        z = largest_centralizing_below(a, r, s)
    else:
        z = centralizer(a, r)
    print(format_partition(z), file=out)
    print(f"semantics: {semantics(a)}", file=out)
    if args.oracle:
        if not _is_group(a):
            print("oracle: n/a (not a group)", file=out)
        else:
            want = group_centralizer_oracle(a, r)
            if args.below is not None:
                want = want.meet(s)
            if z != want:
                raise _OracleMismatch(f"centralizer: engine {format_partition(z)} "
                                      f"vs oracle {format_partition(want)}")
            print("oracle: agree", file=out)
    return EXIT_OK


def _is_group(a: FiniteAlgebra) -> bool:
    try:
        return bool(check_variety(a, VarietyTag.GROUP))
    except PreconditionError:
        return False


def cmd_connected(args, out) -> int:
    a = _algebra(args)
    r = _partition(args.cong, a.size, args.labels)
    s = _partition(args.other, a.size, args.labels)
    if not is_congruence(a, s):
        raise PreconditionError(f"{format_partition(s)} is not a congruence")
    print("true" if is_connected(a, r, s) else "false", file=out)
    print(f"semantics: {semantics(a)}", file=out)
    return EXIT_OK


def cmd_synmon(args, out) -> int:
    d = load_dfa(args.file)
    m = syntactic_monoid(d)
    out.write(format_algebra(m))
    print(f"size {m.size}", file=out)
    return EXIT_OK


def cmd_cat_syn(args, out) -> int:
    d = load_category(args.file)
    wide = sorted(set(_subset(args.wide))) if args.wide is not None else list(range(d.morphisms))
    for f in wide:
        if not 0 <= f < d.morphisms:
            raise PreconditionError(f"morphism {f} out of range")
    c = WideSubcategory(d, tuple(wide))
    s = (_partition(args.cong, len(c), args.labels) if args.cong is not None
         else Partition.discrete(len(c)))
    t = cat_syntactic(d, c, s)
    print(format_partition(t), file=out)
    if args.oracle:
        _guard(d.morphisms, args)
        cands = [x for x in all_hom_congruences(d)
                 if is_saturated_morphisms(c, x) and restrict_hom(x, c) <= s]
        _diff("cat-syn", t, lambda: maximum(cands), out)
    return EXIT_OK


def cmd_shift(args, out) -> int:
    a = _algebra(args)
    t, s, r = (_partition(x, a.size, args.labels) for x in (args.t, args.s, args.r))
    res = check_shifting_lemma(a, t, s, r)
    print("true" if res.holds else f"false witness {tuple(res.witness)}", file=out)
    return EXIT_OK


COMMANDS = {
    "check": cmd_check, "congruences": cmd_congruences, "syn": cmd_syn,
    "forall": cmd_forall, "normal-sup": cmd_normal_sup, "centralizer": cmd_centralizer,
    "connected": cmd_connected, "synmon": cmd_synmon, "cat-syn": cmd_cat_syn,
    "shift": cmd_shift,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-size", type=int, default=64, metavar="N",
                        help="refuse lattice enumeration above N elements (default 64)")
    common.add_argument("--max-arity", type=int, default=DEFAULT_MAX_ARITY, metavar="K",
                        help=f"largest accepted operation arity (default {DEFAULT_MAX_ARITY})")
    common.add_argument("--labels", action="store_true",
                        help="read partition arguments as label vectors, e.g. 0,1,0,1")
    common.add_argument("--oracle", action="store_true",
                        help="recompute 'largest' results by brute force and diff (slow)")

    p = _Parser(prog="satkit", description=__doc__.splitlines()[0],
                epilog="Partitions are block form [[0,2],[1,3]] or 'labels 0 1 0 1'. "
                       "Relations on a subuniverse or wide subcategory are indexed by "
                       "position within its sorted element list.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="validate an .alg file, optionally against a variety")
    c.add_argument("file")
    c.add_argument("--variety", choices=[t.value for t in VarietyTag])

    c = sub.add_parser("congruences", parents=[common], help="list all congruences")
    c.add_argument("file")

    c = sub.add_parser("syn", parents=[common], help="syntactic congruence of a subset")
    c.add_argument("file")
    c.add_argument("--subset", required=True, help="comma list of elements")

    c = sub.add_parser("forall", parents=[common], help="saturation operator on a subuniverse")
    c.add_argument("file")
    c.add_argument("--subset", required=True, help="the subuniverse, comma list")
    c.add_argument("--cong", help="congruence on the subuniverse by position (default: total)")

    c = sub.add_parser("normal-sup", parents=[common], help="largest congruence with the subuniverse as a class")
    c.add_argument("file")
    c.add_argument("--subset", required=True)

    c = sub.add_parser("centralizer", parents=[common], help="centralizer of a congruence")
    c.add_argument("file")
    c.add_argument("--cong", required=True)
    c.add_argument("--below", help="clamp: largest centralizing congruence inside this one")

    c = sub.add_parser("connected", parents=[common], help="decide [R,S] = 0")
    c.add_argument("file")
    c.add_argument("--cong", required=True, help="R")
    c.add_argument("--other", required=True, help="S")

    c = sub.add_parser("synmon", parents=[common], help="syntactic monoid of a .dfa file")
    c.add_argument("file")

    c = sub.add_parser("cat-syn", parents=[common], help="syntactic hom-congruence on a .cat file")
    c.add_argument("file")
    c.add_argument("--wide", help="morphisms of the wide subcategory (default: all)")
    c.add_argument("--cong", help="hom-congruence on the subcategory by position (default: discrete)")

    c = sub.add_parser("shift", parents=[common], help="Shifting Lemma check for T, S, R")
    c.add_argument("file")
    c.add_argument("--t", required=True)
    c.add_argument("--s", required=True)
    c.add_argument("--r", required=True)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    where = getattr(args, "file", "")
    try:
        return COMMANDS[args.verb](args, out)
    except ParseError as exc:
        msg = str(exc) if exc.source else f"{where}: {exc}"
        print(f"satkit: parse error: {msg}", file=err)
        return EXIT_INPUT
    except OSError as exc:
        print(f"satkit: {where}: {exc.strerror or exc}", file=err)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"satkit: {where}: {exc}", file=err)
        return EXIT_GUARD
    except PreconditionError as exc:
        print(f"satkit: {where}: precondition violated: {exc}", file=err)
        return EXIT_PRECONDITION
    except _OracleMismatch as exc:
        print(f"satkit: {where}: oracle mismatch: {exc}", file=err)
        return EXIT_ORACLE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
