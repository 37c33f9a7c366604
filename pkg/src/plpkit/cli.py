"""Command-line driver.

Exit codes: 0 success, 1 no answer set or failed check, 2 usage or input
error, 3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .emit import Dialect, emit, format_answer_set, nice_filter
from .errors import PlpError, ResourceLimitError
from .grounder import ground
from .model import (
    INCONSISTENT,
    Program,
    format_set,
    is_statically_ordered,
    static_order,
)
from .oracles import (
    be_preferred,
    be_preferred_extension,
    check_be_preserving,
    check_dynamic_preserving,
    check_static_preserving,
    check_wzl_preserving,
)
from .parser import format_rule, parse_literals, parse_program
from .search import answer_sets_search
from .semantics import generating_indices, is_answer_set
from .transforms import Strategy, compile_program, ta_closure

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

CRITERIA = ("dst-static", "dst-dynamic", "wzl", "be-enum", "be-original")


def load_program(path: str) -> Program:
    """Read a ``.lp``/``.vlp`` file (``-`` for stdin), grounding and flattening if needed."""
    if path == "-":
        text, origin = sys.stdin.read(), "<stdin>"
    else:
        text, origin = Path(path).read_text(encoding="utf-8"), path
    p = parse_program(text, origin)
    if origin.endswith(".vlp") or not p.is_ground:
        p = ground(p)
    return p


def _cmd_compile(args) -> int:
    p = load_program(args.input)
    compiled = compile_program(p, args.strategy, tag_all=args.tag_all)
    text = emit(compiled, args.dialect)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return EXIT_OK


def _cmd_solve(args) -> int:
    p = load_program(args.input)
    if args.strategy == "none":
        program, user = p, {a.predicate for a in p.atoms()}
    else:
        compiled = compile_program(p, args.strategy, tag_all=args.tag_all)
        program, user = compiled.program, compiled.user_predicates
    models = answer_sets_search(program, max_models=args.max_models)
    for x in models:
        shown = nice_filter(x, user) if args.nice else x
        print(format_answer_set(shown))
    if not models:
        print("no answer set", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _label(p: Program, i: int) -> str:
    if i < len(p.rules) and p.rules[i].name is not None:
        return str(p.rules[i].name)
    return f"#{i + 1}"


def _print_witness(rules, x, ordering, shown: int | None = None) -> None:
    """One line per rule; ``~`` marks non-generating rules.

    Rules at index ``shown`` or later are printed only when generating.
    """
    gr = set(generating_indices(rules, x))
    prog = Program(tuple(rules))
    for i in ordering:
        if shown is not None and i >= shown and i not in gr:
            continue
        mark = " " if i in gr else "~"
        print(f"  {mark} {_label(prog, i):>8}  {format_rule(rules[i].without_name())}")


def _cmd_check(args) -> int:
    p = load_program(args.input)
    x = frozenset(parse_literals(Path(args.candidate).read_text(encoding="utf-8"), args.candidate))
    if args.criterion == "dst-dynamic":
        ta = ta_closure(p)
        if not is_answer_set(ta, x):
            print("not an answer set of the TA closure")
            return EXIT_FAIL
        w = check_dynamic_preserving(p, x)
        if w is None:
            print("not order preserving (dst-dynamic)")
            return EXIT_FAIL
        print("order preserving (dst-dynamic); witness:")
        _print_witness(ta.rules, x, w.ordering, shown=len(p.rules))
        return EXIT_OK
    base, order = static_order(p)
    if not is_answer_set(base, x):
        print("not an answer set")
        return EXIT_FAIL
    if args.criterion == "be-original":
        total = be_preferred_extension(base.rules, order, x)
        if total is None:
            print("not BE-preferred")
            return EXIT_FAIL
        ranking = " < ".join(_label(base, i) for i in total)
        print(f"BE-preferred; total order: {ranking}")
        return EXIT_OK
    checker = {
        "dst-static": check_static_preserving,
        "wzl": check_wzl_preserving,
        "be-enum": check_be_preserving,
    }[args.criterion]
    w = checker(base, order, x)
    if w is None:
        print(f"not order preserving ({args.criterion})")
        return EXIT_FAIL
    print(f"order preserving ({args.criterion}); witness:")
    _print_witness(base.rules, x, w.ordering)
    return EXIT_OK


def _cmd_compare(args) -> int:
    p = load_program(args.input)
    static = is_statically_ordered(p)
    print("strategy  answer sets (source language)")
    for s in Strategy:
        if s == Strategy.TSTATIC and not static:
            print(f"{s.value:<9} n/a (dynamic preferences)")
            continue
        compiled = compile_program(p, s)
        models = [compiled.project(x) for x in answer_sets_search(compiled.program)]
        shown = ", ".join(format_set(x, ",") for x in models) or "none"
        print(f"{s.value:<9} {shown}")
    if not static:
        return EXIT_OK
    base, order = static_order(p)
    print()
    print("answer set" + " " * 30 + "DST  WZL  BE-enum  BE")
    violations = 0
    for x in answer_sets_search(base):
        if x is INCONSISTENT:
            print("Lit (inconsistent; no order preservation)")
            continue
        dst = check_static_preserving(base, order, x) is not None
        wzl = check_wzl_preserving(base, order, x) is not None
        ben = check_be_preserving(base, order, x) is not None
        be = be_preferred(base, order, x)
        flags = "  ".join(f"{'yes' if v else 'no':<3}" for v in (dst, wzl, ben)) + f"      {'yes' if be else 'no'}"
        print(f"{format_set(x, ','):<40}{flags}")
        if (dst and not wzl) or (wzl and not be):
            violations += 1
    verdict = "holds" if violations == 0 else f"violated on {violations} set(s)"
    print(f"inclusion DST <= WZL <= BE <= AS: {verdict}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="plpkit", description="Compile and check ordered logic programs.")
    sub = ap.add_subparsers(dest="command", required=True)
    strategies = [s.value for s in Strategy]

    c = sub.add_parser("compile", help="translate to a standard program")
    c.add_argument("input")
    c.add_argument("--strategy", required=True, choices=strategies)
    c.add_argument("--dialect", default="intermediate", choices=[d.value for d in Dialect])
    c.add_argument("--tag-all", action="store_true", help="name every rule before translating")
    c.add_argument("-o", "--output", default=None)
    c.set_defaults(run=_cmd_compile)

    s = sub.add_parser("solve", help="compile and print answer sets")
    s.add_argument("input")
    s.add_argument("--strategy", default="T", choices=strategies + ["none"])
    s.add_argument("--nice", action="store_true", help="show only user-language literals")
    s.add_argument("--max-models", type=int, default=None)
    s.add_argument("--tag-all", action="store_true")
    s.set_defaults(run=_cmd_solve)

    k = sub.add_parser("check", help="test a candidate answer set against a criterion")
    k.add_argument("input")
    k.add_argument("--criterion", required=True, choices=CRITERIA)
    k.add_argument("--candidate", required=True, help="file with literals in neg_ spelling")
    k.set_defaults(run=_cmd_check)

    m = sub.add_parser("compare", help="answer sets under every strategy")
    m.add_argument("input")
    m.set_defaults(run=_cmd_compare)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "max_models", None) is not None and args.max_models < 1:
        print("error: --max-models must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.run(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PlpError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
