"""Command line entry point.

Exit codes: 0 found / all avoided, 1 exhausted / instance found,
2 budget exceeded, 64 usage or I/O error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dzn_io import DataFileError, DataFileSpec, parse_solution_word, write_data_file
from .oracle import oracle_contains_instance
from .patterns import Formula, PatternSyntaxError, Semantics, parse_pattern
from .search import (BudgetExceeded, Exhausted, Found, MorphicSpec, SearchBudget,
                     find_avoiding_word, find_morphic_avoiding_word)
from .words import format_bracketed, hall_prefix, thue_morse_prefix

EXIT_OK, EXIT_EXHAUSTED, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _formula(patterns, mode) -> Formula:
    if not patterns:
        raise UsageError("at least one --pattern is required")
    parsed = [parse_pattern(p) for p in patterns]
    if mode is None:
        mode = Semantics.PERMUTATIONS if any(p.has_functions for p in parsed) else Semantics.PLAIN
    return Formula(tuple(parsed), mode)


def _budget(args) -> SearchBudget:
    env = SearchBudget.from_env()
    return SearchBudget(max_nodes=args.max_nodes,
                        max_seconds=args.max_seconds if args.max_seconds is not None else env.max_seconds)


def _format_word(word, fmt) -> str:
    if fmt == "plain":
        return " ".join(str(a) for a in word.letters)
    return format_bracketed(word)


def _report(outcome, out) -> int:
    if isinstance(outcome, Exhausted):
        print(f"exhausted: no avoiding word exists ({outcome.nodes} nodes)", file=sys.stderr)
        return EXIT_EXHAUSTED
    if isinstance(outcome, BudgetExceeded):
        print(f"budget exceeded after {outcome.nodes} nodes, {outcome.seconds:.1f}s", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_generate(args) -> int:
    f = _formula(args.pattern, args.mode)
    if args.format == "dzn":
        print(write_data_file(DataFileSpec(args.sigma, args.length, f)), end="")
        return EXIT_OK
    outcome = find_avoiding_word(args.sigma, args.length, f, _budget(args), seed=args.seed,
                                 symmetry_break=args.symmetry_break, parallel=args.parallel)
    if isinstance(outcome, Found):
        print(_format_word(outcome.word, args.format))
    return _report(outcome, sys.stdout)


def cmd_generate_morphic(args) -> int:
    f = _formula(args.pattern, args.mode)
    spec = MorphicSpec(args.base, args.prefix, args.image_lengths)
    if args.format == "dzn":
        print(write_data_file(DataFileSpec(args.sigma, spec.template_length, f, spec)), end="")
        return EXIT_OK
    outcome = find_morphic_avoiding_word(args.sigma, spec, f, _budget(args), seed=args.seed,
                                         parallel=args.parallel)
    if isinstance(outcome, Found):
        print(_format_word(outcome.final_word, args.format))
        if args.details:
            print(f"template: {_format_word(outcome.word, args.format)}")
            for a, img in enumerate(outcome.morphism.images):
                print(f"image of {a}: {format_bracketed(img)}")
    return _report(outcome, sys.stdout)


def cmd_check(args) -> int:
    if args.paper_args:
        if len(args.rest) < 3:
            raise UsageError("--paper-args expects: solution sigma wordLength pattern1 [pattern2 ...]")
        solution, sigma, length, patterns = args.rest[0], int(args.rest[1]), int(args.rest[2]), args.rest[3:]
    else:
        if len(args.rest) != 1:
            raise UsageError("check expects exactly one word argument")
        solution, sigma, length, patterns = args.rest[0], args.sigma, args.length, args.pattern
    try:
        word = parse_solution_word(solution, sigma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if length is not None and length != len(word):
        raise UsageError(f"word has {len(word)} letters, expected {length}")
    f = _formula(patterns, args.mode)
    status = EXIT_OK
    for p in f.patterns:
        occ = oracle_contains_instance(word, p, f.semantics)
        if occ is None:
            print(f"{p}: avoided")
            continue
        status = EXIT_EXHAUSTED
        images = ", ".join(format_bracketed(s) for s in occ.substitution)
        line = f"{p}: instance at start {occ.start}, lengths {list(occ.lengths)}, images {images}"
        if occ.perm_assignment is not None and occ.perm_assignment.perms:
            perms = ", ".join(format_bracketed(q) for q in occ.perm_assignment.perms)
            line += f", permutations {perms}"
        print(line)
    return status


def _positional_export_args(rest):
    """t/h morphicWordLength imageLengths... sigma fileName pattern1 [pattern2 ...]"""
    if not rest or rest[0] not in ("t", "h"):
        raise UsageError("--paper-args expects: t/h morphicWordLength imageLengths... sigma fileName patterns...")
    k = 2 if rest[0] == "t" else 3
    if len(rest) < 5 + k:
        raise UsageError(f"--paper-args for {rest[0]!r} needs {k} image lengths, sigma, file name and patterns")
    try:
        prefix = int(rest[1])
        lengths = tuple(int(x) for x in rest[2:2 + k])
        sigma = int(rest[2 + k])
    except ValueError:
        raise UsageError("morphicWordLength, image lengths and sigma must be integers") from None
    name = rest[3 + k]
    path = Path(name if Path(name).suffix else name + ".dzn")
    return MorphicSpec(rest[0], prefix, lengths), sigma, path, rest[4 + k:]


def cmd_export(args) -> int:
    if args.paper_args:
        morphic, sigma, path, patterns = _positional_export_args(args.rest)
        length = morphic.template_length
    else:
        if args.rest:
            raise UsageError(f"unexpected arguments {args.rest}; did you mean --paper-args?")
        if args.output is None:
            raise UsageError("export needs --output")
        patterns, sigma, path = args.pattern, args.sigma, Path(args.output)
        morphic = None
        if args.base is not None:
            if args.prefix is None or args.image_lengths is None:
                raise UsageError("--base needs --prefix and --image-lengths")
            morphic = MorphicSpec(args.base, args.prefix, args.image_lengths)
        length = args.length if args.length is not None else (morphic.template_length if morphic else None)
        if sigma is None or length is None:
            raise UsageError("export needs --sigma and --length")
    text = write_data_file(DataFileSpec(sigma, length, _formula(patterns, args.mode), morphic))
    try:
        path.write_text(text)
    except OSError as exc:
        print(f"cannot write {path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {path}")
    return EXIT_OK


def cmd_words(args) -> int:
    gen = {"t": thue_morse_prefix, "h": hall_prefix}[args.base]
    print("".join(str(a) for a in gen(args.length)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="patavoid", description="Construct and check words avoiding pattern formulas.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def formula_opts(p, required=True):
        p.add_argument("--pattern", action="append", default=[], required=required,
                       help="pattern text, e.g. x1x2x2x1r or x1p1(x1)x1r (repeatable)")
        p.add_argument("--mode", type=Semantics.parse, default=None,
                       help="plain | abelian | permutations (default: permutations iff a pattern uses functions)")

    def search_opts(p):
        p.add_argument("--sigma", type=int, required=True)
        p.add_argument("--max-nodes", type=int)
        p.add_argument("--max-seconds", type=float, help="default from $PATAVOID_MAX_SECONDS")
        p.add_argument("--seed", type=int, help="randomize letter order with this seed")
        p.add_argument("--parallel", action="store_true", help="split the search by first letter")
        p.add_argument("--format", choices=("bracketed", "plain", "dzn"), default="bracketed")

    g = sub.add_parser("generate", help="search for an avoiding word")
    formula_opts(g)
    search_opts(g)
    g.add_argument("--length", type=int, required=True)
    g.add_argument("--symmetry-break", action="store_true", help="fix the first letter")
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("generate-morphic", help="search for an avoiding morphic image of t or h")
    formula_opts(m)
    search_opts(m)
    m.add_argument("--base", choices=("t", "h"), required=True)
    m.add_argument("--prefix", type=int, required=True)
    m.add_argument("--image-lengths", type=_int_list, required=True)
    m.add_argument("--details", action="store_true", help="also print template and images")
    m.set_defaults(func=cmd_generate_morphic)

    c = sub.add_parser("check", help="verify a word with the independent checker")
    formula_opts(c, required=False)
    c.add_argument("--sigma", type=int)
    c.add_argument("--length", type=int)
    c.add_argument("--paper-args", action="store_true",
                   help="positional form: solution sigma wordLength pattern1 [pattern2 ...]")
    c.add_argument("rest", nargs="+", metavar="ARG")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("export", help="write a .dzn data file")
    formula_opts(e, required=False)
    e.add_argument("--sigma", type=int)
    e.add_argument("--length", type=int)
    e.add_argument("--base", choices=("t", "h"))
    e.add_argument("--prefix", type=int)
    e.add_argument("--image-lengths", type=_int_list)
    e.add_argument("-o", "--output")
    e.add_argument("--paper-args", action="store_true",
                   help="positional form: t/h morphicWordLength imageLengths... sigma fileName patterns...")
    e.add_argument("rest", nargs="*", metavar="ARG")
    e.set_defaults(func=cmd_export)

    w = sub.add_parser("words", help="print a prefix of the Thue-Morse (t) or Hall (h) word")
    w.add_argument("--base", choices=("t", "h"), required=True)
    w.add_argument("--length", type=int, required=True)
    w.set_defaults(func=cmd_words)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PatternSyntaxError, DataFileError, ValueError) as exc:
        print(f"patavoid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
