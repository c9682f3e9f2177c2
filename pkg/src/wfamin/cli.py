"""Command-line interface.

Exit codes: 0 success or true, 1 semantic false, 2 input error,
3 precondition error.
"""
from __future__ import annotations

import argparse
import sys
from itertools import zip_longest
from pathlib import Path

from . import fileformat
from .automaton import all_coefficients, augment
from .bench import bench_run, format_report, parse_params
from .fileformat import FormatError
from .generators import fibonacci_automaton, railroad_automaton, random_automaton
from .quotient import is_congruence, quotient
from .refine import NotSimplifiable, minimise, simplifiable_signatures, true_classes
from .semiring import SEMIRINGS

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path):
    try:
        return fileformat.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_partition(aut, path):
    try:
        return fileformat.parse_partition(aut, Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_min(args) -> int:
    aut = _load(args.input)
    aug = augment(aut)
    if args.algo == "fpcsa" and not simplifiable_signatures(aug):
        print("error: fpcsa needs simplifiable signatures (cancellative semiring or "
              "deterministic automaton); rerun with --algo pcsa", file=sys.stderr)
        return EXIT_PRECONDITION
    try:
        part = minimise(aug, args.algo)
    except NotSimplifiable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    classes = true_classes(aug, part)
    _write(fileformat.dumps(quotient(aut, classes)), args.output)
    if args.emit_partition:
        _write(fileformat.format_partition(aut, classes), args.emit_partition)
    return EXIT_OK


def _full_classes(aut, classes):
    return [tuple(c) for c in classes] + [(aut.n,), (aut.n + 1,)]


def cmd_check(args) -> int:
    aut = _load(args.input)
    classes = _load_partition(aut, args.partition)
    ok = is_congruence(augment(aut), _full_classes(aut, classes))
    print("congruence" if ok else "not a congruence")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_quotient(args) -> int:
    aut = _load(args.input)
    classes = _load_partition(aut, args.partition)
    if not is_congruence(augment(aut), _full_classes(aut, classes)):
        print("not a congruence", file=sys.stderr)
        return EXIT_FALSE
    _write(fileformat.dumps(quotient(aut, classes)), args.output)
    return EXIT_OK


def cmd_equiv(args) -> int:
    a, b = _load(args.a), _load(args.b)
    if a.semiring is not b.semiring or a.alphabet != b.alphabet:
        raise InputError("automata differ in semiring or alphabet")
    pairs = zip_longest(all_coefficients(a, args.length), all_coefficients(b, args.length))
    for (word, x), (_, y) in pairs:
        if x != y:
            shown = word if word else "ε"
            print(f"differ on {shown}: {x} vs {y}")
            return EXIT_FALSE
    print(f"equal on all words of length <= {args.length}")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.family == "fibonacci":
            aut = fibonacci_automaton(_need_param(args))
        elif args.family == "railroad":
            aut = railroad_automaton(_need_param(args))
        else:
            aut = random_automaton(args.states, args.letters, args.density,
                                   SEMIRINGS[args.semiring], args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(fileformat.dumps(aut), args.output)
    return EXIT_OK


def _need_param(args):
    if args.param is None:
        raise InputError(f"{args.family} needs a parameter")
    return args.param


def cmd_bench(args) -> int:
    try:
        params = parse_params(args.params)
    except ValueError:
        raise InputError(f"bad parameter range {args.params!r}") from None
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    try:
        records = bench_run(args.family, params, algos, args.reps, args.timeout)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(format_report(records), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wfamin",
                                     description="Minimal quotients of weighted automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("min", help="minimise an automaton")
    p.add_argument("input")
    p.add_argument("--algo", choices=["dsa", "pcsa", "fpcsa", "auto"], default="auto")
    p.add_argument("-o", "--output", help="quotient automaton file (default: stdout)")
    p.add_argument("--emit-partition", metavar="PATH", help="write the congruence classes")
    p.set_defaults(func=cmd_min)

    p = sub.add_parser("check", help="test whether a partition is a congruence")
    p.add_argument("input")
    p.add_argument("partition")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("quotient", help="build the quotient by a given congruence")
    p.add_argument("input")
    p.add_argument("partition")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("equiv", help="compare coefficients of two automata up to a length")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-L", "--length", type=int, default=6)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("gen", help="generate an automaton")
    p.add_argument("family", choices=["fibonacci", "railroad", "random"])
    p.add_argument("param", nargs="?", type=int, help="k for fibonacci, n for railroad")
    p.add_argument("--states", type=int, default=5)
    p.add_argument("--letters", type=int, default=2)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--semiring", choices=sorted(SEMIRINGS), default="Z")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the algorithms on a benchmark family")
    p.add_argument("family", choices=["fibonacci", "railroad"])
    p.add_argument("params", help="e.g. 10..16, 2^8..2^12 or 3,5,8")
    p.add_argument("--algos", default="dsa,pcsa,fpcsa")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--timeout", type=float, default=None,
                   help="skip larger parameters for an algorithm once a run exceeds this")
    p.add_argument("-o", "--output", help="report file (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
