"""Command-line entry point.

Exit codes: 0 success, 2 input error, 3 subset budget exceeded,
4 invariant violation.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from lastsym.dfa import (
    DEFAULT_MAX_SUBSETS, SubsetBudgetExceeded, determinize, minimize,
)
from lastsym.nfa import build_nfa
from lastsym.regex import Alphabet, enumerate_words, matches, parse, to_string
from lastsym.report import InvariantViolation, analyze_nfa, sweep, to_csv, to_json
from lastsym.textio import (
    format_dfa, format_nfa, dfa_to_dot, nfa_to_dot, parse_nfa,
)
from lastsym.unary import landau
from lastsym.witness import (
    WitnessSpec, certify, select_primes, witness_nfa, witness_regex_text,
)

log = logging.getLogger("lastsym")

EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 2, 3, 4


class InputError(Exception):
    pass


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _alphabet(args) -> Alphabet:
    try:
        return Alphabet.from_string(args.alphabet)
    except ValueError as exc:
        raise InputError(f"bad --alphabet: {exc}") from None


def _load_nfa(args):
    """(nfa, ast or None, label) from REGEX or --nfa-file."""
    if args.nfa_file:
        try:
            text = Path(args.nfa_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(str(exc)) from None
        return parse_nfa(text), None, args.nfa_file
    if args.regex is None:
        raise InputError("give a regular expression or --nfa-file")
    alphabet = _alphabet(args)
    ast = parse(args.regex, alphabet)
    return build_nfa(ast, alphabet), ast, args.regex


def cmd_parse(args):
    alphabet = _alphabet(args)
    ast = parse(args.regex, alphabet)
    print(to_string(ast, alphabet, ascii=args.ascii))
    print(f"width {ast.width}")
    print(f"nullable {int(ast.nullable)}")


def cmd_nfa(args):
    nfa, _, label = _load_nfa(args)
    _emit(format_nfa(nfa), args.out)
    if args.dot:
        Path(args.dot).write_text(nfa_to_dot(nfa, label), encoding="utf-8")


def cmd_pipeline(args, minimal: bool):
    """parse -> NFA -> DFA (-> minimal DFA), with a bounded three-way check."""
    nfa, ast, label = _load_nfa(args)
    dfa, _ = determinize(nfa, args.max_subsets)
    if ast is not None and args.max_len > 0:
        for w in enumerate_words(nfa.alphabet, args.max_len):
            if not matches(ast, w) == nfa.accepts(w) == dfa.accepts(w):
                raise InvariantViolation(
                    f"expression, NFA and DFA disagree on {nfa.alphabet.decode(w)!r}")
    out = minimize(dfa) if minimal else dfa
    _emit(format_dfa(out, list(nfa.state_names) if nfa.state_names else None), args.out)
    if args.dot:
        Path(args.dot).write_text(dfa_to_dot(out, label), encoding="utf-8")
    report = analyze_nfa(nfa, label, "regex" if ast is not None else "nfa",
                         width=ast.width if ast is not None else None,
                         max_subsets=args.max_subsets)
    report.check()
    if args.csv:
        Path(args.csv).write_text(to_csv([report]), encoding="utf-8")
    else:
        sys.stderr.write(to_csv([report]))
    if args.json:
        Path(args.json).write_text(to_json([report]), encoding="utf-8")


def cmd_witness(args):
    if (args.budget is None) == (args.cycles is None):
        raise InputError("give exactly one of --budget or --cycles")
    try:
        if args.budget is not None:
            spec = select_primes(args.budget)
        else:
            spec = WitnessSpec(tuple(int(x) for x in args.cycles.split(",")))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    nfa = witness_nfa(spec)
    print(f"cycles {spec}")
    print(f"regex {witness_regex_text(spec)}")
    print(f"width {spec.size}")
    print(f"nfa_states {nfa.state_count}")
    print(f"lower_bound {spec.lower_bound}")
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = "witness_" + "_".join(map(str, spec.cycles))
        (out / f"{stem}.nfa").write_text(format_nfa(nfa), encoding="utf-8")
        (out / f"{stem}.regex").write_text(witness_regex_text(spec) + "\n", encoding="utf-8")
        if args.dot:
            (out / f"{stem}.dot").write_text(nfa_to_dot(nfa, stem), encoding="utf-8")
    if args.certify:
        cert = certify(spec, args.max_subsets, args.max_len)
        header = ["cycles", "regex_width", "nfa_states", "built_nfa_states",
                  "reachable_subsets", "built_reachable_subsets", "minimal_states",
                  "lower_bound", "half_product", "bounded_agreement", "equivalent",
                  "certified", "note"]
        values = [" ".join(map(str, cert.cycles)), cert.regex_width, cert.nfa_states,
                  cert.built_nfa_states, cert.reachable_subsets, cert.built_reachable_subsets,
                  cert.minimal_states, cert.lower_bound, cert.half_product,
                  cert.bounded_agreement, cert.equivalent, cert.certified, cert.skipped]
        text = ",".join(header) + "\n" + ",".join(
            "" if v is None else str(int(v)) if isinstance(v, bool) else str(v)
            for v in values) + "\n"
        _emit(text, args.csv)
        if cert.skipped:
            log.error("certification skipped: %s", cert.skipped)
            return EXIT_BUDGET
        if not cert.certified:
            raise InvariantViolation(f"certification failed for {spec}")
    return 0


def cmd_landau(args):
    hi = args.n if args.to is None else args.to
    try:
        rows = [(n, *landau(n)) for n in range(args.n, hi + 1)]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = "n,g,parts\n" + "".join(
        f"{n},{g},{' '.join(map(str, parts))}\n" for n, g, parts in rows)
    _emit(text, args.csv)


def cmd_sweep(args):
    if args.n_min > args.n_max:
        raise InputError("n_min must not exceed n_max")
    rows = sweep(args.n_min, args.n_max, args.seed, args.per_n, args.max_subsets)
    _emit(to_csv(rows), args.csv)
    if args.json:
        Path(args.json).write_text(to_json(rows), encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lastsym",
        description="Regular expressions to last-symbol NFAs to DFAs, with subset-count bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    def regex_source(sp, file_ok=True):
        sp.add_argument("regex", nargs="?", help="regular expression text")
        sp.add_argument("--alphabet", default="ab", help="symbols, e.g. 'ab' or 'a,b,c'")
        if file_ok:
            sp.add_argument("--nfa-file", help="read an NFA file instead of a regex")

    sp = sub.add_parser("parse", help="parse and print the canonical form")
    sp.add_argument("regex")
    sp.add_argument("--alphabet", default="ab")
    sp.add_argument("--ascii", action="store_true", help="print ε and ∅ as () and 0")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("nfa", help="build the width+1 state NFA")
    regex_source(sp)
    sp.add_argument("--out", help="write the NFA file here instead of stdout")
    sp.add_argument("--dot", help="write a DOT rendering to this path")
    sp.set_defaults(func=cmd_nfa)

    for name, minimal in (("dfa", False), ("minimize", True)):
        sp = sub.add_parser(name, help=("minimal DFA" if minimal else "subset-construction DFA")
                            + " and bound report")
        regex_source(sp)
        sp.add_argument("--out", help="write the DFA file here instead of stdout")
        sp.add_argument("--dot", help="write a DOT rendering to this path")
        sp.add_argument("--csv", help="write the bound report here (default: stderr)")
        sp.add_argument("--json", help="also write the bound report as JSON")
        sp.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS)
        sp.add_argument("--max-len", type=int, default=6,
                        help="check expression/NFA/DFA agreement up to this length")
        sp.set_defaults(func=lambda a, m=minimal: cmd_pipeline(a, m))

    sp = sub.add_parser("witness", help="lower-bound witness for a budget or cycle list")
    sp.add_argument("--budget", type=int, help="largest allowed expression width")
    sp.add_argument("--cycles", help="comma-separated cycle lengths, e.g. 3,5,7")
    sp.add_argument("--certify", action="store_true",
                    help="determinize, minimize and compare against the lower bound")
    sp.add_argument("--out-dir", help="write the witness NFA file into this directory")
    sp.add_argument("--dot", action="store_true", help="also write DOT into --out-dir")
    sp.add_argument("--csv", help="also write the certification row here")
    sp.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS)
    sp.add_argument("--max-len", type=int, default=10,
                    help="bounded agreement check between the two witness forms")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("landau", help="Landau's function as CSV")
    sp.add_argument("n", type=int)
    sp.add_argument("to", type=int, nargs="?", help="print the whole range n..to")
    sp.add_argument("--csv")
    sp.set_defaults(func=cmd_landau)

    sp = sub.add_parser("sweep", help="witness and random-expression rows per width")
    sp.add_argument("n_min", type=int)
    sp.add_argument("n_max", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--per-n", type=int, default=2, help="random expressions per width")
    sp.add_argument("--csv", help="write the CSV here instead of stdout")
    sp.add_argument("--json", help="also write the rows as JSON")
    sp.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except SubsetBudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        log.error("invariant violated: %s", exc)
        return EXIT_INVARIANT
    except (InputError, ValueError, KeyError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
