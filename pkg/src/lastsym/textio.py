"""Plain-text automaton files and Graphviz DOT export.

NFA file::

    nfa 3 a b
    0 a 1
    1 b 2
    initial 0
    accepting 2

DFA files use the header ``dfa`` and carry the subset back-map as comment
lines ``# 4 : {0,2}``. Blank lines and other ``#`` lines are ignored.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from lastsym.dfa import Dfa
from lastsym.nfa import Nfa, states_of
from lastsym.regex import Alphabet


class AutomatonFormatError(ValueError):
    pass


def format_nfa(nfa: Nfa) -> str:
    syms = nfa.alphabet.symbols
    lines = [f"nfa {nfa.state_count} {' '.join(syms)}"]
    if nfa.state_names:
        lines.append("# names " + " ".join(nfa.state_names))
    lines += [f"{p} {syms[a]} {q}" for p, a, q in nfa.edges()]
    lines.append(" ".join(["initial", *map(str, sorted(nfa.initial))]))
    lines.append(" ".join(["accepting", *map(str, sorted(nfa.accepting))]))
    return "\n".join(lines) + "\n"


def format_dfa(dfa: Dfa, names: list[str] | None = None) -> str:
    syms = dfa.alphabet.symbols
    lines = [f"dfa {dfa.state_count} {' '.join(syms)}"]
    if dfa.subsets is not None:
        for s, subset in enumerate(dfa.subsets):
            members = states_of(subset)
            line = f"# {s} : {{{','.join(map(str, members))}}}"
            if names:
                line += f"  [{','.join(names[q] for q in members)}]"
            lines.append(line)
    for s, row in enumerate(dfa.delta):
        lines += [f"{s} {syms[a]} {t}" for a, t in enumerate(row)]
    lines.append(f"initial {dfa.initial}")
    lines.append(" ".join(["accepting", *map(str, sorted(dfa.accepting))]))
    return "\n".join(lines) + "\n"


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _ints(fields: Iterable[str], lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise AutomatonFormatError(f"line {lineno}: expected state ids") from None


def _parse(text: str, kind: str):
    records = list(_records(text))
    if not records or records[0][1][0] != kind:
        raise AutomatonFormatError(f"missing '{kind} <states> <symbols...>' header")
    lineno, head = records[0]
    if len(head) < 3:
        raise AutomatonFormatError(f"line {lineno}: header needs a state count and symbols")
    n = _ints(head[1:2], lineno)[0]
    try:
        alphabet = Alphabet(tuple(head[2:]))
    except ValueError as exc:
        raise AutomatonFormatError(f"line {lineno}: {exc}") from None
    edges, initial, accepting = [], None, None
    for lineno, fields in records[1:]:
        if fields[0] == "initial":
            initial = _ints(fields[1:], lineno)
        elif fields[0] == "accepting":
            accepting = _ints(fields[1:], lineno)
        elif len(fields) == 3:
            p, q = _ints((fields[0], fields[2]), lineno)
            try:
                a = alphabet.index(fields[1])
            except KeyError:
                raise AutomatonFormatError(f"line {lineno}: unknown symbol {fields[1]!r}") from None
            edges.append((p, a, q))
        else:
            raise AutomatonFormatError(f"line {lineno}: cannot parse {' '.join(fields)!r}")
    if initial is None or accepting is None:
        raise AutomatonFormatError("both 'initial' and 'accepting' lines are required")
    return alphabet, n, edges, initial, accepting


def _names(text: str) -> list[str] | None:
    for raw in text.splitlines():
        if raw.startswith("# names "):
            return raw[len("# names "):].split()
    return None


def parse_nfa(text: str) -> Nfa:
    alphabet, n, edges, initial, accepting = _parse(text, "nfa")
    try:
        return Nfa.from_edges(alphabet, n, edges, initial, accepting, _names(text))
    except ValueError as exc:
        raise AutomatonFormatError(str(exc)) from None


def parse_dfa(text: str) -> Dfa:
    alphabet, n, edges, initial, accepting = _parse(text, "dfa")
    if len(initial) != 1:
        raise AutomatonFormatError("a DFA has exactly one initial state")
    table = [[None] * len(alphabet) for _ in range(n)]
    try:
        for p, a, q in edges:
            if table[p][a] is not None:
                raise AutomatonFormatError(f"state {p} has two {alphabet.symbols[a]!r} transitions")
            table[p][a] = q
    except IndexError:
        raise AutomatonFormatError("state id out of range") from None
    if any(t is None for row in table for t in row):
        raise AutomatonFormatError("transition function is not total")
    subsets = []
    for raw in text.splitlines():
        if raw.startswith("# ") and " : {" in raw:
            body = raw.split(" : {", 1)[1].split("}", 1)[0]
            ids = [int(x) for x in body.split(",") if x.strip()]
            subsets.append(sum(1 << q for q in ids))
    try:
        return Dfa(alphabet, n, initial[0], tuple(tuple(r) for r in table),
                   frozenset(accepting), tuple(subsets) if len(subsets) == n else None)
    except ValueError as exc:
        raise AutomatonFormatError(str(exc)) from None


# -- DOT -------------------------------------------------------------------

def _quote(s: str) -> str:
    return '"{}"'.format(s.replace('"', r'\"'))


def nfa_to_dot(nfa: Nfa, title: str = "nfa") -> str:
    out = [f"digraph {_quote(title)} {{", "  rankdir=LR;"]
    for q in range(nfa.state_count):
        shape = "doublecircle" if q in nfa.accepting else "circle"
        out.append(f"  {q} [label={_quote(nfa.name(q))} shape={shape}];")
    for q in sorted(nfa.initial):
        out.append(f"  start{q} [shape=point]; start{q} -> {q};")
    labels: dict = {}
    for p, a, q in nfa.edges():
        labels.setdefault((p, q), []).append(nfa.alphabet.symbols[a])
    for (p, q), syms in labels.items():
        out.append(f"  {p} -> {q} [label={_quote(','.join(syms))}];")
    out.append("}")
    return "\n".join(out) + "\n"


def dfa_to_dot(dfa: Dfa, title: str = "dfa", names: list[str] | None = None) -> str:
    out = [f"digraph {_quote(title)} {{", "  rankdir=LR;"]
    for s in range(dfa.state_count):
        shape = "doublecircle" if s in dfa.accepting else "circle"
        label = str(s)
        if dfa.subsets is not None:
            members = states_of(dfa.subsets[s])
            label = "{" + ",".join(names[q] if names else str(q) for q in members) + "}"
        out.append(f"  {s} [label={_quote(label)} shape={shape}];")
    out.append(f"  start [shape=point]; start -> {dfa.initial};")
    labels: dict = {}
    for s, row in enumerate(dfa.delta):
        for a, t in enumerate(row):
            labels.setdefault((s, t), []).append(dfa.alphabet.symbols[a])
    for (s, t), syms in labels.items():
        out.append(f"  {s} -> {t} [label={_quote(','.join(syms))}];")
    out.append("}")
    return "\n".join(out) + "\n"
