"""NFAs without ε-moves, and the width+1 state construction from expressions.

The construction keeps two properties through every induction step:

* the initial state (id 0) has no incoming transitions;
* each state is entered by one symbol only ("remembers the last symbol").

Subsets of states are handled as int bitmasks throughout the package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from lastsym.regex import (
    Alphabet, Concat, EmptySet, Epsilon, Regex, Star, Symbol, Union,
)


def mask_of(states: Iterable[int]) -> int:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def states_of(mask: int) -> Tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    state_count: int
    initial: frozenset
    # transitions[q][a] is a sorted, duplicate-free tuple of targets
    transitions: Tuple[Tuple[Tuple[int, ...], ...], ...]
    accepting: frozenset
    state_names: Tuple[str, ...] | None = None

    def __post_init__(self):
        if self.state_count < 1:
            raise ValueError("an NFA needs at least one state")
        k = len(self.alphabet)
        if len(self.transitions) != self.state_count or any(
                len(row) != k for row in self.transitions):
            raise ValueError("transition table shape does not match states x symbols")
        ids = set(self.initial) | set(self.accepting)
        for row in self.transitions:
            for targets in row:
                ids.update(targets)
        if ids and (min(ids) < 0 or max(ids) >= self.state_count):
            raise ValueError("state id out of range")
        if self.state_names is not None and len(self.state_names) != self.state_count:
            raise ValueError("state_names length must equal state_count")

    @classmethod
    def from_edges(cls, alphabet: Alphabet, state_count: int,
                   edges: Iterable[Tuple[int, int, int]],
                   initial: Iterable[int], accepting: Iterable[int],
                   state_names: Sequence[str] | None = None) -> "Nfa":
        """Build from ``(source, symbol_index, target)`` triples."""
        table = [[set() for _ in alphabet.symbols] for _ in range(state_count)]
        for p, a, q in edges:
            table[p][a].add(q)
        return cls(
            alphabet, state_count, frozenset(initial),
            tuple(tuple(tuple(sorted(t)) for t in row) for row in table),
            frozenset(accepting),
            tuple(state_names) if state_names is not None else None,
        )

    def edges(self) -> Iterable[Tuple[int, int, int]]:
        for p, row in enumerate(self.transitions):
            for a, targets in enumerate(row):
                for q in targets:
                    yield p, a, q

    def name(self, q: int) -> str:
        return self.state_names[q] if self.state_names else str(q)

    def step_masks(self) -> list[list[int]]:
        """masks[a][q] is the bitmask of δ(q, a)."""
        return [[mask_of(self.transitions[q][a]) for q in range(self.state_count)]
                for a in range(len(self.alphabet))]

    def accepts(self, word: Sequence[int]) -> bool:
        steps = self.step_masks()
        current = mask_of(self.initial)
        for a in word:
            current = image(current, steps[a])
        return bool(current & mask_of(self.accepting))


def image(subset: int, step: Sequence[int]) -> int:
    out = 0
    while subset:
        low = subset & -subset
        out |= step[low.bit_length() - 1]
        subset ^= low
    return out


# -- construction ----------------------------------------------------------

class _Fragment:
    """Mutable automaton under construction; state 0 is the initial state."""

    def __init__(self, size: int, k: int):
        self.size = size
        self.delta = [[set() for _ in range(k)] for _ in range(size)]
        self.accepting: set = set()

    def append(self, other: "_Fragment") -> dict:
        """Copy every non-initial state of ``other``; return the id map."""
        offset = self.size - 1
        remap = {0: 0}
        for q in range(1, other.size):
            remap[q] = q + offset
        for q in range(1, other.size):
            self.delta.append([{remap[t] for t in ts} for ts in other.delta[q]])
        self.size += other.size - 1
        return remap


def _build(ast: Regex, k: int) -> _Fragment:
    if isinstance(ast, Symbol):
        f = _Fragment(2, k)
        f.delta[0][ast.index].add(1)
        f.accepting.add(1)
        return f
    if isinstance(ast, EmptySet):
        return _Fragment(1, k)
    if isinstance(ast, Epsilon):
        f = _Fragment(1, k)
        f.accepting.add(0)
        return f
    if isinstance(ast, Union):
        f, g = _build(ast.left, k), _build(ast.right, k)
        remap = f.append(g)
        for a, targets in enumerate(g.delta[0]):
            f.delta[0][a].update(remap[t] for t in targets)
        # the joint initial state is accepting if either one was
        f.accepting.update(remap[q] for q in g.accepting)
        return f
    if isinstance(ast, Concat):
        f, g = _build(ast.left, k), _build(ast.right, k)
        left_accepting = set(f.accepting)
        remap = f.append(g)
        for a, targets in enumerate(g.delta[0]):
            moved = {remap[t] for t in targets}
            for q in left_accepting:
                f.delta[q][a].update(moved)
        f.accepting = {remap[q] for q in g.accepting if q != 0}
        if 0 in g.accepting:
            f.accepting |= left_accepting
        return f
    f = _build(ast.inner, k)
    for a, targets in enumerate(f.delta[0]):
        for q in f.accepting:
            f.delta[q][a].update(targets)
    f.accepting.add(0)
    return f


def build_nfa(ast: Regex, alphabet: Alphabet) -> Nfa:
    """NFA with ``width(ast) + 1`` states that remembers the last symbol.

    State 0 is the unique initial state and is never re-entered. States
    of a left operand are numbered before those of the right operand.
    """
    frag = _build(ast, len(alphabet))
    return Nfa(
        alphabet, frag.size, frozenset({0}),
        tuple(tuple(tuple(sorted(ts)) for ts in row) for row in frag.delta),
        frozenset(frag.accepting),
    )


# -- last-symbol partition -------------------------------------------------

@dataclass(frozen=True)
class SymbolPartition:
    q_sets: Tuple[frozenset, ...]   # q_sets[a]: states with an incoming a-edge
    remembers: bool

    @property
    def sizes(self) -> Tuple[int, ...]:
        """|Q_a| in non-increasing order."""
        return tuple(sorted((len(s) for s in self.q_sets), reverse=True))

    @property
    def n1(self) -> int:
        return self.sizes[0]


def symbol_partition(nfa: Nfa) -> SymbolPartition:
    sets = [set() for _ in nfa.alphabet.symbols]
    for _, a, q in nfa.edges():
        sets[a].add(q)
    seen: set = set()
    remembers = True
    for s in sets:
        if seen & s:
            remembers = False
        seen |= s
    return SymbolPartition(tuple(frozenset(s) for s in sets), remembers)


def initial_reenterable(nfa: Nfa) -> bool:
    return any(q in nfa.initial for _, _, q in nfa.edges())


def check_epsilon_free_language_equality(n1: Nfa, n2: Nfa, max_len: int) -> bool:
    """True iff both NFAs accept the same words of length <= ``max_len``.

    Breadth-first over pairs of current subsets; a pair already visited at
    a smaller depth is not expanded again, since it admits the same
    continuations with a larger remaining budget.
    """
    if n1.alphabet != n2.alphabet:
        raise ValueError("NFAs are over different alphabets")
    s1, s2 = n1.step_masks(), n2.step_masks()
    f1, f2 = mask_of(n1.accepting), mask_of(n2.accepting)
    start = (mask_of(n1.initial), mask_of(n2.initial))
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        (p, q), depth = queue.popleft()
        if bool(p & f1) != bool(q & f2):
            return False
        if depth == max_len:
            continue
        for a in range(len(n1.alphabet)):
            nxt = (image(p, s1[a]), image(q, s2[a]))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, depth + 1))
    return True
