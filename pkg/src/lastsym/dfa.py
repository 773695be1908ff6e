"""Subset construction with reachable-subset accounting, minimization,
equivalence, and the two subset-counting bounds."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

from lastsym.nfa import Nfa, SymbolPartition, mask_of, states_of
from lastsym.regex import Alphabet, Word

DEFAULT_MAX_SUBSETS = 1 << 20


class SubsetBudgetExceeded(RuntimeError):
    """The subset construction discovered more subsets than allowed."""

    def __init__(self, limit: int):
        super().__init__(f"more than {limit} reachable subsets")
        self.limit = limit


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    state_count: int
    initial: int
    delta: Tuple[Tuple[int, ...], ...]     # delta[state][symbol], total
    accepting: frozenset
    subsets: Tuple[int, ...] | None = None  # NFA subset (bitmask) per state

    def __post_init__(self):
        k = len(self.alphabet)
        if len(self.delta) != self.state_count:
            raise ValueError("transition table must have one row per state")
        for row in self.delta:
            if len(row) != k or any(not 0 <= t < self.state_count for t in row):
                raise ValueError("transition function must be total and in range")
        if not 0 <= self.initial < self.state_count:
            raise ValueError("initial state out of range")
        if self.subsets is not None and len(self.subsets) != self.state_count:
            raise ValueError("subset back-map must cover every state")

    def run(self, word: Sequence[int], start: int | None = None) -> int:
        s = self.initial if start is None else start
        for a in word:
            s = self.delta[s][a]
        return s

    def accepts(self, word: Sequence[int]) -> bool:
        return self.run(word) in self.accepting


@dataclass(frozen=True)
class SubsetStats:
    total: int
    # per_symbol[a]: reachable nonempty subsets, other than the initial one,
    # that lie inside Q_a
    per_symbol: Tuple[int, ...]
    empty_reachable: bool
    initial_reentered: bool
    # reachable subsets inside no Q_a (always 0 for last-symbol NFAs)
    unclassified: int

    @property
    def accounted(self) -> int:
        return 1 + sum(self.per_symbol) + int(self.empty_reachable) + self.unclassified


def _image_tables(nfa: Nfa):
    """Per symbol, per 8-bit chunk of the subset, a 256-entry image table."""
    n = nfa.state_count
    chunks = (n + 7) // 8
    tables = []
    for a in range(len(nfa.alphabet)):
        per_chunk = []
        for c in range(chunks):
            base = [mask_of(nfa.transitions[q][a]) if q < n else 0
                    for q in range(8 * c, 8 * c + 8)]
            t = [0] * 256
            for byte in range(1, 256):
                low = byte & -byte
                t[byte] = t[byte ^ low] | base[low.bit_length() - 1]
            per_chunk.append(t)
        tables.append(per_chunk)
    return tables


def _make_image(tables):
    def img(subset: int, a: int) -> int:
        out = 0
        for t in tables[a]:
            if subset == 0:
                break
            out |= t[subset & 0xFF]
            subset >>= 8
        return out
    return img


def determinize(nfa: Nfa, max_subsets: int = DEFAULT_MAX_SUBSETS,
                partition: SymbolPartition | None = None) -> Tuple[Dfa, SubsetStats]:
    """Breadth-first subset construction from the initial set.

    States are numbered in discovery order, symbols explored in alphabet
    order. The empty subset becomes an explicit sink when reachable.
    """
    from lastsym.nfa import symbol_partition

    img = _make_image(_image_tables(nfa))
    k = len(nfa.alphabet)
    start = mask_of(nfa.initial)
    index = {start: 0}
    order = [start]
    delta: list = []
    initial_reentered = False
    i = 0
    while i < len(order):
        s = order[i]
        row = []
        for a in range(k):
            t = img(s, a)
            j = index.get(t)
            if j is None:
                if len(order) >= max_subsets:
                    raise SubsetBudgetExceeded(max_subsets)
                j = index[t] = len(order)
                order.append(t)
            if j == 0:
                initial_reentered = True
            row.append(j)
        delta.append(tuple(row))
        i += 1

    final = mask_of(nfa.accepting)
    dfa = Dfa(nfa.alphabet, len(order), 0, tuple(delta),
              frozenset(j for j, s in enumerate(order) if s & final), tuple(order))

    if partition is None:
        partition = symbol_partition(nfa)
    qmasks = [mask_of(qs) for qs in partition.q_sets]
    per_symbol = [0] * k
    unclassified = 0
    for s in order[1:]:
        if s == 0:
            continue
        for a, qm in enumerate(qmasks):
            if s & ~qm == 0:
                per_symbol[a] += 1
                break
        else:
            unclassified += 1
    stats = SubsetStats(
        total=len(order),
        per_symbol=tuple(per_symbol),
        empty_reachable=0 in index and start != 0,
        initial_reentered=initial_reentered,
        unclassified=unclassified,
    )
    return dfa, stats


def backmap_commutes(dfa: Dfa, nfa: Nfa) -> bool:
    """image(δ_DFA(S, a)) == union of δ_NFA(q, a) over q in S, for all S, a."""
    if dfa.subsets is None:
        return False
    steps = nfa.step_masks()
    for s, row in enumerate(dfa.delta):
        subset = dfa.subsets[s]
        for a, t in enumerate(row):
            expected = 0
            for q in states_of(subset):
                expected |= steps[a][q]
            if dfa.subsets[t] != expected:
                return False
    return True


# -- minimization ----------------------------------------------------------

def _reachable(dfa: Dfa) -> list[int]:
    seen = {dfa.initial}
    order = [dfa.initial]
    for s in order:
        for t in dfa.delta[s]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    return order


def _canonical(alphabet: Alphabet, initial: int, delta: Sequence[Sequence[int]],
               accepting: set, subsets: Sequence[int] | None = None) -> Dfa:
    """Renumber the part reachable from ``initial`` in BFS order."""
    index = {initial: 0}
    order = [initial]
    for s in order:
        for t in delta[s]:
            if t not in index:
                index[t] = len(order)
                order.append(t)
    return Dfa(
        alphabet, len(order), 0,
        tuple(tuple(index[t] for t in delta[s]) for s in order),
        frozenset(index[s] for s in order if s in accepting),
        tuple(subsets[s] for s in order) if subsets is not None else None,
    )


def minimize(dfa: Dfa) -> Dfa:
    """Hopcroft partition refinement on the reachable part, then BFS renumbering."""
    states = _reachable(dfa)
    local = {s: i for i, s in enumerate(states)}
    n = len(states)
    k = len(dfa.alphabet)
    delta = [[local[dfa.delta[s][a]] for a in range(k)] for s in states]
    accepting = {local[s] for s in states if s in dfa.accepting}

    inverse = [[[] for _ in range(n)] for _ in range(k)]
    for s in range(n):
        for a in range(k):
            inverse[a][delta[s][a]].append(s)

    blocks: list[set] = []
    block_of = [0] * n
    for part in (accepting, set(range(n)) - accepting):
        if part:
            for s in part:
                block_of[s] = len(blocks)
            blocks.append(set(part))

    work = set()
    if len(blocks) == 2:
        work.add(0 if len(blocks[0]) <= len(blocks[1]) else 1)
    while work:
        splitter = set(blocks[work.pop()])
        for a in range(k):
            pre = set()
            for t in splitter:
                pre.update(inverse[a][t])
            touched: dict[int, set] = {}
            for s in pre:
                touched.setdefault(block_of[s], set()).add(s)
            for b, hit in touched.items():
                block = blocks[b]
                if len(hit) == len(block):
                    continue
                block -= hit
                new = len(blocks)
                blocks.append(hit)
                for s in hit:
                    block_of[s] = new
                if b in work:
                    work.add(new)
                else:
                    work.add(new if len(hit) <= len(block) else b)

    qdelta = [[0] * k for _ in blocks]
    for b, block in enumerate(blocks):
        s = next(iter(block))
        qdelta[b] = [block_of[delta[s][a]] for a in range(k)]
    qaccepting = {block_of[s] for s in accepting}
    return _canonical(dfa.alphabet, block_of[0], qdelta, qaccepting)


# -- equivalence -----------------------------------------------------------

def separating_word(d1: Dfa, d2: Dfa) -> Word | None:
    """A shortest word accepted by exactly one DFA, or None if none exists."""
    if d1.alphabet != d2.alphabet:
        raise ValueError("DFAs are over different alphabets")
    start = (d1.initial, d2.initial)
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if (p in d1.accepting) != (q in d2.accepting):
            word = []
            while parent[pair] is not None:
                pair, a = parent[pair]
                word.append(a)
            return tuple(reversed(word))
        for a in range(len(d1.alphabet)):
            nxt = (d1.delta[p][a], d2.delta[q][a])
            if nxt not in parent:
                parent[nxt] = (pair, a)
                queue.append(nxt)
    return None


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    return separating_word(d1, d2) is None


# -- counting bounds -------------------------------------------------------

def pow2_half_ceil(e2: int) -> int:
    """Exact ceil(2 ** (e2 / 2)) for a non-negative integer ``e2``."""
    if e2 % 2 == 0:
        return 1 << (e2 // 2)
    x = 1 << e2
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def first_method_bound(partition: SymbolPartition, n: int) -> int:
    """ceil(max(2^(n/2+1), 2^(n1+1))), exact integer arithmetic."""
    if not partition.remembers:
        raise ValueError("first-method bound needs an NFA that remembers the last symbol")
    return max(pow2_half_ceil(n + 2), 1 << (partition.n1 + 1))


def tail_bound(m: int) -> int:
    """Explicit stand-in for the O(m^2) pre-period term."""
    return m * m


def second_method_bound(n: int, n1: int,
                        landau: Callable[[int], int] | None = None,
                        tail: Callable[[int], int] = tail_bound) -> int:
    """(2^(n-n1) + 1) * (g(n1) + tail(n1))."""
    if not 0 <= n1 <= n:
        raise ValueError("need 0 <= n1 <= n")
    if landau is None:
        from lastsym.unary import landau_value as landau
    return ((1 << (n - n1)) + 1) * (landau(n1) + tail(n1))


def accounting_bound(partition: SymbolPartition) -> int:
    """1 + sum(2^n_i - 1) + 1: initial subset, nonempty subsets per Q_a, empty set."""
    return 2 + sum((1 << s) - 1 for s in partition.sizes)
