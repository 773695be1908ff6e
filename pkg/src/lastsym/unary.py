"""Landau's function and tail/period analysis of unary subset sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from lastsym.nfa import Nfa, image, mask_of, states_of

LANDAU_CAP = 200


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


@lru_cache(maxsize=None)
def landau_table(limit: int) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
    """``table[n] = (g(n), parts)`` for 0 <= n <= limit.

    Knapsack over primes: each prime contributes at most one power, since
    two powers of the same prime never beat the larger one alone.
    ``parts`` lists the chosen prime powers in increasing order.
    """
    if not 0 <= limit <= LANDAU_CAP:
        raise ValueError(f"landau is capped at n <= {LANDAU_CAP}")
    best = [(1, ())] * (limit + 1)
    for p in primes_upto(limit):
        new = list(best)
        for budget in range(p, limit + 1):
            q = p
            while q <= budget:
                value, parts = best[budget - q]
                if value * q > new[budget][0]:
                    new[budget] = (value * q, parts + (q,))
                q *= p
        best = new
    return tuple((v, tuple(sorted(ps))) for v, ps in best)


def landau(n: int) -> Tuple[int, Tuple[int, ...]]:
    """g(n), the largest lcm of positive integers summing to at most n,
    with one maximizing multiset (``()`` stands for the empty sum)."""
    if not 0 <= n <= LANDAU_CAP:
        raise ValueError(f"landau is capped at 0 <= n <= {LANDAU_CAP}")
    return landau_table(LANDAU_CAP)[n]


def landau_value(n: int) -> int:
    return landau(n)[0]


# -- unary orbits ----------------------------------------------------------

@dataclass(frozen=True)
class UnaryProfile:
    states: int
    tail: int
    period: int
    reachable_subset_count: int


def _single_symbol(nfa: Nfa, symbol: int | None) -> int:
    if symbol is not None:
        return symbol
    if len(nfa.alphabet) != 1:
        raise ValueError("NFA is not unary; pass the symbol to follow")
    return 0


def unary_orbit(nfa: Nfa, start: int | frozenset | set | tuple,
                symbol: int | None = None) -> UnaryProfile:
    """Iterate S -> δ(S, a) from ``start`` until the first repeat.

    ``start`` is a bitmask or a collection of state ids. Only transitions
    by ``symbol`` are followed; accepting states play no role.
    """
    a = _single_symbol(nfa, symbol)
    step = [mask_of(nfa.transitions[q][a]) for q in range(nfa.state_count)]
    s = start if isinstance(start, int) else mask_of(start)
    seen: dict[int, int] = {}
    i = 0
    while s not in seen:
        seen[s] = i
        s = image(s, step)
        i += 1
    tail = seen[s]
    return UnaryProfile(nfa.state_count, tail, i - tail, i)


def _reachable_states(step: list[int], start: int) -> list[int]:
    seen = set(states_of(start))
    todo = list(seen)
    while todo:
        q = todo.pop()
        for r in states_of(step[q]):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return sorted(seen)


def _sccs(nodes: list[int], succ) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    low[work[-1][0]] = min(low[work[-1][0]], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(sorted(comp))
    return out


def scc_cycle_gcds(nfa: Nfa, start, symbol: int | None = None) -> list[int]:
    """gcd of cycle lengths for each cyclic SCC reachable from ``start``.

    Within an SCC, BFS depths from any root give the gcd as the gcd of
    ``depth(u) + 1 - depth(v)`` over its internal edges ``u -> v``; each
    non-tree edge closes one fundamental cycle.
    """
    a = _single_symbol(nfa, symbol)
    step = [mask_of(nfa.transitions[q][a]) for q in range(nfa.state_count)]
    s = start if isinstance(start, int) else mask_of(start)
    nodes = _reachable_states(step, s)
    gcds = []
    for comp in _sccs(nodes, lambda q: states_of(step[q])):
        members = set(comp)
        edges = [(u, v) for u in comp for v in states_of(step[u]) if v in members]
        if not edges:
            continue
        depth = {comp[0]: 0}
        queue = [comp[0]]
        for u in queue:
            for v in states_of(step[u]):
                if v in members and v not in depth:
                    depth[v] = depth[u] + 1
                    queue.append(v)
        g = 0
        for u, v in edges:
            g = math.gcd(g, abs(depth[u] + 1 - depth[v]))
        gcds.append(g)
    return gcds


@dataclass(frozen=True)
class UnaryLemmaReport:
    profile: UnaryProfile
    reachable_states: int       # m: states reachable from the start set
    landau_bound: int           # g(m)
    period_ok: bool             # period <= g(m)
    period_divides_lcm: bool    # period | lcm of the SCC cycle gcds
    tail_exceeds_square: bool   # soft flag: tail > m^2

    @property
    def ok(self) -> bool:
        return self.period_ok and self.period_divides_lcm


def verify_unary_lemma(nfa: Nfa, start, symbol: int | None = None) -> UnaryLemmaReport:
    a = _single_symbol(nfa, symbol)
    s = start if isinstance(start, int) else mask_of(start)
    step = [mask_of(nfa.transitions[q][a]) for q in range(nfa.state_count)]
    m = len(_reachable_states(step, s))
    profile = unary_orbit(nfa, s, a)
    g = landau_value(m)
    lcm = math.lcm(*scc_cycle_gcds(nfa, s, a))
    return UnaryLemmaReport(
        profile=profile,
        reachable_states=m,
        landau_bound=g,
        period_ok=profile.period <= g,
        period_divides_lcm=lcm % profile.period == 0,
        tail_exceeds_square=profile.tail > m * m,
    )
