"""Lower-bound witnesses: coprime a-cycles with b-shortcuts.

For cycle lengths ``(3, p2, ..., pk)`` this module builds the expression
``(a(β_p1 | ... | β_pk)b)*`` with ``β_p = (a((b|ε)a){p-2}a)*`` and the
matching NFA with ``2·Σp - 2k + 1`` states. Any DFA for the language needs
at least ``Π(2^p - 2)`` states; :func:`certify` checks that by exact
determinization and minimization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from lastsym.dfa import (
    DEFAULT_MAX_SUBSETS, SubsetBudgetExceeded, determinize, equivalent, minimize,
)
from lastsym.nfa import Nfa, build_nfa, check_epsilon_free_language_equality
from lastsym.regex import (
    Alphabet, Concat, Epsilon, Regex, Star, Symbol, Union, Word, repeat,
)
from lastsym.unary import primes_upto

AB = Alphabet(("a", "b"))
A, B = 0, 1


@dataclass(frozen=True)
class WitnessSpec:
    cycles: Tuple[int, ...]

    def __post_init__(self):
        cycles = tuple(int(p) for p in self.cycles)
        object.__setattr__(self, "cycles", cycles)
        if not cycles:
            raise ValueError("at least one cycle is required")
        if cycles[0] != 3:
            raise ValueError("the first cycle length must be 3")
        if any(p < 3 for p in cycles):
            raise ValueError("cycle lengths must be at least 3")
        for i, p in enumerate(cycles):
            for q in cycles[i + 1:]:
                if math.gcd(p, q) != 1:
                    raise ValueError(f"cycle lengths {p} and {q} are not coprime")

    @property
    def k(self) -> int:
        return len(self.cycles)

    @property
    def size(self) -> int:
        """Alphabetic width of the witness expression."""
        return 2 * sum(self.cycles) - 2 * self.k + 2

    @property
    def nfa_states(self) -> int:
        return self.size - 1

    @property
    def lower_bound(self) -> int:
        return math.prod((1 << p) - 2 for p in self.cycles)

    def __str__(self) -> str:
        return ",".join(map(str, self.cycles))


def beta(p: int) -> Regex:
    """``(a((b|ε)a){p-2}a)*``, width 2p - 2."""
    step = Concat(Union(Symbol(B), Epsilon()), Symbol(A))
    return Star(Concat(Concat(Symbol(A), repeat(step, p - 2)), Symbol(A)))


def witness_regex(spec: WitnessSpec) -> Regex:
    choice = beta(spec.cycles[0])
    for p in spec.cycles[1:]:
        choice = Union(choice, beta(p))
    return Star(Concat(Concat(Symbol(A), choice), Symbol(B)))


def witness_regex_text(spec: WitnessSpec) -> str:
    betas = "|".join(f"(a((b|ε)a){{{p - 2}}}a)*" for p in spec.cycles)
    return f"(a({betas})b)*"


def witness_states(spec: WitnessSpec) -> list[str]:
    """State names in id order: ``q^``, then per cycle ``qi_0..`` and ``ri_1..``."""
    names = ["q^"]
    for i, p in enumerate(spec.cycles, 1):
        names += [f"q{i}_{j}" for j in range(p)]
        names += [f"r{i}_{j}" for j in range(1, p - 1)]
    return names


def witness_nfa(spec: WitnessSpec) -> Nfa:
    names = witness_states(spec)
    sid = {name: i for i, name in enumerate(names)}
    edges = []
    for i, p in enumerate(spec.cycles, 1):
        edges.append((0, A, sid[f"q{i}_0"]))
        edges.append((sid[f"q{i}_0"], B, 0))
        for j in range(p):
            edges.append((sid[f"q{i}_{j}"], A, sid[f"q{i}_{(j + 1) % p}"]))
        for j in range(1, p - 1):
            edges.append((sid[f"q{i}_{j}"], B, sid[f"r{i}_{j}"]))
            edges.append((sid[f"r{i}_{j}"], A, sid[f"q{i}_{j + 1}"]))
    return Nfa.from_edges(AB, len(names), edges, {0}, {0}, names)


def cycle_state(spec: WitnessSpec, i: int, j: int) -> int:
    """Id of q_{i,j} (``i`` is 1-based as in the state names)."""
    return 1 + sum(2 * p - 2 for p in spec.cycles[:i - 1]) + j


# -- prime selection -------------------------------------------------------

def select_primes(n: int) -> WitnessSpec:
    """Witness with the most cycles whose expression width fits in ``n``.

    Uses the first k-1 odd primes and the largest prime p >= p_k that keeps
    the width within ``n``. With a single cycle the length stays 3.
    """
    if n < 6:
        raise ValueError("the smallest witness, (3), has width 6")
    primes = primes_upto(n)
    odd = primes[1:]
    k = 0
    while k < len(odd) and 2 * sum(odd[:k + 1]) - 2 * (k + 1) + 2 <= n:
        k += 1
    prime_set = frozenset(primes)
    while k > 1:
        fixed = odd[:k - 1]
        room = (n - (2 * sum(fixed) - 2 * k + 2)) // 2
        for p in range(room, odd[k - 1] - 1, -1):
            if p in prime_set:
                return WitnessSpec(tuple(fixed) + (p,))
        k -= 1
    return WitnessSpec((3,))


# -- lower bound and residue shifts ----------------------------------------

def lower_bound(spec: WitnessSpec) -> Tuple[int, int]:
    """(Π(2^p - 2), 2^(Σp - 1)); the first is at least the second for
    distinct cycle lengths."""
    product = spec.lower_bound
    half = 1 << (sum(spec.cycles) - 1)
    if len(set(spec.cycles)) == spec.k:
        assert product >= half, (spec.cycles, product, half)
    return product, half


@dataclass(frozen=True)
class ShiftVector:
    residues: Tuple[int, ...]
    length: int


def crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Least l >= 0 with l ≡ residues[i] (mod moduli[i]); moduli pairwise coprime."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    for i, m in enumerate(moduli):
        for m2 in moduli[i + 1:]:
            if math.gcd(m, m2) != 1:
                raise ValueError(f"moduli {m} and {m2} are not coprime")
    x, mod = 0, 1
    for r, m in zip(residues, moduli):
        # lift x (mod mod) to the solution modulo mod * m
        t = ((r - x) * pow(mod, -1, m)) % m
        x += mod * t
        mod *= m
    return x


def shift_vector(spec: WitnessSpec, residues: Sequence[int]) -> ShiftVector:
    if len(residues) != spec.k:
        raise ValueError("one residue per cycle is required")
    if any(not 0 <= d < p for d, p in zip(residues, spec.cycles)):
        raise ValueError("residue out of range")
    return ShiftVector(tuple(residues), crt(residues, spec.cycles))


def shift_word(spec: WitnessSpec, residues: Sequence[int]) -> Word:
    """``a^l`` rotating cycle i forward by residues[i] positions."""
    return (A,) * shift_vector(spec, residues).length


# -- certification ---------------------------------------------------------

@dataclass(frozen=True)
class Certification:
    cycles: Tuple[int, ...]
    regex_width: int
    nfa_states: int
    built_nfa_states: int
    lower_bound: int
    half_product: int
    reachable_subsets: int | None = None
    built_reachable_subsets: int | None = None
    minimal_states: int | None = None
    bounded_agreement: bool | None = None
    equivalent: bool | None = None
    skipped: str | None = None

    @property
    def certified(self) -> bool:
        return (self.skipped is None and bool(self.bounded_agreement)
                and bool(self.equivalent)
                and self.minimal_states is not None
                and self.minimal_states >= self.lower_bound)


def certify(spec: WitnessSpec, max_subsets: int = DEFAULT_MAX_SUBSETS,
            max_len: int = 10) -> Certification:
    """Build both witness forms, compare them, and minimize.

    The expression-derived and hand-built NFAs are compared on every word
    up to ``max_len`` and then exactly, via their DFAs. If determinization
    exceeds ``max_subsets`` the record is returned with ``skipped`` set.
    """
    ast = witness_regex(spec)
    a_nfa = witness_nfa(spec)
    built = build_nfa(ast, AB)
    product, half = lower_bound(spec)
    base = dict(cycles=spec.cycles, regex_width=ast.width,
                nfa_states=a_nfa.state_count, built_nfa_states=built.state_count,
                lower_bound=product, half_product=half)
    agree = check_epsilon_free_language_equality(built, a_nfa, max_len)
    try:
        d_witness, stats = determinize(a_nfa, max_subsets)
        d_built, built_stats = determinize(built, max_subsets)
    except SubsetBudgetExceeded as exc:
        return Certification(**base, bounded_agreement=agree, skipped=str(exc))
    minimal = minimize(d_witness)
    return Certification(
        **base,
        reachable_subsets=stats.total,
        built_reachable_subsets=built_stats.total,
        minimal_states=minimal.state_count,
        bounded_agreement=agree,
        equivalent=equivalent(d_witness, d_built),
    )
