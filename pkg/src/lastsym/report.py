"""Per-instance bound reports and the width sweep.

Asymptotic columns evaluate the closed-form growth rates with every
o(1) term set to zero. They are context for the measured columns and are
never compared against anything.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, astuple, dataclass, fields, replace
from functools import lru_cache
from typing import Iterable, List

from lastsym.dfa import (
    DEFAULT_MAX_SUBSETS, SubsetBudgetExceeded, determinize, first_method_bound,
    minimize, second_method_bound,
)
from lastsym.nfa import Nfa, build_nfa, symbol_partition
from lastsym.regex import Alphabet, Regex, random_regex, to_string
from lastsym.witness import certify, select_primes, witness_nfa

UPPER_CONSTANT = math.log2(math.e) / (2 * math.sqrt(2))
LOWER_CONSTANT = math.sqrt(2)


class InvariantViolation(AssertionError):
    """A measured count exceeded a bound that must hold."""


def upper_asymptotic(n: int) -> float:
    """2^(n/2 + (log2 e / (2 sqrt 2)) sqrt(n ln n)), o(1) -> 0."""
    if n < 2:
        return float("nan")
    return 2.0 ** (n / 2 + UPPER_CONSTANT * math.sqrt(n * math.log(n)))


def lower_asymptotic(n: int) -> float:
    """2^(n/2 + sqrt 2 sqrt(n / ln n)), o(1) -> 0."""
    if n < 2:
        return float("nan")
    return 2.0 ** (n / 2 + LOWER_CONSTANT * math.sqrt(n / math.log(n)))


def landau_asymptotic(n: int) -> float:
    """e^(sqrt(n ln n)), o(1) -> 0."""
    if n < 2:
        return float("nan")
    return math.exp(math.sqrt(n * math.log(n)))


@dataclass(frozen=True)
class BoundReport:
    label: str
    kind: str
    width: int | None
    nfa_states: int
    n1: int
    remembers: bool
    reachable_subsets: int | None
    minimal_states: int | None
    first_method_bound: int | None
    second_method_bound: int | None
    lower_bound: int | None
    upper_asymptotic: float
    lower_asymptotic: float
    landau_asymptotic: float
    note: str = ""

    def check(self) -> None:
        """measured minimal <= measured reachable <= both method bounds."""
        if self.reachable_subsets is None or self.minimal_states is None:
            return
        if self.minimal_states > self.reachable_subsets:
            raise InvariantViolation(f"{self.label}: minimal > reachable")
        if not self.remembers:
            return
        for name in ("first_method_bound", "second_method_bound"):
            bound = getattr(self, name)
            if self.reachable_subsets > bound:
                raise InvariantViolation(
                    f"{self.label}: {self.reachable_subsets} reachable subsets > {name} {bound}")
        if self.lower_bound is not None and self.minimal_states < self.lower_bound:
            raise InvariantViolation(f"{self.label}: minimal DFA below the witness lower bound")

    @classmethod
    def header(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> List[str]:
        out = []
        for v in astuple(self):
            if v is None:
                out.append("")
            elif isinstance(v, bool):
                out.append("1" if v else "0")
            elif isinstance(v, float):
                out.append("nan" if math.isnan(v) else f"{v:.6e}")
            else:
                out.append(str(v))
        return out


def _asymptotics(n: int) -> dict:
    return dict(upper_asymptotic=upper_asymptotic(n),
                lower_asymptotic=lower_asymptotic(n),
                landau_asymptotic=landau_asymptotic(n))


def analyze_nfa(nfa: Nfa, label: str, kind: str = "nfa", width: int | None = None,
                max_subsets: int = DEFAULT_MAX_SUBSETS,
                lower_bound: int | None = None) -> BoundReport:
    """Determinize and minimize ``nfa`` and put the counts next to the bounds.

    A subset budget overrun yields a row with empty measured columns and a
    note, rather than an exception.
    """
    partition = symbol_partition(nfa)
    n = nfa.state_count
    first = first_method_bound(partition, n) if partition.remembers else None
    second = second_method_bound(n, partition.n1) if partition.remembers else None
    size = width if width is not None else n
    common = dict(label=label, kind=kind, width=width, nfa_states=n, n1=partition.n1,
                  remembers=partition.remembers, first_method_bound=first,
                  second_method_bound=second, lower_bound=lower_bound, **_asymptotics(size))
    try:
        dfa, stats = determinize(nfa, max_subsets, partition)
    except SubsetBudgetExceeded as exc:
        return BoundReport(reachable_subsets=None, minimal_states=None,
                           note=f"infeasible: {exc}", **common)
    return BoundReport(reachable_subsets=stats.total,
                       minimal_states=minimize(dfa).state_count, **common)


def analyze_regex(ast: Regex, alphabet: Alphabet, label: str | None = None,
                  max_subsets: int = DEFAULT_MAX_SUBSETS) -> BoundReport:
    nfa = build_nfa(ast, alphabet)
    return analyze_nfa(nfa, label or to_string(ast, alphabet), "regex",
                       width=ast.width, max_subsets=max_subsets)


@lru_cache(maxsize=None)
def _certified(cycles: tuple, max_subsets: int):
    from lastsym.witness import WitnessSpec
    return certify(WitnessSpec(cycles), max_subsets)


def witness_row(n: int, max_subsets: int = DEFAULT_MAX_SUBSETS) -> BoundReport:
    """Row for the largest-k witness fitting width ``n``, measured on its NFA."""
    spec = select_primes(n)
    nfa = witness_nfa(spec)
    partition = symbol_partition(nfa)
    cert = _certified(spec.cycles, max_subsets)
    note = f"cycles={spec}; o(1)->0"
    if cert.skipped:
        note += f"; infeasible: {cert.skipped}"
    elif not cert.certified:
        note += "; NOT CERTIFIED"
    report = BoundReport(
        label=f"witness n={n}", kind="witness", width=spec.size,
        nfa_states=nfa.state_count, n1=partition.n1, remembers=partition.remembers,
        reachable_subsets=cert.reachable_subsets, minimal_states=cert.minimal_states,
        first_method_bound=first_method_bound(partition, nfa.state_count),
        second_method_bound=second_method_bound(nfa.state_count, partition.n1),
        lower_bound=spec.lower_bound, note=note, **_asymptotics(n))
    if not cert.skipped and not cert.certified:
        raise InvariantViolation(f"witness {spec} failed certification: {cert}")
    return report


def sweep(n_min: int, n_max: int, seed: int, per_n: int = 2,
          max_subsets: int = DEFAULT_MAX_SUBSETS) -> List[BoundReport]:
    """One witness row and ``per_n`` random binary expressions per width.

    Each width draws from its own generator seeded by ``(seed, n)``, so a
    row does not depend on which other widths are swept.
    """
    alphabet = Alphabet(("a", "b"))
    rows = []
    for n in range(n_min, n_max + 1):
        if n >= 6:
            rows.append(witness_row(n, max_subsets))
        rng = random.Random(f"{seed}:{n}")
        for j in range(per_n):
            ast = random_regex(rng, n, len(alphabet))
            row = analyze_regex(ast, alphabet, f"random n={n} #{j}", max_subsets)
            expr = to_string(ast, alphabet, ascii=True)
            rows.append(replace(row, note=f"{expr}; {row.note}" if row.note else expr))
    for r in rows:
        r.check()
    return rows


def to_json(rows: Iterable[BoundReport]) -> str:
    """Rows as a JSON list of objects; NaN becomes null."""
    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v
    data = [{k: clean(v) for k, v in asdict(r).items()} for r in rows]
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def to_csv(rows: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BoundReport.header())
    for r in rows:
        writer.writerow(r.row())
    return buf.getvalue()
