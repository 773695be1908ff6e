"""Regular expressions to DFAs through NFAs that remember the last symbol."""

from lastsym.dfa import (
    Dfa, SubsetBudgetExceeded, SubsetStats, determinize, equivalent,
    first_method_bound, minimize, second_method_bound, separating_word,
)
from lastsym.nfa import (
    Nfa, SymbolPartition, build_nfa, check_epsilon_free_language_equality,
    symbol_partition,
)
from lastsym.regex import (
    Alphabet, RegexSyntaxError, enumerate_words, matches, parse, to_string, width,
)
from lastsym.unary import UnaryProfile, landau, unary_orbit, verify_unary_lemma
from lastsym.witness import (
    WitnessSpec, certify, lower_bound, select_primes, shift_word, witness_nfa,
    witness_regex,
)

__version__ = "0.1.0"
