import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lastsym.dfa import determinize, minimize
from lastsym.nfa import build_nfa, check_epsilon_free_language_equality, image, symbol_partition
from lastsym.regex import parse
from lastsym.unary import primes_upto
from lastsym.witness import (
    AB, WitnessSpec, certify, crt, cycle_state, lower_bound, select_primes, shift_vector,
    shift_word, witness_nfa, witness_regex, witness_regex_text,
)

from oracles import crt_bruteforce, moore_minimal_size


@pytest.mark.parametrize("cycles,width", [((3,), 6), ((3, 5), 14), ((3, 5, 7), 26), ((3, 4), 12)])
def test_regex_width(cycles, width):
    spec = WitnessSpec(cycles)
    assert spec.size == width
    assert witness_regex(spec).width == width
    assert parse(witness_regex_text(spec), AB) == witness_regex(spec)


def test_beta3_width():
    assert parse("(a((b|ε)a){1}a)*", AB).width == 4


@pytest.mark.parametrize("cycles,states", [((3,), 5), ((3, 5), 13), ((3, 5, 7), 25)])
def test_nfa_state_counts(cycles, states):
    spec = WitnessSpec(cycles)
    nfa = witness_nfa(spec)
    assert nfa.state_count == states == spec.nfa_states
    assert symbol_partition(nfa).remembers


def test_nfa_3_structure():
    nfa = witness_nfa(WitnessSpec((3,)))
    assert nfa.state_names == ("q^", "q1_0", "q1_1", "q1_2", "r1_1")
    named = {(nfa.name(p), "ab"[a], nfa.name(q)) for p, a, q in nfa.edges()}
    assert named == {
        ("q^", "a", "q1_0"),
        ("q1_0", "a", "q1_1"), ("q1_1", "a", "q1_2"), ("q1_2", "a", "q1_0"),
        ("q1_1", "b", "r1_1"), ("r1_1", "a", "q1_2"),
        ("q1_0", "b", "q^"),
    }
    assert nfa.initial == nfa.accepting == {0}


def test_only_initial_a_move_is_nondeterministic():
    nfa = witness_nfa(WitnessSpec((3, 5, 7)))
    branching = [(p, a) for p in range(nfa.state_count) for a in range(2)
                 if len(nfa.transitions[p][a]) > 1]
    assert branching == [(0, 0)]


@pytest.mark.parametrize("cycles", [(2, 3), (5, 7), (3, 6), (3, 5, 10), ()])
def test_invalid_specs(cycles):
    with pytest.raises(ValueError):
        WitnessSpec(cycles)


@pytest.mark.parametrize("n,cycles", [
    (6, (3,)), (13, (3,)), (14, (3, 5)), (25, (3, 7)), (26, (3, 5, 7)),
    (30, (3, 5, 7)), (38, (3, 5, 13)), (45, (3, 5, 13)),
])
def test_select_primes(n, cycles):
    assert select_primes(n).cycles == cycles


def _select_by_enumeration(n):
    """Largest k, then largest width, over all 3 < primes ... tuples."""
    odd = [p for p in primes_upto(n) if p > 2]
    best = (3,)
    for k in range(2, len(odd) + 1):
        head = tuple(odd[:k - 1])
        for p in odd[k - 1:]:
            spec = head + (p,)
            size = 2 * sum(spec) - 2 * k + 2
            if size <= n and (len(spec), size) > (len(best), 2 * sum(best) - 2 * len(best) + 2):
                best = spec
    return best


def test_select_primes_against_enumeration():
    for n in range(6, 120):
        spec = select_primes(n)
        assert spec.cycles == _select_by_enumeration(n), n
        assert spec.size <= n


def test_select_primes_rejects_tiny_budget():
    with pytest.raises(ValueError):
        select_primes(5)


@pytest.mark.parametrize("cycles,product,half", [
    ((3,), 6, 4), ((3, 5), 180, 128), ((3, 5, 7), 22680, 16384),
])
def test_lower_bound(cycles, product, half):
    assert lower_bound(WitnessSpec(cycles)) == (product, half)


@settings(max_examples=200, deadline=None)
@given(st.sets(st.integers(3, 200), min_size=1, max_size=12))
def test_half_product_inequality(values):
    # the inequality needs only distinct values >= 3, not coprimality
    product = 1
    for p in values:
        product *= 2 ** p - 2
    assert 2 * product >= 2 ** sum(values)


@pytest.mark.parametrize("residues,length", [((0, 0), 0), ((1, 2), 7), ((2, 4), 14)])
def test_shift_word(residues, length):
    spec = WitnessSpec((3, 5))
    assert crt_bruteforce(residues, (3, 5)) == length
    assert shift_word(spec, residues) == (0,) * length


def test_crt_exhaustive():
    for res in itertools.product(range(3), range(5), range(7)):
        assert crt(res, (3, 5, 7)) == crt_bruteforce(res, (3, 5, 7))


def test_shift_errors():
    with pytest.raises(ValueError):
        crt((0, 0), (4, 6))
    with pytest.raises(ValueError):
        shift_vector(WitnessSpec((3, 5)), (3, 0))


def test_shift_rotates_every_cycle():
    spec = WitnessSpec((3, 5, 7))
    nfa = witness_nfa(spec)
    step = nfa.step_masks()[0]
    rng = random.Random(1)
    for _ in range(50):
        parts = [rng.sample(range(p), rng.randint(1, p - 1)) for p in spec.cycles]
        residues = [rng.randrange(p) for p in spec.cycles]
        subset = sum(1 << cycle_state(spec, i + 1, j) for i, part in enumerate(parts) for j in part)
        expected = sum(1 << cycle_state(spec, i + 1, (j + d) % p)
                       for i, (part, d, p) in enumerate(zip(parts, residues, spec.cycles))
                       for j in part)
        for _ in shift_word(spec, residues):
            subset = image(subset, step)
        assert subset == expected


def test_regex_and_nfa_define_same_language():
    for cycles in [(3,), (3, 4), (3, 5), (3, 7)]:
        spec = WitnessSpec(cycles)
        built = build_nfa(witness_regex(spec), AB)
        assert check_epsilon_free_language_equality(built, witness_nfa(spec), 10)


# goldens frozen from the round-based refinement oracle in oracles.py
@pytest.mark.parametrize("cycles,golden", [((3,), 6), ((3, 4), 111), ((3, 5), 235), ((3, 7), 985)])
def test_certify_small(cycles, golden):
    cert = certify(WitnessSpec(cycles))
    assert cert.certified
    dfa, _ = determinize(witness_nfa(WitnessSpec(cycles)))
    assert moore_minimal_size(dfa) == golden
    assert cert.minimal_states == golden
    assert cert.minimal_states >= cert.lower_bound


def test_certify_reports_budget_skip():
    cert = certify(WitnessSpec((3, 5)), max_subsets=50)
    assert cert.skipped
    assert not cert.certified


def test_minimal_dfa_equals_reachable_subsets_for_3_5():
    dfa, stats = determinize(witness_nfa(WitnessSpec((3, 5))))
    assert minimize(dfa).state_count == stats.total == 235
