import random

import pytest
from hypothesis import given, settings, strategies as st

from lastsym.regex import (
    Alphabet, Concat, EmptySet, Epsilon, RegexSyntaxError, Star, Symbol, Union,
    enumerate_words, matches, parse, random_regex, repeat, to_string, width,
)


def test_parse_star_binds_tightest(ab):
    ast = parse("a(b|ε)*", ab)
    assert ast == Concat(Symbol(0), Star(Union(Symbol(1), Epsilon())))
    assert ast.width == 2


def test_parse_precedence_union_lowest():
    abc = Alphabet.from_string("abc")
    ast = parse("ab|c*", abc)
    assert ast == Union(Concat(Symbol(0), Symbol(1)), Star(Symbol(2)))
    assert ast.width == 3


def test_left_associativity(ab):
    assert parse("aba", ab) == Concat(Concat(Symbol(0), Symbol(1)), Symbol(0))
    assert parse("a|b|a", ab) == Union(Union(Symbol(0), Symbol(1)), Symbol(0))


@pytest.mark.parametrize("text,expected", [
    ("(a((a((b|ε)a){1}a)*|(a((b|ε)a){3}a)*)b)*", 14),
    ("(a((a((b|ε)a){1}a)*|(a((b|ε)a){3}a)*|(a((b|ε)a){5}a)*)b)*", 26),
    ("a((b|ε)a)a", 4),
    ("∅", 0),
    ("0*", 0),
    ("()", 0),
    ("a{0}", 0),
    ("(ab){3}", 6),
])
def test_widths(ab, text, expected):
    assert width(parse(text, ab)) == expected


def test_ascii_aliases(ab):
    assert parse("0", ab) == parse("∅", ab) == EmptySet()
    assert parse("()", ab) == parse("ε", ab) == Epsilon()
    assert parse("∅*", ab) == Star(EmptySet())


def test_repetition_sugar_expands(ab):
    assert parse("a{3}", ab) == Concat(Concat(Symbol(0), Symbol(0)), Symbol(0))
    assert parse("a{1}", ab) == Symbol(0)
    assert parse("(a|b){0}", ab) == Epsilon()
    assert parse("a{2}*", ab) == Star(Concat(Symbol(0), Symbol(0)))


@pytest.mark.parametrize("text,pos", [
    ("a|", 2), ("(a", 2), ("a)", 1), ("*a", 0), ("a{x}", 2), ("a{2", 2), ("", 0), ("|a", 0),
])
def test_syntax_errors_report_position(ab, text, pos):
    with pytest.raises(RegexSyntaxError) as info:
        parse(text, ab)
    assert info.value.position == pos


def test_unknown_symbol(ab):
    with pytest.raises(RegexSyntaxError, match="unknown symbol 'c'"):
        parse("ac", ab)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("|",))
    assert Alphabet.from_string("a,b,c").symbols == ("a", "b", "c")
    assert Alphabet.from_string("xy").encode("yx") == (1, 0)


def test_width_structural_rules():
    assert width(EmptySet()) == 0
    assert width(Epsilon()) == 0
    assert width(Symbol(3)) == 1
    e = Star(Union(Concat(Symbol(0), Symbol(1)), Epsilon()))
    assert width(e) == 2


def test_star_accepts_empty(ab):
    for text in ("a*", "∅*", "(ab)*", "(a((b|ε)a){3}a)*"):
        assert matches(parse(text, ab), ())


def test_witness_expression_membership(ab):
    # each β is starred, so it may contribute the empty word
    alpha = parse("(a((a((b|ε)a){1}a)*|(a((b|ε)a){3}a)*)b)*", ab)
    assert matches(alpha, ())
    assert matches(alpha, ab.encode("ab"))
    assert matches(alpha, ab.encode("aaaab"))
    assert matches(alpha, ab.encode("aabaab"))
    assert not matches(alpha, ab.encode("a"))
    assert not matches(alpha, ab.encode("aab"))
    assert not matches(alpha, ab.encode("b"))


def test_beta3(ab):
    beta3 = parse("(a((b|ε)a){1}a)*", ab)
    assert matches(beta3, ab.encode("aaa"))
    assert matches(beta3, ab.encode("abaa"))
    assert matches(beta3, ab.encode("aaaabaa"))
    assert not matches(beta3, ab.encode("aa"))
    assert not matches(beta3, ab.encode("aaba"))


def test_empty_set_matches_nothing(ab):
    e = parse("∅", ab)
    assert not any(matches(e, w) for w in enumerate_words(ab, 4))
    assert parse("a∅", ab).width == 1
    assert not matches(parse("a∅", ab), (0,))


def test_enumerate_words(ab):
    assert list(enumerate_words(ab, 0)) == [()]
    assert list(enumerate_words(ab, 1)) == [(), (0,), (1,)]
    words = list(enumerate_words(ab, 12))
    assert len(words) == 2 ** 13 - 1
    assert len(set(words)) == len(words)
    assert [len(w) for w in words] == sorted(len(w) for w in words)


def test_canonical_form_roundtrip(ab, regex_corpus):
    for e in regex_corpus:
        for ascii in (False, True):
            again = parse(to_string(e, ab, ascii=ascii), ab)
            assert again == e
            assert again.width == e.width


def test_nullable_matches_empty_word(regex_corpus):
    for e in regex_corpus:
        assert e.nullable == matches(e, ())


def _naive(e, w):
    """Membership by the set-of-splits definition, written independently."""
    if isinstance(e, Symbol):
        return w == (e.index,)
    if isinstance(e, EmptySet):
        return False
    if isinstance(e, Epsilon):
        return w == ()
    if isinstance(e, Union):
        return _naive(e.left, w) or _naive(e.right, w)
    if isinstance(e, Concat):
        return any(_naive(e.left, w[:i]) and _naive(e.right, w[i:]) for i in range(len(w) + 1))
    if not w:
        return True
    return any(_naive(e.inner, w[:i]) and _naive(e, w[i:]) for i in range(1, len(w) + 1))


def test_span_dp_agrees_with_naive_recursion(ab):
    rng = random.Random(5)
    for _ in range(150):
        e = random_regex(rng, rng.randint(0, 6), 2)
        for w in enumerate_words(ab, 5):
            assert matches(e, w) == _naive(e, w), (to_string(e, ab), w)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), m=st.integers(0, 4))
def test_repetition_equals_explicit_concatenation(seed, m):
    ab = Alphabet(("a", "b"))
    e = random_regex(random.Random(seed), 2, 2)
    sugar = parse(f"({to_string(e, ab)}){{{m}}}", ab)
    explicit = Epsilon() if m == 0 else e
    for _ in range(m - 1):
        explicit = Concat(explicit, e)
    assert sugar == repeat(e, m) == explicit
    for w in enumerate_words(ab, 6):
        assert matches(sugar, w) == matches(explicit, w)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 10_000), w=st.integers(0, 12))
def test_random_regex_has_requested_width(seed, w):
    assert random_regex(random.Random(seed), w, 3).width == w
