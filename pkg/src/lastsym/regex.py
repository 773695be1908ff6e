"""Regular expressions over an explicit alphabet.

Expressions are immutable trees. Every node caches its alphabetic width
(number of symbol occurrences) and whether it accepts the empty word.
``matches`` evaluates membership directly on the tree, without building
any automaton, and serves as the reference oracle for the constructions
in :mod:`lastsym.nfa` and :mod:`lastsym.dfa`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Tuple, Union as _U

Word = Tuple[int, ...]

EPSILON_CHARS = ("ε",)
EMPTYSET_CHARS = ("∅", "0")
_RESERVED = set("|*(){}") | set(EPSILON_CHARS) | set(EMPTYSET_CHARS)


class RegexSyntaxError(ValueError):
    """Raised for malformed expression text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in alphabet {self.symbols!r}")
        for s in self.symbols:
            if len(s) != 1 or not s.isprintable() or s.isspace() or s in _RESERVED:
                raise ValueError(f"invalid alphabet symbol {s!r}")

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        """``"ab"`` or ``"a,b"`` -> Alphabet(('a', 'b'))."""
        parts = text.split(",") if "," in text else list(text)
        return cls(tuple(p.strip() for p in parts if p.strip()))

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def encode(self, text: str) -> Word:
        return tuple(self.index(c) for c in text)

    def decode(self, word: Sequence[int]) -> str:
        return "".join(self.symbols[i] for i in word)


# -- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Symbol:
    index: int
    width: int = field(default=1, init=False, compare=False)
    nullable: bool = field(default=False, init=False, compare=False)


@dataclass(frozen=True)
class EmptySet:
    width: int = field(default=0, init=False, compare=False)
    nullable: bool = field(default=False, init=False, compare=False)


@dataclass(frozen=True)
class Epsilon:
    width: int = field(default=0, init=False, compare=False)
    nullable: bool = field(default=True, init=False, compare=False)


@dataclass(frozen=True)
class Concat:
    left: "Regex"
    right: "Regex"
    width: int = field(init=False, compare=False)
    nullable: bool = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "width", self.left.width + self.right.width)
        object.__setattr__(self, "nullable", self.left.nullable and self.right.nullable)


@dataclass(frozen=True)
class Union:
    left: "Regex"
    right: "Regex"
    width: int = field(init=False, compare=False)
    nullable: bool = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "width", self.left.width + self.right.width)
        object.__setattr__(self, "nullable", self.left.nullable or self.right.nullable)


@dataclass(frozen=True)
class Star:
    inner: "Regex"
    width: int = field(init=False, compare=False)
    nullable: bool = field(default=True, init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "width", self.inner.width)


Regex = _U[Symbol, EmptySet, Epsilon, Concat, Union, Star]


def width(ast: Regex) -> int:
    return ast.width


def repeat(ast: Regex, m: int) -> Regex:
    """m-fold concatenation, left-associated; ``repeat(e, 0)`` is ε."""
    if m < 0:
        raise ValueError("repetition count must be non-negative")
    if m == 0:
        return Epsilon()
    out = ast
    for _ in range(m - 1):
        out = Concat(out, ast)
    return out


# -- parsing ---------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0
        self._skip()

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self) -> str:
        c = self.text[self.pos]
        self.pos += 1
        self._skip()
        return c

    def expect(self, c: str):
        if self.peek() != c:
            got = "end of input" if self.peek() is None else repr(self.peek())
            raise RegexSyntaxError(f"expected {c!r}, got {got}", self.pos)
        self.take()

    def parse(self) -> Regex:
        ast = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.pos)
        return ast

    def union(self) -> Regex:
        ast = self.concat()
        while self.peek() == "|":
            self.take()
            ast = Union(ast, self.concat())
        return ast

    def concat(self) -> Regex:
        if self.peek() in (None, "|", ")"):
            raise RegexSyntaxError("empty operand", self.pos)
        ast = self.postfix()
        while self.peek() not in (None, "|", ")"):
            ast = Concat(ast, self.postfix())
        return ast

    def postfix(self) -> Regex:
        ast = self.atom()
        while self.peek() in ("*", "{"):
            if self.take() == "*":
                ast = Star(ast)
            else:
                ast = repeat(ast, self.count())
        return ast

    def count(self) -> int:
        start = self.pos
        digits = ""
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            digits += self.text[self.pos]
            self.pos += 1
        self._skip()
        if not digits or self.peek() != "}":
            raise RegexSyntaxError("malformed repetition count", start)
        self.take()
        return int(digits)

    def atom(self) -> Regex:
        pos = self.pos
        c = self.peek()
        if c == "(":
            self.take()
            if self.peek() == ")":
                self.take()
                return Epsilon()
            ast = self.union()
            self.expect(")")
            return ast
        if c in EPSILON_CHARS:
            self.take()
            return Epsilon()
        if c in EMPTYSET_CHARS:
            self.take()
            return EmptySet()
        if c in ("*", "{", "}"):
            raise RegexSyntaxError(f"operator {c!r} without operand", pos)
        self.take()
        try:
            return Symbol(self.alphabet.index(c))
        except KeyError:
            raise RegexSyntaxError(f"unknown symbol {c!r}", pos) from None


def parse(text: str, alphabet: Alphabet) -> Regex:
    """Parse ``text``; star binds tighter than concatenation, which binds
    tighter than ``|``. Binary operators associate to the left."""
    return _Parser(text, alphabet).parse()


def to_string(ast: Regex, alphabet: Alphabet, ascii: bool = False) -> str:
    """Fully parenthesized form; ``parse(to_string(e)) == e``."""
    if isinstance(ast, Symbol):
        return alphabet.symbols[ast.index]
    if isinstance(ast, EmptySet):
        return "0" if ascii else "∅"
    if isinstance(ast, Epsilon):
        return "()" if ascii else "ε"
    if isinstance(ast, Concat):
        return f"({to_string(ast.left, alphabet, ascii)}{to_string(ast.right, alphabet, ascii)})"
    if isinstance(ast, Union):
        return f"({to_string(ast.left, alphabet, ascii)}|{to_string(ast.right, alphabet, ascii)})"
    return f"({to_string(ast.inner, alphabet, ascii)})*"


# -- membership oracle -----------------------------------------------------

def _spans(ast: Regex, word: Sequence[int]) -> list[int]:
    """ends[i] is a bitmask of every j such that word[i:j] is in L(ast)."""
    n = len(word)
    if isinstance(ast, Symbol):
        return [(1 << (i + 1)) if i < n and word[i] == ast.index else 0
                for i in range(n + 1)]
    if isinstance(ast, EmptySet):
        return [0] * (n + 1)
    if isinstance(ast, Epsilon):
        return [1 << i for i in range(n + 1)]
    if isinstance(ast, Union):
        left, right = _spans(ast.left, word), _spans(ast.right, word)
        return [x | y for x, y in zip(left, right)]
    if isinstance(ast, Concat):
        left, right = _spans(ast.left, word), _spans(ast.right, word)
        out = []
        for i in range(n + 1):
            acc, mids = 0, left[i]
            while mids:
                k = (mids & -mids).bit_length() - 1
                acc |= right[k]
                mids &= mids - 1
            out.append(acc)
        return out
    # Star: least fixed point. Only non-empty factors recurse, so
    # positions are filled right to left.
    inner = _spans(ast.inner, word)
    out = [0] * (n + 1)
    for i in range(n, -1, -1):
        acc = 1 << i
        mids = inner[i] & ~((1 << (i + 1)) - 1)
        while mids:
            k = (mids & -mids).bit_length() - 1
            acc |= out[k]
            mids &= mids - 1
        out[i] = acc
    return out


def matches(ast: Regex, word: Sequence[int]) -> bool:
    return bool(_spans(ast, word)[0] >> len(word) & 1)


def enumerate_words(alphabet: Alphabet | int, max_len: int) -> Iterator[Word]:
    """All words of length 0..max_len, shortest first, then lexicographic."""
    k = alphabet if isinstance(alphabet, int) else len(alphabet)
    for length in range(max_len + 1):
        yield from itertools.product(range(k), repeat=length)


# -- random corpus ---------------------------------------------------------

def random_regex(rng: random.Random, target_width: int, k: int,
                 leaf_noise: float = 0.1) -> Regex:
    """Random expression over ``k`` symbols with width exactly ``target_width``.

    Width-0 leaves (ε, ∅) are mixed in with probability ``leaf_noise``
    so that empty-language and nullable corner cases show up in corpora.
    """
    def build(w: int, depth: int) -> Regex:
        if w == 0:
            base: Regex = Epsilon() if rng.random() < 0.7 else EmptySet()
            return Star(base) if rng.random() < 0.1 else base
        if w == 1 and rng.random() < 0.6:
            node: Regex = Symbol(rng.randrange(k))
        elif w == 1:
            node = Symbol(rng.randrange(k))
            zero = build(0, depth + 1)
            node = Concat(node, zero) if rng.random() < 0.5 else Union(zero, node)
        else:
            split = rng.randint(1, w - 1)
            if rng.random() < leaf_noise:
                split = rng.choice((0, w))
            left, right = build(split, depth + 1), build(w - split, depth + 1)
            node = Concat(left, right) if rng.random() < 0.55 else Union(left, right)
        if rng.random() < 0.3:
            node = Star(node)
        return node

    return build(target_width, 0)
