"""Reduced words in free groups of arbitrary finite rank.

A word is stored as a tuple of ``(generator, exponent)`` syllables with no
two adjacent syllables on the same generator and no zero exponents.  Python
integers are unbounded, so exponent arithmetic cannot overflow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Tuple, Union

Syllable = Tuple[str, int]

_IDENT = re.compile(r"[A-Za-z][0-9]*")
_INT = re.compile(r"-?[0-9]+")


class ParseError(ValueError):
    """Raised for malformed word text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, text: str, index: int):
        self.text = text
        self.offset = len(text[:index].encode("utf-8"))
        offset = self.offset
        super().__init__(f"{message} at offset {offset} in {text!r}")


class SubstitutionError(KeyError):
    """A generator of the word has no image under the substitution."""


def is_generator_name(name: str) -> bool:
    return isinstance(name, str) and _IDENT.fullmatch(name) is not None


def _reduce(syllables: Iterable[Syllable]) -> Tuple[Syllable, ...]:
    out: list = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            if merged:
                out[-1] = (gen, merged)
            else:
                out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    syllables: Tuple[Syllable, ...] = ()

    def __post_init__(self):
        # Normalise whatever was handed in; a Word is always reduced.
        sylls = []
        for gen, exp in self.syllables:
            if not is_generator_name(gen):
                raise ValueError(f"invalid generator name {gen!r}")
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError(f"exponent must be an int, got {exp!r}")
            sylls.append((gen, exp))
        object.__setattr__(self, "syllables", _reduce(sylls))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        return cls(((name, exp),))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Iterator[Syllable]:
        return iter(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def generators(self) -> frozenset:
        return frozenset(g for g, _ in self.syllables)

    def __lt__(self, other: "Word") -> bool:
        return self.syllables < other.syllables


WordLike = Union[Word, str]


def as_word(w: WordLike) -> Word:
    return w if isinstance(w, Word) else parse(w)


def parse(text: str) -> Word:
    """Parse ``term ("*" term)*`` text, e.g. ``"y*x^-1*y"``; ``"1"`` is the identity."""
    pos = 0
    n = len(text)

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if text[pos:pos + 1] == "1" and skip_ws(pos + 1) == n:
        return Word()

    sylls = []
    while True:
        pos = skip_ws(pos)
        m = _IDENT.match(text, pos)
        if m is None:
            raise ParseError("expected generator name", text, pos)
        gen = m.group()
        pos = skip_ws(m.end())
        exp = 1
        if pos < n and text[pos] == "^":
            pos = skip_ws(pos + 1)
            m = _INT.match(text, pos)
            if m is None:
                raise ParseError("expected integer exponent", text, pos)
            exp = int(m.group())
            if exp == 0:
                raise ParseError("zero exponent", text, pos)
            pos = skip_ws(m.end())
        sylls.append((gen, exp))
        if pos == n:
            break
        if text[pos] != "*":
            raise ParseError("expected '*'", text, pos)
        pos += 1
    return Word(tuple(sylls))


def format_word(w: Word) -> str:
    """Canonical text: ``"*"``-joined syllables, exponent 1 omitted, identity as ``"1"``."""
    if not w.syllables:
        return "1"
    return "*".join(g if e == 1 else f"{g}^{e}" for g, e in w.syllables)


def format_tex(w: Word) -> str:
    """Compact TeX-style rendering such as ``y z^{-1} y^{-1} x z``."""
    if not w.syllables:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{{{e}}}" for g, e in w.syllables)


def concat(lhs: Word, rhs: Word) -> Word:
    left = list(lhs.syllables)
    right = list(rhs.syllables)
    i = 0
    # Cancel across the seam, merging at most one pair of syllables.
    while left and i < len(right):
        g, e = right[i]
        if left[-1][0] != g:
            break
        merged = left[-1][1] + e
        if merged:
            left[-1] = (g, merged)
            i += 1
            break
        left.pop()
        i += 1
    out = Word.__new__(Word)
    object.__setattr__(out, "syllables", tuple(left) + tuple(right[i:]))
    return out


def product(words: Iterable[Word]) -> Word:
    out = Word()
    for w in words:
        out = concat(out, w)
    return out


def invert(w: Word) -> Word:
    out = Word.__new__(Word)
    object.__setattr__(out, "syllables", tuple((g, -e) for g, e in reversed(w.syllables)))
    return out


def power(w: Word, k: int) -> Word:
    if k < 0:
        return power(invert(w), -k)
    result = Word()
    base = w
    while k:
        if k & 1:
            result = concat(result, base)
        k >>= 1
        if k:
            base = concat(base, base)
    return result


def substitute(w: Word, assignments: Mapping[str, WordLike]) -> Word:
    """Image of ``w`` under the homomorphism sending each generator to its assigned word."""
    images = {}
    out = Word()
    for g, e in w.syllables:
        if g not in images:
            try:
                images[g] = as_word(assignments[g])
            except KeyError:
                raise SubstitutionError(f"generator {g!r} has no image") from None
        out = concat(out, power(images[g], e))
    return out


def syllable_length(w: Word) -> int:
    return len(w.syllables)


def count_syllables_of(w: Word, gen: str) -> int:
    return sum(1 for g, _ in w.syllables if g == gen)
