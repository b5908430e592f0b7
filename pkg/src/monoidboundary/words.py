"""Letters, finite words, and eventually periodic infinite words.

Every catalog presentation lives on (a subset of) the alphabet
``{a, b, c, d, f}`` plus two integer-indexed families ``x_n``, ``y_n``.
A word is a tuple of letters; the empty tuple is the identity element
and is spelled ``e`` in text form.  Word equality is letter-by-letter
identity, not monoid equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction  # noqa: F401  (re-exported convenience for callers)
from typing import Iterator, NamedTuple, Optional, Sequence, Tuple

PLAIN_KINDS = ("a", "b", "c", "d", "f")
INDEXED_KINDS = ("x", "y")
ALL_KINDS = PLAIN_KINDS + INDEXED_KINDS


class Letter(NamedTuple):
    """One generator: ``a``..``f`` (index fixed at 0) or ``x_n`` / ``y_n``."""

    kind: str
    index: int = 0

    @property
    def indexed(self) -> bool:
        return self.kind in INDEXED_KINDS

    def shifted(self, k: int) -> "Letter":
        return Letter(self.kind, self.index + k) if self.indexed else self

    def __str__(self) -> str:
        return f"{self.kind}{self.index}" if self.indexed else self.kind


Word = Tuple[Letter, ...]

A = Letter("a")
B = Letter("b")
C = Letter("c")
D = Letter("d")
F = Letter("f")


def x(n: int) -> Letter:
    return Letter("x", n)


def y(n: int) -> Letter:
    return Letter("y", n)


EPSILON: Word = ()


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"token {position}: {message}")
        self.position = position


def parse_word(text: str) -> Word:
    """Parse whitespace-separated tokens ``a b c d f x<int> y<int>``; ``e`` is the empty word."""
    tokens = text.split()
    if tokens == ["e"]:
        return EPSILON
    letters = []
    for pos, tok in enumerate(tokens):
        if tok in PLAIN_KINDS:
            letters.append(Letter(tok))
        elif tok and tok[0] in INDEXED_KINDS:
            try:
                idx = int(tok[1:])
            except ValueError:
                raise WordSyntaxError(f"bad index in {tok!r}", pos) from None
            letters.append(Letter(tok[0], idx))
        elif tok == "e":
            raise WordSyntaxError("'e' is only valid as a standalone word", pos)
        else:
            raise WordSyntaxError(f"unknown letter {tok!r}", pos)
    return tuple(letters)


def format_word(word: Word) -> str:
    return " ".join(str(l) for l in word) if word else "e"


def concat(u: Word, v: Word) -> Word:
    return tuple(u) + tuple(v)


def shift_word(word: Word, k: int) -> Word:
    """Shift every x/y index by k (a monoid automorphism of each catalog presentation)."""
    return tuple(l.shifted(k) for l in word)


@dataclass(frozen=True)
class CountVector:
    m_b: int
    m_x: int
    m_y: int
    raw_a: int
    raw_c: int
    raw_d: int
    raw_f: int


def raw_counts(word: Word) -> CountVector:
    n = {k: 0 for k in ALL_KINDS}
    for l in word:
        n[l.kind] += 1
    return CountVector(m_b=n["b"], m_x=n["x"], m_y=n["y"],
                       raw_a=n["a"], raw_c=n["c"], raw_d=n["d"], raw_f=n["f"])


def count_kind(word: Word, kind: str) -> int:
    return sum(1 for l in word if l.kind == kind)


# The six patterns whose occurrence makes a word non-reduced, as
# (kind, kind, kind) triples with the third slot an indexed family.
_FORBIDDEN = (
    ("a", "b", "x"), ("a", "b", "y"),
    ("c", "b", "x"), ("c", "b", "y"),
    ("d", "b", "x"), ("f", "b", "y"),
)


def _window_reduced(letters: Sequence[Letter]) -> bool:
    for i in range(len(letters) - 2):
        trip = (letters[i].kind, letters[i + 1].kind, letters[i + 2].kind)
        if trip in _FORBIDDEN:
            return False
    return True


@dataclass(frozen=True)
class InfiniteWord:
    """Eventually periodic stream ``prefix . period period ...`` (period nonempty).

    Instances are canonicalized: the period is primitive and as much of the
    prefix as possible is rolled into the rotation of the period, so equality
    of values is equality of streams.
    """

    prefix: Word
    period: Word

    def __post_init__(self):
        prefix, period = tuple(self.prefix), tuple(self.period)
        if not period:
            raise ValueError("period must be nonempty")
        for d in range(1, len(period) + 1):
            if len(period) % d == 0 and period == period[:d] * (len(period) // d):
                period = period[:d]
                break
        while prefix and prefix[-1] == period[-1]:
            period = period[-1:] + period[:-1]
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def head(self, n: int) -> Word:
        out = list(self.prefix[:n])
        i = 0
        while len(out) < n:
            out.append(self.period[i % len(self.period)])
            i += 1
        return tuple(out)

    def letters(self) -> Iterator[Letter]:
        yield from self.prefix
        while True:
            yield from self.period

    def tail(self, m: int) -> "InfiniteWord":
        """The stream with its first m letters removed."""
        if m <= len(self.prefix):
            return InfiniteWord(self.prefix[m:], self.period)
        k = (m - len(self.prefix)) % len(self.period)
        return InfiniteWord((), self.period[k:] + self.period[:k])

    def __str__(self) -> str:
        return f"{format_word(self.prefix)} | {format_word(self.period)}"


def parse_infinite_word(text: str) -> InfiniteWord:
    if "|" not in text:
        raise ValueError("infinite word syntax is '<prefix> | <period>'")
    pre, per = text.split("|", 1)
    return InfiniteWord(parse_word(pre) if pre.strip() else EPSILON, parse_word(per))


def is_reduced(w) -> bool:
    """True iff no window of w matches a forbidden pattern.

    For an InfiniteWord the check runs on the prefix plus enough period
    repetitions for every distinct window to appear (at least two).
    """
    if isinstance(w, InfiniteWord):
        reps = max(2, 4 // len(w.period) + 1)
        return _window_reduced(w.prefix + w.period * reps)
    return _window_reduced(tuple(w))


# tau-word patterns: every word appearing on either side of a defining
# relation instance.  Encoded as kind tuples; "*" matches any letter.
_TAU_PATTERNS = (
    ("b", "x"), ("b", "y"),
    ("a", "b", "x"), ("a", "b", "y"),
    ("c", "b", "x"), ("c", "b", "y"),
    ("b", "x", "*"), ("b", "y", "*"),
    ("d", "b", "x", "*"), ("f", "b", "y", "*"),
)


def perp0(s: Word, t: Word) -> bool:
    """True iff every tau-word occurrence in st starting inside s also ends inside s."""
    w = tuple(s) + tuple(t)
    for i in range(len(s)):
        for pat in _TAU_PATTERNS:
            if i + len(pat) > len(w):
                continue
            if all(p == "*" or w[i + j].kind == p for j, p in enumerate(pat)):
                if i + len(pat) - 1 >= len(s):
                    return False
    return True


def word_type(w: InfiniteWord) -> str:
    """Classify a reduced eventually periodic word as "type1" or "type2"."""
    if not is_reduced(w):
        raise ValueError("word_type requires a reduced infinite word")
    kinds = {l.kind for l in w.period}
    if kinds & {"b", "x", "y"} or {"d", "f"} <= kinds:
        return "type1"
    return "type2"
