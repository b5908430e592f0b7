"""Characters on the ideal semilattice: evaluation, membership in the
character space, maximality, and the boundary classification.

Three kinds of characters cover everything the catalog needs: principal
characters of monoid elements, principal-filter characters of nonempty
ideals, and limit characters of reduced eventually periodic words.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .ideals import (
    EMPTY,
    PRINCIPAL,
    PUNCTURED,
    TAILX,
    TAILY,
    TAILZ,
    YBARE,
    GeneralizedIdeal,
    Ideal,
    IdealAlgebra,
)
from .words import (
    EPSILON,
    InfiniteWord,
    Letter,
    Word,
    format_word,
    is_reduced,
    parse_infinite_word,
    parse_word,
    word_type,
)


@dataclass(frozen=True)
class PrincipalChar:
    """chi_s: charges exactly the ideals containing s."""

    word: Word

    def __str__(self) -> str:
        return f"chi {format_word(self.word)}"


@dataclass(frozen=True)
class IdealChar:
    """<A>: charges exactly the ideals containing A."""

    ideal: Ideal

    def __str__(self) -> str:
        return f"ideal {self.ideal}"


@dataclass(frozen=True)
class WordChar:
    """chi_w for an infinite reduced word: charges the ideals that
    eventually contain every truncation."""

    stream: InfiniteWord

    def __str__(self) -> str:
        return f"inf {self.stream}"


Character = Union[PrincipalChar, IdealChar, WordChar]


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown-at-bound"


class BoundaryClass(enum.Enum):
    MAX_TYPE1 = "MaxType1"
    IDEAL_X = "IdealX"
    IDEAL_Y = "IdealY"
    WORD_TYPE2 = "WordType2"
    NOT_BOUNDARY = "NotBoundary"


class CharacterSpace:
    """Character evaluation and classification for one catalog monoid."""

    def __init__(self, ideals: IdealAlgebra):
        self.ideals = ideals
        self.pres = ideals.pres

    # -- construction -----------------------------------------------------

    def principal(self, word: Word) -> PrincipalChar:
        return PrincipalChar(self.pres.normal_form(word))

    def of_ideal(self, a: Ideal) -> Character:
        if a.tag == EMPTY:
            raise ValueError("characters of the empty ideal do not exist")
        if a.tag == PRINCIPAL:
            return PrincipalChar(a.prefix)
        return IdealChar(a)

    def of_stream(self, w: InfiniteWord) -> WordChar:
        if not is_reduced(w):
            raise ValueError("word characters require a reduced infinite word")
        return WordChar(w)

    def parse(self, text: str) -> Character:
        text = text.strip()
        if text.startswith("chi "):
            return self.principal(parse_word(text[4:]))
        if text.startswith("ideal "):
            return self.of_ideal(self.ideals.parse(text[6:]))
        if text.startswith("inf "):
            return self.of_stream(parse_infinite_word(text[4:]))
        raise ValueError("character syntax: 'chi <word>' | 'ideal <ideal>' | 'inf <prefix> | <period>'")

    # -- evaluation --------------------------------------------------------

    def _truncation_depth(self, chi: WordChar, a) -> int:
        s = chi.stream
        if isinstance(a, GeneralizedIdeal):
            inner = max([len(a.base.prefix)] + [len(m.prefix) for m in a.minus], default=0)
        else:
            inner = len(a.prefix)
        return len(s.prefix) + 2 * len(s.period) + inner + 3

    def evaluate(self, chi: Character, a: Ideal) -> int:
        if isinstance(chi, PrincipalChar):
            return int(self.ideals.contains(a, chi.word))
        if isinstance(chi, IdealChar):
            return int(self.ideals.subset(chi.ideal, a))
        if isinstance(chi, WordChar):
            n = self._truncation_depth(chi, a)
            return int(self.ideals.contains(a, chi.stream.head(n)))
        raise TypeError(chi)

    def evaluate_generalized(self, chi: Character, d: GeneralizedIdeal) -> int:
        if self.evaluate(chi, d.base) != 1:
            return 0
        return int(all(self.evaluate(chi, m) == 0 for m in d.minus))

    def equal(self, chi1: Character, chi2: Character) -> bool:
        return chi1 == chi2

    # -- membership in the character space ----------------------------------

    def in_omega(self, chi: Character) -> bool:
        """Whether chi is a limit of principal characters.

        Principal and word characters always are; an ideal character fails
        exactly when it charges a decomposable ideal without charging any
        part, and the only finite decompositions among the canonical shapes
        are the letter-cell splittings of punctured translates.
        """
        if isinstance(chi, (PrincipalChar, WordChar)):
            return True
        a = chi.ideal
        if PUNCTURED not in self.ideals.shapes:
            return True
        for u_len in range(len(a.prefix) + 1):
            u = a.prefix[:u_len]
            punct = self.ideals.make(PUNCTURED, u)
            if self.evaluate(chi, punct) == 1:
                parts: List[Ideal] = [
                    self.ideals.make(PRINCIPAL, u + (Letter(k),)) for k in self.pres.plain_letters
                ]
                if self.pres.indexed:
                    parts.append(self.ideals.make(TAILZ, u))
                if not any(self.evaluate(chi, part) == 1 for part in parts):
                    return False
        return True

    # -- maximality and the boundary ----------------------------------------

    def is_maximal(self, chi: Character, bound: int = 2) -> Verdict:
        """Maximality of the underlying filter.

        Exact for R through the boundary classification.  Elsewhere,
        principal and ideal characters are never maximal (the character
        charges something with a charged proper subideal below every
        candidate separator), and word characters get a bounded verdict.
        """
        if self.pres.name == "R":
            if isinstance(chi, WordChar):
                return Verdict.TRUE if word_type(chi.stream) == "type1" else Verdict.FALSE
            return Verdict.FALSE
        if isinstance(chi, (PrincipalChar, IdealChar)):
            return Verdict.FALSE
        pool = self._candidate_ideals(bound)
        for a in pool:
            if self.evaluate(chi, a) == 0 and self.maximality_witness(chi, a, pool) is None:
                return Verdict.UNKNOWN
        return Verdict.UNKNOWN

    def _candidate_ideals(self, bound: int) -> List[Ideal]:
        letters = self.pres.letters(-2, 2)
        out = [self.ideals.full]
        prefixes: List[Word] = [()]
        for _ in range(bound):
            prefixes = [w + (l,) for w in prefixes for l in letters]
            for w in prefixes:
                for tag in self.ideals.shapes:
                    out.append(self.ideals.make(tag, w))
            if len(prefixes) > 4000:
                break
        for tag in self.ideals.shapes:
            out.append(self.ideals.make(tag, ()))
        return sorted(set(out))

    def maximality_witness(self, chi: Character, a: Ideal, pool: Sequence[Ideal]) -> Optional[Ideal]:
        """A charged ideal disjoint from a, if one exists in the pool."""
        for y in pool:
            if self.evaluate(chi, y) == 1 and self.ideals.intersect(a, y).tag == EMPTY:
                return y
        return None

    def classify_boundary(self, chi: Character) -> BoundaryClass:
        if self.pres.name != "R":
            raise ValueError("the boundary classification is specific to the monoid R")
        if isinstance(chi, WordChar):
            return (
                BoundaryClass.MAX_TYPE1
                if word_type(chi.stream) == "type1"
                else BoundaryClass.WORD_TYPE2
            )
        if isinstance(chi, IdealChar):
            if chi.ideal.tag == TAILX:
                return BoundaryClass.IDEAL_X
            if chi.ideal.tag == TAILY:
                return BoundaryClass.IDEAL_Y
            return BoundaryClass.NOT_BOUNDARY
        return BoundaryClass.NOT_BOUNDARY

    def in_boundary(self, chi: Character) -> bool:
        return self.classify_boundary(chi) is not BoundaryClass.NOT_BOUNDARY

    def clopen_disjoint_from_boundary(self, x: Ideal, family: Sequence) -> bool:
        """Whether the clopen set {eta : eta(x)=1, eta(family)=0} misses the
        boundary; equivalent to the family being a foundation set for x."""
        if any(isinstance(f, GeneralizedIdeal) for f in family):
            ok, _ = self.ideals.is_foundation_generalized(x, list(family))
        else:
            ok, _ = self.ideals.is_foundation(x, list(family))
        return ok

    # -- separating neighbourhoods ------------------------------------------

    def separating_neighbourhood(self, chi: WordChar, n: int) -> "Neighbourhood":
        """Constraints recognizing the first n letters of a word character:
        any reduced word character satisfying them shares them."""
        if n < 1:
            raise ValueError("n must be at least 1")
        head = chi.stream.head(n)
        require_one = self.ideals.make(PRINCIPAL, head)
        require_zero: List[Ideal] = []
        if head[n - 1].kind in ("a", "c", "d", "f"):
            require_zero.append(self.ideals.make(TAILZ, head[: n - 1] + (Letter("b"),)))
        if n >= 2 and head[n - 2].kind in ("a", "c", "d", "f"):
            require_zero.append(self.ideals.make(TAILZ, head[: n - 2] + (Letter("b"),)))
        return Neighbourhood(require_one, tuple(dict.fromkeys(require_zero)))

    def matches_neighbourhood(self, chi: Character, nb: "Neighbourhood") -> bool:
        return self.evaluate(chi, nb.require_one) == 1 and all(
            self.evaluate(chi, z) == 0 for z in nb.require_zero
        )


@dataclass(frozen=True)
class Neighbourhood:
    require_one: Ideal
    require_zero: Tuple[Ideal, ...]

    def __str__(self) -> str:
        ones = f"1 on {self.require_one}"
        if not self.require_zero:
            return ones
        return ones + "; 0 on " + ", ".join(str(z) for z in self.require_zero)
