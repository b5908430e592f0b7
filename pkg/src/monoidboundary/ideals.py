"""Constructible right ideals in canonical form, and foundation-set oracles.

Every constructible right ideal of a catalog monoid is a left translate
of one of at most six base families:

==== =========================================
tag   set (w the stored prefix, in normal form)
==== =========================================
``0`` empty set
``R`` wS                       (principal)
``P`` w(S minus the identity)  (punctured)
``Z`` w(union of x_n S and y_n S over all n)
``X`` w(union of x_n w' S, w' != e)
``Y`` w(union of y_n w' S, w' != e)
``V`` w(union of y_n S over all n)
==== =========================================

Which tags occur depends on the presentation; intersections and letter
pullbacks are computed by a case analysis on the junction between the
prefix and the indexed families, driven by the presentation's absorber
structure (which letters vanish in front of ``b x_n`` / ``b y_n`` and
whether they need a trailing letter).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .rewrite import Presentation
from .words import B, EPSILON, Letter, Word, format_word, parse_word

EMPTY = "0"
PRINCIPAL = "R"
PUNCTURED = "P"
TAILZ = "Z"
TAILX = "X"
TAILY = "Y"
YBARE = "V"

_TAGS = (EMPTY, PRINCIPAL, PUNCTURED, TAILZ, TAILX, TAILY, YBARE)

# containment order of the base families (used for base-vs-base meets)
_BASE_RANK = {PRINCIPAL: 3, PUNCTURED: 2, TAILZ: 1, TAILX: 0, TAILY: 0, YBARE: 0}


@dataclass(frozen=True, order=True)
class Ideal:
    tag: str
    prefix: Word = ()

    @property
    def is_empty(self) -> bool:
        return self.tag == EMPTY

    def __str__(self) -> str:
        if self.tag == EMPTY:
            return "0"
        w = format_word(self.prefix) + " " if self.prefix else ""
        return f"{w}{self.tag}"


@dataclass(frozen=True)
class GeneralizedIdeal:
    """A difference  base minus (union of the minus list)."""

    base: Ideal
    minus: Tuple[Ideal, ...] = ()

    def __str__(self) -> str:
        if not self.minus:
            return str(self.base)
        return str(self.base) + " \\ {" + ", ".join(str(m) for m in self.minus) + "}"


IdealLike = Union[Ideal, GeneralizedIdeal]


def as_generalized(a: IdealLike) -> GeneralizedIdeal:
    return a if isinstance(a, GeneralizedIdeal) else GeneralizedIdeal(a, ())


class IdealAlgebra:
    """Canonical-form ideal arithmetic for one catalog presentation."""

    def __init__(self, pres: Presentation, shapes: Tuple[str, ...]):
        self.pres = pres
        self.shapes = shapes
        self.empty = Ideal(EMPTY)
        self.full = Ideal(PRINCIPAL, ())
        self._abs = {t: {h: (r.shift, r.needs_tail) for h, r in pres.absorbers(t).items()}
                     for t in ("x", "y")}
        self._found_memo: Dict = {}
        self._cover_memo: Dict = {}

    # -- construction ---------------------------------------------------

    def _strippable(self, tag: str, kind: str) -> bool:
        ax, ay = self._abs["x"], self._abs["y"]
        if tag == TAILZ:
            return (kind in ax and not ax[kind][1]) and (kind in ay and not ay[kind][1])
        if tag == TAILX:
            return kind in ax
        if tag == TAILY:
            return kind in ay
        if tag == YBARE:
            return kind in ay and not ay[kind][1]
        return False

    def make(self, tag: str, prefix: Word = ()) -> Ideal:
        if tag not in _TAGS:
            raise ValueError(f"unknown ideal tag {tag!r}")
        if tag == EMPTY:
            return self.empty
        if tag not in self.shapes:
            raise ValueError(f"shape {tag!r} does not occur in {self.pres.name}")
        w = self.pres.normal_form(prefix)
        while len(w) >= 2 and w[-1].kind == "b" and self._strippable(tag, w[-2].kind):
            w = w[:-2] + (w[-1],)
        return Ideal(tag, w)

    def parse(self, text: str) -> Ideal:
        text = text.strip()
        if text == "0":
            return self.empty
        parts = text.split()
        if not parts or parts[-1] not in _TAGS or parts[-1] == EMPTY:
            raise ValueError(f"ideal syntax is '<word> <tag>' or '0', got {text!r}")
        tag = parts[-1]
        prefix = parse_word(" ".join(parts[:-1])) if parts[:-1] else EPSILON
        return self.make(tag, prefix)

    # -- membership -----------------------------------------------------

    def contains(self, a: IdealLike, w: Word) -> bool:
        if isinstance(a, GeneralizedIdeal):
            return self.contains(a.base, w) and not any(self.contains(m, w) for m in a.minus)
        if a.tag == EMPTY:
            return False
        u = self.pres.left_divide(a.prefix, w)
        if u is None:
            return False
        if a.tag == PRINCIPAL:
            return True
        if a.tag == PUNCTURED:
            return u != ()
        if a.tag == TAILZ:
            return bool(u) and u[0].indexed
        if a.tag == TAILX:
            return bool(u) and u[0].kind == "x" and len(u) >= 2
        if a.tag == TAILY:
            return bool(u) and u[0].kind == "y" and len(u) >= 2
        if a.tag == YBARE:
            return bool(u) and u[0].kind == "y"
        raise AssertionError(a.tag)

    def sample_element(self, a: Ideal) -> Word:
        """Some element of a nonempty canonical ideal."""
        if a.tag == EMPTY:
            raise ValueError("the empty ideal has no elements")
        plain = Letter(self.pres.plain_letters[0])
        tail = {
            PRINCIPAL: (),
            PUNCTURED: (plain,),
            TAILZ: (Letter("x", 0),) if self.pres.indexed else (),
            TAILX: (Letter("x", 0), plain),
            TAILY: (Letter("y", 0), plain),
            YBARE: (Letter("y", 0),),
        }[a.tag]
        return self.pres.normal_form(a.prefix + tail)

    # -- pullbacks ------------------------------------------------------

    def _base_pullback(self, l: Letter, tag: str) -> Ideal:
        if tag in (PRINCIPAL, PUNCTURED):
            return self.full
        if tag == TAILZ:
            return self.full if l.indexed else self.empty
        if tag == TAILX:
            if l.kind == "x":
                return self.make(PUNCTURED) if PUNCTURED in self.shapes else self._tail_as_diff_error()
            return self.empty
        if tag == TAILY:
            return self.make(PUNCTURED) if l.kind == "y" else self.empty
        if tag == YBARE:
            return self.full if l.kind == "y" else self.empty
        raise AssertionError(tag)

    def _tail_as_diff_error(self):
        raise AssertionError(
            f"pullback left the shape family of {self.pres.name}; shape list is wrong"
        )

    def _junction_end(self, l: Letter, s: Word, tag: str) -> Ideal:
        """Pullback of (s b . base(tag)) by a plain letter l != first of s b."""
        branches = {TAILX: ("x",), TAILY: ("y",), YBARE: ("y",)}.get(tag, ("x", "y"))
        root = () if l.kind == "b" else (B,)
        alive = {}
        for t in branches:
            ab = self._abs[t]
            if any(c.kind not in ab for c in s):
                continue
            if l.kind != "b" and l.kind not in ab:
                continue
            tail_needed = any(ab[c.kind][1] for c in s) or (l.kind != "b" and ab[l.kind][1])
            if tag in (TAILX, TAILY):
                alive[t] = "tail"
            elif tag == YBARE:
                alive[t] = "tail" if tail_needed else "bare"
            else:
                alive[t] = "tail" if tail_needed else "full"
        if not alive:
            return self.empty
        if alive == {"x": "full", "y": "full"}:
            return self.make(TAILZ, root)
        if set(alive) == {"x"}:
            if alive["x"] != "tail":
                self._tail_as_diff_error()
            return self.make(TAILX, root)
        if set(alive) == {"y"}:
            if alive["y"] == "tail":
                return self.make(TAILY, root)
            return self.make(YBARE, root)
        self._tail_as_diff_error()

    def _junction_inside(self, l: Letter, s: Word, mid: Letter, omega: Word, tag: str) -> Ideal:
        """Pullback of (s b mid omega . base(tag)) by plain l != first letter."""
        ab = self._abs[mid.kind]
        if any(c.kind not in ab for c in s):
            return self.empty
        if l.kind != "b" and l.kind not in ab:
            return self.empty
        shift = sum(ab[c.kind][0] for c in s)
        tail_guaranteed = bool(omega) or tag != PRINCIPAL
        tail_needed = any(ab[c.kind][1] for c in s) or (l.kind != "b" and ab[l.kind][1])
        out_tag = tag
        if tail_needed and not tail_guaranteed:
            out_tag = PUNCTURED
        if l.kind == "b":
            prefix = (mid.shifted(shift),) + omega
        else:
            prefix = (B, mid.shifted(shift - ab[l.kind][0])) + omega
        return self.make(out_tag, prefix)

    def pullback_letter(self, l: Letter, a: IdealLike) -> IdealLike:
        if isinstance(a, GeneralizedIdeal):
            return self.make_generalized(
                self.pullback_letter(l, a.base),
                [self.pullback_letter(l, m) for m in a.minus],
            )
        if a.tag == EMPTY:
            return self.empty
        w = a.prefix
        if w and w[0] == l:
            return Ideal(a.tag, w[1:])
        if not w:
            return self._base_pullback(l, a.tag)
        if l.indexed or w[0].indexed:
            return self.empty
        # both plain, l differs from the first letter of w
        i = 0
        while i < len(w) and not w[i].indexed and w[i].kind != "b":
            i += 1
        s = w[:i]
        if i == len(w):  # w is a pure prefix run
            if a.tag in (PRINCIPAL, PUNCTURED):
                return self._junction_end(l, s, PRINCIPAL)
            return self.empty
        if w[i].indexed:
            return self.empty
        # w[i] is b
        u = w[i + 1:]
        if not u:
            return self._junction_end(l, s, a.tag)
        if u[0].indexed:
            return self._junction_inside(l, s, u[0], u[1:], a.tag)
        return self.empty

    def pullback_word(self, x: Word, a: IdealLike) -> IdealLike:
        for l in self.pres.normal_form(x):
            a = self.pullback_letter(l, a)
        return a

    def translate(self, x: Word, a: IdealLike) -> IdealLike:
        if isinstance(a, GeneralizedIdeal):
            return self.make_generalized(
                self.translate(x, a.base), [self.translate(x, m) for m in a.minus]
            )
        if a.tag == EMPTY:
            return self.empty
        return self.make(a.tag, tuple(x) + a.prefix)

    # -- lattice operations ----------------------------------------------

    def _base_meet(self, a: Ideal, b: Ideal) -> Ideal:
        """Intersection when b has empty prefix (a base family)."""
        if b.tag == PRINCIPAL:
            return a
        if a.prefix:
            head = a.prefix[0]
            if b.tag == PUNCTURED:
                return a
            if b.tag == TAILZ:
                return a if head.indexed else self.empty
            if b.tag == TAILX:
                if head.kind != "x":
                    return self.empty
                rest = Ideal(a.tag, a.prefix[1:])
                return self.translate((head,), self.intersect(rest, self.make(PUNCTURED)))
            if b.tag == TAILY:
                if head.kind != "y":
                    return self.empty
                rest = Ideal(a.tag, a.prefix[1:])
                return self.translate((head,), self.intersect(rest, self.make(PUNCTURED)))
            if b.tag == YBARE:
                return a if head.kind == "y" else self.empty
            raise AssertionError(b.tag)
        # both are base families
        ra, rb = _BASE_RANK[a.tag], _BASE_RANK[b.tag]
        if ra == rb == 0 and a.tag != b.tag:
            if {a.tag, b.tag} == {TAILY, YBARE}:
                return a if a.tag == TAILY else b
            return self.empty
        lo, hi = (a, b) if ra <= rb else (b, a)
        return lo

    def intersect(self, a: Ideal, b: Ideal) -> Ideal:
        if a.tag == EMPTY or b.tag == EMPTY:
            return self.empty
        if a == b:
            return a
        wa, wb = a.prefix, b.prefix
        if wa and wb:
            if wa[0] == wb[0]:
                inner = self.intersect(Ideal(a.tag, wa[1:]), Ideal(b.tag, wb[1:]))
                return self.translate(wa[:1], inner)
            sub = self.pullback_letter(wa[0], b)
            if isinstance(sub, GeneralizedIdeal):
                raise AssertionError("letter pullback of a plain ideal must be plain")
            inner = self.intersect(Ideal(a.tag, wa[1:]), sub)
            return self.translate(wa[:1], inner)
        if wa and not wb:
            return self._base_meet(a, b)
        if wb and not wa:
            return self._base_meet(b, a)
        return self._base_meet(a, b)

    def subset(self, a: IdealLike, b: IdealLike) -> bool:
        if isinstance(a, GeneralizedIdeal) or isinstance(b, GeneralizedIdeal):
            ga, gb = as_generalized(a), as_generalized(b)
            # ga subset of gb  iff  ga.base \ minus(a) subset of gb.base \ minus(b)
            # iff base(a) subset of base(b) + minus(a)  and  each minus(b) part
            # misses ga; decide with the covering oracle.
            if not self.covered_by(ga.base, [gb.base] + list(ga.minus)):
                return False
            return all(self.is_empty_gen(self.intersect_gen(ga, as_generalized(m)))
                       for m in gb.minus)
        if a.tag == EMPTY:
            return True
        return self.intersect(a, b) == a

    def intersect_gen(self, a: GeneralizedIdeal, b: GeneralizedIdeal) -> GeneralizedIdeal:
        base = self.intersect(a.base, b.base)
        return self.make_generalized(base, list(a.minus) + list(b.minus))

    def make_generalized(self, base: IdealLike, minus: Iterable[IdealLike]) -> GeneralizedIdeal:
        if isinstance(base, GeneralizedIdeal):
            minus = list(minus) + list(base.minus)
            base = base.base
        if base.tag == EMPTY:
            return GeneralizedIdeal(self.empty, ())
        cut = []
        for m in minus:
            if isinstance(m, GeneralizedIdeal):
                raise ValueError("minus parts must be plain constructible ideals")
            mm = self.intersect(base, m)
            if mm.tag != EMPTY:
                cut.append(mm)
        cut = sorted(set(cut))
        return GeneralizedIdeal(base, tuple(cut))

    def is_empty_gen(self, d: GeneralizedIdeal) -> bool:
        if d.base.tag == EMPTY:
            return True
        return self.covered_by(d.base, list(d.minus))

    # -- covering oracle --------------------------------------------------
    #
    # covered_by(X, Cs) decides whether every element of X lies in some
    # member of Cs.  Probes descend letter by letter; since any element of
    # a base family starts with a known letter shape, states are pairs
    # (base tag, pulled-back members), finitely many up to the index-shift
    # automorphism, and cycles can be cut (an escape is a finite path).

    _SUB_BASE = {
        PRINCIPAL: PRINCIPAL,
        PUNCTURED: PRINCIPAL,
        TAILZ: PRINCIPAL,
        YBARE: PRINCIPAL,
        TAILX: PUNCTURED,
        TAILY: PUNCTURED,
    }

    def _branch_letters(self, base_tag: str, occurring: Sequence[int]) -> List[Letter]:
        out: List[Letter] = []
        idx = sorted(set(occurring))
        fresh = (max((abs(i) for i in idx), default=0)) + 1
        if base_tag in (PRINCIPAL, PUNCTURED):
            out.extend(Letter(k) for k in self.pres.plain_letters)
        kinds = {TAILX: ("x",), TAILY: ("y",), YBARE: ("y",)}.get(base_tag, ("x", "y"))
        if self.pres.indexed:
            for k in kinds:
                out.extend(Letter(k, n) for n in idx + [fresh])
        return out

    @staticmethod
    def _occurring(items: Iterable[Ideal]) -> List[int]:
        out = []
        for a in items:
            out.extend(l.index for l in a.prefix if l.indexed)
        return out

    def _ideal_key(self, a: Ideal, delta: int) -> Tuple:
        return (a.tag, tuple((l.kind, l.index - delta if l.indexed else 0) for l in a.prefix))

    def _state_key(self, base_tag: str, members: Sequence) -> Tuple:
        idx: List[int] = []
        for m in members:
            idx.extend(self._occurring([m.base] + list(m.minus)))
        delta = min(idx) if idx else 0
        keys = []
        for m in members:
            keys.append((self._ideal_key(m.base, delta),
                         tuple(sorted(self._ideal_key(mm, delta) for mm in m.minus))))
        return (base_tag, tuple(sorted(keys)))

    def covered_by(self, x: IdealLike, cover: Sequence[IdealLike]) -> bool:
        """Exact decision of  x  subset of  union(cover)."""
        return self.escape_element(x, cover) is None

    def escape_element(self, x: IdealLike, cover: Sequence[IdealLike]) -> Optional[Word]:
        """An element of x outside every member of cover, if one exists.

        An element of x is prefix.t with t ranging over x's base family;
        t is covered iff it lands in some prefix-pullback of a cover member
        or in one of x's own subtracted parts, so those join the cover.
        """
        gx = as_generalized(x)
        if gx.base.tag == EMPTY:
            return None
        items = [self._gen_pull_word(as_generalized(c), gx.base.prefix) for c in cover]
        items += [as_generalized(self._pull_word_plain(m, gx.base.prefix)) for m in gx.minus]
        ok, path, _ = self._cover_rec(gx.base.tag, items, set())
        if ok:
            return None
        return self.pres.normal_form(gx.base.prefix + tuple(path))

    def _pull_word_plain(self, a: Ideal, w: Word) -> Ideal:
        out = self.pullback_word(w, a)
        assert isinstance(out, Ideal)
        return out

    def _gen_pull_word(self, d: GeneralizedIdeal, w: Word) -> GeneralizedIdeal:
        base = self._pull_word_plain(d.base, w)
        return self.make_generalized(base, [self._pull_word_plain(m, w) for m in d.minus])

    def _gen_pull_letter(self, d: GeneralizedIdeal, l: Letter) -> GeneralizedIdeal:
        base = self.pullback_letter(l, d.base)
        assert isinstance(base, Ideal)
        return self.make_generalized(base, [self.pullback_letter(l, m) for m in d.minus])

    def _contains_e(self, d: GeneralizedIdeal) -> bool:
        return d.base == self.full and not any(m == self.full for m in d.minus)

    def _cover_rec(self, base_tag: str, items: List[GeneralizedIdeal],
                   visiting: set) -> Tuple[bool, Optional[List[Letter]], bool]:
        """(covered, escape path, tainted).  Tainted results depend on an
        in-progress cycle assumption and are not memoized; escapes are
        found along cycle-free paths so top-level answers are exact."""
        items = [d for d in items if d.base.tag != EMPTY]
        if any(d.base == self.full and not d.minus for d in items):
            return True, None, False
        if base_tag == PRINCIPAL and not any(self._contains_e(d) for d in items):
            return False, [], False
        key = self._state_key(base_tag, items)
        if key in self._cover_memo:
            return True, None, False
        if key in visiting:
            return True, None, True
        visiting.add(key)
        occ: List[int] = []
        for d in items:
            occ.extend(self._occurring([d.base] + list(d.minus)))
        tainted = False
        try:
            for l in self._branch_letters(base_tag, occ):
                sub = [self._gen_pull_letter(d, l) for d in items]
                ok, path, t = self._cover_rec(self._SUB_BASE[base_tag], sub, visiting)
                tainted = tainted or t
                if not ok:
                    return False, [l] + (path or []), tainted
        finally:
            visiting.discard(key)
        if not tainted:
            self._cover_memo[key] = True
        return True, None, tainted

    # -- foundation oracle -------------------------------------------------

    def is_foundation(self, x: IdealLike, family: Sequence[IdealLike],
                      require_subsets: bool = True) -> Tuple[bool, Optional[Word]]:
        """Exact foundation-set decision; returns (verdict, witness element).

        The verdict is False iff some nonempty constructible ideal inside x
        avoids every family member, and the witness generates one such ideal.
        """
        if isinstance(x, GeneralizedIdeal):
            raise ValueError("foundation targets must be constructible ideals")
        if x.tag == EMPTY:
            raise ValueError("foundation sets are defined for nonempty ideals")
        items = [as_generalized(f) for f in family]
        if require_subsets:
            for f in items:
                if not self.subset(f, x):
                    raise ValueError(f"family member {f} is not a subset of {x}")
        items = [self._gen_pull_word(d, x.prefix) for d in items]
        ok, path, _ = self._found_rec(x.tag, items, set())
        if ok:
            return True, None
        return False, self.pres.normal_form(x.prefix + tuple(path))

    def is_foundation_generalized(self, x: IdealLike, family: Sequence[IdealLike]) -> Tuple[bool, Optional[Word]]:
        gx = as_generalized(x)
        if gx.minus:
            # witnesses range over constructible ideals inside the difference;
            # Y avoids the difference iff it avoids base or is inside a minus
            # part, so check foundation over the base with the minus parts
            # re-added as catchers is wrong; instead restrict probes to the
            # difference by keeping the minus parts as killers.
            return self._foundation_over_difference(gx, family)
        return self.is_foundation(gx.base, family, require_subsets=False)

    def _foundation_over_difference(self, gx: GeneralizedIdeal, family: Sequence[IdealLike]):
        raise NotImplementedError(
            "foundation targets in the generalized family are not needed for "
            "the catalog checks; targets are constructible ideals"
        )

    def _alive(self, d: GeneralizedIdeal) -> bool:
        if d.base.tag == EMPTY:
            return False
        if not d.minus:
            return True
        return not self.covered_by(d.base, list(d.minus))

    def _empty_pattern(self, base_tag: str) -> List[Letter]:
        """A shortest element pattern of the given base family."""
        plain = Letter(self.pres.plain_letters[0])
        return {
            PRINCIPAL: [],
            PUNCTURED: [plain],
            TAILZ: [Letter("x", 0)] if self.pres.indexed else [plain],
            YBARE: [Letter("y", 0)],
            TAILX: [Letter("x", 0), plain],
            TAILY: [Letter("y", 0), plain],
        }[base_tag]

    def _found_rec(self, base_tag: str, items: List[GeneralizedIdeal],
                   visiting: set) -> Tuple[bool, Optional[List[Letter]], bool]:
        """(is foundation, witness path, tainted); see _cover_rec on taint."""
        items = [d for d in items if self._alive(d)]
        if not items:
            return False, self._empty_pattern(base_tag), False
        if any(d.base == self.full and not d.minus for d in items):
            return True, None, False
        key = self._state_key(base_tag, items)
        if key in self._found_memo:
            return True, None, False
        if key in visiting:
            return True, None, True
        visiting.add(key)
        occ: List[int] = []
        for d in items:
            occ.extend(self._occurring([d.base] + list(d.minus)))
        tainted = False
        try:
            for l in self._branch_letters(base_tag, occ):
                sub = [self._gen_pull_letter(d, l) for d in items]
                ok, path, t = self._found_rec(self._SUB_BASE[base_tag], sub, visiting)
                tainted = tainted or t
                if not ok:
                    return False, [l] + (path or []), tainted
        finally:
            visiting.discard(key)
        if not tainted:
            self._found_memo[key] = True
        return True, None, tainted

    # -- non-covering construction ------------------------------------------

    def noncover_check(self, x: Ideal, diffs: Sequence[Tuple[Ideal, Sequence[Ideal]]]) -> Word:
        """An element of x avoiding every difference  X' minus union(F').

        Requires each F' to be a foundation set for its X' (checked); the
        construction walks a maximal chain of intersections, mirroring why
        no finite union of such differences can swallow x.
        """
        if x.tag == EMPTY:
            raise ValueError("x must be nonempty")
        current = x
        for xp, fam in diffs:
            ok, _ = self.is_foundation(xp, list(fam))
            if not ok:
                raise ValueError(f"{[str(f) for f in fam]} is not a foundation set for {xp}")
        for xp, fam in diffs:
            hit = None
            for f in fam:
                assert isinstance(f, Ideal)
                c = self.intersect(current, f)
                if c.tag != EMPTY:
                    hit = c
                    break
            if hit is not None:
                current = hit
                continue
            if self.intersect(current, xp).tag != EMPTY:
                raise AssertionError(
                    "foundation precondition violated: a nonempty constructible "
                    "subideal avoids the whole family"
                )
        word = self.sample_element(current)
        return word
