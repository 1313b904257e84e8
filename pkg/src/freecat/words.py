"""Reduced-word combinatorics over an amalgamated family of factor categories.

Words are sequences of letters [irr]@factor whose endpoints compose through
the glued 0-cells.  A reduced word alternates factors, uses only non-unit
irreducibles, and labels an irreducible of the free product.  All types here
are immutable values; functions are pure.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .fusion import CategorySpec, CompositionError, Irr, SpecError, WordError


@dataclass(frozen=True, order=True)
class Cell:
    """A glued 0-cell, named by its canonical representative (factor, label)."""

    factor: int
    label: str

    def __str__(self) -> str:
        return f"{self.label}@{self.factor}"


@dataclass(frozen=True, order=True)
class Letter:
    factor: int
    irr: Irr

    def __str__(self) -> str:
        return f"[{self.irr.label}@{self.factor}]"


@dataclass(frozen=True)
class GeneralWord:
    """A word with composable endpoints; units and factor repeats allowed."""

    letters: tuple[Letter, ...]
    left: Cell
    right: Cell

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class ReducedWord:
    """An alternating word of non-unit irreducibles; empty words carry their 0-cell."""

    letters: tuple[Letter, ...]
    left: Cell
    right: Cell

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


Word = "GeneralWord | ReducedWord"


def word_key(w) -> tuple:
    """Canonical order: length first, then (factor, irr label) per letter, then endpoints."""
    return (len(w.letters), tuple((l.factor, l.irr.label) for l in w.letters), w.left, w.right)


def as_general(w) -> GeneralWord:
    return GeneralWord(w.letters, w.left, w.right) if not isinstance(w, GeneralWord) else w


class Amalgam:
    """A family of factor specs with 0-cells glued along shared points.

    ``shared`` maps a point name to {factor: cell-label}; all named cells of a
    point are identified.  Each injection must be injective per factor.
    """

    def __init__(
        self,
        factors: Mapping[int, CategorySpec],
        shared: Mapping[str, Mapping[int, str]] | None = None,
        name: str = "amalgam",
    ) -> None:
        self.name = name
        self.factors: dict[int, CategorySpec] = dict(sorted(factors.items()))
        if not self.factors:
            raise SpecError("amalgam needs at least one factor")
        shared = dict(shared or {})
        # Union-find over (factor, cell-label); canonical representative is the minimum.
        parent: dict[tuple[int, str], tuple[int, str]] = {}
        for i, spec in self.factors.items():
            for cell in spec.zero_cells():
                parent[(i, cell)] = (i, cell)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                lo, hi = min(rx, ry), max(rx, ry)
                parent[hi] = lo

        for point, inj in shared.items():
            pins = sorted(inj.items())
            for i, cell in pins:
                if i not in self.factors:
                    raise SpecError(f"shared point {point!r} names unknown factor {i}")
                if (i, cell) not in parent:
                    raise SpecError(f"shared point {point!r} names unknown 0-cell {cell!r} of factor {i}")
            for (i, cell) in pins[1:]:
                union((pins[0][0], pins[0][1]), (i, cell))
        # Injectivity: within one factor, distinct cells must stay distinct.
        for i, spec in self.factors.items():
            reps = [find((i, c)) for c in spec.zero_cells()]
            if len(set(reps)) != len(reps):
                raise SpecError(f"gluing identifies two 0-cells of factor {i}")
        self._cell_of = {x: Cell(*find(x)) for x in parent}
        self.shared = shared
        self._decompose_cache: dict = {}
        self._rewrite_cache: dict = {}

    # -- cells -------------------------------------------------------------
    def cell(self, factor: int, label: str) -> Cell:
        try:
            return self._cell_of[(factor, label)]
        except KeyError:
            raise SpecError(f"unknown 0-cell {label!r} of factor {factor}") from None

    def cells(self) -> tuple[Cell, ...]:
        return tuple(sorted(set(self._cell_of.values())))

    def factor_cell_label(self, factor: int, cell: Cell) -> str | None:
        """The 0-cell label of ``factor`` lying in the glued class, if any."""
        for (i, lab), c in self._cell_of.items():
            if i == factor and c == cell:
                return lab
        return None

    def resolve_cell(self, text: str) -> Cell:
        """Resolve 'label' (first factor that has it) or 'label@factor'."""
        if "@" in text:
            label, _, fac = text.rpartition("@")
            return self.cell(int(fac), label)
        for i in self.factors:
            if (i, text) in self._cell_of:
                return self._cell_of[(i, text)]
        raise SpecError(f"no factor has a 0-cell labelled {text!r}")

    # -- letters -----------------------------------------------------------
    def spec(self, factor: int) -> CategorySpec:
        try:
            return self.factors[factor]
        except KeyError:
            raise SpecError(f"unknown factor index {factor}") from None

    def letter(self, factor: int, irr: "Irr | str") -> Letter:
        spec = self.spec(factor)
        if isinstance(irr, str):
            irr = spec.irr(irr)
        return Letter(factor, irr)

    def letter_source(self, l: Letter) -> Cell:
        return self.cell(l.factor, l.irr.source)

    def letter_target(self, l: Letter) -> Cell:
        return self.cell(l.factor, l.irr.target)

    def is_unit_letter(self, l: Letter) -> bool:
        return self.spec(l.factor).is_unit(l.irr)

    def dual_letter(self, l: Letter) -> Letter:
        return Letter(l.factor, self.spec(l.factor).dual(l.irr))

    def qdim_letter(self, l: Letter):
        return self.spec(l.factor).qdim(l.irr)

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.factors.values())

    @property
    def tol(self) -> float:
        return max(s.tol for s in self.factors.values())

    # -- words -------------------------------------------------------------
    def empty_word(self, cell: Cell) -> ReducedWord:
        return ReducedWord((), cell, cell)

    def word(self, letters: Iterable["Letter | tuple[int, str]"], cell: Cell | None = None) -> GeneralWord:
        """Build a GeneralWord, checking consecutive endpoints compose."""
        ls = tuple(l if isinstance(l, Letter) else self.letter(*l) for l in letters)
        if not ls:
            if cell is None:
                raise CompositionError("empty word needs an explicit 0-cell")
            return GeneralWord((), cell, cell)
        for k in range(len(ls) - 1):
            if self.letter_target(ls[k]) != self.letter_source(ls[k + 1]):
                raise CompositionError(f"letters {ls[k]} and {ls[k+1]} do not compose")
        return GeneralWord(ls, self.letter_source(ls[0]), self.letter_target(ls[-1]))

    def reduced(self, letters: Iterable["Letter | tuple[int, str]"], cell: Cell | None = None) -> ReducedWord:
        v = self.word(letters, cell)
        if not is_reduced(self, v):
            raise WordError(f"{v} is not reduced")
        return ReducedWord(v.letters, v.left, v.right)


def is_reduced(am: Amalgam, v: GeneralWord) -> bool:
    """True iff v alternates factors, has no unit letters, and composes."""
    ls = v.letters
    for k, l in enumerate(ls):
        if am.is_unit_letter(l):
            return False
        if k and ls[k - 1].factor == l.factor:
            return False
        if k and am.letter_target(ls[k - 1]) != am.letter_source(l):
            return False
    if ls:
        if v.left != am.letter_source(ls[0]) or v.right != am.letter_target(ls[-1]):
            return False
    elif v.left != v.right:
        return False
    return True


def left_cons(am: Amalgam, letter: "Letter | tuple[int, str]", w: ReducedWord) -> ReducedWord:
    """Prepend an irreducible letter to a word that does not start with its factor.

    A unit letter leaves the word unchanged (it must sit at the word's left
    0-cell); anything else is prepended, and the result is again reduced.
    """
    if not isinstance(letter, Letter):
        letter = am.letter(*letter)
    if w.letters and w.letters[0].factor == letter.factor:
        raise WordError(f"{w} already starts with a letter of factor {letter.factor}")
    if am.letter_target(letter) != w.left:
        raise CompositionError(f"letter {letter} does not compose with {w}")
    if am.is_unit_letter(letter):
        return w
    return ReducedWord((letter,) + w.letters, am.letter_source(letter), w.right)


def right_cons(am: Amalgam, w: ReducedWord, letter: "Letter | tuple[int, str]") -> ReducedWord:
    """Mirror of left_cons: append a letter to a word not ending with its factor."""
    if not isinstance(letter, Letter):
        letter = am.letter(*letter)
    if w.letters and w.letters[-1].factor == letter.factor:
        raise WordError(f"{w} already ends with a letter of factor {letter.factor}")
    if am.letter_source(letter) != w.right:
        raise CompositionError(f"{w} does not compose with letter {letter}")
    if am.is_unit_letter(letter):
        return w
    return ReducedWord(w.letters + (letter,), w.left, am.letter_target(letter))


def strip_head(am: Amalgam, w: ReducedWord) -> tuple[Letter, ReducedWord]:
    head = w.letters[0]
    rest = w.letters[1:]
    left = am.letter_source(rest[0]) if rest else w.right
    return head, ReducedWord(rest, left, w.right)


def strip_tail(am: Amalgam, w: ReducedWord) -> tuple[ReducedWord, Letter]:
    tail = w.letters[-1]
    rest = w.letters[:-1]
    right = am.letter_target(rest[-1]) if rest else w.left
    return ReducedWord(rest, w.left, right), tail


def concat(am: Amalgam, v: GeneralWord, w: GeneralWord) -> GeneralWord:
    if v.right != w.left:
        raise CompositionError(f"{v} and {w} do not compose")
    return GeneralWord(v.letters + w.letters, v.left, w.right)


def dual_word(am: Amalgam, w):
    """Reverse the word and dualize each letter; preserves reducedness."""
    ls = tuple(am.dual_letter(l) for l in reversed(w.letters))
    return type(w)(ls, w.right, w.left)


def _non_unit_letters(am: Amalgam, factor: int, depth: int | None) -> list[Letter]:
    spec = am.spec(factor)
    out = [Letter(factor, a) for a in spec.irreducibles(depth) if not spec.is_unit(a)]
    return sorted(out, key=lambda l: l.irr.label)


def enumerate_reduced(
    am: Amalgam,
    a: Cell,
    b: Cell,
    max_len: int,
    irr_depth: int | None = None,
) -> tuple[ReducedWord, ...]:
    """All reduced words of type (a, b) with at most max_len letters.

    Output is deterministic: length-lexicographic by (factor index, irreducible
    label).  For lazy factor specs, irr_depth bounds the letter alphabet.
    """
    letters_by_factor = {i: _non_unit_letters(am, i, irr_depth) for i in am.factors}
    out: list[ReducedWord] = []
    if a == b:
        out.append(am.empty_word(a))
    frontier: list[ReducedWord] = [am.empty_word(b)]  # suffixes, grown leftward
    # Grow words right-to-left so the left 0-cell is free until the end.
    for _ in range(max_len):
        nxt: list[ReducedWord] = []
        for w in frontier:
            blocked = w.letters[0].factor if w.letters else None
            for i in sorted(am.factors):
                if i == blocked:
                    continue
                for l in letters_by_factor[i]:
                    if am.letter_target(l) == w.left:
                        nxt.append(ReducedWord((l,) + w.letters, am.letter_source(l), w.right))
        frontier = nxt
        out.extend(w for w in frontier if w.left == a)
    return tuple(sorted(out, key=word_key))


# -- word literals ----------------------------------------------------------

_LETTER_RE = re.compile(r"\[([^\[\]@]+)@(\d+)\]")
_EMPTY_RE = re.compile(r"^\(\)@(.+)$")


def format_word(w) -> str:
    """Render a word as letter literals, or ()@cell for the empty word."""
    if not w.letters:
        return f"()@{w.left}"
    return "".join(str(l) for l in w.letters)


def parse_word(am: Amalgam, text: str) -> GeneralWord:
    """Parse the literal syntax: `[label@i][label@j]...` or `()@cell`."""
    text = text.strip()
    m = _EMPTY_RE.match(text)
    if m:
        return as_general(am.empty_word(am.resolve_cell(m.group(1))))
    pos = 0
    letters: list[Letter] = []
    for m in _LETTER_RE.finditer(text):
        if m.start() != pos:
            raise WordError(f"cannot parse word literal {text!r} at offset {pos}")
        letters.append(am.letter(int(m.group(2)), m.group(1)))
        pos = m.end()
    if pos != len(text) or not letters:
        raise WordError(f"cannot parse word literal {text!r}")
    return am.word(letters)


def parse_reduced(am: Amalgam, text: str) -> ReducedWord:
    v = parse_word(am, text)
    if not is_reduced(am, v):
        raise WordError(f"{text!r} is not a reduced word")
    return ReducedWord(v.letters, v.left, v.right)
