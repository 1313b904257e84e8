"""The free product at the fusion-ring level.

Two independent routes compute the decomposition of a general word into
reduced words:

* ``decompose_word`` runs the letter-by-letter dynamic program that mirrors
  the left module actions on the vacuum object (process letters right to
  left, fusing each letter into the head of every reduced word in the state);
* ``rewrite_decompose`` exhaustively rewrites the word by dropping unit
  letters and merging adjacent same-factor letters through the factor fusion.

They must agree exactly; the test suite and the acceptance gate compare them.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .fusion import (
    Bundle,
    BoundError,
    CategorySpec,
    CompositionError,
    Irr,
    ParameterError,
    SpecError,
    bundle_dual,
    bundle_fuse,
    bundle_qdim,
    hom_dim,
)
from .words import (
    Amalgam,
    Cell,
    GeneralWord,
    Letter,
    ReducedWord,
    as_general,
    concat,
    dual_word,
    enumerate_reduced,
    format_word,
    left_cons,
    parse_reduced,
    strip_head,
    word_key,
)


@dataclass(frozen=True)
class FreeDecomposition:
    """A general word decomposed into reduced words with multiplicities."""

    left: Cell
    right: Cell
    terms: tuple[tuple[ReducedWord, int], ...]  # canonical word order

    @staticmethod
    def from_dict(left: Cell, right: Cell, terms: Mapping[ReducedWord, int]) -> "FreeDecomposition":
        items = tuple(sorted(((w, int(n)) for w, n in terms.items() if n > 0), key=lambda t: word_key(t[0])))
        return FreeDecomposition(left, right, items)

    def as_dict(self) -> dict[ReducedWord, int]:
        return dict(self.terms)

    def mult(self, w: ReducedWord) -> int:
        return self.as_dict().get(w, 0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{n}*{w}" if n != 1 else str(w) for w, n in self.terms)


def word_qdim(am: Amalgam, v) -> "float | Fraction":
    """Product of the letter quantum dimensions; 1 for the empty word."""
    total = Fraction(1) if am.exact else 1.0
    for l in v.letters:
        total *= am.qdim_letter(l)
    return total


def _act_letter(am: Amalgam, letter: Letter, state: dict[ReducedWord, int]) -> dict[ReducedWord, int]:
    """One step of the right-to-left DP: fuse ``letter`` into every state word."""
    i = letter.factor
    spec = am.spec(i)
    out: dict[ReducedWord, int] = {}
    for w, m in state.items():
        if w.letters and w.letters[0].factor == i:
            head, tail = strip_head(am, w)
            prods = spec.fusion(letter.irr, head.irr)
        else:
            tail = w
            # Fusing with the implicit unit head leaves a single term.
            prods = {letter.irr: 1}
        for pi, n in prods.items():
            w_new = left_cons(am, Letter(i, pi), tail)
            out[w_new] = out.get(w_new, 0) + n * m
    return out


def decompose_word(am: Amalgam, v: GeneralWord, max_len: int | None = None) -> FreeDecomposition:
    """Decompose a general word into reduced words via the vacuum-grading DP.

    The DP is exhaustive by construction; ``max_len``, when given, acts as a
    declared bound and a BoundError is raised if the support exceeds it.
    Results are cached on the amalgam.
    """
    key = as_general(v)
    cached = am._decompose_cache.get(key)
    if cached is None:
        state: dict[ReducedWord, int] = {am.empty_word(v.right): 1}
        for letter in reversed(v.letters):
            state = _act_letter(am, letter, state)
        cached = FreeDecomposition.from_dict(v.left, v.right, state)
        am._decompose_cache[key] = cached
    if max_len is not None and any(len(w) > max_len for w, _ in cached.terms):
        raise BoundError(f"decomposition of {v} has terms longer than the declared bound {max_len}")
    return cached


def mult_in_word(am: Amalgam, w: ReducedWord, v: GeneralWord) -> int:
    """Multiplicity of the reduced word w in the general word v."""
    if (w.left, w.right) != (v.left, v.right):
        raise CompositionError(f"{w} and {v} have different types")
    return decompose_word(am, v).mult(w)


def rewrite_decompose(am: Amalgam, v: GeneralWord) -> FreeDecomposition:
    """Independent oracle: exhaustive term rewriting with exact integers.

    Drop unit letters; merge the leftmost adjacent same-factor pair through
    the factor fusion and recurse over the resulting formal sum.
    """

    def reduce(letters: tuple[Letter, ...], left: Cell, right: Cell) -> dict[ReducedWord, int]:
        key = (letters, left, right)
        hit = am._rewrite_cache.get(key)
        if hit is not None:
            return hit
        out: dict[ReducedWord, int] = {}
        for k, l in enumerate(letters):
            if am.is_unit_letter(l):
                rest = letters[:k] + letters[k + 1 :]
                out = reduce(rest, left, right)
                break
            if k + 1 < len(letters) and letters[k + 1].factor == l.factor:
                spec = am.spec(l.factor)
                for pi, n in spec.fusion(l.irr, letters[k + 1].irr).items():
                    rest = letters[:k] + (Letter(l.factor, pi),) + letters[k + 2 :]
                    for w, m in reduce(rest, left, right).items():
                        out[w] = out.get(w, 0) + n * m
                break
        else:
            out = {ReducedWord(letters, left, right): 1}
        am._rewrite_cache[key] = out
        return out

    terms = reduce(v.letters, v.left, v.right)
    return FreeDecomposition.from_dict(v.left, v.right, terms)


def qdim_conservation_residual(am: Amalgam, v: GeneralWord, dec: FreeDecomposition | None = None) -> float:
    """|sum of mult*qdim over terms - qdim(v)|; exactly zero in exact mode."""
    dec = dec or decompose_word(am, v)
    total = Fraction(0) if am.exact else 0.0
    for w, n in dec.terms:
        total += n * word_qdim(am, w)
    return abs(float(total - word_qdim(am, v)))


def hom_dim_words(am: Amalgam, v1: GeneralWord, v2: GeneralWord) -> int:
    """dim Hom(v1, v2) in the free product: the multiplicity pairing."""
    if (v1.left, v1.right) != (v2.left, v2.right):
        raise CompositionError(f"{v1} and {v2} have different types")
    d1 = decompose_word(am, v1).as_dict()
    d2 = decompose_word(am, v2).as_dict()
    return sum(m * d2.get(w, 0) for w, m in d1.items())


class FreeProductSpec(CategorySpec):
    """The free product packaged as a lazy category spec.

    0-cells are the glued cells, irreducibles are reduced words, the unit at a
    cell is its empty word, duals reverse and dualize, fusion decomposes the
    concatenation, and quantum dimensions multiply along letters.
    """

    is_lazy = True

    def __init__(self, am: Amalgam, name: str | None = None) -> None:
        super().__init__()
        self.am = am
        self.name = name or f"free({'*'.join(s.name for s in am.factors.values())})"
        self.exact = am.exact
        self.tol = am.tol
        self._word_of: dict[str, ReducedWord] = {}

    def word_irr(self, w: ReducedWord) -> Irr:
        label = format_word(w)
        self._word_of[label] = w
        return Irr(label, str(w.left), str(w.right))

    def irr_word(self, a: Irr) -> ReducedWord:
        try:
            return self._word_of[a.label]
        except KeyError:
            raise SpecError(f"{self.name}: unregistered irreducible {a.label!r}") from None

    def irr(self, label: str) -> Irr:
        w = self._word_of.get(label)
        if w is None:
            # Accept any parseable reduced-word literal.
            w = parse_reduced(self.am, label)
        return self.word_irr(w)

    def zero_cells(self) -> tuple[str, ...]:
        return tuple(str(c) for c in self.am.cells())

    def irreducibles(self, depth: int | None = None) -> tuple[Irr, ...]:
        if depth is None:
            raise ParameterError(f"{self.name} is lazy; irreducibles() needs a depth bound")
        out = []
        for a in self.am.cells():
            for b in self.am.cells():
                out.extend(self.word_irr(w) for w in enumerate_reduced(self.am, a, b, depth, depth))
        return tuple(sorted(out))

    def unit(self, cell: str) -> Irr:
        for c in self.am.cells():
            if str(c) == cell:
                return self.word_irr(self.am.empty_word(c))
        raise SpecError(f"{self.name}: unknown 0-cell {cell!r}")

    def dual(self, a: Irr) -> Irr:
        return self.word_irr(dual_word(self.am, self.irr_word(a)))

    def qdim(self, a: Irr):
        return word_qdim(self.am, self.irr_word(a))

    def _fuse(self, a: Irr, b: Irr) -> dict[Irr, int]:
        prod = concat(self.am, as_general(self.irr_word(a)), as_general(self.irr_word(b)))
        dec = decompose_word(self.am, prod)
        return {self.word_irr(w): n for w, n in dec.terms}


def free_product_spec(am: Amalgam, name: str | None = None) -> FreeProductSpec:
    return FreeProductSpec(am, name)


class RestrictedSpec(CategorySpec):
    """A spec restricted to a subset of 0-cells (endpoints filtered)."""

    def __init__(self, base: CategorySpec, keep_cells: Sequence[str], name: str | None = None) -> None:
        super().__init__()
        self.base = base
        self.keep = tuple(keep_cells)
        missing = [c for c in self.keep if c not in base.zero_cells()]
        if missing:
            raise SpecError(f"cannot restrict {base.name} to unknown 0-cells {missing}")
        self.name = name or f"{base.name}|{','.join(self.keep)}"
        self.exact = base.exact
        self.is_lazy = base.is_lazy
        self.tol = base.tol

    def zero_cells(self) -> tuple[str, ...]:
        return self.keep

    def irreducibles(self, depth: int | None = None) -> tuple[Irr, ...]:
        return tuple(a for a in self.base.irreducibles(depth)
                     if a.source in self.keep and a.target in self.keep)

    def irr(self, label: str) -> Irr:
        return self.base.irr(label)

    def unit(self, cell: str) -> Irr:
        if cell not in self.keep:
            raise SpecError(f"{self.name}: unknown 0-cell {cell!r}")
        return self.base.unit(cell)

    def dual(self, a: Irr) -> Irr:
        return self.base.dual(a)

    def qdim(self, a: Irr):
        return self.base.qdim(a)

    def _fuse(self, a: Irr, b: Irr) -> dict[Irr, int]:
        return self.base.fusion(a, b)


@dataclass(frozen=True)
class PointedSpec:
    """A two-0-cell spec with a distinguished nonzero object of mixed type."""

    ambient: CategorySpec
    a: str
    b: str
    point: Bundle

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ParameterError("pointed spec needs two distinct 0-cells")
        if self.point.is_zero:
            raise ParameterError("pointed spec needs a nonzero point")
        if (self.point.source, self.point.target) != (self.a, self.b):
            raise CompositionError(f"point has type ({self.point.source},{self.point.target}), expected ({self.a},{self.b})")

    def point_qdim(self):
        return bundle_qdim(self.ambient, self.point)


def free_compose(p1: PointedSpec, p2: PointedSpec) -> PointedSpec:
    """Glue b1 = a2, take the free product, forget the middle cell, point at u1 u2."""
    am = Amalgam({1: p1.ambient, 2: p2.ambient}, shared={"*": {1: p1.b, 2: p2.a}},
                 name=f"{p1.ambient.name}*{p2.ambient.name}")
    fp = FreeProductSpec(am)
    cell_a = am.cell(1, p1.a)
    cell_c = am.cell(2, p2.b)
    spec = RestrictedSpec(fp, [str(cell_a), str(cell_c)])
    terms: dict[Irr, int] = {}
    for t1, m1 in p1.point.terms:
        for t2, m2 in p2.point.terms:
            w = am.reduced([Letter(1, t1), Letter(2, t2)])
            terms[fp.word_irr(w)] = terms.get(fp.word_irr(w), 0) + m1 * m2
    point = Bundle.from_dict(str(cell_a), str(cell_c), terms)
    return PointedSpec(spec, str(cell_a), str(cell_c), point)


def box_dims(p: PointedSpec, n_max: int, bound: int | None = None) -> list[int]:
    """Endomorphism dimensions of alternating powers u, u ub u, u ub u ub u, ...

    Entry n uses n alternating tensor factors starting with the point; entry 0
    is 1.  ``bound`` is an optional declared cap on the length of reduced
    terms encountered (BoundError when exceeded).
    """
    spec = p.ambient
    u = p.point
    ub = bundle_dual(spec, u)
    out = [1]
    acc: Bundle | None = None
    for n in range(1, n_max + 1):
        nxt = u if n % 2 == 1 else ub
        acc = nxt if acc is None else bundle_fuse(spec, acc, nxt)
        if bound is not None:
            for a, _ in acc.terms:
                if isinstance(spec, (FreeProductSpec, RestrictedSpec)):
                    base = spec.base if isinstance(spec, RestrictedSpec) else spec
                    if len(base.irr_word(a)) > bound:
                        raise BoundError(f"box_dims support exceeded the declared bound {bound}")
        out.append(hom_dim(spec, acc, acc))
    return out


def nondegenerate(p: PointedSpec, depth: int) -> bool:
    """Bounded check that every (a,a) irreducible occurs in some power of u ub.

    Irreducibles are enumerated within ``depth`` and powers (u ub)^k are taken
    for k <= depth; the verdict is only as strong as the bound.
    """
    spec = p.ambient
    targets = {a for a in spec.irreducibles(depth) if (a.source, a.target) == (p.a, p.a)}
    u = p.point
    uub = bundle_fuse(spec, u, bundle_dual(spec, u))
    seen: set[Irr] = {spec.unit(p.a)}
    acc = None
    for _ in range(depth):
        acc = uub if acc is None else bundle_fuse(spec, acc, uub)
        seen.update(a for a, _ in acc.terms)
    return targets <= seen
