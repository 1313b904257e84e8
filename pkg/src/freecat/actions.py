"""Module actions of concrete factor categories on word-graded Hilbert spaces.

Every structure map here is produced as an explicit block matrix over a
deterministic basis layout: each graded component is a direct sum, ordered by
the slot irreducible's label, of (intertwiner basis) x (inner component)
blocks.  Left actions index intertwiner-major, right actions inner-major,
matching the tensor factor order of the defining formulas.

Because intertwiner bases are orthonormal for the trace pairing, these
layouts are orthonormal bases of the graded components, so the maps that are
unitary in theory come out as unitary matrices.  The ``Scales`` flags exist
only so the mutation tests can drop the scalar prefactors one at a time.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .fusion import SpecError
from .graded import GradedMap, GradedSpace, star_space
from .repgroups import ConcreteCategory
from .words import (
    Amalgam,
    GeneralWord,
    Letter,
    ReducedWord,
    left_cons,
    right_cons,
    strip_head,
    strip_tail,
    word_key,
)


@dataclass(frozen=True)
class Scales:
    """Scalar prefactors of the structure maps; all on in normal operation."""

    mu_left: bool = True          # sqrt(d) in the left module associator
    mu_right: bool = True         # sqrt(d) in the right module associator
    sigma_edge_dgamma: bool = True  # sqrt(d(slot)) in the same-factor swap edge case
    sigma_edge_dsigma: bool = True  # sqrt(d(sum index)) in the same-factor swap edge case
    unitor: bool = True           # sqrt(d) making the unit action strictly unitary
    psi_weight: bool = True       # d(w) weight in the induced functor on 2-cells


DEFAULT_SCALES = Scales()


@dataclass(frozen=True)
class Segment:
    """One direct summand of a graded component: a slot irreducible, the
    intertwiner count, and the inner component it tensors with."""

    slot: str                # label of the factor irreducible consumed here
    count: int               # intertwiner basis size
    inner_word: ReducedWord  # grading word of the inner space feeding the slot
    inner_dim: int
    offset: int


@dataclass
class ActionResult:
    """A graded space together with the layout of its direct-sum components."""

    space: GradedSpace
    layout: dict[ReducedWord, tuple[Segment, ...]]
    head: dict[ReducedWord, tuple[str, ReducedWord]]  # component word -> (head irr label, rest)


def _pos_left(seg: Segment, k: int, m: int) -> int:
    return seg.offset + k * seg.inner_dim + m


def _pos_right(seg: Segment, m: int, k: int) -> int:
    return seg.offset + m * seg.count + k


class ConcreteAmalgam:
    """A family of single-0-cell concrete categories, glued at their 0-cells."""

    def __init__(self, cats: Mapping[int, ConcreteCategory], name: str = "amalgam") -> None:
        self.cats: dict[int, ConcreteCategory] = dict(sorted(cats.items()))
        if not self.cats:
            raise SpecError("concrete amalgam needs at least one factor")
        specs = {i: c.spec for i, c in self.cats.items()}
        shared = {"pt": {i: c.cell for i, c in self.cats.items()}}
        self.amalgam = Amalgam(specs, shared, name=name)
        self.cell = self.amalgam.cells()[0]
        self._assembly_cache: dict = {}

    def cat(self, i: int) -> ConcreteCategory:
        try:
            return self.cats[i]
        except KeyError:
            raise SpecError(f"unknown factor index {i}") from None

    def star(self) -> GradedSpace:
        return star_space(self.cell)

    def line(self, w: ReducedWord) -> GradedSpace:
        return GradedSpace(w.left, w.right, {w: 1})

    def letter(self, i: int, label: str) -> Letter:
        return self.amalgam.letter(i, label)

    def word(self, pairs: Iterable[tuple[int, str]]) -> GeneralWord:
        return self.amalgam.word(list(pairs), cell=self.cell)

    def psi_dim(self, v) -> int:
        d = 1
        for l in v.letters:
            d *= self.cat(l.factor).rep(l.irr.label).dim
        return d

    def word_dim(self, v) -> float:
        """Quantum dimension of a word; integer carrier dims for group factors."""
        d = 1.0
        for l in v.letters:
            d *= float(self.cat(l.factor).qdim_int(l.irr.label))
        return d


# -- the actions -------------------------------------------------------------

def act_left(ca: ConcreteAmalgam, i: int, a_labels: tuple[str, ...], H: GradedSpace) -> ActionResult:
    """The left action of the factor-i object on a graded space.

    Component at [pi]:w collects, slot by slot, (obj (x) slot, pi) tensor the
    component of H at [slot]:w; the layout records the embeddings.
    """
    cat = ca.cat(i)
    am = ca.amalgam
    per_tail: dict[ReducedWord, list[tuple[str, ReducedWord]]] = {}
    for u in H.words():
        if u.letters and u.letters[0].factor == i:
            head, tail = strip_head(am, u)
            per_tail.setdefault(tail, []).append((head.irr.label, u))
        else:
            per_tail.setdefault(u, []).append((cat.unit_label, u))
    dims: dict[ReducedWord, int] = {}
    layout: dict[ReducedWord, tuple[Segment, ...]] = {}
    heads: dict[ReducedWord, tuple[str, ReducedWord]] = {}
    for tail, contribs in sorted(per_tail.items(), key=lambda t: word_key(t[0])):
        contribs.sort(key=lambda t: t[0])
        for pi in sorted(cat.irreps):
            segs: list[Segment] = []
            off = 0
            for slot, u in contribs:
                cnt = cat.N_obj(a_labels + (slot,), pi)
                hd = H.dim(u)
                if cnt and hd:
                    segs.append(Segment(slot, cnt, u, hd, off))
                    off += cnt * hd
            if off:
                w_out = left_cons(am, Letter(i, cat.irr(pi)), tail)
                dims[w_out] = off
                layout[w_out] = tuple(segs)
                heads[w_out] = (pi, tail)
    left = next(iter(dims)).left if dims else ca.cell
    return ActionResult(GradedSpace(left, H.right, dims), layout, heads)


def act_right(ca: ConcreteAmalgam, j: int, a_labels: tuple[str, ...], H: GradedSpace) -> ActionResult:
    """Mirror of act_left: the right action, inner-major layout."""
    cat = ca.cat(j)
    am = ca.amalgam
    per_init: dict[ReducedWord, list[tuple[str, ReducedWord]]] = {}
    for u in H.words():
        if u.letters and u.letters[-1].factor == j:
            init, tail = strip_tail(am, u)
            per_init.setdefault(init, []).append((tail.irr.label, u))
        else:
            per_init.setdefault(u, []).append((cat.unit_label, u))
    dims: dict[ReducedWord, int] = {}
    layout: dict[ReducedWord, tuple[Segment, ...]] = {}
    heads: dict[ReducedWord, tuple[str, ReducedWord]] = {}
    for init, contribs in sorted(per_init.items(), key=lambda t: word_key(t[0])):
        contribs.sort(key=lambda t: t[0])
        for pi in sorted(cat.irreps):
            segs: list[Segment] = []
            off = 0
            for slot, u in contribs:
                cnt = cat.N_obj((slot,) + a_labels, pi)
                hd = H.dim(u)
                if cnt and hd:
                    segs.append(Segment(slot, cnt, u, hd, off))
                    off += cnt * hd
            if off:
                w_out = right_cons(am, init, Letter(j, cat.irr(pi)))
                dims[w_out] = off
                layout[w_out] = tuple(segs)
                heads[w_out] = (pi, init)
    right = next(iter(dims)).right if dims else ca.cell
    return ActionResult(GradedSpace(H.left, right, dims), layout, heads)


def _slot_segment(segs: tuple[Segment, ...], slot: str, inner_word: ReducedWord | None = None) -> Segment:
    for s in segs:
        if s.slot == slot and (inner_word is None or s.inner_word == inner_word):
            return s
    raise SpecError(f"no layout segment with slot {slot!r}")


def act_left_map(ca: ConcreteAmalgam, i: int, a_labels: tuple[str, ...], b_labels: tuple[str, ...],
                 phi: np.ndarray | None, T: GradedMap) -> GradedMap:
    """The morphism action phi |> T on the left; phi=None means the identity."""
    cat = ca.cat(i)
    dom = act_left(ca, i, a_labels, T.domain)
    cod = act_left(ca, i, b_labels, T.codomain)
    if phi is None and a_labels != b_labels:
        raise SpecError("identity morphism needs equal source and target objects")
    blocks: dict[ReducedWord, np.ndarray] = {}
    for w in dom.space.words():
        if not cod.space.dim(w):
            continue
        pi, _ = dom.head[w]
        M = np.zeros((cod.space.dim(w), dom.space.dim(w)), dtype=complex)
        for sd in dom.layout[w]:
            Tu = T.block(sd.inner_word)
            if not Tu.size or not np.any(Tu):
                continue
            try:
                sc = _slot_segment(cod.layout[w], sd.slot, sd.inner_word)
            except SpecError:
                continue
            if phi is None:
                C = np.eye(sd.count, dtype=complex)
            else:
                Vs = cat.onb(a_labels + (sd.slot,), pi)
                Us = cat.onb(b_labels + (sd.slot,), pi)
                dg = cat.obj_dim([sd.slot])
                lift = np.kron(phi, np.eye(dg))
                C = np.array([[np.vdot(Us[k2], lift @ Vs[k1]) for k1 in range(sd.count)]
                              for k2 in range(sc.count)])
            M[sc.offset:sc.offset + sc.count * sc.inner_dim,
              sd.offset:sd.offset + sd.count * sd.inner_dim] = np.kron(C, Tu)
        blocks[w] = M
    return GradedMap(dom.space, cod.space, blocks)


def act_right_map(ca: ConcreteAmalgam, j: int, a_labels: tuple[str, ...], b_labels: tuple[str, ...],
                  phi: np.ndarray | None, T: GradedMap) -> GradedMap:
    """The morphism action T <| phi on the right (inner-major layout)."""
    cat = ca.cat(j)
    dom = act_right(ca, j, a_labels, T.domain)
    cod = act_right(ca, j, b_labels, T.codomain)
    if phi is None and a_labels != b_labels:
        raise SpecError("identity morphism needs equal source and target objects")
    blocks: dict[ReducedWord, np.ndarray] = {}
    for w in dom.space.words():
        if not cod.space.dim(w):
            continue
        pi, _ = dom.head[w]
        M = np.zeros((cod.space.dim(w), dom.space.dim(w)), dtype=complex)
        for sd in dom.layout[w]:
            Tu = T.block(sd.inner_word)
            if not Tu.size or not np.any(Tu):
                continue
            try:
                sc = _slot_segment(cod.layout[w], sd.slot, sd.inner_word)
            except SpecError:
                continue
            if phi is None:
                C = np.eye(sd.count, dtype=complex)
            else:
                Vs = cat.onb((sd.slot,) + a_labels, pi)
                Us = cat.onb((sd.slot,) + b_labels, pi)
                dg = cat.obj_dim([sd.slot])
                lift = np.kron(np.eye(dg), phi)
                C = np.array([[np.vdot(Us[k2], lift @ Vs[k1]) for k1 in range(sd.count)]
                              for k2 in range(sc.count)])
            M[sc.offset:sc.offset + sc.count * sc.inner_dim,
              sd.offset:sd.offset + sd.count * sd.inner_dim] = np.kron(Tu, C)
        blocks[w] = M
    return GradedMap(dom.space, cod.space, blocks)


def assoc_left(ca: ConcreteAmalgam, i: int, a_labels: tuple[str, ...], b_labels: tuple[str, ...],
               H: GradedSpace, scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The unitary associator a |> (b |> H) -> (ab) |> H with its sqrt(d) factor."""
    cat = ca.cat(i)
    inner = act_left(ca, i, b_labels, H)
    dom = act_left(ca, i, a_labels, inner.space)
    cod = act_left(ca, i, a_labels + b_labels, H)
    da = cat.obj_dim(a_labels)
    blocks: dict[ReducedWord, np.ndarray] = {}
    for w in dom.space.words():
        pi, _ = dom.head[w]
        M = np.zeros((cod.space.dim(w), dom.space.dim(w)), dtype=complex)
        for s1 in dom.layout[w]:
            gamma = s1.slot
            Vs = cat.onb(a_labels + (gamma,), pi)
            scale = float(np.sqrt(cat.obj_dim([gamma]))) if scales.mu_left else 1.0
            for s2 in inner.layout[s1.inner_word]:
                gamma2 = s2.slot
                u0 = s2.inner_word
                Ws = cat.onb(b_labels + (gamma2,), gamma)
                sc = _slot_segment(cod.layout[w], gamma2, u0)
                Us = cat.onb(a_labels + b_labels + (gamma2,), pi)
                hd = s2.inner_dim
                for k1 in range(s1.count):
                    for k2 in range(s2.count):
                        A = np.kron(np.eye(da), Ws[k2]) @ Vs[k1]
                        col = s1.offset + k1 * s1.inner_dim + s2.offset + k2 * hd
                        for k3 in range(sc.count):
                            coeff = scale * np.vdot(Us[k3], A)
                            if abs(coeff) < 1e-15:
                                continue
                            row = sc.offset + k3 * hd
                            M[row:row + hd, col:col + hd] += coeff * np.eye(hd)
        blocks[w] = M
    return GradedMap(dom.space, cod.space, blocks)


def assoc_right(ca: ConcreteAmalgam, j: int, H: GradedSpace, a_labels: tuple[str, ...],
                b_labels: tuple[str, ...], scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The unitary associator (H <| a) <| b -> H <| (ab), mirrored."""
    cat = ca.cat(j)
    inner = act_right(ca, j, a_labels, H)
    dom = act_right(ca, j, b_labels, inner.space)
    cod = act_right(ca, j, a_labels + b_labels, H)
    db = cat.obj_dim(b_labels)
    blocks: dict[ReducedWord, np.ndarray] = {}
    for w in dom.space.words():
        pi, _ = dom.head[w]
        M = np.zeros((cod.space.dim(w), dom.space.dim(w)), dtype=complex)
        for s1 in dom.layout[w]:
            gamma = s1.slot
            Vs = cat.onb((gamma,) + b_labels, pi)
            scale = float(np.sqrt(cat.obj_dim([gamma]))) if scales.mu_right else 1.0
            for s2 in inner.layout[s1.inner_word]:
                gamma2 = s2.slot
                u0 = s2.inner_word
                Ws = cat.onb((gamma2,) + a_labels, gamma)
                sc = _slot_segment(cod.layout[w], gamma2, u0)
                Us = cat.onb((gamma2,) + a_labels + b_labels, pi)
                hd = s2.inner_dim
                for k1 in range(s1.count):
                    for k2 in range(s2.count):
                        A = np.kron(Ws[k2], np.eye(db)) @ Vs[k1]
                        for k3 in range(sc.count):
                            coeff = scale * np.vdot(Us[k3], A)
                            if abs(coeff) < 1e-15:
                                continue
                            # Inner-major positions: m runs over the H component.
                            for m in range(hd):
                                row = _pos_right(sc, m, k3)
                                col = _pos_right(s1, _pos_right(s2, m, k2), k1)
                                M[row, col] += coeff
        blocks[w] = M
    return GradedMap(dom.space, cod.space, blocks)


def unitor_left(ca: ConcreteAmalgam, i: int, H: GradedSpace, scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The unit action unit |> H -> H; unitary thanks to the sqrt(d) rescale."""
    cat = ca.cat(i)
    dom = act_left(ca, i, (), H)
    blocks: dict[ReducedWord, np.ndarray] = {}
    for w in dom.space.words():
        pi, _ = dom.head[w]
        scale = 1.0 if scales.unitor else 1.0 / float(np.sqrt(cat.obj_dim([pi])))
        blocks[w] = scale * np.eye(H.dim(w), dtype=complex)
    return GradedMap(dom.space, H, blocks)


def unitor_right(ca: ConcreteAmalgam, j: int, H: GradedSpace, scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The unit action H <| unit -> H, mirrored."""
    cat = ca.cat(j)
    dom = act_right(ca, j, (), H)
    blocks: dict[ReducedWord, np.ndarray] = {}
    for w in dom.space.words():
        pi, _ = dom.head[w]
        scale = 1.0 if scales.unitor else 1.0 / float(np.sqrt(cat.obj_dim([pi])))
        blocks[w] = scale * np.eye(H.dim(w), dtype=complex)
    return GradedMap(dom.space, H, blocks)


def sigma(ca: ConcreteAmalgam, i: int, a_labels: tuple[str, ...], H: GradedSpace,
          j: int, b_labels: tuple[str, ...], scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The swap (a |> H) <| b -> a |> (H <| b).

    Generically a pure index shuffle; when i == j the components supported on
    at most one letter need the double-sum edge formula with its
    sqrt(d) x sqrt(d) scalars.
    """
    cat_i = ca.cat(i)
    cat_j = ca.cat(j)
    AL = act_left(ca, i, a_labels, H)
    DR = act_right(ca, j, b_labels, AL.space)
    HR = act_right(ca, j, b_labels, H)
    COD = act_left(ca, i, a_labels, HR.space)
    da = cat_i.obj_dim(a_labels)
    db = cat_j.obj_dim(b_labels)
    blocks: dict[ReducedWord, np.ndarray] = {}
    for w in DR.space.words():
        if not COD.space.dim(w):
            blocks[w] = np.zeros((0, DR.space.dim(w)), dtype=complex)
            continue
        M = np.zeros((COD.space.dim(w), DR.space.dim(w)), dtype=complex)
        edge = i == j and len(w.letters) <= 1 and (not w.letters or w.letters[0].factor == i)
        if not edge:
            for sr in DR.layout[w]:
                u1 = sr.inner_word
                for sl in AL.layout.get(u1, ()):
                    slc = _slot_segment(COD.layout[w], sl.slot)
                    src = _slot_segment(HR.layout[slc.inner_word], sr.slot, sl.inner_word)
                    hd = H.dim(sl.inner_word)
                    for k in range(sl.count):
                        for k2 in range(sr.count):
                            for m in range(hd):
                                col = _pos_right(sr, _pos_left(sl, k, m), k2)
                                row = _pos_left(slc, k, _pos_right(src, m, k2))
                                M[row, col] = 1.0
        else:
            pi, _ = DR.head[w]
            for sr in DR.layout[w]:          # slot gamma', V' in ((gamma' b), pi)
                gp = sr.slot
                Vps = cat_j.onb((gp,) + b_labels, pi)
                u1 = sr.inner_word
                s_gp = float(np.sqrt(cat_i.obj_dim([gp]))) if scales.sigma_edge_dgamma else 1.0
                for sl in AL.layout.get(u1, ()):  # slot gamma, V in ((a gamma), gamma')
                    g = sl.slot
                    Vs = cat_i.onb(a_labels + (g,), gp)
                    u0 = sl.inner_word
                    hd = H.dim(u0)
                    for sigma_label in sorted(cat_i.irreps):
                        Ws = cat_i.onb((g,) + b_labels, sigma_label)
                        if not Ws.shape[0]:
                            continue
                        try:
                            slc = _slot_segment(COD.layout[w], sigma_label)
                            src = _slot_segment(HR.layout[slc.inner_word], g, u0)
                        except SpecError:
                            continue
                        Us = cat_i.onb(a_labels + (sigma_label,), pi)
                        s_sg = float(np.sqrt(cat_i.obj_dim([sigma_label]))) if scales.sigma_edge_dsigma else 1.0
                        for kv in range(sl.count):
                            for kvp in range(sr.count):
                                base = np.kron(Vs[kv], np.eye(db)) @ Vps[kvp]
                                for kw in range(Ws.shape[0]):
                                    A = np.kron(np.eye(da), Ws[kw].conj().T) @ base
                                    for ku in range(Us.shape[0]):
                                        coeff = s_gp * s_sg * np.vdot(Us[ku], A)
                                        if abs(coeff) < 1e-15:
                                            continue
                                        for m in range(hd):
                                            col = _pos_right(sr, _pos_left(sl, kv, m), kvp)
                                            row = _pos_left(slc, ku, _pos_right(src, m, kw))
                                            M[row, col] += coeff
        blocks[w] = M
    return GradedMap(DR.space, COD.space, blocks)


def t_alpha(ca: ConcreteAmalgam, i: int, a_labels: tuple[str, ...]) -> GradedMap:
    """The canonical identification star <| a -> a |> star (identity in layout)."""
    dom = act_right(ca, i, a_labels, ca.star())
    cod = act_left(ca, i, a_labels, ca.star())
    blocks = {w: np.eye(dom.space.dim(w), dtype=complex) for w in dom.space.words()}
    return GradedMap(dom.space, cod.space, blocks)


# -- word functors -----------------------------------------------------------

def word_action(ca: ConcreteAmalgam, v: GeneralWord, H: GradedSpace) -> GradedSpace:
    """Apply the word functor of v to H: letters act from the right one at a time."""
    out = H
    for l in reversed(v.letters):
        out = act_left(ca, l.factor, (l.irr.label,), out).space
    return out


def build_word_action(ca: ConcreteAmalgam, v: GeneralWord, H: GradedSpace) -> ActionResult:
    """Like word_action but keeping the outermost layout (the module's public op)."""
    if not v.letters:
        space = H
        layout = {w: (Segment("", 1, w, H.dim(w), 0),) for w in H.words()}
        return ActionResult(space, layout, {w: ("", w) for w in H.words()})
    inner = word_action(ca, GeneralWord(v.letters[1:], _after_head(ca, v), v.right), H)
    return act_left(ca, v.letters[0].factor, (v.letters[0].irr.label,), inner)


def _after_head(ca: ConcreteAmalgam, v: GeneralWord):
    return ca.amalgam.letter_target(v.letters[0])


def word_map(ca: ConcreteAmalgam, v: GeneralWord, T: GradedMap) -> GradedMap:
    """The word functor of v applied to a graded map."""
    out = T
    for l in reversed(v.letters):
        out = act_left_map(ca, l.factor, (l.irr.label,), (l.irr.label,), None, out)
    return out


def c_word(ca: ConcreteAmalgam, v: GeneralWord, j: int, b_labels: tuple[str, ...],
           x: GradedSpace, scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The swap data of the word functor: (L_v x) <| b -> L_v (x <| b).

    Built by the recursion that composes one letter's swap with the tail's.
    """
    if not v.letters:
        space = act_right(ca, j, b_labels, x).space
        return GradedMap.identity(space)
    head = v.letters[0]
    tail = GeneralWord(v.letters[1:], _after_head(ca, v), v.right)
    inner_space = word_action(ca, tail, x)
    s = sigma(ca, head.factor, (head.irr.label,), inner_space, j, b_labels, scales)
    c2 = c_word(ca, tail, j, b_labels, x, scales)
    lift = act_left_map(ca, head.factor, (head.irr.label,), (head.irr.label,), None, c2)
    return lift @ s


def sigma_tilde(ca: ConcreteAmalgam, v: GeneralWord, i: int, a_labels: tuple[str, ...],
                scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """(v |> star) <| a -> (v [a]) |> star, via the word swap and the star exchange."""
    c = c_word(ca, v, i, a_labels, ca.star(), scales)
    t = t_alpha(ca, i, a_labels)
    return word_map(ca, v, t) @ c
