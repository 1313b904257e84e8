"""2-cells of the free product, reconstructed from their vacuum component.

A 2-cell between word functors is determined by its component at the vacuum
object: unroll it along the right action one letter at a time to get the
component at every irreducible (a line at a reduced word), then sum over
intertwiner decompositions to reach arbitrary graded spaces.  The module-
compatibility squares are the consistency conditions; checking them for a
basis of vacuum components certifies the hom-space dimension.
"""

from __future__ import annotations

import numpy as np

from .fusion import CompositionError, FusionError
from .graded import GradedMap, GradedSpace
from .words import GeneralWord, ReducedWord, strip_tail
from .actions import (
    ConcreteAmalgam,
    DEFAULT_SCALES,
    Scales,
    act_right,
    act_right_map,
    c_word,
    word_action,
    word_map,
)


class NonExtendableError(FusionError):
    """The given vacuum component fails the naturality squares beyond tolerance."""


def star_spaces(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord) -> tuple[GradedSpace, GradedSpace]:
    if (v.left, v.right) != (v2.left, v2.right):
        raise CompositionError(f"{v} and {v2} have different types")
    return word_action(ca, v, ca.star()), word_action(ca, v2, ca.star())


def unrolled_component(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord,
                       eta_star: GradedMap, w: ReducedWord,
                       scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The component of the 2-cell at the line over w, unrolled letter by letter."""
    if not w.letters:
        return eta_star
    init, last = strip_tail(ca.amalgam, w)
    prev = unrolled_component(ca, v, v2, eta_star, init, scales)
    i, pi = last.factor, last.irr.label
    x = ca.line(init)
    c_f = c_word(ca, v, i, (pi,), x, scales)
    c_g = c_word(ca, v2, i, (pi,), x, scales)
    mid = act_right_map(ca, i, (pi,), (pi,), None, prev)
    return c_g @ mid @ c_f.H


def component_at(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord,
                 eta_star: GradedMap, H: GradedSpace,
                 scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """The component at an arbitrary graded space, by intertwiner decomposition."""
    dom = word_action(ca, v, H)
    cod = word_action(ca, v2, H)
    total = GradedMap.zero(dom, cod)
    for w in H.words():
        line = ca.line(w)
        eta_w = unrolled_component(ca, v, v2, eta_star, w, scales)
        for k in range(H.dim(w)):
            col = np.zeros((H.dim(w), 1), dtype=complex)
            col[k, 0] = 1.0
            u = GradedMap(line, H, {w: col})
            total = total + (word_map(ca, v2, u) @ eta_w @ word_map(ca, v, u).H)
    return total


def square_defect(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord,
                  eta_star: GradedMap, w: ReducedWord, i: int, pi_label: str,
                  scales: Scales = DEFAULT_SCALES) -> float:
    """Deviation of the module-compatibility square at the line over w and one letter."""
    x = ca.line(w)
    eta_x = unrolled_component(ca, v, v2, eta_star, w, scales)
    c_f = c_word(ca, v, i, (pi_label,), x, scales)
    c_g = c_word(ca, v2, i, (pi_label,), x, scales)
    lhs = c_g @ act_right_map(ca, i, (pi_label,), (pi_label,), None, eta_x)
    xr = act_right(ca, i, (pi_label,), x).space
    rhs = component_at(ca, v, v2, eta_star, xr, scales) @ c_f
    return lhs.max_dev(rhs)


def _check_words(ca: ConcreteAmalgam, depth: int) -> list[ReducedWord]:
    from .words import enumerate_reduced

    cell = ca.cell
    return list(enumerate_reduced(ca.amalgam, cell, cell, depth))


def extend_morphism(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord,
                    eta_star: GradedMap, H: GradedSpace, check_depth: int = 2,
                    tol: float = 1e-8, scales: Scales = DEFAULT_SCALES) -> GradedMap:
    """Extend a vacuum component to the component at H, verifying naturality.

    The squares are sampled on lines over reduced words up to ``check_depth``
    and all registered irreducible letters; a defect beyond ``tol`` raises
    NonExtendableError with the witnessing instance.
    """
    dom_star, cod_star = star_spaces(ca, v, v2)
    if eta_star.domain != dom_star or eta_star.codomain != cod_star:
        raise CompositionError("vacuum component has the wrong graded type")
    for w in _check_words(ca, check_depth):
        for i, cat in ca.cats.items():
            for pi in sorted(cat.irreps):
                if pi == cat.unit_label:
                    continue
                dev = square_defect(ca, v, v2, eta_star, w, i, pi, scales)
                if dev > tol:
                    raise NonExtendableError(
                        f"naturality square fails at word {w}, letter [{pi}@{i}]: deviation {dev:.3e}")
    return component_at(ca, v, v2, eta_star, H, scales)


def star_basis(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord) -> list[GradedMap]:
    """The standard basis of graded maps between the two vacuum images."""
    dom, cod = star_spaces(ca, v, v2)
    out: list[GradedMap] = []
    for w in dom.words():
        if not cod.dim(w):
            continue
        for r in range(cod.dim(w)):
            for c in range(dom.dim(w)):
                m = np.zeros((cod.dim(w), dom.dim(w)), dtype=complex)
                m[r, c] = 1.0
                out.append(GradedMap(dom, cod, {w: m}))
    return out


def two_cell_dim(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord,
                 check_depth: int = 2, tol: float = 1e-8,
                 scales: Scales = DEFAULT_SCALES) -> int:
    """Dimension of vacuum components passing every sampled naturality square.

    Assembles the squares as a linear system over the standard basis of
    graded maps and returns the nullity; for a faithful realization this
    equals the free-product hom dimension.
    """
    basis = star_basis(ca, v, v2)
    if not basis:
        return 0
    letters = [(i, pi) for i, cat in sorted(ca.cats.items())
               for pi in sorted(cat.irreps) if pi != cat.unit_label]
    words = _check_words(ca, check_depth)
    columns: list[np.ndarray] = []
    for eta in basis:
        rows: list[np.ndarray] = []
        for w in words:
            x = ca.line(w)
            eta_x = unrolled_component(ca, v, v2, eta, w, scales)
            for i, pi in letters:
                c_f = c_word(ca, v, i, (pi,), x, scales)
                c_g = c_word(ca, v2, i, (pi,), x, scales)
                lhs = c_g @ act_right_map(ca, i, (pi,), (pi,), None, eta_x)
                xr = act_right(ca, i, (pi,), x).space
                rhs = component_at(ca, v, v2, eta, xr, scales) @ c_f
                diff = lhs - rhs
                support = sorted(set(diff.domain.words()) | set(diff.codomain.words()), key=str)
                flat = [diff.block(u).ravel() for u in support]
                rows.append(np.concatenate(flat) if flat else np.zeros(0, dtype=complex))
        columns.append(np.concatenate(rows) if rows else np.zeros(0, dtype=complex))
    mat = np.stack(columns, axis=1)
    if mat.size == 0:
        return len(basis)
    svals = np.linalg.svd(mat, compute_uv=False)
    rank = int(np.sum(svals > tol))
    return len(basis) - rank
