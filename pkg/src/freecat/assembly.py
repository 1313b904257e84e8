"""Assembly maps into the fibre-functor target and the induced 2-functor.

The target category is plain finite-dimensional Hilbert spaces: each factor's
fibre functor sends an irreducible to its carrier and morphisms to
themselves, with identity tensor structure.  The assembly map of a word
transports each vector of a graded component of the word's vacuum image into
a concrete matrix; the induced functor on 2-cells is the weighted sum of
assembly sandwiches.
"""

from __future__ import annotations

import numpy as np

from .graded import GradedMap
from .words import GeneralWord, ReducedWord, as_general
from .actions import ConcreteAmalgam, DEFAULT_SCALES, Scales, act_left, word_action


def assembly_tensors(ca: ConcreteAmalgam, v: GeneralWord) -> dict[ReducedWord, np.ndarray]:
    """For each reduced w: an array A with A[k] = the matrix of the k-th basis
    vector of the w-component of v's vacuum image, mapping the carrier of w to
    the carrier of v.

    Built by the recursion on the leading letter, with the sqrt(d) weight on
    the slot irreducible.
    """
    v = as_general(v)
    hit = ca._assembly_cache.get(v)
    if hit is not None:
        return hit
    if not v.letters:
        empty = ca.amalgam.empty_word(v.left)
        out = {empty: np.ones((1, 1, 1), dtype=complex)}
        ca._assembly_cache[v] = out
        return out
    head = v.letters[0]
    i = head.factor
    cat = ca.cat(i)
    tail_word = GeneralWord(v.letters[1:], ca.amalgam.letter_target(head), v.right)
    sub = assembly_tensors(ca, tail_word)
    sub_space = word_action(ca, tail_word, ca.star())
    top = act_left(ca, i, (head.irr.label,), sub_space)
    da = cat.rep(head.irr.label).dim
    dv = ca.psi_dim(v)
    out: dict[ReducedWord, np.ndarray] = {}
    for w in top.space.words():
        pi, tail = top.head[w]
        dw = ca.psi_dim(w)
        arr = np.zeros((top.space.dim(w), dv, dw), dtype=complex)
        d_tail = ca.psi_dim(tail)
        for seg in top.layout[w]:
            Vs = cat.onb((head.irr.label, seg.slot), pi)
            scale = float(np.sqrt(cat.obj_dim([seg.slot])))
            subA = sub[seg.inner_word]
            for k in range(seg.count):
                lift = np.kron(Vs[k], np.eye(d_tail))
                for m in range(seg.inner_dim):
                    pos = seg.offset + k * seg.inner_dim + m
                    arr[pos] = scale * np.kron(np.eye(da), subA[m]) @ lift
        out[w] = arr
    ca._assembly_cache[v] = out
    return out


def assembly(ca: ConcreteAmalgam, v: GeneralWord, w: ReducedWord, zeta: np.ndarray) -> np.ndarray:
    """The assembly map applied to a vector in the w-component of v's vacuum image."""
    tensors = assembly_tensors(ca, v)
    zeta = np.asarray(zeta, dtype=complex).ravel()
    arr = tensors.get(w)
    if arr is None:
        if zeta.size:
            raise ValueError(f"{v} has no component at {w}")
        return np.zeros((ca.psi_dim(v), ca.psi_dim(w)), dtype=complex)
    if zeta.shape != (arr.shape[0],):
        raise ValueError(f"vector has length {zeta.size}, component has dimension {arr.shape[0]}")
    return np.tensordot(zeta, arr, axes=(0, 0))


def universal_image(ca: ConcreteAmalgam, v: GeneralWord, v2: GeneralWord,
                    eta_star: GradedMap, scales: Scales = DEFAULT_SCALES) -> np.ndarray:
    """The induced functor on a 2-cell given by its vacuum component.

    Sum over reduced words and basis vectors of d(w) times (target image of
    the mapped vector) times (assembly of the vector) adjoint.
    """
    A = assembly_tensors(ca, v)
    B = assembly_tensors(ca, v2)
    out = np.zeros((ca.psi_dim(v2), ca.psi_dim(v)), dtype=complex)
    for w, arr in A.items():
        barr = B.get(w)
        if barr is None:
            continue
        blk = eta_star.block(w)
        if not blk.size:
            continue
        weight = ca.word_dim(w) if scales.psi_weight else 1.0
        # out += weight * sum_k (sum_k' blk[k',k] barr[k']) @ arr[k]^H
        mapped = np.tensordot(blk, barr, axes=(0, 0))  # (k, dv2, dw)
        out += weight * np.einsum("kab,kcb->ac", mapped, arr.conj())
    return out


def identity_star(ca: ConcreteAmalgam, v: GeneralWord) -> GradedMap:
    space = word_action(ca, v, ca.star())
    return GradedMap.identity(space)
