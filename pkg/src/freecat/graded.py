"""Finite-dimensional Hilbert spaces graded by reduced words, and graded maps.

A graded space stores one dimension per reduced word; a graded map stores one
complex block per word.  Bases are implicit: every component is C^n with the
standard inner product, and the action layer guarantees that its recursive
direct-sum layouts are orthonormal with respect to that inner product.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from .fusion import CompositionError
from .words import Cell, ReducedWord, word_key


class GradedSpace:
    """A reduced-word graded space with fixed endpoints and finite support."""

    def __init__(self, left: Cell, right: Cell, dims: Mapping[ReducedWord, int]) -> None:
        self.left = left
        self.right = right
        self._dims = {w: int(d) for w, d in dims.items() if d}
        for w in self._dims:
            if (w.left, w.right) != (left, right):
                raise CompositionError(f"word {w} has type ({w.left},{w.right}), space has ({left},{right})")

    def words(self) -> tuple[ReducedWord, ...]:
        return tuple(sorted(self._dims, key=word_key))

    def dim(self, w: ReducedWord) -> int:
        return self._dims.get(w, 0)

    @property
    def total_dim(self) -> int:
        return sum(self._dims.values())

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedSpace) and self.left == other.left
                and self.right == other.right and self._dims == other._dims)

    def __repr__(self) -> str:
        parts = ", ".join(f"{w}:{d}" for w, d in sorted(self._dims.items(), key=lambda t: word_key(t[0])))
        return f"GradedSpace({parts})"


def star_space(cell: Cell) -> GradedSpace:
    """The vacuum object: one dimension at the empty word of the given 0-cell."""
    empty = ReducedWord((), cell, cell)
    return GradedSpace(cell, cell, {empty: 1})


class GradedMap:
    """A grading-preserving linear map, stored blockwise; missing blocks are zero."""

    def __init__(self, domain: GradedSpace, codomain: GradedSpace,
                 blocks: Mapping[ReducedWord, np.ndarray]) -> None:
        self.domain = domain
        self.codomain = codomain
        self.blocks: dict[ReducedWord, np.ndarray] = {}
        for w, m in blocks.items():
            m = np.asarray(m, dtype=complex)
            want = (codomain.dim(w), domain.dim(w))
            if m.shape != want:
                raise CompositionError(f"block at {w} has shape {m.shape}, expected {want}")
            if m.size and np.any(m):
                self.blocks[w] = m

    def block(self, w: ReducedWord) -> np.ndarray:
        hit = self.blocks.get(w)
        if hit is None:
            return np.zeros((self.codomain.dim(w), self.domain.dim(w)), dtype=complex)
        return hit

    @staticmethod
    def identity(space: GradedSpace) -> "GradedMap":
        return GradedMap(space, space, {w: np.eye(space.dim(w), dtype=complex) for w in space.words()})

    @staticmethod
    def zero(domain: GradedSpace, codomain: GradedSpace) -> "GradedMap":
        return GradedMap(domain, codomain, {})

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other."""
        if other.codomain != self.domain:
            raise CompositionError("graded maps do not compose")
        words = set(self.blocks) | set(other.blocks)
        return GradedMap(other.domain, self.codomain,
                         {w: self.block(w) @ other.block(w) for w in words})

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return self.compose(other)

    @property
    def H(self) -> "GradedMap":
        return GradedMap(self.codomain, self.domain, {w: m.conj().T for w, m in self.blocks.items()})

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if other.domain != self.domain or other.codomain != self.codomain:
            raise CompositionError("graded maps with different types cannot be added")
        words = set(self.blocks) | set(other.blocks)
        return GradedMap(self.domain, self.codomain, {w: self.block(w) + other.block(w) for w in words})

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "GradedMap":
        return GradedMap(self.domain, self.codomain, {w: scalar * m for w, m in self.blocks.items()})

    def max_dev(self, other: "GradedMap") -> float:
        """Max absolute entry difference, including support mismatches."""
        words = set(self.blocks) | set(other.blocks)
        if not words:
            return 0.0
        return max(float(np.max(np.abs(self.block(w) - other.block(w)))) for w in words)

    def unitarity_defect(self) -> float:
        """Max deviation of U*U and UU* from the identities (0 for a unitary)."""
        worst = 0.0
        for w in set(self.domain.words()) | set(self.codomain.words()):
            u = self.block(w)
            d1 = np.max(np.abs(u.conj().T @ u - np.eye(self.domain.dim(w)))) if self.domain.dim(w) else 0.0
            d2 = np.max(np.abs(u @ u.conj().T - np.eye(self.codomain.dim(w)))) if self.codomain.dim(w) else 0.0
            worst = max(worst, float(d1), float(d2))
        return worst

    def norm_max(self) -> float:
        if not self.blocks:
            return 0.0
        return max(float(np.max(np.abs(m))) for m in self.blocks.values())
