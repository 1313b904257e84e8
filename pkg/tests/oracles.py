"""Independent oracles the tests check the library against.

Everything here is deliberately primitive: lattice-path counting, character
sums over group elements, and brute-force enumeration.  None of it shares
code with the library paths it certifies.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def fuss_catalan(n: int) -> int:
    return math.comb(3 * n, n) // (2 * n + 1)


def ballot_multiplicities(n: int) -> dict[int, int]:
    """Multiplicity of the level-k object in the n-th power of the generator,
    counted as lattice paths from 0 to k in n steps of +-1 staying >= 0."""
    state = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for k, c in state.items():
            for k2 in (k - 1, k + 1):
                if k2 >= 0:
                    nxt[k2] = nxt.get(k2, 0) + c
        state = nxt
    return state


def tl_end_dim(n: int) -> int:
    """dim End(generator^n) at generic loop parameter: sum of squared path counts."""
    return sum(c * c for c in ballot_multiplicities(n).values())


def char_mult(chars_prod: np.ndarray, char_target: np.ndarray) -> int:
    """Multiplicity of an irreducible character in a product character."""
    n = len(char_target)
    val = np.sum(chars_prod * np.conj(char_target)) / n
    out = int(round(val.real))
    assert abs(val - out) < 1e-9
    return out


def brute_reduced_count(letters_by_factor: dict[int, list], length: int) -> int:
    """Number of alternating sequences of the given length (single 0-cell case)."""
    if length == 0:
        return 1
    total = 0

    def go(prev_factor, remaining):
        nonlocal total
        if remaining == 0:
            total += 1
            return
        for f, letters in letters_by_factor.items():
            if f == prev_factor:
                continue
            for _ in letters:
                go(f, remaining - 1)

    go(None, length)
    return total


def exact_sum(values) -> Fraction:
    acc = Fraction(0)
    for v in values:
        acc += Fraction(v)
    return acc
