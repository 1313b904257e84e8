"""Temperley-Lieb-Jones fusion data at generic loop parameter delta >= 2.

The fusion ring is the sl2-type truncation-free one: f_m (x) f_n decomposes
as the sum of f_k for |m-n| <= k <= m+n with k = m+n (mod 2), every object is
self-dual, and quantum dimensions follow the Chebyshev recursion
S_0 = 1, S_1 = delta, S_{n+1} = delta S_n - S_{n-1}.
"""

from __future__ import annotations

from .fusion import Bundle, CategorySpec, Irr, ParameterError, SpecError
from .freeprod import PointedSpec


def _chebyshev_dims(delta: float, n: int, cache: list[float]) -> float:
    while len(cache) <= n:
        k = len(cache)
        if k == 0:
            cache.append(1.0)
        elif k == 1:
            cache.append(float(delta))
        else:
            cache.append(delta * cache[k - 1] - cache[k - 2])
    return cache[n]


def _admissible(m: int, n: int) -> list[int]:
    return list(range(abs(m - n), m + n + 1, 2))


class TljSpec(CategorySpec):
    """One 0-cell; irreducibles f0, f1, f2, ... enumerated lazily by depth."""

    is_lazy = True

    def __init__(self, delta: float, level_hint: int = 8) -> None:
        super().__init__()
        if delta < 2:
            raise ParameterError(f"loop parameter must be >= 2, got {delta}")
        self.delta = float(delta)
        self.level_hint = int(level_hint)
        self.name = f"tlj({delta:g})"
        self._dims: list[float] = []

    def _irr(self, n: int) -> Irr:
        return Irr(f"f{n}", "x", "x")

    def irr(self, label: str) -> Irr:
        if not (label.startswith("f") and label[1:].isdigit()):
            raise SpecError(f"{self.name}: unknown irreducible label {label!r}")
        return self._irr(int(label[1:]))

    def _level(self, a: Irr) -> int:
        return int(a.label[1:])

    def zero_cells(self) -> tuple[str, ...]:
        return ("x",)

    def irreducibles(self, depth: int | None = None) -> tuple[Irr, ...]:
        if depth is None:
            raise ParameterError(f"{self.name} is lazy; irreducibles() needs a depth bound")
        return tuple(self._irr(n) for n in range(depth + 1))

    def unit(self, cell: str) -> Irr:
        if cell != "x":
            raise SpecError(f"{self.name}: unknown 0-cell {cell!r}")
        return self._irr(0)

    def dual(self, a: Irr) -> Irr:
        return a

    def qdim(self, a: Irr) -> float:
        return _chebyshev_dims(self.delta, self._level(a), self._dims)

    def _fuse(self, a: Irr, b: Irr) -> dict[Irr, int]:
        return {self._irr(k): 1 for k in _admissible(self._level(a), self._level(b))}


def tlj_spec(delta: float, level_hint: int = 8) -> TljSpec:
    """The TLJ fusion category at loop parameter delta >= 2."""
    return TljSpec(delta, level_hint)


class PointedTljSpec(CategorySpec):
    """The two-0-cell version: even objects sit on the diagonals, odd ones cross.

    Labels are ``f{n}:{st}`` with st in {aa, bb, ab, ba} matching the parity
    of n.  The underlying fusion rule is the TLJ one with endpoint
    bookkeeping.
    """

    is_lazy = True

    def __init__(self, delta: float, level_hint: int = 8) -> None:
        super().__init__()
        if delta < 2:
            raise ParameterError(f"loop parameter must be >= 2, got {delta}")
        self.delta = float(delta)
        self.level_hint = int(level_hint)
        self.name = f"pointed-tlj({delta:g})"
        self._dims: list[float] = []

    def _pairs_for(self, n: int) -> tuple[tuple[str, str], ...]:
        return (("a", "a"), ("b", "b")) if n % 2 == 0 else (("a", "b"), ("b", "a"))

    def _irr(self, n: int, s: str, t: str) -> Irr:
        if (s, t) not in self._pairs_for(n):
            raise SpecError(f"{self.name}: f{n} cannot have endpoints ({s},{t})")
        return Irr(f"f{n}:{s}{t}", s, t)

    def irr(self, label: str) -> Irr:
        try:
            base, st = label.split(":")
            return self._irr(int(base[1:]), st[0], st[1])
        except (ValueError, IndexError):
            raise SpecError(f"{self.name}: unknown irreducible label {label!r}") from None

    def _level(self, a: Irr) -> int:
        return int(a.label.split(":")[0][1:])

    def zero_cells(self) -> tuple[str, ...]:
        return ("a", "b")

    def irreducibles(self, depth: int | None = None) -> tuple[Irr, ...]:
        if depth is None:
            raise ParameterError(f"{self.name} is lazy; irreducibles() needs a depth bound")
        out = []
        for n in range(depth + 1):
            out.extend(self._irr(n, s, t) for s, t in self._pairs_for(n))
        return tuple(out)

    def unit(self, cell: str) -> Irr:
        if cell not in ("a", "b"):
            raise SpecError(f"{self.name}: unknown 0-cell {cell!r}")
        return self._irr(0, cell, cell)

    def dual(self, a: Irr) -> Irr:
        return self._irr(self._level(a), a.target, a.source)

    def qdim(self, a: Irr) -> float:
        return _chebyshev_dims(self.delta, self._level(a), self._dims)

    def _fuse(self, a: Irr, b: Irr) -> dict[Irr, int]:
        return {self._irr(k, a.source, b.target): 1
                for k in _admissible(self._level(a), self._level(b))}


def pointed_tlj(delta: float, level_hint: int = 8) -> PointedSpec:
    """The pointed TLJ 2-category: point u = the (a,b) copy of f1, qdim delta."""
    spec = PointedTljSpec(delta, level_hint)
    return PointedSpec(spec, "a", "b", Bundle.of(spec.irr("f1:ab")))
