"""Fusion data of a rigid semisimple 2-category, at the Grothendieck level.

A category spec records 0-cells, irreducible 1-cells with their endpoints,
units, duals, quantum dimensions and the fusion multiplicities
N(a, b; c) = dim Hom(c, a (x) b).  Everything downstream (reduced-word free
products, box-space dimensions, the numerical realization) is driven by this
data, so the axioms are enforced by an explicit validator rather than by
construction.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction


Qdim = "float | Fraction"


class FusionError(Exception):
    """Base class for everything this package raises on purpose."""


class SpecError(FusionError):
    """Structurally malformed data: dangling labels, missing units, bad tables."""


class CompositionError(FusionError):
    """Endpoints do not match where composition was required."""


class ParameterError(FusionError):
    """A numeric parameter is outside its allowed range."""


class BoundError(FusionError):
    """A declared enumeration bound was exceeded or is demonstrably insufficient."""


class WordError(FusionError):
    """A word violates the invariants its type promises (e.g. not reduced)."""


@dataclass(frozen=True, order=True)
class Irr:
    """An irreducible 1-cell: a label plus its source and target 0-cells."""

    label: str
    source: str
    target: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple
    detail: str


@dataclass
class ValidationReport:
    violations: list[Violation]
    checks_run: int
    window: int  # number of irreducibles that were examined

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return f"{status} ({self.checks_run} checks over {self.window} irreducibles)"


class CategorySpec:
    """Fusion data of one factor category.

    Subclasses provide ``_fuse`` (finite-support decomposition of a product of
    irreducibles) plus the unit/dual/qdim maps.  Fusion results are memoized;
    specs are immutable after construction and safe to share between threads
    (cache writes are idempotent, so racing queries agree).
    """

    name: str = "spec"
    exact: bool = False
    is_lazy: bool = False
    tol: float = 1e-9

    def __init__(self) -> None:
        self._fusion_cache: dict[tuple[Irr, Irr], dict[Irr, int]] = {}

    # -- interface to implement ------------------------------------------------
    def zero_cells(self) -> tuple[str, ...]:
        raise NotImplementedError

    def irreducibles(self, depth: int | None = None) -> tuple[Irr, ...]:
        """All irreducibles; lazy specs require an enumeration depth."""
        raise NotImplementedError

    def unit(self, cell: str) -> Irr:
        raise NotImplementedError

    def dual(self, a: Irr) -> Irr:
        raise NotImplementedError

    def qdim(self, a: Irr):
        raise NotImplementedError

    def _fuse(self, a: Irr, b: Irr) -> dict[Irr, int]:
        raise NotImplementedError

    def irr(self, label: str) -> Irr:
        """Look an irreducible up by label; lazy specs override with direct lookup."""
        for a in self.irreducibles(None):
            if a.label == label:
                return a
        raise SpecError(f"{self.name}: unknown irreducible label {label!r}")

    # -- derived ---------------------------------------------------------------
    def fusion(self, a: Irr, b: Irr) -> dict[Irr, int]:
        """Finite-support fusion of two irreducibles, memoized."""
        if a.target != b.source:
            raise CompositionError(f"cannot fuse {a} : ({a.source},{a.target}) with {b} : ({b.source},{b.target})")
        key = (a, b)
        hit = self._fusion_cache.get(key)
        if hit is None:
            hit = {g: n for g, n in self._fuse(a, b).items() if n > 0}
            self._fusion_cache[key] = hit
        return hit

    def N(self, a: Irr, b: Irr, c: Irr) -> int:
        return self.fusion(a, b).get(c, 0)

    def is_unit(self, a: Irr) -> bool:
        return a.source == a.target and a == self.unit(a.source)


@dataclass(frozen=True)
class Bundle:
    """A formal direct sum of irreducibles sharing endpoints, with multiplicities."""

    source: str
    target: str
    terms: tuple[tuple[Irr, int], ...]  # canonically sorted, multiplicities > 0

    @staticmethod
    def from_dict(source: str, target: str, terms: Mapping[Irr, int]) -> "Bundle":
        for a in terms:
            if (a.source, a.target) != (source, target):
                raise CompositionError(f"term {a} has endpoints ({a.source},{a.target}), bundle has ({source},{target})")
        items = tuple(sorted((a, int(n)) for a, n in terms.items() if n > 0))
        return Bundle(source, target, items)

    @staticmethod
    def of(a: Irr, mult: int = 1) -> "Bundle":
        return Bundle.from_dict(a.source, a.target, {a: mult})

    def as_dict(self) -> dict[Irr, int]:
        return dict(self.terms)

    def mult(self, a: Irr) -> int:
        return self.as_dict().get(a, 0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"{n}*{a}" if n != 1 else str(a) for a, n in self.terms)


def fuse_pair(spec: CategorySpec, a: Irr, b: Irr) -> Bundle:
    """Decompose the product of two irreducibles into a Bundle."""
    return Bundle.from_dict(a.source, b.target, spec.fusion(a, b))


def bundle_fuse(spec: CategorySpec, x: Bundle, y: Bundle) -> Bundle:
    """Bilinear extension of fuse_pair to bundles."""
    if x.target != y.source:
        raise CompositionError(f"bundle endpoints ({x.source},{x.target}) and ({y.source},{y.target}) do not compose")
    acc: dict[Irr, int] = {}
    for a, m in x.terms:
        for b, n in y.terms:
            for c, k in spec.fusion(a, b).items():
                acc[c] = acc.get(c, 0) + m * n * k
    return Bundle.from_dict(x.source, y.target, acc)


def bundle_dual(spec: CategorySpec, x: Bundle) -> Bundle:
    return Bundle.from_dict(x.target, x.source, {spec.dual(a): n for a, n in x.terms})


def bundle_qdim(spec: CategorySpec, x: Bundle):
    total = Fraction(0) if spec.exact else 0.0
    for a, n in x.terms:
        total += n * spec.qdim(a)
    return total


def hom_dim(spec: CategorySpec, x: Bundle, y: Bundle) -> int:
    """dim Hom(x, y) by semisimplicity: the multiplicity pairing."""
    if (x.source, x.target) != (y.source, y.target):
        raise CompositionError(f"bundles of type ({x.source},{x.target}) and ({y.source},{y.target}) have no homs")
    ys = y.as_dict()
    return sum(m * ys.get(a, 0) for a, m in x.terms)


def decompose_tensor(spec: CategorySpec, seq: Sequence[Irr], cell: str | None = None) -> Bundle:
    """Left fold of fuse_pair over a composable sequence of irreducibles.

    The empty sequence needs an explicit 0-cell and yields the unit bundle.
    """
    if not seq:
        if cell is None:
            raise ParameterError("empty tensor sequence needs an explicit 0-cell")
        return Bundle.of(spec.unit(cell))
    acc = Bundle.of(seq[0])
    for a in seq[1:]:
        acc = bundle_fuse(spec, acc, Bundle.of(a))
    return acc


class TableSpec(CategorySpec):
    """An explicit finite fusion table."""

    is_lazy = False

    def __init__(
        self,
        name: str,
        zero_cells: Iterable[str],
        irreducibles: Iterable[Irr],
        units: Mapping[str, str],
        duals: Mapping[str, str],
        qdims: Mapping[str, "float | Fraction"],
        table: Mapping[tuple[str, str], Mapping[str, int]],
        exact: bool = False,
        tol: float = 1e-9,
    ) -> None:
        super().__init__()
        self.name = name
        self.exact = exact
        self.tol = tol
        self._cells = tuple(dict.fromkeys(zero_cells))
        self._irr = tuple(irreducibles)
        self._by_label = {a.label: a for a in self._irr}
        if len(self._by_label) != len(self._irr):
            raise SpecError(f"{name}: duplicate irreducible labels")
        for a in self._irr:
            if a.source not in self._cells or a.target not in self._cells:
                raise SpecError(f"{name}: irreducible {a.label} has unknown endpoint")
        self._units = {}
        for cell in self._cells:
            if cell not in units:
                raise SpecError(f"{name}: 0-cell {cell} has no unit")
            u = self._require(units[cell])
            if (u.source, u.target) != (cell, cell):
                raise SpecError(f"{name}: unit {u.label} of {cell} has endpoints ({u.source},{u.target})")
            self._units[cell] = u
        self._duals = {}
        for a in self._irr:
            if a.label not in duals:
                raise SpecError(f"{name}: irreducible {a.label} has no declared dual")
            self._duals[a.label] = self._require(duals[a.label])
        self._qdims = {}
        for a in self._irr:
            if a.label not in qdims:
                raise SpecError(f"{name}: irreducible {a.label} has no quantum dimension")
            q = qdims[a.label]
            self._qdims[a.label] = Fraction(q) if exact else float(q)
        self._table = {}
        for (la, lb), row in table.items():
            a, b = self._require(la), self._require(lb)
            self._table[(a, b)] = {self._require(lc): int(n) for lc, n in row.items() if n}

    def _require(self, label: str) -> Irr:
        try:
            return self._by_label[label]
        except KeyError:
            raise SpecError(f"{self.name}: unknown irreducible label {label!r}") from None

    def irr(self, label: str) -> Irr:
        return self._require(label)

    def zero_cells(self) -> tuple[str, ...]:
        return self._cells

    def irreducibles(self, depth: int | None = None) -> tuple[Irr, ...]:
        return self._irr

    def unit(self, cell: str) -> Irr:
        try:
            return self._units[cell]
        except KeyError:
            raise SpecError(f"{self.name}: unknown 0-cell {cell!r}") from None

    def dual(self, a: Irr) -> Irr:
        return self._duals[a.label]

    def qdim(self, a: Irr):
        return self._qdims[a.label]

    def _fuse(self, a: Irr, b: Irr) -> dict[Irr, int]:
        # Omitted table entries mean the all-zero decomposition.
        return dict(self._table.get((a, b), {}))


def _qdim_close(spec: CategorySpec, x, y) -> bool:
    if spec.exact:
        return x == y
    return abs(float(x) - float(y)) <= spec.tol * max(1.0, abs(float(x)), abs(float(y)))


def validate(spec: CategorySpec, search_depth: int | None = None) -> ValidationReport:
    """Check the fusion axioms over the (depth-bounded) window of irreducibles.

    Structural defects raise SpecError; honest axiom violations are reported
    with witnesses.  For lazy specs only irreducibles within ``search_depth``
    are examined, but fusion supports may reach outside the window.
    """
    window = spec.irreducibles(search_depth)
    if not window:
        raise SpecError(f"{spec.name}: no irreducibles in the explored window")
    bad: list[Violation] = []
    checks = 0

    def report(rule: str, witness: tuple, detail: str) -> None:
        bad.append(Violation(rule, witness, detail))

    cells = spec.zero_cells()
    for cell in cells:
        u = spec.unit(cell)
        checks += 1
        if (u.source, u.target) != (cell, cell):
            raise SpecError(f"{spec.name}: unit of {cell} has endpoints ({u.source},{u.target})")
        if spec.dual(u) != u:
            report("dual-unit", (u,), f"dual({u}) = {spec.dual(u)} != {u}")
        if not _qdim_close(spec, spec.qdim(u), Fraction(1) if spec.exact else 1.0):
            report("qdim-unit", (u,), f"qdim({u}) = {spec.qdim(u)} != 1")

    for a in window:
        checks += 3
        ad = spec.dual(a)
        if (ad.source, ad.target) != (a.target, a.source):
            report("dual-endpoints", (a,), f"dual({a}) has endpoints ({ad.source},{ad.target})")
        if spec.dual(ad) != a:
            report("dual-involution", (a,), f"dual(dual({a})) = {spec.dual(ad)} != {a}")
        q = spec.qdim(a)
        if float(q) <= 0:
            report("qdim-positive", (a,), f"qdim({a}) = {q} <= 0")
        if not _qdim_close(spec, spec.qdim(ad), q):
            report("qdim-dual", (a,), f"qdim({ad}) = {spec.qdim(ad)} != qdim({a}) = {q}")
        # Unit laws on both sides.
        left = spec.fusion(spec.unit(a.source), a)
        right = spec.fusion(a, spec.unit(a.target))
        if left != {a: 1}:
            report("unit-law", (spec.unit(a.source), a), f"unit * {a} = {left}")
        if right != {a: 1}:
            report("unit-law", (a, spec.unit(a.target)), f"{a} * unit = {right}")

    pairs = [(a, b) for a in window for b in window if a.target == b.source]
    for a, b in pairs:
        checks += 1
        prod = spec.fusion(a, b)
        for c, n in prod.items():
            if (c.source, c.target) != (a.source, b.target):
                report("fusion-endpoints", (a, b, c), f"N({a},{b};{c}) = {n} but endpoints do not compose")
        # Frobenius reciprocity, over the fusion support plus all window
        # irreducibles with matching endpoints (to catch zero/nonzero skew).
        ad, bd = spec.dual(a), spec.dual(b)
        cands = set(prod)
        cands.update(c for c in window if (c.source, c.target) == (a.source, b.target))
        for c in sorted(cands):
            n1 = prod.get(c, 0)
            n2 = spec.N(ad, c, b)
            n3 = spec.N(c, bd, a)
            checks += 1
            if not (n1 == n2 == n3):
                report("frobenius", (a, b, c), f"N({a},{b};{c}) = {n1}, N({ad},{c};{b}) = {n2}, N({c},{bd};{a}) = {n3}")
        # Dimension consistency.
        lhs = spec.qdim(a) * spec.qdim(b)
        rhs = Fraction(0) if spec.exact else 0.0
        for c, n in prod.items():
            rhs += n * spec.qdim(c)
        checks += 1
        if not _qdim_close(spec, lhs, rhs):
            report("qdim-consistency", (a, b), f"qdim({a})*qdim({b}) = {lhs} != sum = {rhs}")

    triples = [(a, b, c) for a in window for b in window for c in window
               if a.target == b.source and b.target == c.source]
    for a, b, c in triples:
        checks += 1
        lhs: dict[Irr, int] = {}
        for g, n in spec.fusion(a, b).items():
            for e, m in spec.fusion(g, c).items():
                lhs[e] = lhs.get(e, 0) + n * m
        rhs: dict[Irr, int] = {}
        for g, n in spec.fusion(b, c).items():
            for e, m in spec.fusion(a, g).items():
                rhs[e] = rhs.get(e, 0) + n * m
        if lhs != rhs:
            wit = next(e for e in set(lhs) | set(rhs) if lhs.get(e, 0) != rhs.get(e, 0))
            report("associativity", (a, b, c, wit),
                   f"(({a}{b}){c} vs {a}({b}{c})) disagree at {wit}: {lhs.get(wit, 0)} != {rhs.get(wit, 0)}")

    return ValidationReport(bad, checks, len(window))
