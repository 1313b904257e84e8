"""Concrete factor categories from finite groups.

A ConcreteCategory carries explicit unitary irreducible matrices, computes
intertwiner bases by group averaging, and ships standard solutions of the
conjugate equations, so the realization layer can turn every structure map
into an actual complex matrix.

Conventions fixed here and relied on everywhere downstream:

* 2-cell spaces (x, y) are maps FROM y INTO x; an element of (ab, c) is a
  matrix carrier(c) -> carrier(a) (x) carrier(b).
* Tensor products of carriers use the row-major Kronecker convention
  (numpy.kron), which is strictly associative and strictly unital.
* Intertwiner bases are orthonormal for the trace pairing <V, W> = tr(W* V).
  With this normalization the completeness relation reads
  sum_c sum_V qdim(c) V V* = identity.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction

import numpy as np

from .fusion import Irr, ParameterError, SpecError, TableSpec

BUILD_TOL = 1e-10

_CELL = "x"  # every group category has a single 0-cell


class FiniteGroup:
    """A finite group given by labels and a full multiplication table."""

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]], name: str = "G") -> None:
        self.name = name
        self.labels = tuple(labels)
        self.order = len(self.labels)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        if len(self.table) != self.order or any(len(r) != self.order for r in self.table):
            raise SpecError(f"{name}: multiplication table must be {self.order}x{self.order}")
        self._check_axioms()

    def _check_axioms(self) -> None:
        n = self.order
        rng = range(n)
        for row in self.table:
            if sorted(row) != list(rng):
                raise SpecError(f"{self.name}: a row of the table is not a permutation")
        idents = [e for e in rng if all(self.table[e][g] == g and self.table[g][e] == g for g in rng)]
        if len(idents) != 1:
            raise SpecError(f"{self.name}: table has no (unique) identity")
        self.identity = idents[0]
        self.inv = [-1] * n
        for g in rng:
            invs = [h for h in rng if self.table[g][h] == self.identity and self.table[h][g] == self.identity]
            if len(invs) != 1:
                raise SpecError(f"{self.name}: element {self.labels[g]} has no two-sided inverse")
            self.inv[g] = invs[0]
        # Exhaustive associativity check is cheap at the orders we ship.
        if n <= 24:
            for a, b, c in itertools.product(rng, repeat=3):
                if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                    raise SpecError(f"{self.name}: associativity fails at "
                                    f"({self.labels[a]},{self.labels[b]},{self.labels[c]})")

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        if n < 1:
            raise ParameterError("cyclic group order must be >= 1")
        labels = [f"r{k}" if k else "e" for k in range(n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return FiniteGroup(labels, table, name=f"Z{n}")

    @staticmethod
    def symmetric3() -> "FiniteGroup":
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
        labels = ["e", "r", "rr", "s", "sr", "srr"]

        def compose(p, q):  # (p*q)(x) = p(q(x))
            return tuple(p[q[x]] for x in range(3))

        idx = {p: i for i, p in enumerate(perms)}
        table = [[idx[compose(p, q)] for q in perms] for p in perms]
        return FiniteGroup(labels, table, name="S3")


class UnitaryRep:
    """A finite-dimensional unitary representation given by explicit matrices."""

    def __init__(self, group: FiniteGroup, label: str, mats: np.ndarray, check: bool = True) -> None:
        self.group = group
        self.label = label
        self.mats = np.ascontiguousarray(np.asarray(mats, dtype=complex))
        if self.mats.shape[0] != group.order or self.mats.shape[1] != self.mats.shape[2]:
            raise SpecError(f"rep {label}: expected {group.order} square matrices")
        if check:
            self.check(BUILD_TOL)

    @property
    def dim(self) -> int:
        return self.mats.shape[1]

    def mat(self, g: int) -> np.ndarray:
        return self.mats[g]

    def check(self, tol: float) -> None:
        eye = np.eye(self.dim)
        for g in range(self.group.order):
            if np.max(np.abs(self.mats[g] @ self.mats[g].conj().T - eye)) > tol:
                raise SpecError(f"rep {self.label}: matrix of {self.group.labels[g]} is not unitary")
            for h in range(self.group.order):
                gh = self.group.mul(g, h)
                if np.max(np.abs(self.mats[g] @ self.mats[h] - self.mats[gh])) > tol:
                    raise SpecError(f"rep {self.label}: not a homomorphism at "
                                    f"({self.group.labels[g]},{self.group.labels[h]})")

    def character(self) -> np.ndarray:
        return np.array([np.trace(m) for m in self.mats])

    def conj(self) -> "UnitaryRep":
        return UnitaryRep(self.group, f"~{self.label}", self.mats.conj(), check=False)

    def commutant_dim(self) -> int:
        """Dimension of the commutant, computed by averaging matrix units."""
        d = self.dim
        basis: list[np.ndarray] = []
        for k in range(d):
            for l in range(d):
                e = np.zeros((d, d), dtype=complex)
                e[k, l] = 1.0
                p = sum(self.mats[g] @ e @ self.mats[g].conj().T for g in range(self.group.order))
                p /= self.group.order
                for b in basis:
                    p = p - np.vdot(b, p) * b
                nrm = float(np.linalg.norm(p))
                if nrm > 1e-8:
                    basis.append(p / nrm)
        return len(basis)

    def is_irreducible(self) -> bool:
        return self.commutant_dim() == 1


def _tensor_rep(group: FiniteGroup, reps: Sequence[UnitaryRep]) -> UnitaryRep:
    """Kronecker product of representations; the empty product is the trivial rep."""
    n = group.order
    if not reps:
        return UnitaryRep(group, "1", np.ones((n, 1, 1), dtype=complex), check=False)
    mats = reps[0].mats
    label = reps[0].label
    for r in reps[1:]:
        mats = np.stack([np.kron(mats[g], r.mats[g]) for g in range(n)])
        label = f"{label}*{r.label}"
    return UnitaryRep(group, label, mats, check=False)


class ConcreteCategory:
    """Rep(G) on a chosen set of unitary irreducibles, with all morphism data."""

    def __init__(self, group: FiniteGroup, irreps: Sequence[UnitaryRep], spec: TableSpec,
                 duals: Mapping[str, str]) -> None:
        self.group = group
        self.irreps = {r.label: r for r in irreps}
        self.spec = spec
        self.cell = _CELL
        self._duals = dict(duals)
        self._objs: dict[tuple[str, ...], UnitaryRep] = {}
        self._onb: dict[tuple[tuple[str, ...], str], np.ndarray] = {}

    @property
    def unit_label(self) -> str:
        return self.spec.unit(self.cell).label

    def irr(self, label: str) -> Irr:
        return self.spec.irr(label)

    def rep(self, label: str) -> UnitaryRep:
        try:
            return self.irreps[label]
        except KeyError:
            raise SpecError(f"{self.spec.name}: unregistered irreducible {label!r}") from None

    def conj_rep(self, label: str) -> UnitaryRep:
        return self.rep(label).conj()

    def dual_label(self, label: str) -> str:
        return self._duals[label]

    def qdim_int(self, label: str) -> int:
        return self.rep(label).dim

    # -- tensor objects ------------------------------------------------------
    def obj_key(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Canonical key of a tensor object: unit letters dropped."""
        return tuple(l for l in labels if l != self.unit_label)

    def obj(self, labels: Iterable[str]) -> UnitaryRep:
        key = self.obj_key(labels)
        hit = self._objs.get(key)
        if hit is None:
            hit = _tensor_rep(self.group, [self.rep(l) for l in key])
            self._objs[key] = hit
        return hit

    def obj_dim(self, labels: Iterable[str]) -> int:
        d = 1
        for l in self.obj_key(labels):
            d *= self.rep(l).dim
        return d

    # -- intertwiners ----------------------------------------------------------
    def onb(self, obj_labels: Iterable[str], irr_label: str) -> np.ndarray:
        """Orthonormal basis of maps irr -> obj, shape (count, dim_obj, dim_irr).

        Basis vectors satisfy tr(W* V) = delta_{VW}; computed by averaging the
        matrix units in row-major order and Gram-Schmidt, so the result is
        deterministic.
        """
        key = (self.obj_key(obj_labels), irr_label)
        hit = self._onb.get(key)
        if hit is None:
            hit = self._compute_onb(self.obj(key[0]), self.rep(irr_label))
            self._onb[key] = hit
        return hit

    def _compute_onb(self, big: UnitaryRep, small: UnitaryRep) -> np.ndarray:
        n = self.group.order
        out: list[np.ndarray] = []
        for k in range(big.dim):
            for l in range(small.dim):
                e = np.zeros((big.dim, small.dim), dtype=complex)
                e[k, l] = 1.0
                v = sum(big.mats[g] @ e @ small.mats[g].conj().T for g in range(n)) / n
                for b in out:
                    v = v - np.vdot(b, v) * b
                nrm = float(np.linalg.norm(v))
                if nrm > 1e-8:
                    out.append(v / nrm)
        if not out:
            return np.zeros((0, big.dim, small.dim), dtype=complex)
        return np.stack(out)

    def N_obj(self, obj_labels: Iterable[str], irr_label: str) -> int:
        return self.onb(obj_labels, irr_label).shape[0]

    # -- duality ---------------------------------------------------------------
    def std_solution(self, label: str) -> tuple[np.ndarray, np.ndarray]:
        """Standard solution (s, t) for carrier (x) conjugate-carrier, s = t = vec(I)."""
        d = self.rep(label).dim
        s = np.eye(d, dtype=complex).reshape(d * d, 1)
        return s, s.copy()

    def categorical_trace(self, label: str, T: np.ndarray) -> complex:
        """Tr(T) computed as s* (T (x) 1) s with the standard solution."""
        T = np.asarray(T, dtype=complex)
        d = self.rep(label).dim
        if T.shape != (d, d):
            raise SpecError(f"trace argument must be {d}x{d} for {label}, got {T.shape}")
        s, _ = self.std_solution(label)
        return complex((s.conj().T @ np.kron(T, np.eye(d)) @ s)[0, 0])

    def conjugate_equation_defect(self, label: str) -> float:
        """Max deviation of the two conjugate equations for (s, t)."""
        r = self.rep(label)
        d = r.dim
        s, t = self.std_solution(label)
        eye = np.eye(d)
        lhs1 = np.kron(s.conj().T, eye) @ np.kron(eye, t)
        lhs2 = np.kron(t.conj().T, eye) @ np.kron(eye, s)
        return float(max(np.max(np.abs(lhs1 - eye)), np.max(np.abs(lhs2 - eye))))

    def standardness_defect(self, label: str, samples: int = 4, seed: int = 0) -> float:
        """Max |s*(T (x) 1)s - t*(1 (x) T)t| over sampled endomorphisms T."""
        d = self.rep(label).dim
        s, t = self.std_solution(label)
        rng = np.random.default_rng(seed)
        worst = 0.0
        eye = np.eye(d)
        for _ in range(samples):
            T = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            lhs = (s.conj().T @ np.kron(T, eye) @ s)[0, 0]
            rhs = (t.conj().T @ np.kron(eye, T) @ t)[0, 0]
            worst = max(worst, abs(lhs - rhs))
        return worst

    def completeness_defect(self, a_label: str, b_label: str) -> float:
        """Deviation of sum_c qdim(c) V V* from the identity on a (x) b."""
        dab = self.obj_dim([a_label, b_label])
        acc = np.zeros((dab, dab), dtype=complex)
        for c in self.irreps:
            vs = self.onb([a_label, b_label], c)
            for v in vs:
                acc += self.qdim_int(c) * (v @ v.conj().T)
        return float(np.max(np.abs(acc - np.eye(dab))))


def intertwiner_basis(cat: ConcreteCategory, a_label: str, b_label: str, c_label: str) -> list[np.ndarray]:
    """Orthonormal basis (trace pairing) of maps carrier(c) -> carrier(a) (x) carrier(b)."""
    return list(cat.onb([a_label, b_label], c_label))


def categorical_trace(cat: ConcreteCategory, label: str, T: np.ndarray) -> complex:
    return cat.categorical_trace(label, T)


def build_category(group: FiniteGroup, reps: Sequence[UnitaryRep], complete: bool = True,
                   name: str | None = None) -> ConcreteCategory:
    """Assemble Rep(G) from explicit irreducibles.

    Requires the trivial rep, pairwise non-isomorphic irreducibles (detected
    by characters), and Sum dim^2 = |G| when ``complete`` is set.  The fusion
    table is derived from computed intertwiner dimensions; duals are wired to
    the registered irrep isomorphic to the entrywise conjugate.
    """
    name = name or f"rep({group.name})"
    n = group.order
    for r in reps:
        if r.group is not group:
            raise SpecError(f"{name}: rep {r.label} belongs to a different group")
        if not r.is_irreducible():
            raise SpecError(f"{name}: rep {r.label} is reducible (commutant dim > 1)")
    chars = {r.label: r.character() for r in reps}
    trivial = [r.label for r in reps if r.dim == 1 and np.allclose(r.mats, 1.0)]
    if not trivial:
        raise SpecError(f"{name}: the trivial representation must be included")
    unit_label = trivial[0]
    labels = [r.label for r in reps]
    if len(set(labels)) != len(labels):
        raise SpecError(f"{name}: duplicate representation labels")
    for r1, r2 in itertools.combinations(reps, 2):
        if abs(np.vdot(chars[r1.label], chars[r2.label])) / n > 0.5:
            raise SpecError(f"{name}: reps {r1.label} and {r2.label} are isomorphic")
    if complete and sum(r.dim ** 2 for r in reps) != n:
        raise SpecError(f"{name}: sum of dim^2 is {sum(r.dim ** 2 for r in reps)}, expected {n}")

    duals: dict[str, str] = {}
    for r in reps:
        cbar = chars[r.label].conj()
        matches = [s.label for s in reps if np.allclose(chars[s.label], cbar, atol=1e-8)]
        if not matches:
            raise SpecError(f"{name}: no registered conjugate for {r.label}")
        duals[r.label] = matches[0]

    irrs = {r.label: Irr(r.label, _CELL, _CELL) for r in reps}
    cat_shell = ConcreteCategory.__new__(ConcreteCategory)
    cat_shell.group = group
    cat_shell.irreps = {r.label: r for r in reps}
    cat_shell._objs = {}
    cat_shell._onb = {}

    table: dict[tuple[str, str], dict[str, int]] = {}
    for r1 in reps:
        for r2 in reps:
            big = _tensor_rep(group, [r1, r2])
            row = {}
            for r3 in reps:
                cnt = cat_shell._compute_onb(big, r3).shape[0]
                if cnt:
                    row[r3.label] = cnt
            table[(r1.label, r2.label)] = row

    spec = TableSpec(
        name=name,
        zero_cells=[_CELL],
        irreducibles=list(irrs.values()),
        units={_CELL: unit_label},
        duals=duals,
        qdims={r.label: Fraction(r.dim) for r in reps},
        table=table,
        exact=True,
    )
    return ConcreteCategory(group, reps, spec, duals)


# -- built-in categories -----------------------------------------------------

def cyclic_category(n: int) -> ConcreteCategory:
    """Rep(Z/n) with the n characters chi_k(r^j) = exp(2 pi i jk / n)."""
    if not (1 <= n <= 6):
        raise ParameterError("built-in cyclic categories cover 1 <= n <= 6")
    g = FiniteGroup.cyclic(n)
    reps = []
    for k in range(n):
        mats = np.array([[[np.exp(2j * np.pi * j * k / n)]] for j in range(n)])
        reps.append(UnitaryRep(g, "triv" if k == 0 else f"w{k}", mats))
    return build_category(g, reps)


def s3_category() -> ConcreteCategory:
    """Rep(S3) with trivial, sign and the real 2-dimensional standard irrep."""
    g = FiniteGroup.symmetric3()
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]

    def perm_matrix(p):
        m = np.zeros((3, 3))
        for col, row in enumerate(p):
            m[row, col] = 1.0
        return m

    def sign(p):
        s = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    s = -s
        return s

    basis = np.array([[1, 1], [-1, 1], [0, -2]]) / np.array([np.sqrt(2), np.sqrt(6)])
    triv = UnitaryRep(g, "triv", np.ones((6, 1, 1), dtype=complex))
    sgn = UnitaryRep(g, "sgn", np.array([[[float(sign(p))]] for p in perms]))
    std = UnitaryRep(g, "std", np.stack([basis.T @ perm_matrix(p) @ basis for p in perms]).astype(complex))
    return build_category(g, [triv, sgn, std])
