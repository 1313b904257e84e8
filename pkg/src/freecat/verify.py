"""Batch verification of every structural identity of the realization.

Each identity is checked on an enumerated family of instances within a depth
bound; the report records the worst deviation per instance and an overall
verdict.  Construction-level identities (unitarity, assembly relations,
functor laws) use a tight tolerance; composed diagrams get a looser one
because error accumulates over matrix products.
"""

from __future__ import annotations

import itertools as it
from dataclasses import dataclass, field

import numpy as np

from .graded import GradedMap
from .words import GeneralWord, as_general, enumerate_reduced
from .freeprod import hom_dim_words
from .actions import (
    ConcreteAmalgam,
    DEFAULT_SCALES,
    Scales,
    act_left,
    act_left_map,
    act_right,
    act_right_map,
    assoc_left,
    assoc_right,
    sigma,
    sigma_tilde,
    t_alpha,
    unitor_left,
    unitor_right,
    word_action,
)
from .assembly import assembly, assembly_tensors, identity_star, universal_image
from .morphisms import component_at, star_spaces, two_cell_dim


@dataclass
class CheckRecord:
    identity: str
    instance: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass
class VerificationReport:
    name: str
    depth: int
    seed: int
    tol_construct: float
    tol_coherence: float
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, identity: str, instance: str, deviation: float, tolerance: float) -> None:
        self.records.append(CheckRecord(identity, instance, float(deviation), tolerance))

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    def identities(self) -> list[str]:
        seen: dict[str, None] = {}
        for r in self.records:
            seen.setdefault(r.identity)
        return list(seen)

    def worst(self, identity: str) -> float:
        devs = [r.deviation for r in self.records if r.identity == identity]
        return max(devs) if devs else 0.0

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def summary_lines(self) -> list[str]:
        lines = []
        for ident in self.identities():
            recs = [r for r in self.records if r.identity == ident]
            ok = all(r.passed for r in recs)
            lines.append(f"{'PASS' if ok else 'FAIL'}  {ident:34s} instances={len(recs):4d}  max-dev={self.worst(ident):.3e}")
        return lines

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "depth": self.depth,
            "seed": self.seed,
            "tolerances": {"construction": self.tol_construct, "coherence": self.tol_coherence},
            "all_pass": self.ok,
            "checks": [
                {
                    "identity": r.identity,
                    "instance": r.instance,
                    "max_deviation": r.deviation,
                    "tolerance": r.tolerance,
                    "pass": r.passed,
                }
                for r in self.records
            ],
        }


def _irr_labels(ca: ConcreteAmalgam, i: int) -> list[str]:
    return sorted(ca.cats[i].irreps)


def _object_spaces(ca: ConcreteAmalgam, max_len: int) -> list[tuple[str, "GradedSpace"]]:
    """Representative graded spaces: the vacuum images of short reduced words."""
    cell = ca.cell
    return [(str(w), word_action(ca, as_general(w), ca.star()))
            for w in enumerate_reduced(ca.amalgam, cell, cell, max_len)]


def _general_words(ca: ConcreteAmalgam, max_len: int, units: bool = True) -> list[GeneralWord]:
    lets = [(i, lab) for i, c in sorted(ca.cats.items())
            for lab in sorted(c.irreps) if units or lab != c.unit_label]
    words = [ca.word(())]
    for n in range(1, max_len + 1):
        words.extend(ca.word(seq) for seq in it.product(lets, repeat=n))
    return words


def verify_suite(ca: ConcreteAmalgam, depth: int = 3, tol_construct: float = 1e-10,
                 tol_coherence: float = 1e-8, seed: int = 0,
                 scales: Scales = DEFAULT_SCALES) -> VerificationReport:
    """Run every identity check within the depth bound and return the report."""
    rep = VerificationReport(ca.amalgam.name, depth, seed, tol_construct, tol_coherence)
    rng = np.random.default_rng(seed)
    spaces = _object_spaces(ca, max(depth - 1, 1))
    factors = sorted(ca.cats)

    # -- unitarity of the structure maps ------------------------------------
    for i in factors:
        labs = _irr_labels(ca, i)
        for (a, b), (hname, H) in it.product(it.product(labs, repeat=2), spaces):
            m = assoc_left(ca, i, (a,), (b,), H, scales)
            rep.add("left-associator-unitarity", f"i={i} a={a} b={b} H={hname}", m.unitarity_defect(), tol_construct)
            m = assoc_right(ca, i, H, (a,), (b,), scales)
            rep.add("right-associator-unitarity", f"i={i} a={a} b={b} H={hname}", m.unitarity_defect(), tol_construct)
        for hname, H in spaces:
            rep.add("left-unitor-unitarity", f"i={i} H={hname}",
                    unitor_left(ca, i, H, scales).unitarity_defect(), tol_construct)
            rep.add("right-unitor-unitarity", f"i={i} H={hname}",
                    unitor_right(ca, i, H, scales).unitarity_defect(), tol_construct)
        for a in labs:
            rep.add("star-exchange-unitarity", f"i={i} a={a}",
                    t_alpha(ca, i, (a,)).unitarity_defect(), tol_construct)
    for i, j in it.product(factors, repeat=2):
        for a, b in it.product(_irr_labels(ca, i), _irr_labels(ca, j)):
            for hname, H in spaces:
                m = sigma(ca, i, (a,), H, j, (b,), scales)
                rep.add("swap-unitarity", f"i={i} a={a} j={j} b={b} H={hname}", m.unitarity_defect(), tol_construct)

    # -- coherence diagrams ---------------------------------------------------
    for i in factors:
        labs = _irr_labels(ca, i)
        for (a, b, c), (hname, H) in it.product(it.product(labs, repeat=3), spaces):
            lhs = assoc_left(ca, i, (a, b), (c,), H, scales) @ assoc_left(ca, i, (a,), (b,), act_left(ca, i, (c,), H).space, scales)
            rhs = assoc_left(ca, i, (a,), (b, c), H, scales) @ act_left_map(ca, i, (a,), (a,), None, assoc_left(ca, i, (b,), (c,), H, scales))
            rep.add("left-pentagon", f"i={i} {a},{b},{c} H={hname}", lhs.max_dev(rhs), tol_coherence)
            xa = act_right(ca, i, (a,), H).space
            lhs = assoc_right(ca, i, H, (a,), (b, c), scales) @ assoc_right(ca, i, xa, (b,), (c,), scales)
            rhs = assoc_right(ca, i, H, (a, b), (c,), scales) @ act_right_map(ca, i, (c,), (c,), None, assoc_right(ca, i, H, (a,), (b,), scales))
            rep.add("right-pentagon", f"i={i} {a},{b},{c} H={hname}", lhs.max_dev(rhs), tol_coherence)
        for a, (hname, H) in it.product(labs, spaces):
            lhs = assoc_left(ca, i, (a,), (), H, scales)
            rhs = act_left_map(ca, i, (a,), (a,), None, unitor_left(ca, i, H, scales))
            rep.add("left-triangle", f"i={i} a={a} H={hname}", lhs.max_dev(rhs), tol_coherence)
            lhs = assoc_right(ca, i, H, (), (a,), scales)
            rhs = act_right_map(ca, i, (a,), (a,), None, unitor_right(ca, i, H, scales))
            rep.add("right-triangle", f"i={i} a={a} H={hname}", lhs.max_dev(rhs), tol_coherence)

    # -- the swap as module-functor data -------------------------------------
    small = spaces[: max(2, min(4, len(spaces)))]
    for i, j in it.product(factors, repeat=2):
        li, lj = _irr_labels(ca, i), _irr_labels(ca, j)
        for a, b, c in it.product(li, lj, lj):
            for hname, H in small:
                fx = act_left(ca, i, (a,), H).space
                lhs = sigma(ca, i, (a,), H, j, (b, c), scales) @ assoc_right(ca, j, fx, (b,), (c,), scales)
                xb = act_right(ca, j, (b,), H).space
                rhs = (act_left_map(ca, i, (a,), (a,), None, assoc_right(ca, j, H, (b,), (c,), scales))
                       @ sigma(ca, i, (a,), xb, j, (c,), scales)
                       @ act_right_map(ca, j, (c,), (c,), None, sigma(ca, i, (a,), H, j, (b,), scales)))
                rep.add("swap-associator-square", f"i={i} a={a} j={j} {b},{c} H={hname}", lhs.max_dev(rhs), tol_coherence)
        for a, (hname, H) in it.product(li, small):
            fx = act_left(ca, i, (a,), H).space
            lhs = unitor_right(ca, j, fx, scales)
            rhs = act_left_map(ca, i, (a,), (a,), None, unitor_right(ca, j, H, scales)) @ sigma(ca, i, (a,), H, j, (), scales)
            rep.add("swap-unitor-square", f"i={i} a={a} j={j} H={hname}", lhs.max_dev(rhs), tol_coherence)
        for a, a2, c in it.product(li, li, lj):
            for hname, H in small[:2]:
                mu = assoc_left(ca, i, (a,), (a2,), H, scales)
                lhs = sigma(ca, i, (a, a2), H, j, (c,), scales) @ act_right_map(ca, j, (c,), (c,), None, mu)
                inner = act_left(ca, i, (a2,), H).space
                xc = act_right(ca, j, (c,), H).space
                rhs = (assoc_left(ca, i, (a,), (a2,), xc, scales)
                       @ act_left_map(ca, i, (a,), (a,), None, sigma(ca, i, (a2,), H, j, (c,), scales))
                       @ sigma(ca, i, (a,), inner, j, (c,), scales))
                rep.add("associator-swap-morphism-square", f"i={i} {a},{a2} j={j} c={c} H={hname}",
                        lhs.max_dev(rhs), tol_coherence)
        for c, (hname, H) in it.product(lj, small[:2]):
            xc = act_right(ca, j, (c,), H).space
            lhs = unitor_left(ca, i, xc, scales) @ sigma(ca, i, (), H, j, (c,), scales)
            rhs = act_right_map(ca, j, (c,), (c,), None, unitor_left(ca, i, H, scales))
            rep.add("unitor-swap-morphism-square", f"i={i} j={j} c={c} H={hname}", lhs.max_dev(rhs), tol_coherence)

    # -- vacuum component determines the 2-cell --------------------------------
    word_pool = _general_words(ca, min(depth - 1, 2), units=False)
    pairs = [(v, v2) for v in word_pool for v2 in word_pool][: 12]
    for v, v2 in pairs:
        dom, cod = star_spaces(ca, v, v2)
        blocks = {}
        for w in dom.words():
            if cod.dim(w):
                blocks[w] = rng.normal(size=(cod.dim(w), dom.dim(w))) + 1j * rng.normal(size=(cod.dim(w), dom.dim(w)))
        eta = GradedMap(dom, cod, blocks)
        h_test = word_action(ca, word_pool[min(1, len(word_pool) - 1)], ca.star())
        ext = component_at(ca, v, v2, eta, ca.star(), scales)
        rep.add("vacuum-restriction-roundtrip", f"v={v} v2={v2}", ext.max_dev(eta), tol_construct)
        if eta.norm_max() > 0:
            full = component_at(ca, v, v2, eta, h_test, scales)
            nonzero = 0.0 if (full.norm_max() > 1e-12 or eta.norm_max() < 1e-12) else 1.0
            rep.add("vacuum-injectivity", f"v={v} v2={v2}", nonzero, tol_construct)

    # -- full faithfulness of the factor embeddings ---------------------------
    ff_pairs = []
    for i in factors:
        labs = [l for l in _irr_labels(ca, i) if l != ca.cats[i].unit_label]
        if len(labs) >= 1:
            a = labs[-1]
            ff_pairs.append((ca.word([(i, a), (i, a)]), ca.word([(i, labs[0])])))
            ff_pairs.append((ca.word([(i, a)]), ca.word([(i, a)])))
    for v, v2 in ff_pairs:
        want = hom_dim_words(ca.amalgam, v, v2)
        got = two_cell_dim(ca, v, v2, check_depth=min(depth - 1, 2), scales=scales)
        rep.add("factor-embedding-hom-dims", f"v={v} v2={v2}", float(abs(got - want)), 0.5)

    # -- assembly relations -----------------------------------------------------
    gen_words = _general_words(ca, depth)
    for v in gen_words:
        A = assembly_tensors(ca, v)
        worst = 0.0
        for w, arr in A.items():
            dw = ca.word_dim(w)
            for w2, arr2 in A.items():
                for k in range(arr.shape[0]):
                    for k2 in range(arr2.shape[0]):
                        got = arr[k].conj().T @ arr2[k2]
                        if w == w2:
                            want = (1.0 / dw if k == k2 else 0.0) * np.eye(got.shape[0])
                            worst = max(worst, float(np.max(np.abs(got - want))))
                        else:
                            worst = max(worst, float(np.max(np.abs(got))))
        rep.add("assembly-orthogonality", f"v={v}", worst, tol_construct)

    for v in _general_words(ca, depth - 1):
        vs = word_action(ca, v, ca.star())
        A_v = assembly_tensors(ca, v)
        for i in factors:
            cat = ca.cats[i]
            for alpha in _irr_labels(ca, i):
                da = cat.rep(alpha).dim
                av = ca.word([(i, alpha)] + [(l.factor, l.irr.label) for l in v.letters])
                top = act_left(ca, i, (alpha,), vs)
                A_av = assembly_tensors(ca, av)
                worst = 0.0
                for w in top.space.words():
                    _, tail = top.head[w]
                    for seg in top.layout[w]:
                        g, u = seg.slot, seg.inner_word
                        dg = cat.obj_dim([g])
                        for m in range(seg.inner_dim):
                            for m2 in range(seg.inner_dim):
                                lhs = np.zeros((da * ca.psi_dim(v),) * 2, dtype=complex)
                                for w2 in top.space.words():
                                    _, tail2 = top.head[w2]
                                    if tail2 != tail:
                                        continue
                                    segs = [s for s in top.layout[w2] if s.slot == g and s.inner_word == u]
                                    if not segs:
                                        continue
                                    s2 = segs[0]
                                    dpi = cat.rep(top.head[w2][0]).dim
                                    for k in range(s2.count):
                                        x1 = A_av[w2][s2.offset + k * s2.inner_dim + m]
                                        x2 = A_av[w2][s2.offset + k * s2.inner_dim + m2]
                                        lhs += dpi * (x1 @ x2.conj().T)
                                rhs = dg * np.kron(np.eye(da), A_v[u][m] @ A_v[u][m2].conj().T)
                                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
                rep.add("assembly-left-identity", f"v={v} alpha=[{alpha}@{i}]", worst, tol_construct)

                va = ca.word([(l.factor, l.irr.label) for l in v.letters] + [(i, alpha)])
                st = sigma_tilde(ca, v, i, (alpha,), scales)
                DR = act_right(ca, i, (alpha,), vs)
                worst_rv = 0.0
                worst_ri = 0.0
                # Group components by their init word: the right identity sums
                # over every head irreducible pi attached to the same init.
                by_init: dict = {}
                for w in DR.space.words():
                    pi0, init = DR.head[w]
                    for seg in DR.layout[w]:
                        by_init.setdefault((init, seg.slot, seg.inner_word), []).append((w, pi0, seg))
                for (init, g, u), entries in by_init.items():
                    dg = cat.obj_dim([g])
                    hd = entries[0][2].inner_dim
                    images: dict[tuple[int, int, int], np.ndarray] = {}
                    for e_idx, (w, pi0, seg) in enumerate(entries):
                        Vs = cat.onb((g, alpha), pi0)
                        blk = st.block(w)
                        for m in range(hd):
                            for k in range(seg.count):
                                vec = blk[:, seg.offset + m * seg.count + k]
                                got = assembly(ca, va, w, vec)
                                want = (np.sqrt(dg) * np.kron(A_v[u][m], np.eye(da))
                                        @ np.kron(np.eye(ca.psi_dim(init)), Vs[k]))
                                worst_rv = max(worst_rv, float(np.max(np.abs(got - want))))
                                images[(e_idx, m, k)] = got
                    for m in range(hd):
                        for m2 in range(hd):
                            lhs = np.zeros((ca.psi_dim(v) * da,) * 2, dtype=complex)
                            for e_idx, (w, pi0, seg) in enumerate(entries):
                                dpi = cat.rep(pi0).dim
                                for k in range(seg.count):
                                    lhs += dpi * (images[(e_idx, m, k)] @ images[(e_idx, m2, k)].conj().T)
                            rhs = dg * np.kron(A_v[u][m] @ A_v[u][m2].conj().T, np.eye(da))
                            worst_ri = max(worst_ri, float(np.max(np.abs(lhs - rhs))))
                rep.add("assembly-right-version", f"v={v} alpha=[{alpha}@{i}]", worst_rv, tol_construct)
                rep.add("assembly-right-identity", f"v={v} alpha=[{alpha}@{i}]", worst_ri, tol_construct)

    # -- the induced 2-functor ---------------------------------------------------
    def random_star(v, v2):
        dom, cod = star_spaces(ca, v, v2)
        blocks = {}
        for w in dom.words():
            if cod.dim(w):
                blocks[w] = rng.normal(size=(cod.dim(w), dom.dim(w))) + 1j * rng.normal(size=(cod.dim(w), dom.dim(w)))
        return GradedMap(dom, cod, blocks)

    pool = _general_words(ca, min(depth, 2), units=False)
    for v in pool:
        eye = universal_image(ca, v, v, identity_star(ca, v), scales)
        rep.add("functor-identity", f"v={v}", float(np.max(np.abs(eye - np.eye(ca.psi_dim(v))))), tol_construct)
    for v, v2 in [(a, b) for a in pool for b in pool if hom_dim_words(ca.amalgam, a, b)][:8]:
        e1 = random_star(v, v2)
        e2 = random_star(v, v)
        p1 = universal_image(ca, v, v2, e1, scales)
        p2 = universal_image(ca, v, v, e2, scales)
        p12 = universal_image(ca, v, v2, e1 @ e2, scales)
        rep.add("functor-composition", f"v={v} v2={v2}", float(np.max(np.abs(p12 - p1 @ p2))), tol_construct)
        pad = universal_image(ca, v2, v, e1.H, scales)
        rep.add("functor-involution", f"v={v} v2={v2}", float(np.max(np.abs(pad - p1.conj().T))), tol_construct)
        for i in factors:
            for alpha in [l for l in _irr_labels(ca, i) if l != ca.cats[i].unit_label][:1]:
                da = ca.cats[i].rep(alpha).dim
                pre = [(i, alpha)]
                lv = ca.word(pre + [(l.factor, l.irr.label) for l in v.letters])
                lv2 = ca.word(pre + [(l.factor, l.irr.label) for l in v2.letters])
                lifted = act_left_map(ca, i, (alpha,), (alpha,), None, e1)
                pl = universal_image(ca, lv, lv2, lifted, scales)
                rep.add("functor-tensor-left", f"alpha=[{alpha}@{i}] v={v} v2={v2}",
                        float(np.max(np.abs(pl - np.kron(np.eye(da), p1)))), tol_construct)
                rv = ca.word([(l.factor, l.irr.label) for l in v.letters] + pre)
                rv2 = ca.word([(l.factor, l.irr.label) for l in v2.letters] + pre)
                hs = act_left(ca, i, (alpha,), ca.star()).space
                er = component_at(ca, v, v2, e1, hs, scales)
                pr = universal_image(ca, rv, rv2, er, scales)
                rep.add("functor-tensor-right", f"alpha=[{alpha}@{i}] v={v} v2={v2}",
                        float(np.max(np.abs(pr - np.kron(p1, np.eye(da))))), tol_construct)
    return rep
