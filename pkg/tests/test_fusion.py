from __future__ import annotations

import threading
from fractions import Fraction

import pytest

from freecat import (
    Bundle,
    CompositionError,
    Irr,
    SpecError,
    TableSpec,
    decompose_tensor,
    fuse_pair,
    hom_dim,
    tlj_spec,
    validate,
)
from oracles import tl_end_dim


def rep_z2_table(break_assoc: bool = False) -> TableSpec:
    triv = Irr("triv", "x", "x")
    g = Irr("g", "x", "x")
    table = {
        ("triv", "triv"): {"triv": 1},
        ("triv", "g"): {"g": 1},
        ("g", "triv"): {"g": 1},
        ("g", "g"): {"triv": 1, "g": 1} if break_assoc else {"triv": 1},
    }
    return TableSpec("rep-z2", ["x"], [triv, g], {"x": "triv"},
                     {"triv": "triv", "g": "g"}, {"triv": 1, "g": 1}, table, exact=True)


def test_validate_group_algebra():
    rep = validate(rep_z2_table())
    assert rep.ok


def test_validate_catches_broken_fusion():
    rep = validate(rep_z2_table(break_assoc=True))
    assert not rep.ok
    rules = {v.rule for v in rep.violations}
    assert rules & {"associativity", "unit-law", "frobenius", "qdim-consistency"}


def test_validate_structural_error_is_distinct():
    triv = Irr("triv", "x", "x")
    with pytest.raises(SpecError):
        TableSpec("bad", ["x"], [triv], {"x": "triv"}, {"triv": "nope"}, {"triv": 1}, {})


def test_tlj_validate_and_qdim_consistency():
    spec = tlj_spec(2.0)
    rep = validate(spec, search_depth=5)
    assert rep.ok
    f0, f1, f2 = spec.irr("f0"), spec.irr("f1"), spec.irr("f2")
    assert spec.qdim(f1) ** 2 == spec.qdim(f0) + spec.qdim(f2) == 4.0


def test_fuse_pair_unit_law():
    spec = rep_z2_table()
    g = spec.irr("g")
    assert fuse_pair(spec, spec.unit("x"), g).as_dict() == {g: 1}


def test_fuse_pair_s3(s3):
    spec = s3.spec
    std = spec.irr("std")
    got = fuse_pair(spec, std, std).as_dict()
    # Frozen from the character inner products over the 6 group elements.
    assert got == {spec.irr("triv"): 1, spec.irr("sgn"): 1, spec.irr("std"): 1}


def test_fuse_pair_tlj():
    spec = tlj_spec(2.5)
    f1 = spec.irr("f1")
    got = fuse_pair(spec, f1, f1).as_dict()
    assert got == {spec.irr("f0"): 1, spec.irr("f2"): 1}


def test_hom_dim_examples(s3):
    spec = s3.spec
    std = spec.irr("std")
    sq = fuse_pair(spec, std, std)
    assert hom_dim(spec, sq, sq) == 3
    a = Bundle.from_dict("x", "x", {std: 2, spec.irr("sgn"): 3})
    b = Bundle.from_dict("x", "x", {std: 1, spec.irr("sgn"): 1})
    assert hom_dim(spec, a, b) == 5
    assert hom_dim(spec, b, a) == 5
    mismatched = Bundle.from_dict("y", "y", {Irr("q", "y", "y"): 1})
    with pytest.raises(CompositionError):
        hom_dim(spec, a, mismatched)


def test_decompose_tensor_tlj_and_catalan_oracle():
    spec = tlj_spec(2.5)
    f1 = spec.irr("f1")
    got = decompose_tensor(spec, [f1, f1, f1]).as_dict()
    assert got == {f1: 2, spec.irr("f3"): 1}
    for n in range(7):
        b = decompose_tensor(spec, [f1] * n, cell="x")
        assert hom_dim(spec, b, b) == tl_end_dim(n)


def test_decompose_tensor_fold_independence(s3):
    spec = s3.spec
    seq = [spec.irr("std"), spec.irr("sgn"), spec.irr("std"), spec.irr("std")]
    left = decompose_tensor(spec, seq)
    acc = Bundle.of(seq[-1])
    from freecat import bundle_fuse

    for a in reversed(seq[:-1]):
        acc = bundle_fuse(spec, Bundle.of(a), acc)
    assert left.terms == acc.terms


def test_qdim_additivity(s3):
    from freecat import bundle_qdim

    spec = s3.spec
    seq = [spec.irr("std"), spec.irr("std"), spec.irr("sgn")]
    b = decompose_tensor(spec, seq)
    assert bundle_qdim(spec, b) == Fraction(4)


def test_exact_mode_uses_rationals(s3):
    q = s3.spec.qdim(s3.spec.irr("std"))
    assert isinstance(q, Fraction) and q == 2


def test_concurrent_fusion_queries_agree(s3):
    spec = s3.spec
    std = spec.irr("std")
    results = []

    def worker():
        for _ in range(200):
            results.append(tuple(sorted((k.label, v) for k, v in spec.fusion(std, std).items())))

    threads = [threading.Thread(target=worker) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1
