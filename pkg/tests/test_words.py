from __future__ import annotations

import pytest

from freecat import (
    Amalgam,
    CompositionError,
    WordError,
    dual_word,
    enumerate_reduced,
    format_word,
    is_reduced,
    left_cons,
    parse_reduced,
    parse_word,
    right_cons,
    pointed_tlj,
)
from oracles import brute_reduced_count


def cellpt(am):
    return am.cells()[0]


def test_left_cons_unit_is_noop(am_z2z2):
    am = am_z2z2
    empty = am.empty_word(cellpt(am))
    assert left_cons(am, (1, "triv"), empty) == empty


def test_left_cons_prepends(am_z2z2):
    am = am_z2z2
    empty = am.empty_word(cellpt(am))
    w = left_cons(am, (1, "w1"), empty)
    assert len(w) == 1 and format_word(w) == "[w1@1]"
    w2 = left_cons(am, (2, "w1"), w)
    assert format_word(w2) == "[w1@2][w1@1]"


def test_left_cons_rejects_same_factor_head(am_z2z2):
    am = am_z2z2
    w = parse_reduced(am, "[w1@1]")
    with pytest.raises(WordError):
        left_cons(am, (1, "w1"), w)


def test_right_cons_mirror(am_z2z2):
    am = am_z2z2
    w = right_cons(am, am.empty_word(cellpt(am)), (1, "w1"))
    w = right_cons(am, w, (2, "w1"))
    assert format_word(w) == "[w1@1][w1@2]"


def test_enumerate_matches_example(am_z2z2):
    am = am_z2z2
    ws = enumerate_reduced(am, cellpt(am), cellpt(am), 3)
    assert len(ws) == 7
    assert [format_word(w) for w in ws[:3]] == ["()@x@1", "[w1@1]", "[w1@2]"]


def test_enumerate_counts_against_brute_force(am_s3z2):
    am = am_s3z2
    ws = enumerate_reduced(am, cellpt(am), cellpt(am), 4)
    by_len = {}
    for w in ws:
        by_len[len(w)] = by_len.get(len(w), 0) + 1
    letters = {1: ["sgn", "std"], 2: ["w1"]}
    for n in range(5):
        assert by_len.get(n, 0) == brute_reduced_count(letters, n)


def test_enumerate_no_duplicates_and_stable(am_s3z2):
    am = am_s3z2
    ws = enumerate_reduced(am, cellpt(am), cellpt(am), 3)
    assert len(set(ws)) == len(ws)
    assert ws == enumerate_reduced(am, cellpt(am), cellpt(am), 3)


def test_exhaustion_by_left_cons(am_s3z2):
    # Every reduced word arises exactly once as letter : shorter-word, per factor.
    am = am_s3z2
    all_words = set(enumerate_reduced(am, cellpt(am), cellpt(am), 3))
    for i, labels in ((1, ["sgn", "std"]), (2, ["w1"])):
        seen = {}
        for w in enumerate_reduced(am, cellpt(am), cellpt(am), 2):
            if w.letters and w.letters[0].factor == i:
                continue
            for lab in labels + [am.spec(i).unit("x").label]:
                got = left_cons(am, (i, lab), w)
                if got in all_words:
                    seen[got] = seen.get(got, 0) + 1
        for w, count in seen.items():
            assert count == 1, f"{w} reached {count} times"


def test_is_reduced(am_z2z2):
    am = am_z2z2
    assert is_reduced(am, parse_word(am, "()@x@1"))
    assert not is_reduced(am, parse_word(am, "[triv@1]"))
    assert not is_reduced(am, parse_word(am, "[w1@1][w1@1]"))
    assert is_reduced(am, parse_word(am, "[w1@1][w1@2]"))


def test_word_literal_roundtrip(am_s3z2):
    am = am_s3z2
    for text in ["()@x@1", "[std@1]", "[std@1][w1@2][sgn@1]"]:
        assert format_word(parse_word(am, text)) == text
    with pytest.raises(WordError):
        parse_word(am, "[std@1")


def test_dual_word(am_s3z2):
    am = am_s3z2
    w = parse_reduced(am, "[std@1][w1@2]")
    assert format_word(dual_word(am, w)) == "[w1@2][std@1]"
    assert dual_word(am, dual_word(am, w)) == w


def test_pointed_tlj_endpoint_gluing():
    p1, p2 = pointed_tlj(2.0), pointed_tlj(2.0)
    am = Amalgam({1: p1.ambient, 2: p2.ambient}, shared={"*": {1: "b", 2: "a"}})
    a = am.cell(1, "a")
    c = am.cell(2, "b")
    assert am.cell(1, "b") == am.cell(2, "a")
    ws = enumerate_reduced(am, a, c, 2, irr_depth=2)
    # Only [odd@1][odd@2] words connect a to c in two letters.
    assert [format_word(w) for w in ws] == ["[f1:ab@1][f1:ab@2]"]
    # Cross-check type (a,a) counts with a direct count: empty word plus
    # nothing else within two letters (any return path needs length >= 4)
    # except even loops at a from factor 1.
    loops = enumerate_reduced(am, a, a, 2, irr_depth=2)
    assert format_word(loops[0]) == "()@a@1"
    assert all(l.letters == () or all(x.factor == 1 for x in l.letters) for l in loops)


def test_composition_error_on_bad_endpoints():
    p = pointed_tlj(2.0)
    am = Amalgam({1: p.ambient}, name="single")
    with pytest.raises(CompositionError):
        am.word([(1, "f1:ab"), (1, "f1:ab")])
