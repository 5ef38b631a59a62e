import itertools

import pytest
from hypothesis import given, settings, strategies as st

from patavoid import (Formula, LengthAssignment, PermAssignment, Semantics, Word, all_permutations, avoids,
                      contains_instance, hall_prefix, image_length, item_offset, label_of, matches_at,
                      parse_pattern, thue_morse_prefix, var_length)
from patavoid.matching import apply_item, instance_ending_at

from fixture_words import A33, P54, W30
from strategies import cases

P = parse_pattern


def la(label, L, v):
    return LengthAssignment(label, L, v)


def test_var_length_examples():
    assert var_length(1, la(5, 5, 1)) == 5
    assert var_length(1, la(1, 5, 1)) == 1
    assert la(4, 3, 2).lengths() == (2, 1)


def test_labels_follow_lexicographic_order():
    got = [la(i, 3, 2).lengths() for i in range(1, 10)]
    assert got == sorted(itertools.product(range(1, 4), repeat=2))
    assert label_of((2, 1), 3) == 4


def test_label_out_of_range():
    with pytest.raises(ValueError):
        la(0, 3, 1)
    with pytest.raises(ValueError):
        la(10, 3, 2)


def test_image_length_and_offset():
    assert image_length(P("xx"), (3,)) == 6
    assert image_length(P("x1x2x2x1r"), (2, 3)) == 10
    assert image_length(P("x1x2x1x3x1x2x1"), (1, 1, 1)) == 7
    assert item_offset(P("xx"), 1, (3,)) == 0
    assert item_offset(P("xx"), 2, (3,)) == 3
    assert item_offset(P("x1x2x2x1r"), 4, LengthAssignment.from_lengths((2, 3), 10)) == 8


def test_matches_at_examples():
    abc = "abc"
    assert matches_at(Word.from_symbols("bcaca", abc), 1, P("xyy"), (1, 2))
    assert matches_at(Word.from_symbols("aaaaa", abc), 1, P("xyy"), (1, 2))
    assert matches_at(Word.from_one_based([1, 2, 1, 1, 2, 1]), 1, P("xx"), (3,), "abelian")
    assert matches_at(Word.from_one_based([1, 2, 1, 2]), 1, P("xx"), (2,))
    assert not matches_at(Word.from_one_based([1, 2, 2, 1]), 1, P("xx"), (2,))
    assert matches_at(Word.from_one_based([1, 2, 2, 1]), 1, P("xxr"), (2,))


def test_matches_at_out_of_bounds_is_false():
    assert not matches_at(Word((0, 0, 0), 1), 2, P("xx"), (2,))


def test_matches_at_permutation():
    w = Word((0, 1, 1, 0), 2)
    swap = PermAssignment(((1, 0),))
    ident = PermAssignment(((0, 1),))
    assert matches_at(w, 1, P("xp(x)"), (2,), "permutations", swap)
    assert not matches_at(w, 1, P("xp(x)"), (2,), "permutations", ident)
    with pytest.raises(ValueError):
        matches_at(w, 1, P("xp(x)"), (2,), "permutations")


def test_apply_item_antimorphic():
    item = P("p(x)r").items[0]
    assert apply_item(item, (0, 0, 1), PermAssignment(((1, 2, 0),))) == (2, 1, 1)


def test_contains_instance_examples():
    assert contains_instance(thue_morse_prefix(64), P("xxx")) is None
    assert contains_instance(hall_prefix(81), P("xx")) is None
    occ = contains_instance(Word((0, 1, 1, 0), 2), P("xx"))
    assert (occ.start, occ.lengths, occ.substitution) == (2, (1,), ((1,),))
    w = Word.from_one_based(P54, 4)
    for text in ("x1x1", "x1p1(x1)x1r"):
        assert contains_instance(w, P(text), "permutations") is None


def test_avoids_examples():
    assert avoids(Word.from_one_based(W30, 4), Formula.of("x1x2x2x1r"))
    assert avoids(Word((), 3), Formula.of("x"))
    assert avoids(Word.from_one_based(A33, 5), Formula.of("xx", semantics="abelian"))
    assert not avoids(Word((0, 0), 1), Formula.of("xx"))


def label_loop(w, p, mode):
    """Reference: walk starts, then labels 1..L**v, then permutation tuples."""
    L, v = len(w), p.nr_vars
    perms = [None]
    if mode is Semantics.PERMUTATIONS:
        perms = [PermAssignment(c) for c in itertools.product(all_permutations(w.sigma), repeat=p.nr_perms)]
    for start in range(1, L + 1):
        for label in range(1, L ** v + 1) if L else ():
            a = LengthAssignment(label, L, v)
            for perm in perms:
                if matches_at(w, start, p, a, mode, perm):
                    return start, a.lengths(), perm
    return None


@settings(max_examples=300, deadline=None)
@given(cases(max_len=8))
def test_pruned_search_equals_label_loop(case):
    w, p, mode = case
    occ = contains_instance(w, p, mode)
    ref = label_loop(w, p, mode)
    if ref is None:
        assert occ is None
    else:
        assert occ is not None
        got_perm = occ.perm_assignment if mode is Semantics.PERMUTATIONS else None
        assert (occ.start, occ.lengths, got_perm) == ref


@settings(max_examples=300, deadline=None)
@given(cases(max_len=10))
def test_witness_reproduces_factor(case):
    w, p, mode = case
    occ = contains_instance(w, p, mode)
    if occ is None:
        return
    factor = w.letters[occ.start - 1:occ.end]
    assert tuple(itertools.chain.from_iterable(occ.blocks)) == factor
    if mode is Semantics.ABELIAN:
        for it, blk in zip(p.items, occ.blocks):
            assert sorted(blk) == sorted(occ.substitution[it.var_index - 1])
    else:
        for it, blk in zip(p.items, occ.blocks):
            assert apply_item(it, occ.substitution[it.var_index - 1], occ.perm_assignment) == blk


@settings(max_examples=200, deadline=None)
@given(cases(max_len=10), st.data())
def test_factor_monotonicity(case, data):
    w, p, mode = case
    if contains_instance(w, p, mode) is not None:
        return
    i = data.draw(st.integers(0, len(w)))
    j = data.draw(st.integers(i, len(w)))
    assert contains_instance(w[i:j], p, mode) is None


@settings(max_examples=200, deadline=None)
@given(cases(max_len=10))
def test_end_anchored_check_agrees(case):
    w, p, mode = case
    ends = {e for e in range(1, len(w) + 1) if instance_ending_at(w.letters, e, p, mode, w.sigma)}
    for e in range(len(w) + 1):
        has_prefix_instance = contains_instance(w[:e], p, mode) is not None
        assert has_prefix_instance == any(x <= e for x in ends)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=14))
def test_reversal_coherence(letters):
    w = Word(tuple(letters), 3)
    n = len(letters)
    scan = any(letters[i:i + k] == letters[i + k:i + 2 * k][::-1]
               for k in range(1, n // 2 + 1) for i in range(n - 2 * k + 1))
    assert (contains_instance(w, P("xxr")) is not None) == scan


@settings(max_examples=200, deadline=None)
@given(cases(max_len=10, max_sigma=1))
def test_single_letter_permutations_match_plain(case):
    w, p, _ = case
    if p.has_reversal or p.has_functions:
        return
    assert (contains_instance(w, p, "permutations") is None) == (contains_instance(w, p, "plain") is None)
