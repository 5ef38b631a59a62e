"""Acceptance criteria, one test each.

Each test prints a single ``CRITERION n: PASS|FAIL ...`` line.  Run the
file directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""
import itertools
import random
import time
from pathlib import Path

import pytest

from patavoid import (Alphabet, DataFileSpec, Exhausted, Formula, Found, LengthAssignment, Morphism, MorphicSpec,
                      Semantics, Word, apply_morphism, contains_instance, find_avoiding_word,
                      find_morphic_avoiding_word, hall_prefix, is_morphic_image, oracle_avoids,
                      oracle_contains_instance, parse_pattern, read_data_file, thue_morse_prefix, var_length,
                      write_data_file)

from fixture_words import FIXTURES, MORPHIC12
from strategies import random_data_spec, random_pattern, random_word

GOLDEN = Path(__file__).parent / "golden"


def timed(fn):
    t0 = time.monotonic()
    value = fn()
    return value, time.monotonic() - t0


def criterion_1():
    tm = thue_morse_prefix(1024)
    hall = hall_prefix(729)
    parts = []
    ok = True
    for w, text in ((tm, "xxx"), (tm, "xyxyx"), (hall, "xx")):
        avoided, secs = timed(lambda: oracle_avoids(w, Formula.of(text)))
        ok &= avoided and secs < 60
        parts.append(f"{text} on {len(w)} letters: {'avoided' if avoided else 'FOUND'} in {secs:.2f}s")
    return ok, "; ".join(parts)


def criterion_2():
    t0 = time.monotonic()
    bad = []
    for name, letters, sigma, patterns, mode in FIXTURES:
        if not oracle_avoids(Word.from_one_based(letters, sigma), Formula.of(*patterns, semantics=mode)):
            bad.append(name)
    secs = time.monotonic() - t0
    ok = not bad and secs < 600
    return ok, f"{len(FIXTURES) - len(bad)}/{len(FIXTURES)} fixture words avoid their formulas in {secs:.1f}s" + (
        f" (failed: {bad})" if bad else "")


def brute_force_threshold(sigma, f, cap=20):
    """Smallest n with no avoiding word of length n, by plain enumeration and the oracle."""
    for n in range(1, cap + 1):
        if not any(oracle_avoids(Word(t, sigma), f) for t in itertools.product(range(sigma), repeat=n)):
            return n
    return None


def criterion_3():
    t0 = time.monotonic()
    squares = Formula.of("xx")
    binary = find_avoiding_word(Alphabet(2), 4, squares)
    ab = Formula.of("xx", semantics="abelian")
    l_star = brute_force_threshold(3, ab)
    at = find_avoiding_word(Alphabet(3), l_star, ab)
    below = find_avoiding_word(Alphabet(3), l_star - 1, ab)
    secs = time.monotonic() - t0
    ok = (isinstance(binary, Exhausted) and isinstance(at, Exhausted) and isinstance(below, Found)
          and secs < 300)
    return ok, (f"binary xx @4: {type(binary).__name__}; abelian xx sigma=3: brute-force L*={l_star}, "
                f"search @L*: {type(at).__name__}, @L*-1: {type(below).__name__}; {secs:.1f}s")


def criterion_4():
    parts, ok = [], True
    for sigma, length, text in ((3, 100, "xx"), (4, 30, "x1x2x2x1r")):
        f = Formula.of(text)
        out, secs = timed(lambda: find_avoiding_word(Alphabet(sigma), length, f))
        good = isinstance(out, Found) and len(out.word) >= length and oracle_avoids(out.word, f) and secs < 60
        ok &= good
        parts.append(f"{text} sigma={sigma} length {length}: {type(out).__name__}, "
                     f"{'oracle-verified' if good else 'not verified'}, {secs:.2f}s")
    return ok, "; ".join(parts)


def criterion_5():
    t0 = time.monotonic()
    spec = MorphicSpec("t", 5, (3, 2))
    f = Formula.of("xx")
    out = find_morphic_avoiding_word(Alphabet(3), spec, f)
    search_ok = (isinstance(out, Found) and len(out.final_word) == 12
                 and apply_morphism(out.morphism, spec.base_prefix()) == out.final_word
                 and oracle_avoids(out.final_word, f))
    published = Word.from_one_based(MORPHIC12, 3)
    consistent = is_morphic_image(published, spec) is not None
    occ = oracle_contains_instance(published, parse_pattern("xx"))
    secs = time.monotonic() - t0
    detail = (f"search: {type(out).__name__}; published word morphic-consistent: {consistent}, "
              f"square-free: {occ is None}")
    if occ is not None:
        detail += f" (square {[[a + 1 for a in b] for b in occ.blocks]} at position {occ.start})"
    return search_ok and consistent and occ is None and secs < 60, detail + f"; {secs:.2f}s"


def criterion_6(n_cases=10_000, seed=2024):
    rng = random.Random(seed)
    modes = list(Semantics)
    disagreements = []
    t0 = time.monotonic()
    found = 0
    for k in range(n_cases):
        mode = modes[k % 3]
        sigma = rng.randint(1, 3)
        w = random_word(rng, sigma, 12)
        p = random_pattern(rng, mode, max_items=6, max_vars=3, max_perms=1)
        a = contains_instance(w, p, mode) is not None
        b = oracle_contains_instance(w, p, mode) is not None
        found += a
        if a != b:
            disagreements.append((w, p, mode))
    secs = time.monotonic() - t0
    return not disagreements, (f"{n_cases} cases ({found} with instances), "
                               f"{len(disagreements)} disagreements, {secs:.1f}s")


def criterion_7():
    checked = 0
    for L in range(1, 7):
        for v in range(1, 4):
            seen = {tuple(var_length(i, LengthAssignment(lab, L, v)) for i in range(1, v + 1))
                    for lab in range(1, L ** v + 1)}
            if seen != set(itertools.product(range(1, L + 1), repeat=v)):
                return False, f"not a bijection for L={L}, v={v}"
            checked += 1
    return True, f"{checked} (L, v) pairs, labels biject onto length vectors"


GOLDEN_SPECS = {
    "x1x2p2x1_sigma3": DataFileSpec(3, 10, Formula.of("x1x2p2(x1)", semantics="permutations")),
    "two_perm_patterns_sigma3": DataFileSpec(3, 10, Formula.of("x1x2p2(x1)", "x1p1(x1)", semantics="permutations")),
    "morphic_t10_sigma5": DataFileSpec(5, 5, Formula.of("x1x2x2x1r"), MorphicSpec("t", 10, (2, 3))),
}


def criterion_8(n_specs=1000, seed=7):
    golden_bad = [name for name, spec in GOLDEN_SPECS.items()
                  if write_data_file(spec) != (GOLDEN / f"{name}.dzn").read_text()]
    rng = random.Random(seed)
    trip_bad = 0
    for _ in range(n_specs):
        spec = random_data_spec(rng)
        if read_data_file(write_data_file(spec)) != spec:
            trip_bad += 1
    ok = not golden_bad and not trip_bad
    return ok, (f"golden files {len(GOLDEN_SPECS) - len(golden_bad)}/{len(GOLDEN_SPECS)} byte-equal; "
                f"round trips {n_specs - trip_bad}/{n_specs}")


def criterion_9(n_cases=1000, seed=99):
    rng = random.Random(seed)
    modes = list(Semantics)
    bad = 0
    for k in range(n_cases):
        mode = modes[k % 3]
        sigma = rng.randint(1, 4)
        w = random_word(rng, sigma, 12)
        p = random_pattern(rng, mode, max_items=6, max_vars=3, max_perms=2)
        rho = list(range(sigma))
        rng.shuffle(rho)
        renamed = Word(tuple(rho[a] for a in w.letters), sigma)
        if (contains_instance(w, p, mode) is None) != (contains_instance(renamed, p, mode) is None):
            bad += 1
    return bad == 0, f"{n_cases} renamings, {bad} changed instance existence"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def report(n, ok, detail):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    return line


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print()
        report(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for n, fn in enumerate(CRITERIA, 1):
        report(n, *fn())
