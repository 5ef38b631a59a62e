"""Deciding whether a word contains an instance of a pattern.

Three semantics are supported:

* ``PLAIN``: equal variables map to equal factors; an ``r`` item is the
  mirror image of its variable.
* ``ABELIAN``: equal variables map to factors with the same Parikh vector.
* ``PERMUTATIONS``: each function variable is valued as a letter
  permutation; ``p^k(x)`` is that permutation iterated k times and applied
  letterwise to the image of x, then mirrored for antimorphic items.

Length assignments are indexed by an integer label in 1..L**v (L the word
length, v the number of variables); ascending label order is the
lexicographic order of the length vector, variable 1 most significant.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .patterns import Formula, Pattern, Semantics, as_pattern, check_semantics
from .words import Word, _as_word


@dataclass(frozen=True)
class LengthAssignment:
    label: int
    word_length: int
    nr_vars: int

    def __post_init__(self):
        if self.word_length < 1 or self.nr_vars < 1:
            raise ValueError("word_length and nr_vars must be positive")
        if not 1 <= self.label <= self.word_length ** self.nr_vars:
            raise ValueError(f"label {self.label} outside 1..{self.word_length}**{self.nr_vars}")

    @classmethod
    def from_lengths(cls, lengths, word_length: int) -> "LengthAssignment":
        return cls(label_of(lengths, word_length), word_length, len(lengths))

    def lengths(self) -> tuple:
        return tuple(var_length(i, self) for i in range(1, self.nr_vars + 1))


def var_length(var_idx: int, a: LengthAssignment) -> int:
    """Length of variable ``var_idx`` (1-based) encoded by the assignment's label.

    ceil(label / L**(v - var_idx)) mod L, with 0 read as L.
    """
    if not 1 <= var_idx <= a.nr_vars:
        raise ValueError(f"variable index {var_idx} outside 1..{a.nr_vars}")
    L = a.word_length
    q = -(-a.label // L ** (a.nr_vars - var_idx))
    return q % L or L


def label_of(lengths, word_length: int) -> int:
    """Inverse of the label decoding: the label whose lengths are ``lengths``."""
    label = 0
    for ln in lengths:
        if not 1 <= ln <= word_length:
            raise ValueError(f"length {ln} outside 1..{word_length}")
        label = label * word_length + (ln - 1)
    return label + 1


def _lengths_of(p: Pattern, a) -> tuple:
    lengths = a.lengths() if isinstance(a, LengthAssignment) else tuple(a)
    if len(lengths) != p.nr_vars:
        raise ValueError(f"pattern has {p.nr_vars} variables, got {len(lengths)} lengths")
    return lengths


def image_length(p, a) -> int:
    p = as_pattern(p)
    lengths = _lengths_of(p, a)
    return sum(lengths[it.var_index - 1] for it in p.items)


def item_offset(p, idx: int, a) -> int:
    """Offset of item ``idx`` (1-based) from the start of the pattern's image."""
    p = as_pattern(p)
    lengths = _lengths_of(p, a)
    if not 1 <= idx <= len(p):
        raise ValueError(f"item index {idx} outside 1..{len(p)}")
    return sum(lengths[it.var_index - 1] for it in p.items[: idx - 1])


# -- permutations -----------------------------------------------------------

@lru_cache(maxsize=None)
def all_permutations(sigma: int) -> tuple:
    """The sigma! letter permutations of 0..sigma-1 in lexicographic order."""
    return tuple(itertools.permutations(range(sigma)))


@lru_cache(maxsize=None)
def _perm_power(perm: tuple, k: int) -> tuple:
    result = tuple(range(len(perm)))
    for _ in range(k):
        result = tuple(perm[a] for a in result)
    return result


@lru_cache(maxsize=None)
def _inverse(perm: tuple) -> tuple:
    inv = [0] * len(perm)
    for a, b in enumerate(perm):
        inv[b] = a
    return tuple(inv)


@dataclass(frozen=True)
class PermAssignment:
    """One letter permutation per function variable (index 0 is p1)."""

    perms: tuple

    def __post_init__(self):
        perms = tuple(tuple(p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        for p in perms:
            if sorted(p) != list(range(len(p))):
                raise ValueError(f"{p} is not a permutation")

    def item_map(self, perm_index: int, power: int) -> tuple | None:
        if power == 0:
            return None
        return _perm_power(self.perms[perm_index - 1], power)


def apply_item(item, base, perm: PermAssignment | None = None) -> tuple:
    """Image of one pattern item given the base image of its variable."""
    out = tuple(base)
    if item.power:
        if perm is None:
            raise ValueError("function item needs a permutation assignment")
        m = perm.item_map(item.perm_index, item.power)
        out = tuple(m[a] for a in out)
    return out[::-1] if item.reversed else out


@dataclass(frozen=True)
class Occurrence:
    """Witness of an instance: positions are 1-based, images are 0-based letters."""

    start: int
    lengths: tuple
    substitution: tuple
    blocks: tuple
    perm_assignment: Optional[PermAssignment] = None

    @property
    def end(self) -> int:
        return self.start + sum(len(b) for b in self.blocks) - 1


def _blocks(letters, start0, p: Pattern, lengths):
    out, pos = [], start0
    for it in p.items:
        ln = lengths[it.var_index - 1]
        out.append(tuple(letters[pos:pos + ln]))
        pos += ln
    return out


def matches_at(w, start: int, p, a, mode=Semantics.PLAIN, perm: PermAssignment | None = None) -> bool:
    """True iff the factor of ``w`` at 1-based ``start`` is an instance of ``p``
    with the lengths of ``a`` (a LengthAssignment or a plain length tuple)."""
    w, p, mode = _as_word(w), as_pattern(p), Semantics.parse(mode)
    check_semantics(p, mode)
    lengths = _lengths_of(p, a)
    if start < 1 or start - 1 + sum(lengths[it.var_index - 1] for it in p.items) > len(w):
        return False
    blocks = _blocks(w.letters, start - 1, p, lengths)
    items = p.items
    if mode is Semantics.PERMUTATIONS:
        if perm is None:
            raise ValueError("permutation semantics needs a PermAssignment")
        if len(perm.perms) < p.nr_perms:
            raise ValueError(f"pattern has {p.nr_perms} function variables, got {len(perm.perms)}")
        if any(len(q) != w.sigma for q in perm.perms):
            raise ValueError("permutation size differs from the alphabet size")
        base = {}
        for it, blk in zip(items, blocks):
            if it.var_index not in base:
                raw = blk[::-1] if it.reversed else blk
                m = perm.item_map(it.perm_index, it.power)
                base[it.var_index] = raw if m is None else tuple(_inverse(m)[c] for c in raw)
        return all(apply_item(it, base[it.var_index], perm) == blk for it, blk in zip(items, blocks))
    for i, j in itertools.combinations(range(len(items)), 2):
        if items[i].var_index != items[j].var_index:
            continue
        first, second = blocks[i], blocks[j]
        if mode is Semantics.ABELIAN:
            if sorted(first) != sorted(second):
                return False
        elif items[i].reversed == items[j].reversed:
            if first != second:
                return False
        elif first != second[::-1]:
            return False
    return True


# -- pruned enumeration -----------------------------------------------------

def _first_at(letters, start, items, mode, sigma, nr_perms):
    """Lexicographically first (lengths, perm candidate) making ``items`` match
    at 0-based ``start``, or None.

    ``items`` are (perm, power, var, reversed) tuples.  Variables take their
    length at first occurrence, smallest first, so length vectors are visited
    in ascending label order.  Later occurrences are checked against the
    first one as soon as they are placed.
    """
    n = len(letters)
    nv = max(it[2] for it in items)
    nitems = len(items)
    lengths = [0] * (nv + 1)
    anchor = [None] * (nv + 1)
    perms = all_permutations(sigma) if mode is Semantics.PERMUTATIONS else ()
    cands = list(itertools.product(range(len(perms)), repeat=nr_perms)) if perms else [()]

    def item_map(cand, j, k):
        return _perm_power(perms[cand[j - 1]], k) if k else None

    def consistent(cands, item, block, anchor_item, ablock):
        j, pw, _, b = item
        aj, apw, _, ab = anchor_item
        if mode is Semantics.PLAIN:
            return cands if block == (ablock if b == ab else ablock[::-1]) else None
        if mode is Semantics.ABELIAN:
            return cands if sorted(block) == sorted(ablock) else None
        if b != ab:
            ablock = ablock[::-1]
        kept = []
        for cand in cands:
            m_it = item_map(cand, j, pw)
            m_an = item_map(cand, aj, apw)
            inv = _inverse(m_an) if m_an else None
            for x, y in zip(ablock, block):
                if inv is not None:
                    x = inv[x]
                if m_it is not None:
                    x = m_it[x]
                if x != y:
                    break
            else:
                kept.append(cand)
        return kept or None

    def rec(k, pos, cands):
        if k == nitems:
            return cands
        item = items[k]
        v = item[2]
        ln = lengths[v]
        if ln:
            if pos + ln > n:
                return None
            apos, aitem = anchor[v]
            cands = consistent(cands, item, letters[pos:pos + ln], aitem, letters[apos:apos + ln])
            if cands is None:
                return None
            return rec(k + 1, pos + ln, cands)
        occ = rest = 0
        for it in items[k:]:
            if it[2] == v:
                occ += 1
            else:
                rest += lengths[it[2]] or 1
        anchor[v] = (pos, item)
        ln = 1
        while pos + ln * occ + rest <= n:
            lengths[v] = ln
            found = rec(k + 1, pos + ln, cands)
            if found is not None:
                return found
            ln += 1
        lengths[v] = 0
        anchor[v] = None
        return None

    found = rec(0, start, cands)
    if found is None:
        return None
    cand = found[0]
    assignment = PermAssignment(tuple(perms[c] for c in cand)) if perms else None
    return tuple(lengths[1:]), assignment


def _item_tuples(p: Pattern) -> tuple:
    return tuple((it.perm_index, it.power, it.var_index, it.reversed) for it in p.items)


def _witness(letters, start0, p: Pattern, lengths, perm) -> Occurrence:
    blocks = _blocks(letters, start0, p, lengths)
    base = {}
    for it, blk in zip(p.items, blocks):
        if it.var_index not in base:
            raw = blk[::-1] if it.reversed else blk
            m = perm.item_map(it.perm_index, it.power) if perm is not None else None
            base[it.var_index] = raw if m is None else tuple(_inverse(m)[c] for c in raw)
    substitution = tuple(base[i] for i in range(1, p.nr_vars + 1))
    return Occurrence(start0 + 1, lengths, substitution, tuple(blocks), perm)


def contains_instance(w, p, mode=Semantics.PLAIN) -> Optional[Occurrence]:
    """First instance of ``p`` in ``w``: smallest start, then smallest label,
    then lexicographically smallest permutation assignment."""
    w, p, mode = _as_word(w), as_pattern(p), Semantics.parse(mode)
    check_semantics(p, mode)
    letters = w.letters
    items = _item_tuples(p)
    min_len = len(p)
    for start in range(len(letters) - min_len + 1):
        found = _first_at(letters, start, items, mode, w.sigma, p.nr_perms)
        if found is not None:
            lengths, perm = found
            return _witness(letters, start, p, lengths, perm)
    return None


@lru_cache(maxsize=256)
def _reversed_items(p: Pattern) -> tuple:
    return _item_tuples(p)[::-1]


def instance_ending_at(letters, end: int, p: Pattern, mode: Semantics, sigma: int) -> bool:
    """True iff some instance of ``p`` in ``letters`` ends at 1-based ``end``.

    Mirroring the word and the order of the pattern's items turns an
    end-anchored instance into a start-anchored one with the same
    reversal flags, so the left-to-right search is reused from position 0.
    """
    if end < len(p):
        return False
    mirrored = tuple(letters[end - 1::-1])
    return _first_at(mirrored, 0, _reversed_items(p), mode, sigma, p.nr_perms) is not None


def avoids(w, f: Formula) -> bool:
    w = _as_word(w)
    return all(contains_instance(w, p, f.semantics) is None for p in f.patterns)
