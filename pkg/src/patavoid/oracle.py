"""Independent instance checker used to validate search results.

Deliberately built on a different mechanism from :mod:`patavoid.matching`:
instead of walking start positions and pruning length labels, it enumerates
every block composition of the pattern (one length per variable) and tests
all start positions of that composition at once with numpy.  Factor
equality comes from longest-common-extension tables, abelian equality from
prefix letter counts.
"""
from __future__ import annotations

import itertools
from typing import Optional

import numpy as np

from .matching import Occurrence, PermAssignment
from .patterns import Formula, Semantics, as_pattern, check_semantics
from .words import _as_word


def _lce_table(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """T[i, j] = length of the longest common prefix of u[i:] and v[j:]."""
    n, m = len(u), len(v)
    table = np.zeros((n + 1, m + 1), dtype=np.int32)
    eq = u[:, None] == v[None, :]
    for i in range(n - 1, -1, -1):
        table[i, :m] = np.where(eq[i], table[i + 1, 1:] + 1, 0)
    return table


def _compositions(counts, budget):
    """Length vectors (lex order) whose image length fits into ``budget``."""
    k = len(counts)
    tail_min = [sum(counts[j:]) for j in range(k + 1)]

    def rec(i, left, prefix):
        if i == k:
            yield tuple(prefix)
            return
        top = (left - tail_min[i + 1]) // counts[i]
        for ln in range(1, top + 1):
            prefix.append(ln)
            yield from rec(i + 1, left - counts[i] * ln, prefix)
            prefix.pop()

    yield from rec(0, budget, [])


class _Checker:
    def __init__(self, letters, sigma):
        self.w = np.asarray(letters, dtype=np.int64)
        self.n = len(letters)
        self.sigma = sigma
        self._tables = {}
        self._prefix = None

    def table(self, mapping, mirrored):
        """LCE table between w and mapping(w), the latter optionally mirrored."""
        key = (mapping, mirrored)
        if key not in self._tables:
            other = self.w if mapping is None else np.asarray(mapping, dtype=np.int64)[self.w]
            if mirrored:
                other = other[::-1]
            self._tables[key] = _lce_table(self.w, other)
        return self._tables[key]

    def prefix_counts(self):
        if self._prefix is None:
            onehot = np.zeros((self.n + 1, self.sigma), dtype=np.int32)
            onehot[np.arange(1, self.n + 1), self.w] = 1
            self._prefix = np.cumsum(onehot, axis=0)
        return self._prefix

    def same(self, starts, a_off, b_off, ln, mapping=None, mirrored=False):
        """Mask over ``starts``: block at a equals mapping^-1 of the block at b
        (mirrored if asked), i.e. w[a+t] == mapping(w)[b+t] or its mirror."""
        a = starts + a_off
        b = starts + b_off
        if mirrored:
            return self.table(mapping, True)[a, self.n - b - ln] >= ln
        return self.table(mapping, False)[a, b] >= ln

    def same_parikh(self, starts, a_off, b_off, ln):
        pc = self.prefix_counts()
        a = starts + a_off
        b = starts + b_off
        return ((pc[a + ln] - pc[a]) == (pc[b + ln] - pc[b])).all(axis=1)


def _perm_pow(perm, k):
    out = np.arange(len(perm))
    p = np.asarray(perm)
    for _ in range(k):
        out = p[out]
    return out


def oracle_contains_instance(w, p, mode=Semantics.PLAIN) -> Optional[Occurrence]:
    """Leftmost instance of ``p`` in ``w``, ties broken by the smallest length
    vector and then the smallest permutation assignment; None if absent."""
    w, p, mode = _as_word(w), as_pattern(p), Semantics.parse(mode)
    check_semantics(p, mode)
    n = len(w)
    items = p.items
    nv = p.nr_vars
    counts = [sum(1 for it in items if it.var_index == v) for v in range(1, nv + 1)]
    first = {}
    for idx, it in enumerate(items):
        first.setdefault(it.var_index, idx)
    repeats = [(first[it.var_index], idx) for idx, it in enumerate(items) if first[it.var_index] != idx]

    chk = _Checker(w.letters, w.sigma)
    if mode is Semantics.PERMUTATIONS:
        perm_list = list(itertools.permutations(range(w.sigma)))
        assignments = list(itertools.product(perm_list, repeat=p.nr_perms))
    else:
        assignments = [()]

    def relation(assign, fi, ii):
        """(mapping, mirrored) such that block fi == mapping^-1(block ii), mirrored."""
        f_it, i_it = items[fi], items[ii]
        mirrored = f_it.reversed != i_it.reversed
        if mode is not Semantics.PERMUTATIONS:
            return None, mirrored
        ident = np.arange(w.sigma)
        mf = _perm_pow(assign[f_it.perm_index - 1], f_it.power) if f_it.power else ident
        mi = _perm_pow(assign[i_it.perm_index - 1], i_it.power) if i_it.power else ident
        # block_i = mi(mf^-1(block_f)) up to mirroring; compare block_f with mf(mi^-1(block_i))
        mi_inv = np.empty_like(mi)
        mi_inv[mi] = np.arange(w.sigma)
        mapping = tuple(int(x) for x in mf[mi_inv])
        if mapping == tuple(range(w.sigma)):
            mapping = None
        return mapping, mirrored

    best = None
    for lengths in _compositions(counts, n):
        offsets = []
        pos = 0
        for it in items:
            offsets.append(pos)
            pos += lengths[it.var_index - 1]
        total = pos
        limit = n - total + 1 if best is None else min(n - total + 1, best[0])
        if limit <= 0:
            continue
        for assign in assignments:
            starts = np.arange(limit)
            for fi, ii in repeats:
                ln = lengths[items[fi].var_index - 1]
                if mode is Semantics.ABELIAN:
                    keep = chk.same_parikh(starts, offsets[fi], offsets[ii], ln)
                else:
                    mapping, mirrored = relation(assign, fi, ii)
                    keep = chk.same(starts, offsets[fi], offsets[ii], ln, mapping, mirrored)
                starts = starts[keep]
                if not len(starts):
                    break
            if len(starts):
                s = int(starts[0])
                if best is None or s < best[0]:
                    best = (s, lengths, assign)
                    limit = s
                if s == 0:
                    break
        if best is not None and best[0] == 0:
            break
    if best is None:
        return None
    return _build_witness(w, p, *best, mode=mode)


def _build_witness(w, p, start, lengths, assign, mode) -> Occurrence:
    blocks = []
    pos = start
    for it in p.items:
        ln = lengths[it.var_index - 1]
        blocks.append(tuple(w.letters[pos:pos + ln]))
        pos += ln
    base = {}
    for it, blk in zip(p.items, blocks):
        if it.var_index in base:
            continue
        raw = blk[::-1] if it.reversed else blk
        if it.power:
            m = _perm_pow(assign[it.perm_index - 1], it.power)
            inv = np.empty_like(m)
            inv[m] = np.arange(len(m))
            raw = tuple(int(inv[c]) for c in raw)
        base[it.var_index] = tuple(raw)
    perm = PermAssignment(tuple(assign)) if mode is Semantics.PERMUTATIONS else None
    substitution = tuple(base[v] for v in range(1, p.nr_vars + 1))
    return Occurrence(start + 1, tuple(lengths), substitution, tuple(blocks), perm)


def oracle_avoids(w, f: Formula) -> bool:
    w = _as_word(w)
    return all(oracle_contains_instance(w, p, f.semantics) is None for p in f.patterns)
