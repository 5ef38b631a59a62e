"""Backtracking construction of words avoiding a formula.

Positions are filled left to right.  After position n is set, only pattern
instances *ending* at n are looked for: every shorter prefix already
avoided the formula, so any new instance must end at n.

In morphic mode the searched object is a template word made of the images
of the base letters, laid side by side.  The final word is the image of a
Thue-Morse or Hall prefix under that morphism; it is materialized
prefix-first while template letters are fixed, and both words are checked.
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from .matching import instance_ending_at
from .patterns import Formula
from .words import Alphabet, Morphism, Word, apply_morphism, hall_prefix, thue_morse_prefix

BUDGET_ENV = "PATAVOID_MAX_SECONDS"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")

    @classmethod
    def unlimited(cls) -> "SearchBudget":
        return cls()

    @classmethod
    def from_env(cls, default: Optional[float] = None) -> "SearchBudget":
        value = os.environ.get(BUDGET_ENV)
        return cls(max_seconds=float(value) if value else default)


@dataclass(frozen=True)
class Found:
    word: Word
    morphism: Optional[Morphism] = None
    final_word: Optional[Word] = None
    nodes: int = 0
    seconds: float = 0.0


@dataclass(frozen=True)
class Exhausted:
    nodes: int = 0
    seconds: float = 0.0


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int = 0
    seconds: float = 0.0


SearchOutcome = Union[Found, Exhausted, BudgetExceeded]


@dataclass(frozen=True)
class MorphicSpec:
    """Base word (``"t"`` or ``"h"``), its prefix length and one image length per base letter."""

    base: str
    prefix_length: int
    image_lengths: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "image_lengths", tuple(int(x) for x in self.image_lengths))
        if self.base not in ("t", "h"):
            raise ValueError(f"unknown base word {self.base!r}; use 't' or 'h'")
        if self.prefix_length < 1:
            raise ValueError("prefix length must be positive")
        expected = 2 if self.base == "t" else 3
        if len(self.image_lengths) != expected:
            raise ValueError(f"base {self.base!r} needs {expected} image lengths, got {len(self.image_lengths)}")
        if any(x < 1 for x in self.image_lengths):
            raise ValueError("image lengths must be positive")

    def base_prefix(self) -> Word:
        gen = thue_morse_prefix if self.base == "t" else hall_prefix
        return gen(self.prefix_length)

    @property
    def template_length(self) -> int:
        return sum(self.image_lengths)

    @property
    def final_length(self) -> int:
        return sum(self.image_lengths[a] for a in self.base_prefix())

    def segment_offsets(self) -> list[int]:
        offs, pos = [], 0
        for ln in self.image_lengths:
            offs.append(pos)
            pos += ln
        return offs

    def morphism(self, template, sigma: int) -> Morphism:
        letters = template.letters if isinstance(template, Word) else tuple(template)
        if len(letters) != self.template_length:
            raise ValueError(f"template must have length {self.template_length}")
        offs = self.segment_offsets()
        images = tuple(letters[o:o + ln] for o, ln in zip(offs, self.image_lengths))
        return Morphism(images, sigma)


def _sigma(alphabet) -> int:
    return alphabet.size if isinstance(alphabet, Alphabet) else int(alphabet)


class _Backtracker:
    def __init__(self, sigma, length, formula, budget, seed=None, symmetry_break=False, morphic=None):
        self.sigma = sigma
        self.length = length
        self.formula = formula
        self.budget = budget or SearchBudget()
        self.rng = random.Random(seed) if seed is not None else None
        self.symmetry_break = symmetry_break and morphic is None
        self.morphic = morphic
        if morphic is not None:
            base = morphic.base_prefix()
            offs = morphic.segment_offsets()
            # src[f]: template position copied to final position f
            self.src = [offs[a] + j for a in base for j in range(morphic.image_lengths[a])]
            # ready[t]: final prefix length fixed once template[0..t] is set
            self.ready = []
            f = 0
            for t in range(length):
                while f < len(self.src) and self.src[f] <= t:
                    f += 1
                self.ready.append(f)
            self.final = []

    def order(self, depth):
        letters = list(range(self.sigma))
        if depth == 0 and self.symmetry_break:
            return [0]
        if self.rng is not None:
            self.rng.shuffle(letters)
        return letters

    def clean(self, letters, end):
        for p in self.formula.patterns:
            if instance_ending_at(letters, end, p, self.formula.semantics, self.sigma):
                return False
        return True

    def accept(self, letters, depth):
        if not self.clean(letters, depth + 1):
            return False
        if self.morphic is not None:
            lo = self.ready[depth - 1] if depth else 0
            for f in range(lo, self.ready[depth]):
                self.final.append(letters[self.src[f]])
                if not self.clean(self.final, f + 1):
                    return False
        return True

    def undo(self, depth):
        if self.morphic is not None:
            del self.final[self.ready[depth - 1] if depth else 0:]

    def run(self, prefix=()) -> SearchOutcome:
        t0 = time.monotonic()
        nodes = 0
        letters = []
        for d, a in enumerate(prefix):
            letters.append(a)
            nodes += 1
            if not self.accept(letters, d):
                return Exhausted(nodes, time.monotonic() - t0)
        base = len(prefix)
        if base == self.length:
            return self._found(letters, nodes, t0)
        stack = [iter(self.order(base))]
        max_nodes, max_seconds = self.budget.max_nodes, self.budget.max_seconds
        while stack:
            d = base + len(stack) - 1
            if len(letters) > d:
                letters.pop()
                self.undo(d)
            a = next(stack[-1], None)
            if a is None:
                stack.pop()
                continue
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                return BudgetExceeded(nodes - 1, time.monotonic() - t0)
            if max_seconds is not None and nodes % 256 == 0 and time.monotonic() - t0 > max_seconds:
                return BudgetExceeded(nodes, time.monotonic() - t0)
            letters.append(a)
            if self.accept(letters, d):
                if d + 1 == self.length:
                    return self._found(letters, nodes, t0)
                stack.append(iter(self.order(d + 1)))
        return Exhausted(nodes, time.monotonic() - t0)

    def _found(self, letters, nodes, t0):
        word = Word(tuple(letters), self.sigma)
        elapsed = time.monotonic() - t0
        if self.morphic is None:
            return Found(word, nodes=nodes, seconds=elapsed)
        morphism = self.morphic.morphism(word, self.sigma)
        final = apply_morphism(morphism, self.morphic.base_prefix())
        return Found(word, morphism, final, nodes=nodes, seconds=elapsed)


def _run_branch(args):
    kwargs, prefix = args
    return _Backtracker(**kwargs).run(prefix)


def _parallel(kwargs, workers) -> SearchOutcome:
    bt = _Backtracker(**kwargs)
    firsts = bt.order(0)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_run_branch, [(kwargs, (a,)) for a in firsts]))
    nodes = sum(r.nodes for r in results)
    seconds = max((r.seconds for r in results), default=0.0)
    for r in results:
        if isinstance(r, Found):
            return Found(r.word, r.morphism, r.final_word, nodes, seconds)
    if any(isinstance(r, BudgetExceeded) for r in results):
        return BudgetExceeded(nodes, seconds)
    return Exhausted(nodes, seconds)


def find_avoiding_word(alphabet, length: int, f: Formula, budget: SearchBudget | None = None, *,
                       seed: int | None = None, symmetry_break: bool = False,
                       parallel: bool = False, workers: int | None = None) -> SearchOutcome:
    """Depth-first search for a word of ``length`` letters avoiding ``f``.

    Letters are tried in ascending order unless ``seed`` is given.  Returns
    Found, Exhausted (the whole tree was explored) or BudgetExceeded.
    With ``parallel`` the first-letter branches run in separate processes and
    the first Found in branch order wins.
    """
    if length < 1:
        raise ValueError("length must be positive")
    if not isinstance(f, Formula):
        raise TypeError("f must be a Formula")
    kwargs = dict(sigma=_sigma(alphabet), length=length, formula=f, budget=budget,
                  seed=seed, symmetry_break=symmetry_break)
    if parallel:
        return _parallel(kwargs, workers)
    return _Backtracker(**kwargs).run()


def find_morphic_avoiding_word(alphabet, spec: MorphicSpec, f: Formula, budget: SearchBudget | None = None, *,
                               seed: int | None = None, parallel: bool = False,
                               workers: int | None = None) -> SearchOutcome:
    """Search a template word whose segments are the images of the base
    letters, such that both the template and the image of the base prefix
    avoid ``f``.  Found carries (template, morphism, final word)."""
    if not isinstance(f, Formula):
        raise TypeError("f must be a Formula")
    kwargs = dict(sigma=_sigma(alphabet), length=spec.template_length, formula=f, budget=budget,
                  seed=seed, morphic=spec)
    if parallel:
        return _parallel(kwargs, workers)
    return _Backtracker(**kwargs).run()


def is_morphic_image(final, spec: MorphicSpec, sigma: int | None = None) -> Optional[Morphism]:
    """The morphism with the spec's image lengths mapping the base prefix to
    ``final``, or None when ``final`` is not such an image."""
    letters = final.letters if isinstance(final, Word) else tuple(final)
    sigma = sigma if sigma is not None else (final.sigma if isinstance(final, Word) else max(letters) + 1)
    if len(letters) != spec.final_length:
        return None
    images: dict[int, tuple] = {}
    pos = 0
    for a in spec.base_prefix():
        ln = spec.image_lengths[a]
        block = tuple(letters[pos:pos + ln])
        if images.setdefault(a, block) != block:
            return None
        pos += ln
    # letters absent from the prefix have unconstrained images
    filler = {a: (0,) * ln for a, ln in enumerate(spec.image_lengths)}
    return Morphism(tuple(images.get(a, filler[a]) for a in range(len(spec.image_lengths))), sigma)
