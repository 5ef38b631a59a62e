"""Finite words over Sigma_k = {0, ..., k-1}, Parikh vectors and morphisms.

Letters are 0-based ints everywhere inside the package.  The bracketed,
1-based form (``[1, 2, 3]``) is only produced or consumed at the I/O edges.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"alphabet size must be positive, got {self.size}")

    def __iter__(self):
        return iter(range(self.size))


@dataclass(frozen=True)
class Word:
    """An immutable word; ``letters`` is a tuple of ints in ``range(sigma)``."""

    letters: tuple
    sigma: int

    def __post_init__(self):
        letters = tuple(int(a) for a in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.sigma < 1:
            raise ValueError(f"alphabet size must be positive, got {self.sigma}")
        for i, a in enumerate(letters):
            if not 0 <= a < self.sigma:
                raise ValueError(f"letter {a} at index {i} is outside 0..{self.sigma - 1}")

    @classmethod
    def from_one_based(cls, letters: Iterable[int], sigma: int | None = None) -> "Word":
        shifted = [int(a) - 1 for a in letters]
        if sigma is None:
            sigma = max(shifted, default=0) + 1
        return cls(tuple(shifted), sigma)

    @classmethod
    def from_symbols(cls, text: str, symbols: str) -> "Word":
        """Read ``text`` letter by letter, mapping ``symbols[i]`` to ``i``.

        >>> Word.from_symbols("bcaca", "abc").letters
        (1, 2, 0, 2, 0)
        """
        index = {s: i for i, s in enumerate(symbols)}
        try:
            return cls(tuple(index[c] for c in text), len(symbols))
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} not in {symbols!r}") from None

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.sigma)

    def one_based(self) -> list[int]:
        return [a + 1 for a in self.letters]

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index], self.sigma)
        return self.letters[index]

    def __add__(self, other: "Word") -> "Word":
        if other.sigma != self.sigma:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.letters + other.letters, self.sigma)

    def __str__(self):
        return "".join(str(a) for a in self.letters) if self.sigma <= 10 else str(list(self.letters))


def _as_word(w, sigma=None) -> Word:
    if isinstance(w, Word):
        return w
    letters = tuple(w)
    return Word(letters, sigma if sigma is not None else max(letters, default=0) + 1)


@dataclass(frozen=True)
class Morphism:
    """Non-erasing morphism given by one image per source letter."""

    images: tuple
    target_sigma: int

    def __post_init__(self):
        images = tuple(tuple(int(a) for a in img) for img in self.images)
        object.__setattr__(self, "images", images)
        for a, img in enumerate(images):
            if not img:
                raise ValueError(f"image of letter {a} is empty")
            if any(not 0 <= b < self.target_sigma for b in img):
                raise ValueError(f"image of letter {a} leaves the target alphabet")

    @property
    def source_sigma(self) -> int:
        return len(self.images)

    def __call__(self, w) -> Word:
        return apply_morphism(self, w)


PHI_T = Morphism(((0, 1), (1, 0)), 2)
PHI_H = Morphism(((0, 1, 2), (0, 2), (1,)), 3)


def apply_morphism(m: Morphism, w) -> Word:
    w = _as_word(w, m.source_sigma)
    if w.sigma > m.source_sigma:
        raise ValueError("word uses letters outside the morphism's domain")
    out = []
    for a in w.letters:
        out.extend(m.images[a])
    return Word(tuple(out), m.target_sigma)


def _fixed_point_prefix(m: Morphism, n: int) -> Word:
    if n < 0:
        raise ValueError("prefix length must be non-negative")
    w = Word((0,), m.target_sigma)
    while len(w) < n:
        w = apply_morphism(m, w)
    return w[:n]


def thue_morse_prefix(n: int) -> Word:
    """Length-``n`` prefix of the Thue-Morse word, fixed point of 0->01, 1->10."""
    return _fixed_point_prefix(PHI_T, n)


def hall_prefix(n: int) -> Word:
    """Length-``n`` prefix of the ternary Thue (Hall) word, fixed point of 0->012, 1->02, 2->1."""
    return _fixed_point_prefix(PHI_H, n)


def parikh(w, sigma: int | None = None) -> np.ndarray:
    """Letter counts of ``w`` as an int array of length sigma."""
    w = _as_word(w, sigma)
    sigma = w.sigma if sigma is None else sigma
    return np.bincount(np.asarray(w.letters, dtype=np.int64), minlength=sigma)[:sigma]


def abelian_equivalent(u, v) -> bool:
    u, v = _as_word(u), _as_word(v)
    sigma = max(u.sigma, v.sigma)
    return bool(np.array_equal(parikh(u, sigma), parikh(v, sigma)))


def reverse(w) -> Word:
    w = _as_word(w)
    return Word(w.letters[::-1], w.sigma)


def format_bracketed(w: Word | Sequence[int]) -> str:
    """Solver-style output: ``[1, 2, 3]`` with 1-based letters."""
    letters = w.letters if isinstance(w, Word) else tuple(w)
    return "[" + ", ".join(str(a + 1) for a in letters) + "]"
