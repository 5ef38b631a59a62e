"""Patterns, formulas and their integer encodings.

Pattern text grammar (whitespace ignored)::

    pattern  ::= atom+
    atom     ::= var ['r'] | func ['^' digits] '(' var ['r'] ')' ['r']
    var      ::= 'x' digits | single lowercase letter other than 'p' and 'r'
    func     ::= 'p' digits | 'p'

Word variables and function variables are renumbered 1, 2, ... in order of
first appearance, so ``x3x7`` and ``x1x2`` parse to the same pattern.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable


class Semantics(enum.Enum):
    PLAIN = "plain"
    ABELIAN = "abelian"
    PERMUTATIONS = "permutations"

    @classmethod
    def parse(cls, value) -> "Semantics":
        if isinstance(value, cls):
            return value
        aliases = {"perm": cls.PERMUTATIONS, "permutation": cls.PERMUTATIONS, "reversal": cls.PLAIN}
        value = str(value).lower()
        if value in aliases:
            return aliases[value]
        return cls(value)


class PatternSyntaxError(ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)


@dataclass(frozen=True)
class OccurrenceItem:
    """One position of a pattern: pi_perm^power(x_var), mirrored when ``reversed``.

    A plain variable is (1, 0, var, reversed): the identity p^0.
    """

    perm_index: int
    power: int
    var_index: int
    reversed: bool = False

    def __post_init__(self):
        if self.var_index < 1 or self.perm_index < 1 or self.power < 0:
            raise ValueError(f"invalid occurrence item {self}")

    def as_tuple(self) -> tuple:
        return (self.perm_index, self.power, self.var_index, int(self.reversed))


@dataclass(frozen=True)
class Pattern:
    items: tuple

    def __post_init__(self):
        items = tuple(self.items)
        object.__setattr__(self, "items", items)
        if not items:
            raise ValueError("a pattern needs at least one item")
        seen = []
        for it in items:
            if it.var_index not in seen:
                seen.append(it.var_index)
        if seen != list(range(1, len(seen) + 1)):
            raise ValueError("variables must be numbered 1..n by first occurrence")
        perms = []
        for it in items:
            if it.power > 0 and it.perm_index not in perms:
                perms.append(it.perm_index)
        if perms != list(range(1, len(perms) + 1)):
            raise ValueError("function variables must be numbered 1..m by first occurrence")

    @classmethod
    def from_tuples(cls, tuples: Iterable[tuple]) -> "Pattern":
        return cls(tuple(OccurrenceItem(j, k, i, bool(b)) for j, k, i, b in tuples))

    @property
    def nr_vars(self) -> int:
        return max(it.var_index for it in self.items)

    @property
    def nr_perms(self) -> int:
        return max((it.perm_index for it in self.items if it.power > 0), default=0)

    @property
    def has_reversal(self) -> bool:
        return any(it.reversed for it in self.items)

    @property
    def has_functions(self) -> bool:
        return any(it.power > 0 for it in self.items)

    def var_counts(self) -> list[int]:
        counts = [0] * self.nr_vars
        for it in self.items:
            counts[it.var_index - 1] += 1
        return counts

    def __len__(self):
        return len(self.items)

    def __str__(self):
        return render_pattern(self)


_TOKEN = re.compile(r"\s*(?:(?P<xnum>x\d+)|(?P<pnum>p\d+)|(?P<name>[a-z])|(?P<punct>[\^()])|(?P<num>\d+))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text_len = len(text.rstrip())
    while pos < text_len:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PatternSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_pattern(text: str) -> Pattern:
    """Parse pattern text such as ``x1x2p1^5(x2)p2^3(x1)r`` or ``xyx``."""
    tokens = _tokenize(text)
    if not tokens:
        raise PatternSyntaxError("empty pattern", text, 0)
    var_ids: dict[str, int] = {}
    perm_ids: dict[str, int] = {}
    items = []
    i = 0

    def peek(k=0):
        return tokens[i + k] if i + k < len(tokens) else (None, None, len(text))

    def is_var(tok):
        kind, value, _ = tok
        return kind == "xnum" or (kind == "name" and value not in ("p", "r"))

    def is_r(tok):
        return tok[0] == "name" and tok[1] == "r"

    def read_var():
        nonlocal i
        tok = peek()
        if tok[0] in ("pnum",) or (tok[0] == "name" and tok[1] == "p"):
            raise PatternSyntaxError("nested function application is not supported", text, tok[2])
        if not is_var(tok):
            raise PatternSyntaxError("expected a word variable", text, tok[2])
        i += 1
        rev = False
        if is_r(peek()):
            rev = True
            i += 1
        return tok[1], rev

    while i < len(tokens):
        tok = peek()
        kind, value, where = tok
        if is_var(tok):
            name, rev = read_var()
            var = var_ids.setdefault(name, len(var_ids) + 1)
            items.append(OccurrenceItem(1, 0, var, rev))
        elif kind == "pnum" or (kind == "name" and value == "p"):
            i += 1
            power = 1
            if peek()[0] == "punct" and peek()[1] == "^":
                i += 1
                if peek()[0] != "num":
                    raise PatternSyntaxError("expected a power after '^'", text, peek()[2])
                power = int(peek()[1])
                i += 1
            if not (peek()[0] == "punct" and peek()[1] == "("):
                raise PatternSyntaxError("expected '(' after function variable", text, peek()[2])
            i += 1
            name, inner_rev = read_var()
            if not (peek()[0] == "punct" and peek()[1] == ")"):
                raise PatternSyntaxError("expected ')'", text, peek()[2])
            i += 1
            outer_rev = False
            if is_r(peek()):
                outer_rev = True
                i += 1
            if inner_rev and outer_rev:
                raise PatternSyntaxError("reversal given both inside and outside the parentheses", text, where)
            var = var_ids.setdefault(name, len(var_ids) + 1)
            if power == 0:
                # p^0 is the identity; the function name gets no number here.
                items.append(OccurrenceItem(1, 0, var, inner_rev or outer_rev))
            else:
                perm = perm_ids.setdefault(value, len(perm_ids) + 1)
                items.append(OccurrenceItem(perm, power, var, inner_rev or outer_rev))
        elif is_r(tok):
            raise PatternSyntaxError("reversal mark without a variable", text, where)
        else:
            raise PatternSyntaxError(f"unexpected token {value!r}", text, where)
    return Pattern(tuple(items))


def render_pattern(p: Pattern) -> str:
    """Canonical text; ``parse_pattern(render_pattern(p)) == p``."""
    out = []
    for it in p.items:
        var = f"x{it.var_index}"
        if it.power == 0:
            out.append(var + ("r" if it.reversed else ""))
        else:
            power = "" if it.power == 1 else f"^{it.power}"
            out.append(f"p{it.perm_index}{power}({var})" + ("r" if it.reversed else ""))
    return "".join(out)


def as_pattern(p) -> Pattern:
    return p if isinstance(p, Pattern) else parse_pattern(p)


def check_semantics(p: Pattern, semantics: Semantics) -> None:
    semantics = Semantics.parse(semantics)
    if semantics is Semantics.ABELIAN and (p.has_reversal or p.has_functions):
        raise ValueError(f"abelian semantics does not allow reversals or functions: {render_pattern(p)}")
    if semantics is Semantics.PLAIN and p.has_functions:
        raise ValueError(f"function variables need permutation semantics: {render_pattern(p)}")


@dataclass(frozen=True)
class Formula:
    patterns: tuple
    semantics: Semantics = Semantics.PLAIN

    def __post_init__(self):
        patterns = tuple(as_pattern(p) for p in self.patterns)
        object.__setattr__(self, "patterns", patterns)
        object.__setattr__(self, "semantics", Semantics.parse(self.semantics))
        if not patterns:
            raise ValueError("a formula needs at least one pattern")
        for p in patterns:
            check_semantics(p, self.semantics)

    @classmethod
    def of(cls, *texts, semantics=Semantics.PLAIN) -> "Formula":
        return cls(tuple(texts), semantics)

    @property
    def max_pattern_length(self) -> int:
        return max(len(p) for p in self.patterns)

    @property
    def max_nr_vars(self) -> int:
        return max(p.nr_vars for p in self.patterns)

    @property
    def max_nr_perms(self) -> int:
        return max(p.nr_perms for p in self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self):
        return len(self.patterns)


def encode_signed(p) -> list[int]:
    """x_i -> i and x_i^r -> -i."""
    p = as_pattern(p)
    if p.has_functions:
        raise ValueError("signed encoding cannot express function variables")
    return [-it.var_index if it.reversed else it.var_index for it in p.items]


def pad_patterns(f: Formula, tuples: bool | None = None) -> list[list]:
    """Rectangular pattern table, short rows padded with 0 or (0, 0, 0, 0).

    ``tuples`` selects the 4-tuple encoding; by default it is used exactly
    for permutation semantics.
    """
    if tuples is None:
        tuples = f.semantics is Semantics.PERMUTATIONS
    width = f.max_pattern_length
    rows = []
    for p in f.patterns:
        if tuples:
            row = [it.as_tuple() for it in p.items] + [(0, 0, 0, 0)] * (width - len(p))
        else:
            row = encode_signed(p) + [0] * (width - len(p))
        rows.append(row)
    return rows
