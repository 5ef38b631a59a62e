"""Reading and writing ``.dzn`` data files for the avoidance models.

The canonical layout written here (and expected back by the reader):

* a ``% semantics = <mode>`` comment line,
* one scalar assignment per line,
* multi-line arrays with one pattern (or one permutation row) per line,
  two-space indented, each element followed by a comma,
* one-line 1-d arrays written as ``[  a, b, ]``.

Pattern letters are 1-based; ``morphicWord`` keeps the 0-based letters of
the base word.  Files under ``tests/golden`` are the byte-exact reference.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from .matching import all_permutations
from .patterns import Formula, OccurrenceItem, Pattern, Semantics, pad_patterns
from .search import MorphicSpec
from .words import Word


class DataFileError(ValueError):
    pass


@dataclass(frozen=True)
class DataFileSpec:
    sigma: int
    word_length: int
    formula: Formula
    morphic: Optional[MorphicSpec] = None

    def __post_init__(self):
        if self.sigma < 1:
            raise DataFileError("sigma must be positive")
        if self.word_length < 1:
            raise DataFileError("wordLength must be positive")
        if self.morphic is not None and self.morphic.template_length != self.word_length:
            raise DataFileError(
                f"wordLength {self.word_length} differs from the sum of the image lengths "
                f"{self.morphic.template_length}")

    @property
    def max_nr_perms(self) -> int:
        return max(1, self.formula.max_nr_perms)

    def permutation_tables(self) -> list:
        """table[p][j][z][pos] = letter map (1-based tuple) of p_j^k at item pos
        under the z-th permutation, identity where p_j does not act."""
        perms = all_permutations(self.sigma)
        ident = tuple(range(1, self.sigma + 1))
        width = self.formula.max_pattern_length
        tables = []
        for p in self.formula.patterns:
            per_fn = []
            for j in range(1, self.max_nr_perms + 1):
                rows = []
                for perm in perms:
                    row = []
                    for pos in range(width):
                        it = p.items[pos] if pos < len(p) else None
                        if it is None or it.power == 0 or it.perm_index != j:
                            row.append(ident)
                            continue
                        m = tuple(range(self.sigma))
                        for _ in range(it.power):
                            m = tuple(perm[a] for a in m)
                        row.append(tuple(a + 1 for a in m))
                    rows.append(row)
                per_fn.append(rows)
            tables.append(per_fn)
        return tables


def _array1d(values) -> str:
    return "[  " + "".join(f"{v}, " for v in values) + "]"


def write_data_file(spec: DataFileSpec) -> str:
    f = spec.formula
    perm_mode = f.semantics is Semantics.PERMUTATIONS
    nr = len(f)
    lines = [
        f"% semantics = {f.semantics.value}",
        f"sigma = {spec.sigma};",
        f"wordLength = {spec.word_length};",
        f"nrPatterns = {nr};",
    ]
    rows = pad_patterns(f, tuples=perm_mode)
    if perm_mode:
        lines += [
            f"numberOfPatterns = {nr};",
            f"nrPermutations = {math.factorial(spec.sigma)};",
            f"maxNrOccs = {f.max_pattern_length};",
            f"maxNumberOfRepetitions = {f.max_pattern_length};",
            f"maxNrVars = {f.max_nr_vars};",
            f"maxNrPerms = {spec.max_nr_perms};",
            "repetitions = array3d(1..numberOfPatterns, 1..maxNumberOfRepetitions, 1..4, [",
        ]
        for row in rows:
            lines.append("  " + " ".join(",".join(str(x) for x in t) + "," for t in row))
        lines.append("]);")
        lines.append(f"nrVarsInPattern = array1d(1..nrPatterns, {_array1d(p.nr_vars for p in f)});")
        lines.append(f"nrPermsInPattern = array1d(1..nrPatterns, {_array1d(p.nr_perms for p in f)});")
        lines.append("permutations = array4d(1..nrPatterns, 1..maxNrPerms, 1..nrPermutations, 1..maxNrOccs, [")
        for per_fn in spec.permutation_tables():
            for table in per_fn:
                for row in table:
                    lines.append("  " + " ".join("(" + ",".join(map(str, t)) + ")," for t in row))
        lines.append("]);")
    else:
        lines += [
            f"maxPatternLength = {f.max_pattern_length};",
            f"maxNrVars = {f.max_nr_vars};",
            "patterns = array2d(1..nrPatterns, 1..maxPatternLength, [",
        ]
        for row in rows:
            lines.append("  " + "".join(f"{x}," for x in row))
        lines.append("]);")
        lines.append(f"nrVarsInPattern = array1d(1..nrPatterns, {_array1d(p.nr_vars for p in f)});")
    if spec.morphic is not None:
        m = spec.morphic
        lines += [
            f"morphicWordLength = {m.prefix_length};",
            f"morphicWord = array1d(1..morphicWordLength, {_array1d(m.base_prefix().letters)});",
            f"numberOfMorphicWordImages = {len(m.image_lengths)};",
            f"morphicWordImagesLengths = array1d(1..numberOfMorphicWordImages, {_array1d(m.image_lengths)});",
        ]
    return "\n".join(lines) + "\n"


_ASSIGN = re.compile(r"^\s*([A-Za-z_]\w*)\s*=\s*(.*?);", re.S | re.M)
_SEMANTICS = re.compile(r"^\s*%\s*semantics\s*=\s*(\w+)\s*$", re.M)
_INT = re.compile(r"-?\d+")
_TUPLE = re.compile(r"\(([^()]*)\)")


def _fields(text: str) -> dict:
    body = re.sub(r"%[^\n]*", lambda m: " " * len(m.group(0)), text)
    out = {}
    for m in _ASSIGN.finditer(body):
        name = m.group(1)
        line = text.count("\n", 0, m.start()) + 1
        if name in out:
            raise DataFileError(f"line {line}: field {name!r} assigned twice")
        out[name] = (m.group(2).strip(), line)
    return out


def _scalar(fields, name) -> int:
    if name not in fields:
        raise DataFileError(f"missing field {name!r}")
    value, line = fields[name]
    if not re.fullmatch(r"-?\d+", value):
        raise DataFileError(f"line {line}: field {name!r} is not an integer: {value!r}")
    return int(value)


def _array_body(fields, name) -> tuple[str, int]:
    if name not in fields:
        raise DataFileError(f"missing field {name!r}")
    value, line = fields[name]
    lo, hi = value.rfind("["), value.rfind("]")
    if lo < 0 or hi < lo:
        raise DataFileError(f"line {line}: field {name!r} is not an array literal")
    return value[lo + 1:hi], line


def _int_array(fields, name, expected=None) -> list[int]:
    body, line = _array_body(fields, name)
    values = [int(x) for x in _INT.findall(body)]
    if expected is not None and len(values) != expected:
        raise DataFileError(f"line {line}: field {name!r} has {len(values)} entries, expected {expected}")
    return values


def read_data_file(text: str) -> DataFileSpec:
    """Parse a data file written by :func:`write_data_file`."""
    if not text or not text.strip():
        raise DataFileError("empty data file")
    fields = _fields(text)
    sem_match = _SEMANTICS.search(text)
    declared = None
    if sem_match:
        try:
            declared = Semantics.parse(sem_match.group(1))
        except ValueError:
            line = text.count("\n", 0, sem_match.start()) + 1
            raise DataFileError(f"line {line}: unknown semantics {sem_match.group(1)!r}") from None
    if "repetitions" in fields:
        semantics = Semantics.PERMUTATIONS
    else:
        semantics = declared or Semantics.PLAIN
    if declared is not None and declared is not semantics:
        raise DataFileError("semantics comment disagrees with the arrays present")

    sigma = _scalar(fields, "sigma")
    word_length = _scalar(fields, "wordLength")
    nr = _scalar(fields, "nrPatterns")
    if nr < 1:
        raise DataFileError(f"line {fields['nrPatterns'][1]}: nrPatterns must be positive")

    patterns = []
    if semantics is Semantics.PERMUTATIONS:
        width = _scalar(fields, "maxNrOccs")
        flat = _int_array(fields, "repetitions", nr * width * 4)
        for p in range(nr):
            tuples = [tuple(flat[(p * width + k) * 4:(p * width + k + 1) * 4]) for k in range(width)]
            tuples = [t for t in tuples if t[2] != 0]
            patterns.append(_pattern_from_tuples(tuples, "repetitions"))
    else:
        width = _scalar(fields, "maxPatternLength")
        flat = _int_array(fields, "patterns", nr * width)
        for p in range(nr):
            row = [x for x in flat[p * width:(p + 1) * width] if x != 0]
            patterns.append(_pattern_from_tuples([(1, 0, abs(x), int(x < 0)) for x in row], "patterns"))
    try:
        formula = Formula(tuple(patterns), semantics)
    except ValueError as exc:
        raise DataFileError(str(exc)) from None

    nr_vars = _int_array(fields, "nrVarsInPattern", nr)
    if nr_vars != [p.nr_vars for p in formula]:
        raise DataFileError(f"line {fields['nrVarsInPattern'][1]}: nrVarsInPattern disagrees with the patterns")

    morphic = None
    if "morphicWordLength" in fields:
        n_img = _scalar(fields, "numberOfMorphicWordImages")
        base = {2: "t", 3: "h"}.get(n_img)
        if base is None:
            raise DataFileError(f"numberOfMorphicWordImages must be 2 or 3, got {n_img}")
        prefix = _scalar(fields, "morphicWordLength")
        lengths = _int_array(fields, "morphicWordImagesLengths", n_img)
        try:
            morphic = MorphicSpec(base, prefix, tuple(lengths))
        except ValueError as exc:
            raise DataFileError(str(exc)) from None
        letters = _int_array(fields, "morphicWord", prefix)
        if tuple(letters) != morphic.base_prefix().letters:
            raise DataFileError(f"line {fields['morphicWord'][1]}: morphicWord is not a prefix of {base!r}")

    spec = DataFileSpec(sigma, word_length, formula, morphic)

    if semantics is Semantics.PERMUTATIONS:
        if _scalar(fields, "nrPermutations") != math.factorial(sigma):
            raise DataFileError("nrPermutations is not sigma!")
        nr_perms = _int_array(fields, "nrPermsInPattern", nr)
        if nr_perms != [p.nr_perms for p in formula]:
            raise DataFileError(f"line {fields['nrPermsInPattern'][1]}: nrPermsInPattern disagrees with the patterns")
        body, line = _array_body(fields, "permutations")
        found = [tuple(int(x) for x in _INT.findall(t)) for t in _TUPLE.findall(body)]
        expected = [t for per_fn in spec.permutation_tables() for table in per_fn for row in table for t in row]
        if found != expected:
            raise DataFileError(f"line {line}: permutations table does not match the patterns")
    return spec


def _pattern_from_tuples(tuples, field) -> Pattern:
    try:
        return Pattern(tuple(OccurrenceItem(j, k, i, bool(b)) for j, k, i, b in tuples))
    except ValueError as exc:
        raise DataFileError(f"field {field!r}: {exc}") from None


_SOLUTION = re.compile(r"\s*\[\s*((?:\d+\s*,\s*)*\d+)?\s*,?\s*\]\s*")


def parse_solution_word(text: str, sigma: int | None = None) -> Word:
    """``"[1, 2, 3]"`` -> Word with internal letters (0, 1, 2)."""
    m = _SOLUTION.fullmatch(text)
    if not m:
        raise ValueError(f"malformed solution word: {text!r}")
    values = [int(x) for x in _INT.findall(m.group(1) or "")]
    top = sigma if sigma is not None else max(values, default=1)
    for i, v in enumerate(values):
        if not 1 <= v <= top:
            raise ValueError(f"letter {v} at index {i} is outside 1..{top}")
    return Word(tuple(v - 1 for v in values), top)
