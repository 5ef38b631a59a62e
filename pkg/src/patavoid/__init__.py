"""Avoidability of pattern formulas: matching, checking and word search."""
from .dzn_io import DataFileError, DataFileSpec, parse_solution_word, read_data_file, write_data_file
from .matching import (LengthAssignment, Occurrence, PermAssignment, all_permutations, avoids,
                       contains_instance, image_length, item_offset, label_of, matches_at, var_length)
from .oracle import oracle_avoids, oracle_contains_instance
from .patterns import (Formula, OccurrenceItem, Pattern, PatternSyntaxError, Semantics,
                       encode_signed, pad_patterns, parse_pattern, render_pattern)
from .search import (BudgetExceeded, Exhausted, Found, MorphicSpec, SearchBudget,
                     find_avoiding_word, find_morphic_avoiding_word, is_morphic_image)
from .words import (PHI_H, PHI_T, Alphabet, Morphism, Word, abelian_equivalent, apply_morphism,
                    format_bracketed, hall_prefix, parikh, reverse, thue_morse_prefix)

__all__ = [name for name in dir() if not name.startswith("_")]
