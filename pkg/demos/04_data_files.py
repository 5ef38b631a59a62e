# %% [markdown]
# # Data files for constraint models
# Emitting and reading back the `.dzn` encoding of a formula.

# %%
from patavoid import DataFileSpec, Formula, MorphicSpec, read_data_file, write_data_file

f = Formula.of("x1x2p2(x1)", "x1p1(x1)", semantics="permutations")
text = write_data_file(DataFileSpec(3, 10, f))
print("\n".join(line for line in text.splitlines() if not line.startswith("  (")))

# %%
# one permutation row per pattern position, sigma! rows per function variable
rows = [line for line in text.splitlines() if line.startswith("  (")]
print(len(rows), rows[:3])

# %%
morphic = DataFileSpec(5, 5, Formula.of("x1x2x2x1r"), MorphicSpec("t", 10, (2, 3)))
text = write_data_file(morphic)
print(text)
print(read_data_file(text) == morphic)
