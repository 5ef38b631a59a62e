# %% [markdown]
# # Morphic images of t and h
# The search fills a template made of the images of the base letters; the
# final word is the image of a base prefix and must avoid the formula too.

# %%
from patavoid import (Alphabet, Formula, MorphicSpec, find_morphic_avoiding_word, format_bracketed,
                      is_morphic_image, oracle_avoids)

zimin = Formula.of("x1x2x1x3x1x2x1")
spec = MorphicSpec("t", 2, (25, 25))
out = find_morphic_avoiding_word(Alphabet(3), spec, zimin)
print(format_bracketed(out.final_word))
print("avoids Zimin-3:", oracle_avoids(out.final_word, zimin))

# %%
# Hall prefix of length 7, images of lengths 6, 6 and 12, four letters,
# squares and x p(x) x^r with p any letter permutation
f = Formula.of("x1x1", "x1p1(x1)x1r", semantics="permutations")
spec = MorphicSpec("h", 7, (6, 6, 12))
out = find_morphic_avoiding_word(Alphabet(4), spec, f)
print(len(out.final_word), format_bracketed(out.final_word))
for a, img in enumerate(out.morphism.images):
    print(a, "->", format_bracketed(img))

# %%
# short images of 01101: square-free is impossible here, abelian cubes are fine
spec = MorphicSpec("t", 5, (3, 2))
print(find_morphic_avoiding_word(Alphabet(3), spec, Formula.of("xx")))
out = find_morphic_avoiding_word(Alphabet(3), spec, Formula.of("xxx", semantics="abelian"))
print(format_bracketed(out.final_word), is_morphic_image(out.final_word, spec) == out.morphism)
