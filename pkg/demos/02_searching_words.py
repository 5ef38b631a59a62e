# %% [markdown]
# # Searching for avoiding words
# Depth-first search, letters in ascending order, with only the instances
# ending at the newest position re-checked.

# %%
from patavoid import (Alphabet, BudgetExceeded, Exhausted, Formula, Found, SearchBudget, contains_instance,
                      find_avoiding_word, format_bracketed, oracle_avoids, parse_pattern)

squares = Formula.of("xx")
out = find_avoiding_word(Alphabet(3), 60, squares)
print(type(out).__name__, out.nodes, "nodes")
print(format_bracketed(out.word))
print("independent check:", oracle_avoids(out.word, squares))

# %%
# over two letters the tree dies at length 4
print(find_avoiding_word(Alphabet(2), 4, squares))

# %%
# a pattern with a mirrored variable
rev = Formula.of("x1x2x2x1r")
out = find_avoiding_word(Alphabet(4), 30, rev)
print(format_bracketed(out.word))

# %%
# abelian squares over three letters: find the longest avoiding length
abelian = Formula.of("xx", semantics="abelian")
n = 1
while isinstance(find_avoiding_word(Alphabet(3), n, abelian), Found):
    n += 1
print("no ternary word of length", n, "avoids abelian squares")

# %%
# a budget hit is reported as such, never as exhaustion
res = find_avoiding_word(Alphabet(2), 200, Formula.of("xxx"), SearchBudget(max_nodes=50))
print(isinstance(res, BudgetExceeded), isinstance(res, Exhausted))

# %%
# what a witness looks like
occ = contains_instance([0, 1, 2, 2, 1, 0], parse_pattern("x1x2x2x1r"))
print(occ)
