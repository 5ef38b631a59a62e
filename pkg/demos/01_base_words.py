# %% [markdown]
# # Thue-Morse and Hall words
# Fixed points of two small morphisms, and what they avoid.

# %%
import numpy as np

from patavoid import (PHI_H, PHI_T, Formula, apply_morphism, hall_prefix, oracle_avoids, parikh,
                      thue_morse_prefix)

t = thue_morse_prefix(32)
h = hall_prefix(27)
print("t:", t)
print("h:", h)

# %%
# both words are fixed points: applying the morphism to a prefix extends it
print(apply_morphism(PHI_T, t[:16]) == t)
img = apply_morphism(PHI_H, h[:9])
print(img == h[:len(img)])

# %%
# t has no cubes and no overlaps, h has no squares
tm = thue_morse_prefix(1024)
print("t avoids xxx:  ", oracle_avoids(tm, Formula.of("xxx")))
print("t avoids xyxyx:", oracle_avoids(tm, Formula.of("xyxyx")))
print("h avoids xx:   ", oracle_avoids(hall_prefix(729), Formula.of("xx")))

# %%
# Parikh vectors of the length-8 factors of t stay balanced
windows = np.lib.stride_tricks.sliding_window_view(np.array(tm.letters), 8)
counts = np.stack([parikh(tm[i:i + 8]) for i in range(len(windows))])
print("distinct Parikh vectors of 8-letter factors:", np.unique(counts, axis=0).tolist())
