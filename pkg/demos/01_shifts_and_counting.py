# %% [markdown]
# # Shifts, entropy and periodic points
#
# A shift space is described here by forbidden words or by a regular
# expression whose bi-infinite factors form the shift.  Both are turned into
# a minimal right-resolving labeled graph, and everything else is computed
# from that graph.

# %%
import math

import numpy as np

from symshift import (
    enumerate_periodic_orbits,
    entropy,
    fixed_point_counts,
    power_recode,
    sft_from_forbidden,
    shift_from_regex,
    trace_counts,
)
from symshift.presentations import count_words

golden = sft_from_forbidden("01", ["11"], name="golden")
even = shift_from_regex("01", "(1(00)*)*", name="even")

# %% [markdown]
# ## Entropy
#
# The Perron root of the adjacency matrix gives the growth rate of the
# language.  The result carries a certified bracket.

# %%
h = entropy(golden)
print(f"golden mean shift: h = {h.value:.9f}, bracket width {h.width:.1e}")
print(f"log2 of the golden ratio: {math.log2((1 + 5 ** 0.5) / 2):.9f}")

for n in (8, 16, 24):
    print(f"  word count estimate at n={n}: {math.log2(count_words(golden, n)) / n:.6f}")

# Recoding to blocks of length 2 doubles the entropy.
print("h of the 2-block recoding:", entropy(power_recode(golden, 2).presentation).value)
print("h of the even shift:     ", entropy(even).value)

# %% [markdown]
# ## Periodic points
#
# The number of points fixed by the n-th power of the shift equals the trace
# of the n-th power of the adjacency matrix.  Enumerating orbits directly
# gives the same counts.

# %%
traces = np.array(trace_counts(golden, 10))
direct = np.array(fixed_point_counts(golden, 10))
print("traces:   ", traces)
print("enumerated", direct)
assert (traces == direct).all()

for s in enumerate_periodic_orbits(golden, 5):
    print(f"orbit {''.join(s.canonical):>5}  period {s.period}")
