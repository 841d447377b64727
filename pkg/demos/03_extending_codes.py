# %% [markdown]
# # Recovering a sliding block code from its values on aperiodic points
#
# An oracle answers questions about a map on finite windows, but only for
# windows that pin down an aperiodic point.  The extension engine looks at
# contexts that stay close to a periodic point for longer and longer, and
# collects the windows the oracle forces.  A single forced window at every
# scale defines the value at the periodic point.

# %%
from symshift import (
    Verdict,
    apply_code,
    approximate_image_set,
    aut_roundtrip,
    compose,
    enumerate_periodic_orbits,
    extend,
    format_point,
    marker_swap_involution,
    oracle_from_code,
    sft_from_forbidden,
    shift_code,
    symbol_map_code,
)

full2 = sft_from_forbidden("01", [], name="full2")
full3 = sft_from_forbidden("012", [], name="full3")

swap = symbol_map_code(full2, {"0": "1", "1": "0"})
shifted_swap = compose(swap, shift_code(full2, 1))

# %% [markdown]
# Around the fixed point of zeros the oracle of the shifted swap forces one
# window per scale.

# %%
zero = enumerate_periodic_orbits(full2, 1)[0]
o = oracle_from_code(shifted_swap)
for n in (1, 2, 4):
    a = approximate_image_set(o, zero, n)
    print(f"scale {n}: windows {[''.join(w) for w in a.sorted_windows()]}")

# %% [markdown]
# The engine repeats this for every periodic orbit up to a period bound and
# compares the result against the code itself.

# %%
result = extend(o, full2, full2, period_max=5, scale_max=8)
print(result.verdict)
bad = [
    s for s in enumerate_periodic_orbits(full2, 5)
    if apply_code(shifted_swap, s.point()) != result.images[s.canonical]
]
print(f"{len(result.images)} orbits extended, {len(bad)} disagreements")

# %% [markdown]
# For an automorphism, restricting to aperiodic points and extending back
# returns the original map on periodic orbits.

# %%
f = marker_swap_involution(full3)
print("marker involution round trip:", aut_roundtrip(f, f, full3, period_max=4))
r = extend(oracle_from_code(f), full3, full3, period_max=2)
for key, image in sorted(r.images.items()):
    print(f"  {''.join(key):>3} -> {format_point(image)}")
assert r.verdict is Verdict.EXTENDED
