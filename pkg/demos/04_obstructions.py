# %% [markdown]
# # When the extension does not exist
#
# Without the synchronization hypothesis a map defined on aperiodic points
# can force two or more different windows around a periodic point.  The
# engine reports these as obstructions together with the contexts that
# realize each window.

# %%
from symshift import Verdict, approximate_image_set, continuity_probe, extend, format_point, parse_point
from symshift.oracles import (
    even_to_alternating_map,
    midpoint_marker_map,
    parity_involution,
    run_flip_automorphism,
)

# %% [markdown]
# ## Runs flipped between delimiters
#
# Runs of 0s and 1s sit between delimiters 2 and 3.  The automorphism flips
# each run whose delimiters come in one order.  Near the all-zero point the
# run can be closed on either side, so both 0^(2n+1) and 1^(2n+1) appear.

# %%
o = run_flip_automorphism()
result = extend(o, scale_max=8)
print(result.records()[0])
for a in result.approximations:
    windows = {"".join(w): "".join(r.context) for w, r in a.windows.items()}
    print(f"scale {a.scale}: {sorted(windows)}")

# %% [markdown]
# ## Even shift onto the alternating shift
#
# The zero run between two 1s is rewritten as alternating symbols.  Near the
# fixed point the image can be either phase of the alternating point, so a
# period-1 input would need a period-2 output.

# %%
result = extend(even_to_alternating_map(), scale_max=8)
print(result.records()[0])

# %% [markdown]
# ## Marking midpoints
#
# Marking the middle cell of every zero run gives a window count near the
# zero point that grows with the scale.

# %%
o = midpoint_marker_map()
for n in (4, 8, 16):
    print(f"scale {n}: {approximate_image_set(o, parse_point('[0]^-inf [0]^inf'), n).count} windows")

# %% [markdown]
# ## Flipping parity after the last nonzero symbol
#
# These involutions are continuous almost everywhere.  At the boundary point
# with a single 1 the probe finds two nearby points whose images disagree at
# the origin at every radius.

# %%
for label, o, target in (
    ("one-sided", parity_involution(), "1 [0]^inf"),
    ("two-sided", parity_involution(two_sided=True), "[0]^-inf 1 [0]^inf @0"),
):
    x = parse_point(target)
    w = continuity_probe(o, x, 0, 8)
    print(f"{label}: discontinuous at {format_point(x)} for radii {w.radii}")
    print("  verdict:", extend(o, period_max=2, scale_max=4).verdict is Verdict.OBSTRUCTION)
