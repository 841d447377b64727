# %% [markdown]
# # Synchronizing periodic points and splicing
#
# A periodic point is synchronizing when a long enough central word of it
# lets any past be glued to any future.  This is what makes it possible to
# build aperiodic points that look like a periodic point for a long time.

# %%
import random

from symshift import (
    PointPresentation,
    check_theorem_hypotheses,
    contains_point,
    enumerate_periodic_orbits,
    periodic_point_is_synchronizing,
    sft_from_forbidden,
    shift_from_regex,
    splice,
)
from symshift.analysis import central_word
from symshift.core import Side
from symshift.presentations import random_point

rng = random.Random(2)
no_010 = sft_from_forbidden("01", ["010"], name="no_010")
even = shift_from_regex("01", "(1(00)*)*", name="even")

# %% [markdown]
# In a shift of finite type every periodic point synchronizes, with a
# central word a little longer than the forbidden words.

# %%
for s in enumerate_periodic_orbits(no_010, 3):
    ok, ell = periodic_point_is_synchronizing(no_010, s)
    print(f"{''.join(s.canonical):>4}: synchronizing={ok} with half-width {ell}")

# %% [markdown]
# Splicing: take two random points that agree with the periodic point on the
# central window, and join the past of one to the future of the other.

# %%
s = enumerate_periodic_orbits(no_010, 2)[-1]
ok, ell = periodic_point_is_synchronizing(no_010, s)
c = central_word(s, ell)
accepted = 0
for _ in range(200):
    x = random_point(no_010, rng, center=c)
    y = random_point(no_010, rng, center=c)
    accepted += contains_point(no_010, splice(x, s.point(), y, ell))
print(f"{accepted} of 200 splices stay in the shift")

# %% [markdown]
# The even shift is sofic but not of finite type.  The fixed point of zeros
# does not synchronize: a 1 on each side separated by an odd run of zeros is
# forbidden, however long the run.

# %%
report = check_theorem_hypotheses(even, Side.TWO, 8)
print(report.records()[0])
zero = enumerate_periodic_orbits(even, 1)[0].point()
for ell in range(4):
    x = PointPresentation.two_sided("0", "1", "0", ell + 1)
    y = PointPresentation.two_sided("0", "1", "0", -(ell + 1))
    z = splice(x, zero, y, ell)
    print(f"half-width {ell}: splice in even shift = {contains_point(even, z)}")
