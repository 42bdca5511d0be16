# %% [markdown]
# # Traces: bounded ratios and growing ones
#
# The trace restricts a function on the plane to the line `x_2 = 0`. This
# script measures `||trace f|| / ||f||` over random families, then builds
# the two families whose ratio grows without bound.

# %%
import math

import numpy as np

from alphamod import Grid, extend
from alphamod.experiments import (
    ExponentInputs,
    harmonic_partial_sum,
    log_partial_sum,
    random_atoms,
    render_atoms,
    sharpness_sweep,
    sigma_exponent,
    stability_check,
    theorem1_sweep,
    theorem2_sweep,
)
from alphamod.trace import retraction_check

grid = Grid(2, 128, 16 * math.pi)

# %% [markdown]
# ## Extension is a right inverse of the trace

# %%
line = Grid(1, 64, 8 * math.pi)
g = render_atoms(random_atoms(np.random.default_rng(3), 1, radius=3), line)
h = extend(g)
print("extension lives on", h.grid.shape, " spectrum confined to |xi_2| < 2")
print("max |trace(extend g) - g| =", retraction_check(g))

# %% [markdown]
# ## Bounded ratios
#
# For the anisotropic modulation source space the ratio stays bounded.
# Doubling the resolution or the box barely moves the maximum.

# %%
for p, q, s in [(2, 2, 0), (2, 1, 1), (1, 2, 0.5)]:
    res = theorem1_sweep(p, q, s, grid, trials=20, seed=1, radius=2)
    print(f"(p,q,s)=({p},{q},{s})  max ratio={res.max_ratio:.4f}")

stab = stability_check(lambda gg: theorem1_sweep(2, 2, 0, gg, trials=20, seed=1, radius=2), grid)
print("relative change under refine / widen:", stab["refine_change"], stab["widen_change"])

# %% [markdown]
# With alpha = 0.5 the target carries a larger smoothness penalty; the
# ratios remain bounded there too.

# %%
res = theorem2_sweep(2, 2, 0.25, 0.5, grid, trials=20, seed=1, radius=2)
print("alpha=0.5 max ratio:", res.max_ratio)

# %% [markdown]
# ## Sharpness
#
# Stacking `2^N` modulated copies of a bump with harmonic weights makes the
# ratio grow in step with the harmonic partial sum, i.e. linearly in `N`.

# %%
sharp = Grid(2, 512, 8 * math.pi)
res = sharpness_sweep("harmonic", sharp, range(2, 6))
for N, _, _, ratio in res.rows:
    H = harmonic_partial_sum(N)
    print(f"N={N}  ratio={ratio:.4f}  partial sum={H:.4f}  ratio/sum={ratio / H:.4f}")
print("fit:", res.fit)

# %% [markdown]
# The log-weighted family grows too, but much more slowly.

# %%
res = sharpness_sweep("log", sharp, range(2, 6))
for N, _, _, ratio in res.rows:
    S = log_partial_sum(N)
    print(f"N={N}  ratio={ratio:.4f}  partial sum={S:.4f}  ratio/sum={ratio / S:.4f}")

# %% [markdown]
# ## Exponents
#
# The smoothness loss for the alpha-modulation trace depends on the sign
# of a discriminant; three sample inputs, one per branch.

# %%
for s in (-1.0, -0.25, 0.0):
    x = ExponentInputs(2, 2, 2, s, 0.5, epsilon=1e-3)
    print(f"s={s:5.2f}  discriminant={x.discriminant:6.3f}  sigma={sigma_exponent(x):.4f}")
