# %% [markdown]
# # Block norms of sampled functions
#
# Every norm in the package is a weighted sequence norm of the frequency
# blocks of a function. This script compares the families on one random
# band-limited function and on a few pure modes.

# %%
import math

import numpy as np

from alphamod import Grid, SampledFunction, SpaceParams, norm
from alphamod.experiments import random_atoms, render_atoms

grid = Grid(2, 128, 16 * math.pi)
f = render_atoms(random_atoms(np.random.default_rng(7), 2, radius=4), grid)
print("sup |f| =", np.abs(f.values).max())

# %% [markdown]
# A pure mode `exp(i k.x)` has a single block in the uniform family, so
# its modulation norm is `<k>^s` times its L^p norm on the box.

# %%
x1, x2 = grid.x_mesh()
for k in [(0, 0), (1, 0), (3, 4)]:
    mode = SampledFunction(grid, np.exp(1j * (k[0] * x1 + k[1] * x2)))
    val = norm(mode, SpaceParams("modulation", math.inf, 2, 1.0)).total
    print(f"k={k}  norm={val:.4f}  <k>={math.sqrt(1 + k[0] ** 2 + k[1] ** 2):.4f}")

# %% [markdown]
# The same function in several spaces. Raising `s` weights the high
# frequency blocks more; the Besov kinds group blocks in dyadic shells.

# %%
spaces = [
    SpaceParams("modulation", 2, 2, 0.0),
    SpaceParams("modulation", 2, 2, 1.0),
    SpaceParams("modulation", 1, 1, 0.0),
    SpaceParams("alpha_grid", 2, 2, 0.0, alpha=0.5),
    SpaceParams("alpha_shell", 2, 2, 0.0, alpha=0.5),
    SpaceParams("besov", 2, 2, 0.0),
    SpaceParams("besov", 2, 2, 1.0),
    SpaceParams("besov_lizorkin", 2, 2, 0.0),
    SpaceParams("besov_two_index", 2, 2, 0.5, s2=0.0),
]
for sp in spaces:
    rep = norm(f, sp)
    extras = {k: v for k, v in sp.as_dict().items() if k not in ("kind", "p", "q", "s")}
    print(f"{sp.kind:18s} p={sp.p:<4} q={sp.q:<4} s={sp.s:<4} {extras!s:14s} "
          f"blocks={len(rep.per_label):4d}  norm={rep.total:.5f}")

# %% [markdown]
# At p = q = 2 with s = 0 all of these sit within constant factors of the
# L^2 norm, which is what makes the grid and shell variants interchangeable.

# %%
l2 = math.sqrt(np.sum(np.abs(f.values) ** 2) * grid.cell_volume)
for sp in spaces[:1] + spaces[3:6]:
    print(f"{sp.kind:14s} norm / L2 = {norm(f, sp).total / l2:.4f}")
