# %% [markdown]
# # Coverings and partitions of unity
#
# The frequency side of the library: the periodic grid, the uniform and
# alpha coverings, and the smooth windows built on them. Run it as a script
# (`python3 notebooks/01_coverings_and_partitions.py`) or cell by cell in any
# editor that understands `# %%` markers.

# %%
import math

import numpy as np

from alphamod import Grid, build_dyadic_family, build_grid_bapu, build_shell_bapu
from alphamod.bapu import partition_deviation, support_violations
from alphamod.covering import (
    grid_alpha_covering,
    lizorkin_covering,
    max_overlap,
    r_threshold,
    scan_points,
    volume_ratio_C,
)

grid = Grid(2, 128, 8 * math.pi)
print("x spacing:", grid.spacing, "  frequency half-window:", grid.window_half_side)

# %% [markdown]
# With L a multiple of 2 pi the integer frequencies are grid nodes, so the
# uniform covering (alpha = 0) sits exactly on the mesh.

# %%
print("first frequency nodes:", grid.xi_axis()[:6])

# %% [markdown]
# Larger alpha stretches the cubes as they move away from the origin. The
# overlap stays bounded and the cube volumes track `<xi>^(alpha n)`.

# %%
W = 8.0
for alpha in (0.0, 0.25, 0.5, 0.75):
    r = r_threshold(alpha, "grid")
    cov = grid_alpha_covering(alpha, r, W, 2)
    pts = scan_points(cov, Grid(2, 128, math.pi * 128 / W))
    print(f"alpha={alpha:4.2f}  r={r:4.2f}  cubes={len(cov):4d}  "
          f"overlap={max_overlap(cov, pts)}  volume C={volume_ratio_C(cov):.2f}")

# %% [markdown]
# Windows on those cubes, divided by their sum, form a partition of unity.

# %%
families = {
    "grid alpha=0": build_grid_bapu(0.0, 0.5, grid),
    "grid alpha=0.5": build_grid_bapu(0.5, 1.0, grid),
    "shell alpha=0.5": build_shell_bapu(0.5, r_threshold(0.5, "shell"), grid),
    "dyadic": build_dyadic_family(grid),
}
for name, fam in families.items():
    print(f"{name:16s} windows={len(fam):4d}  "
          f"max |sum - 1| = {partition_deviation(fam):.1e}  "
          f"support violations = {support_violations(fam)}")

# %% [markdown]
# One window of the alpha = 0.5 family, sliced along the first axis.

# %%
fam = families["grid alpha=0.5"]
lab = next(l for l in fam.labels if l.k == (3, 0))
row = fam.dense(lab)[:, 0]
xi = grid.xi_axis()
for x, v in zip(xi[::2], row[::2]):
    if v > 1e-3:
        print(f"  xi={x:6.2f}  psi={v:.3f}  " + "#" * int(40 * v))

# %% [markdown]
# The Lizorkin decomposition cuts each dyadic shell into 4^n - 2^n boxes;
# the first 2^n of them hug the coordinate axes.

# %%
liz = lizorkin_covering(4, 2)
print("boxes in shell 2:", sum(1 for lab in liz.labels if lab.k == 2))
