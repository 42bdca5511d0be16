import math

import numpy as np
import pytest

from alphamod.experiments import random_atoms, render_atoms
from alphamod.grid import Grid


@pytest.fixture(scope="session")
def grid2():
    """n = 2, integer frequencies are nodes, window half-side 8."""
    return Grid(2, 64, 8 * math.pi)


@pytest.fixture(scope="session")
def grid2_wide():
    """n = 2, window half-side 16."""
    return Grid(2, 128, 8 * math.pi)


@pytest.fixture(scope="session")
def grid1():
    return Grid(1, 64, 8 * math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def band_limited(grid, seed, radius=3, count=4):
    """Random band-limited function with spectrum inside ``|xi|_inf < radius + 1``."""
    r = np.random.default_rng(seed)
    return render_atoms(random_atoms(r, grid.dim, radius, "uniform", count), grid)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for rep in terminalreporter.stats.get("passed", []) + terminalreporter.stats.get("failed", []):
        if rep.when != "call":
            continue
        lines += [v for k, v in rep.user_properties if k == "acceptance_line"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
