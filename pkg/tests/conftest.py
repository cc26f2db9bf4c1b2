import math

import numpy as np
import pytest

from ctrkit import NYLON12_MJF, Tube

WALL = 0.6


def annulus_area_moment(od, wall, n_r=4000, n_theta=64):
    """Midpoint-rule integral of y^2 dA over the annulus, in polar coordinates."""
    ri = max(od / 2 - wall, 0.0)
    ro = od / 2
    dr = (ro - ri) / n_r
    r = ri + (np.arange(n_r) + 0.5) * dr
    dt = 2 * math.pi / n_theta
    t = (np.arange(n_theta) + 0.5) * dt
    y2 = (r[:, None] * np.sin(t)[None, :]) ** 2
    return float(np.sum(y2 * r[:, None]) * dr * dt)


def table_tube(od, radius, **kw):
    return Tube.from_radius(od, WALL, radius, curved_len=50.0, material=kw.pop("material", NYLON12_MJF), **kw)


@pytest.fixture
def trial1():
    return table_tube(3.8, 69.0), table_tube(2.2, 21.9)


@pytest.fixture
def fatigue_tube():
    return Tube.from_radius(3.2, 0.6, 28.26, curved_len=50.0)


ACCEPTANCE_RESULTS = []


def record(number, text, ok):
    ACCEPTANCE_RESULTS.append((number, text, bool(ok)))
    assert ok, f"criterion {number} failed: {text}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {text}")
