import cmath
import math
import re

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from autospec.mobius import make_automorphism

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

angles = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)
radii = st.floats(min_value=0.0, max_value=0.9, allow_nan=False)


@st.composite
def automorphisms(draw, max_radius=0.9):
    theta = draw(angles)
    rho = draw(st.floats(min_value=0.0, max_value=max_radius))
    arg = draw(angles)
    return make_automorphism(cmath.exp(1j * theta), rho * cmath.exp(1j * arg))


@st.composite
def disk_points(draw, max_radius=0.9):
    return draw(st.floats(min_value=0.0, max_value=max_radius)) * cmath.exp(1j * draw(angles))


def random_automorphism(rng: np.random.Generator, max_radius: float = 0.9):
    a = rng.uniform(0, max_radius) * cmath.exp(2j * math.pi * rng.uniform())
    return make_automorphism(cmath.exp(2j * math.pi * rng.uniform()), a)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


_CRITERION = re.compile(r"test_criterion_(\w+?)_")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid or getattr(rep, "when", "call") != "call":
                continue
            name = nodeid.split("::")[-1]
            m = _CRITERION.match(name)
            if m:
                lines.append((m.group(1), "PASS" if outcome == "passed" else "FAIL", name))
    if lines:
        terminalreporter.section("acceptance criteria")
        for crit, status, name in sorted(lines, key=lambda x: (int(re.match(r"\d+", x[0]).group()), x[0])):
            terminalreporter.write_line(f"criterion {crit:>3}: {status}  ({name})")
