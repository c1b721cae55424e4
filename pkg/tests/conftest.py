import os
import sys

import numpy as np
import pytest
from hypothesis import settings

from polyadic.groups import Automorphism, cyclic_group, direct_product
from polyadic.library import symmetric_group
from polyadic.polyadic import derive, derive_b, derive_theta

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")


@pytest.fixture
def z4_alt():
    """(Z4, x - y + z)."""
    return derive_theta(cyclic_group(4), [0, 3, 2, 1], 0, 3, name="Z4 x-y+z")


@pytest.fixture
def der3_z2():
    return derive(cyclic_group(2), 3, name="der(Z2)")


@pytest.fixture
def der3_z2_b1():
    return derive_b(cyclic_group(2), 1, 3, name="x+y+z+1")


@pytest.fixture
def der3_s3():
    return derive(symmetric_group(3), 3, name="der(S3)")


@pytest.fixture
def z8_alt():
    return derive_theta(cyclic_group(8), (-np.arange(8)) % 8, 0, 3, name="Z8 x-y+z")


@pytest.fixture
def v4_swap():
    Z2 = cyclic_group(2)
    V4 = direct_product([Z2, Z2])
    return derive_theta(V4, Automorphism.of(V4, [0, 2, 1, 3]), 0, 3, name="V4 swap")


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    def record(number, title, ok, seconds, limit, detail=""):
        status = "PASS" if ok and seconds < limit else "FAIL"
        line = f"[{status}] criterion {number:>2}: {title} ({seconds:.2f}s, limit {limit}s){' - ' + detail if detail else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return status == "PASS"
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
