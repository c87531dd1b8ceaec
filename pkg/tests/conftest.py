import random

import pytest

from recfree.arrangement import Arrangement
from recfree.exactfield import prime_field

ACCEPTANCE_LINES = []


def pytest_addoption(parser):
    parser.addoption("--g27", action="store", default=None,
                     help="arrangement file of the G27 reflection arrangement (not shipped)")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_arrangement(rng: random.Random, p: int, n: int) -> Arrangement:
    """Random rank-3 arrangement of ``n`` distinct planes over F_p."""
    F = prime_field(p)
    while True:
        normals = set()
        while len(normals) < n:
            v = [rng.randrange(p) for _ in range(3)]
            if any(v):
                a = Arrangement(F, [v])
                normals.add(a[0].normal)
        a = Arrangement(F, sorted(normals))
        if a.rank() == 3:
            return a


@pytest.fixture
def rng():
    return random.Random(20240611)
