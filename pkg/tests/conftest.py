from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from bentforge.constructions import GammaParams
from bentforge.galois import GF
from bentforge.spaces import VSpace
from bentforge.walsh import PFunction

settings.register_profile("bentforge", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("bentforge")


def example1_function() -> PFunction:
    K = GF(3, 4)
    xs = np.arange(K.q)
    return PFunction(VSpace([K]), K.trace(1, K.mul(xs, xs)))


@pytest.fixture(scope="session")
def ex1():
    return example1_function()


@pytest.fixture(scope="session")
def eq24_params():
    return GammaParams(3, 2, 1, 5)


@pytest.fixture(scope="session")
def bool_params():
    return GammaParams(2, 3, 1, 3, d=5)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
