import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from gencluster.pattern import MutationKit, with_principal_coefficients, with_trivial_coefficients

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

RANK2 = [[0, -1], [1, 0]]


def worked_example(mode="principal"):
    """B0 = [[0,-1],[1,0]], R = diag(2,1), S = diag(1,2), one interior coefficient z."""
    kit = MutationKit.formal([2, 1], {(0, 1): "z"})
    if mode == "principal":
        return with_principal_coefficients(RANK2, kit, S=[1, 2])
    return with_trivial_coefficients(RANK2, kit, S=[1, 2])


@pytest.fixture
def example():
    return worked_example()


@pytest.fixture
def example_trivial():
    return worked_example("trivial")


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


# -- acceptance reporting -------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
