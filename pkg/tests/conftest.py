import pytest

from proofinfo import builtin_example, builtin_world, proof_measure


@pytest.fixture(scope="session")
def ks():
    return builtin_example()


@pytest.fixture(scope="session")
def measure(ks):
    return proof_measure(ks)


@pytest.fixture(scope="session")
def world():
    return builtin_world()
