import pytest
from hypothesis import settings

from pcfran.topology import NetworkParams, build_topology

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def example_params():
    """The canonical 5x10 scenario at t=1 (M = 5/2)."""
    from fractions import Fraction

    return NetworkParams(H=5, r=2, N=10, rho=1, M=Fraction(5, 2), file_size_bytes=4096)


@pytest.fixture(scope="session")
def example_topology(example_params):
    return build_topology(example_params)
