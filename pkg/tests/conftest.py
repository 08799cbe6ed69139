import pytest

from facetrees.checks import CensusCache


@pytest.fixture(scope="session")
def censuses():
    """Oracle censuses shared across the whole run."""
    return CensusCache()
