import pytest


@pytest.fixture(scope="session")
def golden():
    from pentile.goodset_enum import load_golden
    return load_golden()


@pytest.fixture(scope="session")
def enumeration(golden):
    """One full enumeration shared by every test that needs it."""
    from pentile.goodset_enum import enumerate_all
    return enumerate_all(golden)
