import pytest

from suspan.rules import builtin_compiled, builtin_ruleset


@pytest.fixture(scope="session")
def crs():
    return builtin_compiled()


@pytest.fixture(scope="session")
def builtin():
    return builtin_ruleset()
