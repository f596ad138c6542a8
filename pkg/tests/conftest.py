import pytest

import cacgames as cg


@pytest.fixture(scope="session")
def games():
    """All built-in example games, keyed by fixture name."""
    return {name: cg.fixture(name) for name in cg.fixture_names()}
