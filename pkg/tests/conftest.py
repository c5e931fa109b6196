import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

sys.path.insert(0, str(Path(__file__).resolve().parent))

from credence.files import load_session  # noqa: E402


@pytest.fixture(scope="session")
def linda():
    return load_session(FIXTURES / "linda" / "session.json")


@pytest.fixture(scope="session")
def voting():
    return load_session(FIXTURES / "voting" / "session.json")


@pytest.fixture(scope="session")
def certainty():
    return load_session(FIXTURES / "certainty" / "session.json")


@pytest.fixture(scope="session")
def transport_maps():
    return load_session(FIXTURES / "strategies" / "session-maps.json")


@pytest.fixture(scope="session")
def hedging():
    return load_session(FIXTURES / "strategies" / "session-rationalize.json")


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
