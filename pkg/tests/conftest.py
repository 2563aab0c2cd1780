import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from iotsla import load_builtin_catalog, parse

from support import FIXTURES, fixture_text


@pytest.fixture(scope="session")
def catalog():
    return load_builtin_catalog()


@pytest.fixture(scope="session")
def rhms_text():
    return fixture_text("rhms.sla")


@pytest.fixture()
def rhms_doc(rhms_text):
    return parse(rhms_text)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
