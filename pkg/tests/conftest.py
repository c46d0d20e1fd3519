import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import helpers


@pytest.fixture(scope="session")
def contexts():
    """All shipped fixture contexts, validated once per test session."""
    return helpers.build_all()


@pytest.fixture(scope="session")
def gf4_frob(contexts):
    return contexts["gf4_frob"]


@pytest.fixture(scope="session")
def gf4_id(contexts):
    return contexts["gf4_id"]


@pytest.fixture(scope="session")
def gf4_inner(contexts):
    return contexts["gf4_inner"]


@pytest.fixture(scope="session")
def gf3(contexts):
    return contexts["gf3"]


@pytest.fixture(scope="session")
def zmod6(contexts):
    return contexts["zmod6"]


@pytest.fixture(scope="session")
def trunc_deriv(contexts):
    return contexts["trunc_deriv"]


@pytest.fixture(scope="session")
def trunc_block(contexts):
    return contexts["trunc_block"]


@pytest.fixture(scope="session")
def mat2_inner(contexts):
    return contexts["mat2_inner"]
