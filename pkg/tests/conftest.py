import pathlib

import pytest

from atlstit import load_cgs

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def toy1():
    return load_cgs((FIXTURES / "TOY1.json").read_text())


@pytest.fixture
def toy2():
    return load_cgs((FIXTURES / "TOY2.json").read_text())


@pytest.fixture
def toy1_path():
    return str(FIXTURES / "TOY1.json")


@pytest.fixture
def toy2_path():
    return str(FIXTURES / "TOY2.json")


@pytest.fixture
def sample_proof_path():
    return str(FIXTURES / "sample_proof.json")
