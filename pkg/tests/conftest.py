from pathlib import Path

import pytest

from utils.algebra_file import parse_algebra_file
from utils.recollement import Recollement
from utils.taumod import enumerate_stt

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / f"{name}.alg")


def _build(name):
    spec = parse_algebra_file(fixture_path(name))
    return spec, spec.build()


@pytest.fixture(scope="session")
def a3():
    return _build("a3")[1]


@pytest.fixture(scope="session")
def p3():
    return _build("preproj_a3")[1]


@pytest.fixture(scope="session")
def a2():
    return _build("a2")[1]


@pytest.fixture(scope="session")
def pp2():
    return _build("preproj_a2")[1]


@pytest.fixture(scope="session")
def kronecker():
    return _build("kronecker")[1]


@pytest.fixture(scope="session")
def a3_rec(a3):
    return Recollement.from_idempotent(a3, ["1", "2"])


@pytest.fixture(scope="session")
def p3_rec(p3):
    return Recollement.from_idempotent(p3, ["1", "3"])


@pytest.fixture(scope="session")
def a3_graph(a3):
    return enumerate_stt(a3)


@pytest.fixture(scope="session")
def p3_graph(p3):
    return enumerate_stt(p3)
