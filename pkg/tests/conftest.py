import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from utils.graph import load_graph

FIXTURES = Path(__file__).resolve().parent / 'fixtures'

hypothesis_settings.register_profile(
    'default', max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis_settings.register_profile(
    'acceptance', max_examples=10000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis_settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding='utf-8')


@pytest.fixture
def graph_fixture():
    """Load a graph document from tests/fixtures by file name."""
    def load(name: str):
        return load_graph(fixture_text(name))
    return load


@pytest.fixture
def c4(graph_fixture):
    return graph_fixture('c4.json')


@pytest.fixture
def c8(graph_fixture):
    return graph_fixture('c8.json')


@pytest.fixture
def fig1(graph_fixture):
    return graph_fixture('fig1.json')


@pytest.fixture
def poly7(graph_fixture):
    return graph_fixture('poly7.json')


@pytest.fixture
def triangle(graph_fixture):
    return graph_fixture('triangle.json')
