import json
from pathlib import Path

import pytest

from scenarios.community import community_model, table_one
from scenarios.contrast import semantic_not_structural, structural_not_semantic
from scenarios.delegation import task_delegation
from scenarios.trains import two_trains, two_trains_strict

MODELS_DIR = Path(__file__).resolve().parent.parent / "models"


@pytest.fixture
def trains():
    return two_trains(3, 2)


@pytest.fixture
def strict_trains():
    return two_trains_strict(2, 2)


@pytest.fixture(scope="session")
def delegation():
    return task_delegation()


@pytest.fixture(scope="session")
def community():
    return community_model(table_one())


@pytest.fixture
def contrast_models():
    return semantic_not_structural(), structural_not_semantic()


@pytest.fixture
def models_dir():
    return MODELS_DIR


@pytest.fixture
def write_json(tmp_path):
    """Write ``data`` to a JSON file under tmp_path and return its path."""

    def write(name, data):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return path

    return write


