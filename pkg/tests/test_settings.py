import logging

import pytest

from core.errors import ConfigError
from decomposition.graph import CANDIDATE_CAP
from tools.setup import LOG_FORMAT, Settings, load_settings, setup_logging


def test_defaults():
    assert load_settings({}) == Settings()
    assert Settings().candidate_cap == CANDIDATE_CAP


def test_environment_overrides():
    settings = load_settings(
        {
            "SOMAS_CANDIDATE_CAP": "500",
            "SOMAS_LOG_LEVEL": "debug",
            "SOMAS_LOG_FILE": "somas.log",
            "SOMAS_FULL_CONTRIBUTION_LIMIT": "8",
            "SOMAS_BRUTE_FORCE_LIMIT": " ",
        }
    )
    assert settings == Settings(candidate_cap=500, log_level="DEBUG", log_file="somas.log", full_contribution_limit=8)


@pytest.mark.parametrize(
    "environ",
    [
        {"SOMAS_CANDIDATE_CAP": "lots"},
        {"SOMAS_CANDIDATE_CAP": "0"},
        {"SOMAS_BRUTE_FORCE_LIMIT": "-3"},
        {"SOMAS_LOG_LEVEL": "LOUD"},
    ],
)
def test_bad_values(environ):
    with pytest.raises(ConfigError):
        load_settings(environ)


def test_setup_logging(tmp_path):
    log_file = tmp_path / "somas.log"
    setup_logging(Settings(log_level="INFO", log_file=str(log_file)))
    try:
        root = logging.getLogger()
        assert root.level == logging.INFO
        assert len(root.handlers) == 2
        assert all(handler.formatter._fmt == LOG_FORMAT for handler in root.handlers)
        logging.getLogger("somas.test").info("written")
        for handler in root.handlers:
            handler.flush()
        assert log_file.read_text().rstrip().endswith("INFO - written")
    finally:
        for handler in logging.getLogger().handlers:
            handler.close()
        logging.getLogger().handlers.clear()
