import json
import logging

import pytest

from charvar_epoly.config import RUNTIME_CFG, effective_level, level_names, load_runtime_cfg
from charvar_epoly.logs import LOGGER_NAME, setup_logging


def test_packaged_levels():
    assert level_names(RUNTIME_CFG) == ["full", "quick", "smoke"]
    smoke = effective_level("smoke", RUNTIME_CFG)
    assert smoke["level"] == "smoke"
    assert smoke["symbolic_max_rank"] == 4
    assert smoke["max_rank"] == 64
    assert len(smoke["checks"]) == 1


def test_extends_concatenates_parent_checks_first():
    quick = effective_level("quick", RUNTIME_CFG)
    full = effective_level("full", RUNTIME_CFG)
    assert full["checks"][: len(quick["checks"])] == quick["checks"]
    assert len(full["checks"]) == len(quick["checks"]) + 4
    assert full["symbolic_max_rank"] == 20
    assert "extends" not in full


def test_unknown_and_cyclic_levels():
    with pytest.raises(KeyError):
        effective_level("nope", RUNTIME_CFG)
    cfg = {"defaults": {}, "levels": {"a": {"extends": "b"}, "b": {"extends": "a"}}}
    with pytest.raises(KeyError):
        effective_level("a", cfg)


def test_unreadable_config_falls_back(tmp_path):
    bad = tmp_path / "runtime_config.json"
    bad.write_text("{not json", encoding="utf-8")
    cfg = load_runtime_cfg(bad)
    assert cfg["defaults"]["max_rank"] == 64
    assert cfg["levels"] == {}

    missing = load_runtime_cfg(tmp_path / "absent.json")
    assert missing == cfg


def test_partial_config_overrides_defaults(tmp_path):
    path = tmp_path / "runtime_config.json"
    path.write_text(json.dumps({"defaults": {"max_rank": 8}, "levels": {"tiny": {"checks": []}}}), encoding="utf-8")
    cfg = load_runtime_cfg(path)
    assert cfg["defaults"]["max_rank"] == 8
    assert cfg["defaults"]["max_degree"] == 10_000
    assert level_names(cfg) == ["tiny"]
    assert effective_level("tiny", cfg)["checks"] == []


@pytest.mark.parametrize(
    "verbosity, level",
    [(-1, logging.ERROR), (0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG), (5, logging.DEBUG)],
)
def test_setup_logging_levels(verbosity, level):
    logger = setup_logging(verbosity)
    assert logger.name == LOGGER_NAME
    assert logger.level == level


def test_setup_logging_is_idempotent(capsys):
    setup_logging(1)
    logger = setup_logging(1)
    assert len(logger.handlers) == 1
    logging.getLogger(LOGGER_NAME + ".oracle").info("hello")
    assert capsys.readouterr().err == "[INFO] hello\n"
