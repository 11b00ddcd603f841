import json

import pytest

from dnvflops.config import ConfigurationManager, RunConfig, load_config_from_file
from dnvflops.core.explorer import ExplorerConfig
from dnvflops.utils.validation import ValidationError


def test_defaults():
    config = ConfigurationManager().load_from_dict({})
    assert config == RunConfig()
    assert config.enumeration.method == "criterion"
    assert config.enumeration.projective_only
    assert config.certificates.base_degree == 16


def test_load_from_dict():
    config = ConfigurationManager().load_from_dict({
        "enumeration": {"method": "both", "max_depth": 3},
        "certificates": {"base_degree": 64},
        "log_level": "info",
    })
    assert config.enumeration.method == "both"
    assert config.enumeration.max_depth == 3
    assert config.certificates.base_degree == 64

    explorer_config = ExplorerConfig.from_run_config(config)
    assert explorer_config.method == "both"
    assert explorer_config.base_degree == 64
    assert explorer_config.log_level == "info"


@pytest.mark.parametrize("config_dict", [
    {"enumeration": {"method": "guess"}},
    {"enumeration": {"max_depth": -1}},
    {"enumeration": {"projective_only": "yes"}},
    {"enumeration": {"colour": "red"}},
    {"certificates": {"base_degree": 0}},
    {"log_level": "loud"},
    {"plotting": {}},
])
def test_invalid_configurations(config_dict):
    with pytest.raises(ValidationError):
        ConfigurationManager().load_from_dict(config_dict)


def test_file_round_trip(tmp_path):
    manager = ConfigurationManager()
    config = manager.load_from_dict({"enumeration": {"method": "lp"}})
    path = tmp_path / "nested" / "run.json"
    manager.save_to_file(config, str(path))

    assert load_config_from_file(str(path)) == config
    assert manager.validate_config_file(str(path)) == (True, [])


def test_bad_files(tmp_path):
    manager = ConfigurationManager()
    with pytest.raises(FileNotFoundError):
        manager.load_from_file(str(tmp_path / "missing.json"))

    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    with pytest.raises(ValidationError):
        manager.load_from_file(str(broken))

    listed = tmp_path / "list.json"
    listed.write_text(json.dumps([1, 2]), encoding="utf-8")
    is_valid, errors = manager.validate_config_file(str(listed))
    assert not is_valid
    assert errors
