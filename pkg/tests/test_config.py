import json

import pytest
from pydantic import ValidationError

from sumfree_cli import config
from sumfree_cli.config import SumfreeConfig, get_config


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    path = tmp_path / "config.json"
    monkeypatch.setattr(config, "CONFIG_DIR", tmp_path)
    monkeypatch.setattr(config, "CONFIG_FILE", path)
    for key in config.SETTING_KEYS:
        monkeypatch.delenv(f"SUMFREE_{key.upper()}", raising=False)
    return path


def test_defaults(config_file):
    cfg = get_config()
    assert cfg.jobs == 1
    assert cfg.flat_cap == 10**8
    assert cfg.codeword_dim_cap == 24
    assert cfg.seed == 2024


def test_precedence(config_file, monkeypatch):
    config_file.write_text(json.dumps({"jobs": 2, "seed": 5, "pair_sample": 10}))
    monkeypatch.setenv("SUMFREE_JOBS", "3")
    monkeypatch.setenv("SUMFREE_SEED", "6")
    cfg = get_config(jobs=4, seed=None)
    assert cfg.jobs == 4
    assert cfg.seed == 6
    assert cfg.pair_sample == 10


def test_save_roundtrip(config_file):
    SumfreeConfig.load(jobs=8, flat_cap=1000).save()
    assert json.loads(config_file.read_text())["jobs"] == 8
    assert get_config().flat_cap == 1000


def test_invalid_values_rejected(config_file):
    with pytest.raises(ValidationError):
        get_config(jobs=0)
