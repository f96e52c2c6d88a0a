import json

import pytest

from evidence_logic.config import CONFIG_ENV, Settings, load_settings
from evidence_logic.errors import ModelError


def test_defaults(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV, raising=False)
    assert load_settings() == Settings()


def test_override(tmp_path, monkeypatch):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"upset_cap": 20, "workers": 2}))
    monkeypatch.setenv(CONFIG_ENV, str(path))
    s = load_settings()
    assert (s.upset_cap, s.workers, s.max_worlds_cap) == (20, 2, 8)


@pytest.mark.parametrize("raw", ['{"colour": 1}', '{"workers": 0}', '{"workers": true}',
                                 '[1]', '{bad'])
def test_rejected(tmp_path, raw):
    path = tmp_path / "c.json"
    path.write_text(raw)
    with pytest.raises(ModelError):
        load_settings(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(ModelError, match="cannot read"):
        load_settings(str(tmp_path / "absent.json"))
