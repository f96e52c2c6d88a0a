"""Caps and defaults, optionally overridden by a JSON file.

The file is named by the ``EVIDENCE_LOGIC_CONFIG`` environment variable (or
passed explicitly). Unknown keys are rejected so typos do not go unnoticed.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

from .errors import ModelError

__all__ = ["Settings", "load_settings", "CONFIG_ENV"]

CONFIG_ENV = "EVIDENCE_LOGIC_CONFIG"


@dataclass(frozen=True)
class Settings:
    default_max_worlds: int = 5
    max_worlds_cap: int = 8
    max_generators: int = 12
    upset_cap: int = 15
    workers: int = 1


def load_settings(path=None) -> Settings:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Settings()
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ModelError("cannot read config %s: %s" % (path, exc)) from None
    if not isinstance(raw, dict):
        raise ModelError("config %s must hold a JSON object" % path)
    known = {f.name for f in fields(Settings)}
    for key, value in raw.items():
        if key not in known:
            raise ModelError("unknown config key %r" % key, "/%s" % key)
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ModelError("config key %r must be a positive integer" % key, "/%s" % key)
    return replace(Settings(), **raw)
