"""Service configuration resolved from flags, environment and an INI file.

Precedence is flags > environment > file. Environment variables use the
``GWAT_`` prefix; the file uses a single ``[gwat]`` section with the same
keys as the long flags.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

from .errors import ConfigError

DEFAULT_LISTEN = "127.0.0.1:8471"
DEFAULT_SEARCH_LIMIT = 500

ENV_VARS = {
    "dict": "GWAT_DICT",
    "gaped": "GWAT_GAPED",
    "manifest": "GWAT_MANIFEST",
    "db": "GWAT_DB",
    "listen": "GWAT_LISTEN",
    "search_limit": "GWAT_SEARCH_LIMIT",
    "ui": "GWAT_UI",
}


@dataclass
class ServiceConfig:
    dict_dir: Optional[Path] = None
    gaped_root: Optional[Path] = None
    manifest: Optional[Path] = None
    store_path: Optional[Path] = None
    listen: str = DEFAULT_LISTEN
    search_limit: int = DEFAULT_SEARCH_LIMIT
    ui_dir: Optional[Path] = None

    def require_dict(self) -> Path:
        if self.dict_dir is None:
            raise ConfigError("no dictionary directory configured (--dict / GWAT_DICT)")
        return self.dict_dir

    def require_store(self) -> Path:
        if self.store_path is None:
            raise ConfigError("no store path configured (--db / GWAT_DB)")
        return self.store_path

    def require_picture_source(self) -> None:
        if (self.gaped_root is None) == (self.manifest is None):
            raise ConfigError(
                "exactly one picture source must be configured:"
                " --gaped / GWAT_GAPED or --manifest / GWAT_MANIFEST"
            )

    def validate(self) -> None:
        if self.search_limit < 1:
            raise ConfigError(f"search limit must be >= 1, got {self.search_limit}")

    def listen_host_port(self) -> tuple[str, int]:
        host, sep, port = self.listen.rpartition(":")
        if not sep or not port.isdigit():
            raise ConfigError(f"listen address must be host:port, got {self.listen!r}")
        return host or "127.0.0.1", int(port)


def _read_config_file(path: Path) -> dict[str, str]:
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    if not parser.has_section("gwat"):
        return {}
    return dict(parser.items("gwat"))


def resolve_config(
    flags: Mapping[str, "str | None"],
    env: Optional[Mapping[str, str]] = None,
    config_file: "Path | str | None" = None,
) -> ServiceConfig:
    """Merge the three sources into a ServiceConfig (flags > env > file)."""
    env = os.environ if env is None else env
    file_values = _read_config_file(Path(config_file)) if config_file else {}

    def pick(key: str) -> Optional[str]:
        flag = flags.get(key)
        if flag is not None:
            return flag
        env_value = env.get(ENV_VARS[key])
        if env_value is not None and env_value != "":
            return env_value
        return file_values.get(key)

    def pick_path(key: str) -> Optional[Path]:
        value = pick(key)
        return Path(value) if value is not None else None

    search_limit_text = pick("search_limit")
    if search_limit_text is not None:
        try:
            search_limit = int(search_limit_text)
        except ValueError:
            raise ConfigError(f"search limit must be an integer, got {search_limit_text!r}")
    else:
        search_limit = DEFAULT_SEARCH_LIMIT

    config = ServiceConfig(
        dict_dir=pick_path("dict"),
        gaped_root=pick_path("gaped"),
        manifest=pick_path("manifest"),
        store_path=pick_path("db"),
        listen=pick("listen") or DEFAULT_LISTEN,
        search_limit=search_limit,
        ui_dir=pick_path("ui"),
    )
    config.validate()
    return config
