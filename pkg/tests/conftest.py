from __future__ import annotations

from pathlib import Path

import pytest

from gwat.catalog import Catalog
from gwat.wordnet import Lexicon, load_lexicon

DATA_DIR = Path(__file__).parent / "data"
MINI_DICT = DATA_DIR / "mini_dict"
GAPED_MANIFEST = DATA_DIR / "gaped_manifest.txt"


@pytest.fixture(scope="session")
def mini_dict_dir() -> Path:
    return MINI_DICT


@pytest.fixture(scope="session")
def mini_lexicon() -> Lexicon:
    return load_lexicon(MINI_DICT)


@pytest.fixture(scope="session")
def manifest_path() -> Path:
    return GAPED_MANIFEST


@pytest.fixture(scope="session")
def gaped_catalog() -> Catalog:
    return Catalog.from_manifest(GAPED_MANIFEST)


@pytest.fixture()
def header_only_dict(tmp_path: Path) -> Path:
    dict_dir = tmp_path / "dict"
    dict_dir.mkdir()
    for name in ("data.noun", "data.verb", "data.adj", "data.adv"):
        (dict_dir / name).write_text("  1 header only\n  2 no data lines\n", encoding="utf-8")
    return dict_dir
