"""Alphabetical registry of picture names with exact lookup and circular navigation.

A catalog is built either by scanning the six category folders of a picture
root or from a plain-text manifest of filenames (for running without the
licensed picture files). Entries are sorted byte-wise by filename and the
catalog is immutable afterwards.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional

from .errors import (
    DuplicateFilename,
    EmptyCatalog,
    MissingRoot,
    PictureNotFound,
    StaleRef,
    UnknownCategoryPrefix,
)

logger = logging.getLogger(__name__)


class Category(Enum):
    """The six picture categories; values are the folder / filename prefixes."""

    ANIMAL_MISTREATMENT = "A"
    HUMAN_CONCERNS = "H"
    NEUTRAL = "N"
    POSITIVE = "P"
    SNAKES = "Sn"
    SPIDERS = "Sp"

    @property
    def code(self) -> str:
        return self.value


# Two-letter prefixes must win over single letters ("Sn001" is SNAKES, not an
# unknown "S" category).
_PREFIXES = sorted(Category, key=lambda c: len(c.code), reverse=True)


def category_for(filename: str) -> Optional[Category]:
    """Longest matching category prefix of a filename, or None."""
    for category in _PREFIXES:
        if filename.startswith(category.code):
            return category
    return None


@dataclass(frozen=True)
class PictureRef:
    filename: str
    category: Category
    ordinal: int


class Catalog:
    """Sorted, duplicate-free picture registry. Read-only once built."""

    def __init__(self, filenames: Iterable[str], paths: "dict[str, Path] | None" = None):
        seen: dict[str, Category] = {}
        for name in filenames:
            category = category_for(name)
            if category is None:
                raise UnknownCategoryPrefix(name)
            if name in seen:
                raise DuplicateFilename(name)
            seen[name] = category
        ordered = sorted(seen, key=lambda name: name.encode("utf-8"))
        self._entries = tuple(
            PictureRef(filename=name, category=seen[name], ordinal=i)
            for i, name in enumerate(ordered)
        )
        self._by_name = {entry.filename: entry for entry in self._entries}
        self._paths = dict(paths) if paths else None

    @classmethod
    def from_directory(cls, root: "Path | str") -> "Catalog":
        """Scan the six category subfolders under ``root``.

        Files whose name matches no category prefix are skipped with a
        warning; the same filename in two folders is a hard error.
        """
        root = Path(root)
        if not root.is_dir():
            raise MissingRoot(str(root))
        names: list[str] = []
        paths: dict[str, Path] = {}
        for category in Category:
            folder = root / category.code
            if not folder.is_dir():
                continue
            for path in sorted(folder.iterdir()):
                if not path.is_file():
                    continue
                name = path.name
                if category_for(name) is None:
                    logger.warning("skipping %s: no category prefix", path)
                    continue
                if name in paths:
                    raise DuplicateFilename(name)
                names.append(name)
                paths[name] = path
        return cls(names, paths=paths)

    @classmethod
    def from_manifest(cls, source: "IO[str] | Path | str") -> "Catalog":
        """Build from newline-separated filenames; blank and '#' lines ignored."""
        if isinstance(source, (str, Path)):
            with open(source, encoding="utf-8") as handle:
                lines = handle.readlines()
        else:
            lines = source.readlines()
        names = []
        for raw in lines:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            names.append(line)
        return cls(names)

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[PictureRef]:
        return iter(self._entries)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    @property
    def has_files(self) -> bool:
        """True when built from a picture directory (image bytes available)."""
        return self._paths is not None

    def image_path(self, name: str) -> Optional[Path]:
        """Path of the scanned file for ``name``; None in manifest mode."""
        if self._paths is None:
            return None
        return self._paths.get(name)

    def find(self, name: str) -> PictureRef:
        """Exact, case-sensitive lookup of the full filename with extension.

        Wildcard characters have no special meaning; they simply fail to match.
        """
        try:
            return self._by_name[name]
        except KeyError:
            raise PictureNotFound(name) from None

    def first(self) -> PictureRef:
        if not self._entries:
            raise EmptyCatalog()
        return self._entries[0]

    def last(self) -> PictureRef:
        if not self._entries:
            raise EmptyCatalog()
        return self._entries[-1]

    def next(self, ref: PictureRef) -> PictureRef:
        return self._step(ref, +1)

    def prev(self, ref: PictureRef) -> PictureRef:
        return self._step(ref, -1)

    def _step(self, ref: PictureRef, delta: int) -> PictureRef:
        current = self._by_name.get(ref.filename)
        if current is None:
            raise StaleRef(ref.filename)
        return self._entries[(current.ordinal + delta) % len(self._entries)]
