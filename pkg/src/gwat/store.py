"""Persistent picture-to-synset annotation store.

A single SQLite file holds three tables: pictures, synsets (id, type code,
first lemma, gloss snapshot) and the annotations joining them. Writes are
serialized behind a lock; readers always see committed state. Deletion is
final: there is no undo and no tombstone.
"""

from __future__ import annotations

import sqlite3
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional

from .catalog import Catalog
from .errors import (
    AlreadyAttached,
    CorruptStore,
    IoFailure,
    NotAttached,
    UnknownPicture,
    UnknownSynset,
)
from .wordnet import ANNOTATION_GROUP_ORDER, LexicalType, Lexicon, Synset, SynsetId

_SCHEMA = """
CREATE TABLE IF NOT EXISTS pictures (
    name TEXT PRIMARY KEY
);
CREATE TABLE IF NOT EXISTS synsets (
    id TEXT PRIMARY KEY,
    lexical_type TEXT NOT NULL,
    first_lemma TEXT NOT NULL,
    gloss TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS annotations (
    picture_name TEXT NOT NULL REFERENCES pictures(name),
    synset_id TEXT NOT NULL REFERENCES synsets(id),
    created_at TEXT NOT NULL,
    PRIMARY KEY (picture_name, synset_id)
);
"""

_EXPECTED_COLUMNS = {
    "pictures": ["name"],
    "synsets": ["id", "lexical_type", "first_lemma", "gloss"],
    "annotations": ["picture_name", "synset_id", "created_at"],
}

Clock = Callable[[], datetime]


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def format_timestamp(moment: datetime) -> str:
    """RFC 3339 UTC with microseconds, e.g. 2024-05-01T12:00:00.000000Z."""
    return moment.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


@dataclass(frozen=True)
class Annotation:
    picture_name: str
    synset_id: SynsetId
    created_at: str


@dataclass(frozen=True)
class AnnotationListing:
    """Grouped per-picture listing: noun, verb, adjective, adverb.

    ``dangling`` carries stored ids that no longer resolve in the lexicon the
    listing was built against; they are reported, not fatal.
    """

    groups: tuple[tuple[LexicalType, tuple[tuple[Synset, str], ...]], ...]
    dangling: tuple[str, ...] = ()


@dataclass(frozen=True)
class StoreStats:
    annotations: int
    annotated_pictures: int
    distinct_synsets: int


class AnnotationStore:
    """Single-writer, multi-reader store over one SQLite file."""

    def __init__(self, path: "Path | str", clock: Optional[Clock] = None):
        self._path = str(path)
        self._clock = clock or _utc_now
        self._lock = threading.RLock()
        try:
            self._conn = sqlite3.connect(self._path, check_same_thread=False)
        except sqlite3.OperationalError as exc:
            raise IoFailure(f"cannot open store at {self._path}: {exc}") from exc
        try:
            self._conn.execute("PRAGMA journal_mode=WAL")
            self._conn.execute("PRAGMA synchronous=NORMAL")
            self._conn.execute("PRAGMA foreign_keys=ON")
            check = self._conn.execute("PRAGMA quick_check").fetchone()
            if check is None or check[0] != "ok":
                raise CorruptStore(str(check[0]) if check else "quick_check returned nothing")
            self._conn.executescript(_SCHEMA)
            self._verify_schema()
        except sqlite3.DatabaseError as exc:
            self._conn.close()
            raise CorruptStore(str(exc)) from exc
        except CorruptStore:
            self._conn.close()
            raise

    def _verify_schema(self) -> None:
        for table, expected in _EXPECTED_COLUMNS.items():
            rows = self._conn.execute(f"PRAGMA table_info({table})").fetchall()
            columns = [row[1] for row in rows]
            if columns != expected:
                raise CorruptStore(f"table {table} has columns {columns}, expected {expected}")

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def __enter__(self) -> "AnnotationStore":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

    # --- writes ----------------------------------------------------------

    def attach(
        self,
        picture_name: str,
        synset_id: "SynsetId | str",
        *,
        catalog: Catalog,
        lexicon: Lexicon,
    ) -> Annotation:
        """Insert one (picture, synset) link; both sides must resolve now."""
        if isinstance(synset_id, str):
            synset_id = SynsetId.parse(synset_id)
        if picture_name not in catalog:
            raise UnknownPicture(picture_name)
        if synset_id not in lexicon:
            raise UnknownSynset(synset_id.text)
        synset = lexicon.get(synset_id)
        created_at = format_timestamp(self._clock())
        with self._lock:
            try:
                self._conn.execute(
                    "INSERT OR IGNORE INTO pictures (name) VALUES (?)", (picture_name,)
                )
                self._conn.execute(
                    "INSERT OR IGNORE INTO synsets (id, lexical_type, first_lemma, gloss)"
                    " VALUES (?, ?, ?, ?)",
                    (synset_id.text, synset.lexical_type.code, synset.name, synset.gloss),
                )
                self._conn.execute(
                    "INSERT INTO annotations (picture_name, synset_id, created_at)"
                    " VALUES (?, ?, ?)",
                    (picture_name, synset_id.text, created_at),
                )
            except sqlite3.IntegrityError:
                self._conn.rollback()
                raise AlreadyAttached(picture_name, synset_id.text) from None
            self._conn.commit()
        return Annotation(picture_name=picture_name, synset_id=synset_id, created_at=created_at)

    def detach(self, picture_name: str, synset_id: "SynsetId | str") -> None:
        """Permanently delete one link; unreferenced side rows are pruned."""
        if isinstance(synset_id, str):
            synset_id = SynsetId.parse(synset_id)
        with self._lock:
            cursor = self._conn.execute(
                "DELETE FROM annotations WHERE picture_name = ? AND synset_id = ?",
                (picture_name, synset_id.text),
            )
            if cursor.rowcount == 0:
                self._conn.rollback()
                raise NotAttached(picture_name, synset_id.text)
            self._conn.execute(
                "DELETE FROM pictures WHERE name = ?"
                " AND NOT EXISTS (SELECT 1 FROM annotations WHERE picture_name = ?)",
                (picture_name, picture_name),
            )
            self._conn.execute(
                "DELETE FROM synsets WHERE id = ?"
                " AND NOT EXISTS (SELECT 1 FROM annotations WHERE synset_id = ?)",
                (synset_id.text, synset_id.text),
            )
            self._conn.commit()

    # --- reads -----------------------------------------------------------

    def annotations(self) -> list[tuple[str, str, str]]:
        """All rows as (picture_name, synset_id text, created_at), sorted."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT picture_name, synset_id, created_at FROM annotations"
                " ORDER BY picture_name, synset_id"
            ).fetchall()
        return [(r[0], r[1], r[2]) for r in rows]

    def annotations_for(self, picture_name: str) -> list[tuple[str, str]]:
        """Rows for one picture as (synset_id text, created_at)."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT synset_id, created_at FROM annotations WHERE picture_name = ?"
                " ORDER BY synset_id",
                (picture_name,),
            ).fetchall()
        return [(r[0], r[1]) for r in rows]

    def list_for_picture(self, picture_name: str, lexicon: Lexicon) -> AnnotationListing:
        """Grouped listing for one picture; unknown pictures list empty."""
        entries: dict[LexicalType, list[tuple[Synset, str]]] = {lt: [] for lt in LexicalType}
        dangling = []
        for id_text, created_at in self.annotations_for(picture_name):
            synset_id = SynsetId.parse(id_text)
            if synset_id not in lexicon:
                dangling.append(id_text)
                continue
            synset = lexicon.get(synset_id)
            entries[synset.lexical_type].append((synset, created_at))
        groups = []
        for lt in ANNOTATION_GROUP_ORDER:
            members = sorted(entries[lt], key=lambda pair: pair[0].sort_key())
            if members:
                groups.append((lt, tuple(members)))
        return AnnotationListing(groups=tuple(groups), dangling=tuple(dangling))

    def stats(self) -> StoreStats:
        with self._lock:
            row = self._conn.execute(
                "SELECT COUNT(*), COUNT(DISTINCT picture_name), COUNT(DISTINCT synset_id)"
                " FROM annotations"
            ).fetchone()
        return StoreStats(annotations=row[0], annotated_pictures=row[1], distinct_synsets=row[2])


def open_store(path: "Path | str", clock: Optional[Clock] = None) -> AnnotationStore:
    """Open or initialize the store file at ``path``."""
    return AnnotationStore(path, clock=clock)
