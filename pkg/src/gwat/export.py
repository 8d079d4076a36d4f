"""Deterministic SQL / CSV / JSON export of the annotation store.

The SQL script is plain ANSI: three CREATE TABLE statements (annotations
carries foreign keys to both sides) followed by INSERT statements in sorted
order. :func:`import_sql` parses exactly that subset back into a snapshot,
which serves as the round-trip oracle for the exporter.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .errors import (
    DanglingSynsetError,
    ForeignKeyViolation,
    UnsupportedStatement,
    UnterminatedString,
)
from .store import AnnotationStore
from .wordnet import Lexicon, SynsetId

CSV_HEADER = ["picture_name", "synset_id", "lexical_type", "first_lemma", "gloss", "created_at"]

_CREATE_STATEMENTS = """\
CREATE TABLE pictures (
    name VARCHAR(255) NOT NULL,
    PRIMARY KEY (name)
);

CREATE TABLE synsets (
    id CHAR(9) NOT NULL,
    lexical_type CHAR(1) NOT NULL,
    first_lemma VARCHAR(255) NOT NULL,
    gloss VARCHAR(4000) NOT NULL,
    PRIMARY KEY (id)
);

CREATE TABLE annotations (
    picture_name VARCHAR(255) NOT NULL,
    synset_id CHAR(9) NOT NULL,
    created_at VARCHAR(32) NOT NULL,
    PRIMARY KEY (picture_name, synset_id),
    FOREIGN KEY (picture_name) REFERENCES pictures (name),
    FOREIGN KEY (synset_id) REFERENCES synsets (id)
);
"""

_INSERT_COLUMNS = {
    "pictures": ("name",),
    "synsets": ("id", "lexical_type", "first_lemma", "gloss"),
    "annotations": ("picture_name", "synset_id", "created_at"),
}


@dataclass(frozen=True)
class SynsetRow:
    id: str
    lexical_type: str
    first_lemma: str
    gloss: str


@dataclass(frozen=True)
class AnnotationRow:
    picture_name: str
    synset_id: str
    created_at: str


@dataclass(frozen=True)
class StoreSnapshot:
    """Canonical (sorted) image of the exportable store content."""

    pictures: tuple[str, ...]
    synsets: tuple[SynsetRow, ...]
    annotations: tuple[AnnotationRow, ...]

    def annotation_pairs(self) -> set[tuple[str, str]]:
        return {(a.picture_name, a.synset_id) for a in self.annotations}


def take_snapshot(store: AnnotationStore, lexicon: Lexicon) -> StoreSnapshot:
    """Consistent snapshot of annotations plus the pictures/synsets they reference.

    Every stored synset must resolve in ``lexicon``; unresolved ids abort
    with :class:`DanglingSynsetError` listing all of them.
    """
    rows = store.annotations()
    dangling = []
    synset_rows: dict[str, SynsetRow] = {}
    pictures = set()
    annotations = []
    for picture_name, id_text, created_at in rows:
        synset_id = SynsetId.parse(id_text)
        if synset_id not in lexicon:
            dangling.append(id_text)
            continue
        synset = lexicon.get(synset_id)
        pictures.add(picture_name)
        synset_rows[id_text] = SynsetRow(
            id=id_text,
            lexical_type=synset.lexical_type.code,
            first_lemma=synset.name,
            gloss=synset.gloss,
        )
        annotations.append(
            AnnotationRow(picture_name=picture_name, synset_id=id_text, created_at=created_at)
        )
    if dangling:
        raise DanglingSynsetError(tuple(sorted(set(dangling))))
    return StoreSnapshot(
        pictures=tuple(sorted(pictures)),
        synsets=tuple(sorted(synset_rows.values(), key=lambda r: r.id)),
        annotations=tuple(sorted(annotations, key=lambda a: (a.picture_name, a.synset_id))),
    )


def _quote(value: str) -> str:
    return "'" + value.replace("'", "''") + "'"


def render_sql(snapshot: StoreSnapshot) -> str:
    """Render a snapshot as the canonical SQL script (byte-deterministic)."""
    lines = [_CREATE_STATEMENTS]
    for name in snapshot.pictures:
        lines.append(f"INSERT INTO pictures (name) VALUES ({_quote(name)});")
    for s in snapshot.synsets:
        values = ", ".join(_quote(v) for v in (s.id, s.lexical_type, s.first_lemma, s.gloss))
        lines.append(
            f"INSERT INTO synsets (id, lexical_type, first_lemma, gloss) VALUES ({values});"
        )
    for a in snapshot.annotations:
        values = ", ".join(_quote(v) for v in (a.picture_name, a.synset_id, a.created_at))
        lines.append(
            f"INSERT INTO annotations (picture_name, synset_id, created_at) VALUES ({values});"
        )
    return "\n".join(lines) + "\n"


def export_sql(store: AnnotationStore, lexicon: Lexicon) -> str:
    return render_sql(take_snapshot(store, lexicon))


def export_csv(store: AnnotationStore, lexicon: Lexicon) -> str:
    """One row per annotation, RFC 4180 quoting, same order as the SQL export."""
    snapshot = take_snapshot(store, lexicon)
    synsets = {s.id: s for s in snapshot.synsets}
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for a in snapshot.annotations:
        s = synsets[a.synset_id]
        writer.writerow(
            [a.picture_name, a.synset_id, s.lexical_type, s.first_lemma, s.gloss, a.created_at]
        )
    return buffer.getvalue()


def export_json(store: AnnotationStore, lexicon: Lexicon) -> str:
    """Object mapping picture name to its annotation objects, keys sorted."""
    snapshot = take_snapshot(store, lexicon)
    synsets = {s.id: s for s in snapshot.synsets}
    document: dict[str, list[dict[str, str]]] = {}
    for a in snapshot.annotations:
        s = synsets[a.synset_id]
        document.setdefault(a.picture_name, []).append(
            {
                "synset_id": a.synset_id,
                "lexical_type": s.lexical_type,
                "first_lemma": s.first_lemma,
                "gloss": s.gloss,
                "created_at": a.created_at,
            }
        )
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --- SQL subset import ----------------------------------------------------


def _split_statements(script: str) -> list[tuple[int, str]]:
    """Split on ';' outside string literals; returns (start line, text) pairs."""
    statements = []
    current: list[str] = []
    line = 1
    start_line = 1
    in_string = False
    i = 0
    n = len(script)
    while i < n:
        ch = script[i]
        if ch == "\n":
            line += 1
        if in_string:
            if ch == "'":
                if i + 1 < n and script[i + 1] == "'":
                    current.append("''")
                    i += 2
                    continue
                in_string = False
            current.append(ch)
            i += 1
            continue
        if ch == "'":
            in_string = True
            current.append(ch)
            i += 1
            continue
        if ch == ";":
            text = "".join(current).strip()
            if text:
                statements.append((start_line, text))
            current = []
            i += 1
            continue
        if not current and ch.isspace():
            i += 1
            continue
        if not current:
            start_line = line
        current.append(ch)
        i += 1
    if in_string:
        raise UnterminatedString(line)
    tail = "".join(current).strip()
    if tail:
        raise UnsupportedStatement(start_line, "statement not terminated with ';'")
    return statements


def _parse_values(text: str, line_number: int) -> list[str]:
    """Parse ('a', 'b''c', ...) — quoted strings only, doubled-quote escapes."""
    values = []
    i = 0
    n = len(text)

    def skip_ws(j: int) -> int:
        while j < n and text[j].isspace():
            j += 1
        return j

    i = skip_ws(i)
    if i >= n or text[i] != "(":
        raise UnsupportedStatement(line_number, "expected '(' before VALUES list")
    i += 1
    while True:
        i = skip_ws(i)
        if i >= n or text[i] != "'":
            raise UnsupportedStatement(line_number, "expected quoted string value")
        i += 1
        chunk: list[str] = []
        while True:
            if i >= n:
                raise UnterminatedString(line_number)
            if text[i] == "'":
                if i + 1 < n and text[i + 1] == "'":
                    chunk.append("'")
                    i += 2
                    continue
                i += 1
                break
            chunk.append(text[i])
            i += 1
        values.append("".join(chunk))
        i = skip_ws(i)
        if i < n and text[i] == ",":
            i += 1
            continue
        if i < n and text[i] == ")":
            i += 1
            break
        raise UnsupportedStatement(line_number, "expected ',' or ')' in VALUES list")
    i = skip_ws(i)
    if i != n:
        raise UnsupportedStatement(line_number, "trailing content after VALUES list")
    return values


def import_sql(script: str) -> StoreSnapshot:
    """Parse a script produced by :func:`export_sql` back into a snapshot.

    Only the emitted subset is accepted: the three CREATE TABLE statements
    and INSERT statements with fully quoted values. Foreign-key consistency
    of annotation rows is enforced.
    """
    pictures: list[str] = []
    synsets: list[SynsetRow] = []
    annotations: list[AnnotationRow] = []
    seen_keys: set[tuple[str, ...]] = set()

    for line_number, statement in _split_statements(script):
        normalized = " ".join(statement.split())
        upper = normalized.upper()
        if upper.startswith("CREATE TABLE "):
            parts = normalized.split(None, 3)
            if len(parts) < 3:
                raise UnsupportedStatement(line_number, "truncated CREATE TABLE")
            name = parts[2].split("(", 1)[0].strip()
            if name not in _INSERT_COLUMNS:
                raise UnsupportedStatement(line_number, f"unknown table {name!r}")
            continue
        if upper.startswith("INSERT INTO "):
            rest = statement.split(None, 2)[2]
            table, _, after = rest.partition("(")
            table = table.strip()
            if table not in _INSERT_COLUMNS:
                raise UnsupportedStatement(line_number, f"unknown table {table!r}")
            columns_text, _, after_cols = after.partition(")")
            columns = tuple(c.strip() for c in columns_text.split(","))
            if columns != _INSERT_COLUMNS[table]:
                raise UnsupportedStatement(
                    line_number, f"unexpected column list for {table}: {columns}"
                )
            after_cols = after_cols.strip()
            if not after_cols.upper().startswith("VALUES"):
                raise UnsupportedStatement(line_number, "expected VALUES clause")
            values = _parse_values(after_cols[len("VALUES") :], line_number)
            if len(values) != len(columns):
                raise UnsupportedStatement(
                    line_number, f"{len(columns)} columns but {len(values)} values"
                )
            key = (table, values[0]) if table != "annotations" else (table, values[0], values[1])
            if key in seen_keys:
                raise UnsupportedStatement(line_number, f"duplicate row for {key}")
            seen_keys.add(key)
            if table == "pictures":
                pictures.append(values[0])
            elif table == "synsets":
                synsets.append(SynsetRow(*values))
            else:
                annotations.append(AnnotationRow(*values))
            continue
        raise UnsupportedStatement(line_number, f"unsupported statement: {normalized[:40]}")

    picture_set = set(pictures)
    synset_ids = {s.id for s in synsets}
    for a in annotations:
        if a.picture_name not in picture_set:
            raise ForeignKeyViolation(
                f"annotation references picture {a.picture_name!r} with no pictures row"
            )
        if a.synset_id not in synset_ids:
            raise ForeignKeyViolation(
                f"annotation references synset {a.synset_id!r} with no synsets row"
            )
    return StoreSnapshot(
        pictures=tuple(sorted(pictures)),
        synsets=tuple(sorted(synsets, key=lambda s: s.id)),
        annotations=tuple(sorted(annotations, key=lambda a: (a.picture_name, a.synset_id))),
    )
