"""WordNet database-file (WNDB) parsing and the in-memory keyword lexicon.

Reads the plain-text ``data.{noun,verb,adj,adv}`` files of a WordNet 3.x
``dict`` directory into an immutable :class:`Lexicon` and answers
case-insensitive token-prefix searches with results grouped by lexical type.
Semantic pointers and verb frames are validated while parsing but not kept.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path
from enum import Enum
from typing import IO, Iterable, Iterator

from .errors import (
    EmptyQuery,
    InvalidIdFormat,
    MalformedLine,
    MissingFile,
    SynsetNotFound,
)

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_LIMIT = 500


class LexicalType(Enum):
    """The four lexical types. Satellite adjectives ('s') fold into ADJECTIVE."""

    NOUN = "n"
    VERB = "v"
    ADJECTIVE = "a"
    ADVERB = "r"

    @property
    def code(self) -> str:
        """One-character type tag used in ids and data files."""
        return self.value

    @property
    def word(self) -> str:
        """Lowercase English name, e.g. ``"noun"``."""
        return self.name.lower()


# Group order for search results (search panel).
SEARCH_GROUP_ORDER = (
    LexicalType.NOUN,
    LexicalType.ADJECTIVE,
    LexicalType.VERB,
    LexicalType.ADVERB,
)

# Group order for per-picture annotation listings.
ANNOTATION_GROUP_ORDER = (
    LexicalType.NOUN,
    LexicalType.VERB,
    LexicalType.ADJECTIVE,
    LexicalType.ADVERB,
)

_TAG_TO_TYPE = {lt.code: lt for lt in LexicalType}

DATA_FILES = {
    LexicalType.NOUN: "data.noun",
    LexicalType.VERB: "data.verb",
    LexicalType.ADJECTIVE: "data.adj",
    LexicalType.ADVERB: "data.adv",
}

INDEX_FILES = {
    LexicalType.NOUN: "index.noun",
    LexicalType.VERB: "index.verb",
    LexicalType.ADJECTIVE: "index.adj",
    LexicalType.ADVERB: "index.adv",
}

# Synset-type codes each data file may contain; 's' lives in data.adj only.
_ALLOWED_SS_TYPES = {
    LexicalType.NOUN: ("n",),
    LexicalType.VERB: ("v",),
    LexicalType.ADJECTIVE: ("a", "s"),
    LexicalType.ADVERB: ("r",),
}

# Adjective position markers appended to words in data.adj; metadata, not
# part of the word itself.
_ADJ_MARKERS = ("(a)", "(p)", "(ip)")


@dataclass(frozen=True)
class SynsetId:
    """Lexical type plus the 8-digit data-file offset, e.g. ``n02084071``."""

    lexical_type: LexicalType
    offset: str

    def __post_init__(self) -> None:
        if len(self.offset) != 8 or not self.offset.isdigit():
            raise InvalidIdFormat(f"{self.lexical_type.code}{self.offset}")

    @property
    def text(self) -> str:
        return self.lexical_type.code + self.offset

    @classmethod
    def parse(cls, text: str) -> "SynsetId":
        if len(text) != 9 or text[0] not in _TAG_TO_TYPE or not text[1:].isdigit():
            raise InvalidIdFormat(text)
        return cls(_TAG_TO_TYPE[text[0]], text[1:])

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Synset:
    """One concept: id, member words (underscore form) and its gloss."""

    id: SynsetId
    lemmas: tuple[str, ...]
    gloss: str

    @property
    def lexical_type(self) -> LexicalType:
        return self.id.lexical_type

    @property
    def display_lemmas(self) -> tuple[str, ...]:
        return tuple(lemma.replace("_", " ") for lemma in self.lemmas)

    @property
    def name(self) -> str:
        """Display form of the first lemma."""
        return self.lemmas[0].replace("_", " ")

    def sort_key(self) -> tuple[str, str]:
        return (self.name.lower(), self.id.text)


@dataclass(frozen=True)
class SearchResultPage:
    """Grouped, ordered search results.

    ``groups`` follows :data:`SEARCH_GROUP_ORDER` with empty groups omitted;
    within a group synsets are ordered by (lowercased first-lemma display
    form, id text). ``total_matches`` counts all matches before the limit cut.
    """

    groups: tuple[tuple[LexicalType, tuple[Synset, ...]], ...]
    truncated: bool
    total_matches: int

    def synsets(self) -> Iterator[Synset]:
        for _, members in self.groups:
            yield from members


def _strip_adjective_marker(word: str) -> str:
    for marker in _ADJ_MARKERS:
        if word.endswith(marker):
            return word[: -len(marker)]
    return word


def _parse_data_line(line: str, line_number: int, lexical_type: LexicalType) -> Synset:
    head, sep, gloss = line.partition(" | ")
    if not sep:
        raise MalformedLine(line_number, "missing ' | ' gloss separator")
    gloss = gloss.strip()
    if not gloss:
        raise MalformedLine(line_number, "empty gloss")

    fields = head.split()
    if len(fields) < 6:
        raise MalformedLine(line_number, f"expected at least 6 fields, got {len(fields)}")

    offset = fields[0]
    if not offset.isdigit():
        raise MalformedLine(line_number, f"non-numeric synset offset {offset!r}")
    if len(offset) != 8:
        raise MalformedLine(line_number, f"synset offset must be 8 digits, got {offset!r}")

    ss_type = fields[2]
    if ss_type not in _ALLOWED_SS_TYPES[lexical_type]:
        raise MalformedLine(
            line_number,
            f"synset type {ss_type!r} not allowed in {DATA_FILES[lexical_type]}",
        )

    try:
        w_cnt = int(fields[3], 16)
    except ValueError:
        raise MalformedLine(line_number, f"word count {fields[3]!r} is not hexadecimal")
    if w_cnt < 1:
        raise MalformedLine(line_number, "word count is zero")

    pos = 4
    if pos + 2 * w_cnt > len(fields):
        raise MalformedLine(line_number, "truncated word list")
    lemmas = []
    for _ in range(w_cnt):
        word = fields[pos]
        lex_id = fields[pos + 1]
        try:
            int(lex_id, 16)
        except ValueError:
            raise MalformedLine(line_number, f"lex_id {lex_id!r} is not hexadecimal")
        if lexical_type is LexicalType.ADJECTIVE:
            word = _strip_adjective_marker(word)
        lemmas.append(word)
        pos += 2

    if pos >= len(fields) or not fields[pos].isdigit():
        raise MalformedLine(line_number, "missing pointer count")
    p_cnt = int(fields[pos])
    pos += 1
    if pos + 4 * p_cnt > len(fields):
        raise MalformedLine(line_number, "truncated pointer list")
    for _ in range(p_cnt):
        _symbol, target, target_pos, source_target = fields[pos : pos + 4]
        if not target.isdigit() or len(target) != 8:
            raise MalformedLine(line_number, f"pointer target {target!r} is not an offset")
        if target_pos not in _TAG_TO_TYPE and target_pos != "s":
            raise MalformedLine(line_number, f"pointer pos {target_pos!r} unknown")
        try:
            int(source_target, 16)
        except ValueError:
            raise MalformedLine(
                line_number, f"pointer source/target {source_target!r} is not hexadecimal"
            )
        pos += 4

    # Verb lines carry a frames section: f_cnt then '+ f_num w_num' triples.
    if pos < len(fields):
        if lexical_type is not LexicalType.VERB:
            raise MalformedLine(line_number, "unexpected fields after pointer list")
        if not fields[pos].isdigit():
            raise MalformedLine(line_number, f"frame count {fields[pos]!r} is not numeric")
        f_cnt = int(fields[pos])
        pos += 1
        if pos + 3 * f_cnt != len(fields):
            raise MalformedLine(line_number, "frame list length mismatch")
        for _ in range(f_cnt):
            plus, f_num, w_num = fields[pos : pos + 3]
            if plus != "+" or not f_num.isdigit():
                raise MalformedLine(line_number, "malformed verb frame")
            try:
                int(w_num, 16)
            except ValueError:
                raise MalformedLine(line_number, f"frame word number {w_num!r} is not hexadecimal")
            pos += 3

    synset_type = LexicalType.ADJECTIVE if ss_type == "s" else _TAG_TO_TYPE[ss_type]
    return Synset(id=SynsetId(synset_type, offset), lemmas=tuple(lemmas), gloss=gloss)


def parse_data_file(source: IO[str], lexical_type: LexicalType) -> list[Synset]:
    """Parse one ``data.*`` file; header lines (two leading spaces) are skipped."""
    synsets = []
    for line_number, raw in enumerate(source, start=1):
        if raw.startswith("  "):
            continue
        line = raw.rstrip("\n")
        if not line:
            continue
        synsets.append(_parse_data_line(line, line_number, lexical_type))
    return synsets


def parse_index_file(source: IO[str], lexical_type: LexicalType) -> list[tuple[str, list[str]]]:
    """Parse one ``index.*`` file into (lemma, data-file offsets) entries.

    Used only to cross-check a lexicon built from the data files.
    """
    entries = []
    for line_number, raw in enumerate(source, start=1):
        if raw.startswith("  "):
            continue
        line = raw.rstrip("\n")
        if not line:
            continue
        fields = line.split()
        if len(fields) < 7:
            raise MalformedLine(line_number, f"expected at least 7 fields, got {len(fields)}")
        lemma = fields[0]
        pos_tag = fields[1]
        if pos_tag not in _ALLOWED_SS_TYPES[lexical_type]:
            raise MalformedLine(
                line_number,
                f"pos {pos_tag!r} not allowed in {INDEX_FILES[lexical_type]}",
            )
        if not fields[2].isdigit() or not fields[3].isdigit():
            raise MalformedLine(line_number, "synset_cnt / p_cnt must be numeric")
        synset_cnt = int(fields[2])
        p_cnt = int(fields[3])
        tail = 4 + p_cnt
        # tail points at sense_cnt; offsets start two fields later.
        if tail + 2 > len(fields):
            raise MalformedLine(line_number, "truncated pointer-symbol list")
        offsets = fields[tail + 2 :]
        if len(offsets) != synset_cnt:
            raise MalformedLine(
                line_number,
                f"synset_cnt is {synset_cnt} but {len(offsets)} offsets listed",
            )
        for offset in offsets:
            if not offset.isdigit() or len(offset) != 8:
                raise MalformedLine(line_number, f"offset {offset!r} is not 8 digits")
        entries.append((lemma, list(offsets)))
    return entries


def _lemma_tokens(lemma: str) -> Iterator[str]:
    for token in lemma.split("_"):
        if token:
            yield token.lower()


class Lexicon:
    """Immutable dictionary: synsets by id plus a lemma-token search index.

    Build once (via :func:`load_lexicon` or from an iterable of synsets) and
    share freely; every operation afterwards is read-only.
    """

    def __init__(self, synsets: Iterable[Synset]):
        by_id: dict[SynsetId, Synset] = {}
        index: dict[str, set[SynsetId]] = {}
        counts = {lt: 0 for lt in LexicalType}
        for synset in synsets:
            if synset.id in by_id:
                raise ValueError(f"duplicate synset id {synset.id.text}")
            by_id[synset.id] = synset
            counts[synset.lexical_type] += 1
            for lemma in synset.lemmas:
                for token in _lemma_tokens(lemma):
                    index.setdefault(token, set()).add(synset.id)
        self._by_id = by_id
        self._index = {token: frozenset(ids) for token, ids in index.items()}
        self._tokens = sorted(self._index)
        self._counts = counts

    def __len__(self) -> int:
        return len(self._by_id)

    def __iter__(self) -> Iterator[Synset]:
        return iter(self._by_id.values())

    def __contains__(self, id: SynsetId) -> bool:
        return id in self._by_id

    @property
    def counts(self) -> dict[LexicalType, int]:
        return dict(self._counts)

    def get(self, id: "SynsetId | str") -> Synset:
        """Look up a synset by id object or canonical text form."""
        if isinstance(id, str):
            id = SynsetId.parse(id)
        try:
            return self._by_id[id]
        except KeyError:
            raise SynsetNotFound(id.text) from None

    def search(self, query: str, limit: "int | None" = DEFAULT_SEARCH_LIMIT) -> SearchResultPage:
        """Token-prefix search, grouped noun / adjective / verb / adverb.

        A synset matches when any underscore-delimited token of any of its
        lemmas starts with the normalized query. ``limit`` bounds how many
        synsets the page carries; ``None`` means unlimited.
        """
        if limit is not None and limit < 1:
            raise ValueError("limit must be >= 1")
        normalized = normalize_query(query)

        matched: set[SynsetId] = set()
        i = bisect_left(self._tokens, normalized)
        while i < len(self._tokens) and self._tokens[i].startswith(normalized):
            matched |= self._index[self._tokens[i]]
            i += 1

        by_type: dict[LexicalType, list[Synset]] = {lt: [] for lt in LexicalType}
        for id in matched:
            synset = self._by_id[id]
            by_type[synset.lexical_type].append(synset)
        ordered: list[Synset] = []
        for lt in SEARCH_GROUP_ORDER:
            ordered.extend(sorted(by_type[lt], key=Synset.sort_key))

        total = len(ordered)
        truncated = limit is not None and total > limit
        if truncated:
            ordered = ordered[:limit]

        groups = []
        for lt in SEARCH_GROUP_ORDER:
            members = tuple(s for s in ordered if s.lexical_type is lt)
            if members:
                groups.append((lt, members))
        return SearchResultPage(groups=tuple(groups), truncated=truncated, total_matches=total)


def normalize_query(query: str) -> str:
    """Trim, lowercase and turn internal spaces into underscores."""
    normalized = "_".join(query.strip().lower().split())
    if not normalized:
        raise EmptyQuery()
    return normalized


def load_lexicon(dict_dir: "Path | str") -> Lexicon:
    """Load the four data files of a dict directory into a Lexicon.

    Index files, when present, are cross-checked against the loaded synsets;
    any mismatch is logged as a warning, never raised.
    """
    dict_dir = Path(dict_dir)
    for lt in LexicalType:
        if not (dict_dir / DATA_FILES[lt]).is_file():
            raise MissingFile(DATA_FILES[lt])

    synsets: list[Synset] = []
    for lt in LexicalType:
        path = dict_dir / DATA_FILES[lt]
        with open(path, encoding="utf-8") as source:
            parsed = parse_data_file(source, lt)
        logger.info("parsed %d synsets from %s", len(parsed), path.name)
        synsets.extend(parsed)
    lexicon = Lexicon(synsets)

    for lt in LexicalType:
        path = dict_dir / INDEX_FILES[lt]
        if not path.is_file():
            continue
        try:
            with open(path, encoding="utf-8") as source:
                entries = parse_index_file(source, lt)
        except MalformedLine as exc:
            logger.warning("skipping cross-check of %s: %s", path.name, exc)
            continue
        unresolved = 0
        for lemma, offsets in entries:
            for offset in offsets:
                if SynsetId(lt, offset) not in lexicon:
                    unresolved += 1
                    logger.warning(
                        "%s: lemma %r lists offset %s absent from %s",
                        path.name,
                        lemma,
                        offset,
                        DATA_FILES[lt],
                    )
        if unresolved:
            logger.warning("%s: %d unresolved offsets", path.name, unresolved)
    return lexicon
