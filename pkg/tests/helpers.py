"""Shared oracles and generators for the test suite.

The oracles here deliberately avoid the code paths they check: searches are
verified by scanning raw synset lemmas, dictionary counts by counting
non-header lines.
"""

from __future__ import annotations

import os
import random
import string
from datetime import datetime, timedelta, timezone
from pathlib import Path

from gwat.wordnet import DATA_FILES, LexicalType, Lexicon, Synset, SynsetId

REPO_ROOT = Path(__file__).parent.parent

WORDNET_CANDIDATES = (
    str(REPO_ROOT / ".wordnet" / "node_modules" / "wndb-with-exceptions" / "dict"),
    "/usr/share/wordnet",
    "/usr/local/WordNet-3.0/dict",
    "/usr/share/nltk_data/corpora/wordnet",
    "~/nltk_data/corpora/wordnet",
)


def locate_wordnet_dict() -> "Path | None":
    """A real WordNet dict directory, via GWAT_WN30_DIR or known locations."""
    candidates = []
    from_env = os.environ.get("GWAT_WN30_DIR")
    if from_env:
        candidates.append(Path(from_env))
    candidates.extend(Path(c).expanduser() for c in WORDNET_CANDIDATES)
    for candidate in candidates:
        if candidate.is_dir() and all(
            (candidate / name).is_file() for name in DATA_FILES.values()
        ):
            return candidate
    return None


def count_data_lines(path: Path) -> int:
    """Non-header, non-blank line count of a WNDB file."""
    with open(path, encoding="utf-8") as fh:
        return sum(1 for line in fh if not line.startswith("  ") and line.strip())


def brute_force_search(synsets, query: str) -> set[SynsetId]:
    """Reference search: scan every lemma token of every synset."""
    normalized = "_".join(query.strip().lower().split())
    matched = set()
    for synset in synsets:
        for lemma in synset.lemmas:
            for token in lemma.split("_"):
                if token and token.lower().startswith(normalized):
                    matched.add(synset.id)
    return matched


def result_ids(page) -> set[SynsetId]:
    return {s.id for s in page.synsets()}


_NASTY_GLOSS_BITS = [
    "it's",
    'quoted "words"',
    "comma, separated",
    "semi;colon",
    "pipe | char",
    "line\nbreak",
    "back\\slash",
    "trailing space ",
    "('parens')",
]


def random_word(rng: random.Random, min_len: int = 3, max_len: int = 8) -> str:
    return "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(min_len, max_len)))


def make_synthetic_synsets(
    rng: random.Random,
    count: int = 500,
    vocabulary_size: int = 120,
    nasty_glosses: bool = False,
) -> list[Synset]:
    """Random synsets over a shared vocabulary, so token prefixes collide."""
    vocabulary = [random_word(rng) for _ in range(vocabulary_size)]
    offsets: dict[LexicalType, set[str]] = {lt: set() for lt in LexicalType}
    synsets = []
    for _ in range(count):
        lt = rng.choice(list(LexicalType))
        while True:
            offset = f"{rng.randrange(100_000_000):08d}"
            if offset not in offsets[lt]:
                offsets[lt].add(offset)
                break
        lemmas = []
        for _ in range(rng.randint(1, 3)):
            tokens = [rng.choice(vocabulary) for _ in range(rng.randint(1, 3))]
            if rng.random() < 0.15:
                tokens[0] = tokens[0].capitalize()
            lemmas.append("_".join(tokens))
        gloss_words = [rng.choice(vocabulary) for _ in range(rng.randint(2, 6))]
        if nasty_glosses and rng.random() < 0.6:
            gloss_words.append(rng.choice(_NASTY_GLOSS_BITS))
        gloss = " ".join(gloss_words)
        synsets.append(Synset(id=SynsetId(lt, offset), lemmas=tuple(lemmas), gloss=gloss))
    return synsets


def make_synthetic_lexicon(seed: int, count: int = 500, nasty_glosses: bool = False) -> Lexicon:
    rng = random.Random(seed)
    return Lexicon(make_synthetic_synsets(rng, count=count, nasty_glosses=nasty_glosses))


def ticking_clock(start: "datetime | None" = None, step_seconds: float = 1.0):
    """Deterministic clock: each call advances by a fixed step."""
    state = {"now": start or datetime(2024, 5, 1, 12, 0, 0, tzinfo=timezone.utc)}
    step = timedelta(seconds=step_seconds)

    def clock() -> datetime:
        now = state["now"]
        state["now"] = now + step
        return now

    return clock
