"""Attach WordNet synsets to pictures of a GAPED-style affective picture set.

The package bundles a WNDB dictionary parser with keyword search, the
alphabetical picture catalog, a persistent annotation store, SQL/CSV/JSON
exporters and the HTTP service that ties them together.
"""

from .catalog import Catalog, Category, PictureRef
from .errors import GwatError
from .export import export_csv, export_json, export_sql, import_sql
from .store import Annotation, AnnotationListing, AnnotationStore, StoreStats, open_store
from .wordnet import (
    LexicalType,
    Lexicon,
    SearchResultPage,
    Synset,
    SynsetId,
    load_lexicon,
)

__all__ = [
    "Annotation",
    "AnnotationListing",
    "AnnotationStore",
    "Catalog",
    "Category",
    "GwatError",
    "LexicalType",
    "Lexicon",
    "PictureRef",
    "SearchResultPage",
    "StoreStats",
    "Synset",
    "SynsetId",
    "export_csv",
    "export_json",
    "export_sql",
    "import_sql",
    "load_lexicon",
    "open_store",
]

__version__ = "0.1.0"
