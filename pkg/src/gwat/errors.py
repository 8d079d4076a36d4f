"""Exception types shared across the package.

Every deliberate failure raises a subclass of :class:`GwatError`, so callers
(CLI, HTTP layer) can map errors without catching bare ``Exception``.
"""

from __future__ import annotations


class GwatError(Exception):
    """Base class for all errors raised on purpose by this package."""


# --- dictionary files ---------------------------------------------------


class MalformedLine(GwatError):
    """A dictionary-file line that does not follow the WNDB grammar."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class MissingFile(GwatError):
    def __init__(self, name: str):
        super().__init__(f"required file missing: {name}")
        self.name = name


class InvalidIdFormat(GwatError):
    def __init__(self, text: str):
        super().__init__(
            f"not a valid synset id: {text!r} (expected a type tag followed by 8 digits)"
        )
        self.text = text


class SynsetNotFound(GwatError):
    def __init__(self, id_text: str):
        super().__init__(f"no synset with id {id_text!r}")
        self.id_text = id_text


class EmptyQuery(GwatError):
    def __init__(self) -> None:
        super().__init__("search query is empty")


# --- picture catalog ----------------------------------------------------


class MissingRoot(GwatError):
    def __init__(self, path: str):
        super().__init__(f"picture root does not exist: {path}")
        self.path = path


class DuplicateFilename(GwatError):
    def __init__(self, name: str):
        super().__init__(f"duplicate picture filename: {name!r}")
        self.name = name


class UnknownCategoryPrefix(GwatError):
    def __init__(self, name: str):
        super().__init__(f"filename matches no category prefix: {name!r}")
        self.name = name


class PictureNotFound(GwatError):
    def __init__(self, name: str):
        super().__init__(f"picture cannot be found: {name!r}")
        self.name = name


class EmptyCatalog(GwatError):
    def __init__(self) -> None:
        super().__init__("picture catalog is empty")


class StaleRef(GwatError):
    def __init__(self, name: str):
        super().__init__(f"picture no longer in catalog: {name!r}")
        self.name = name


# --- annotation store ---------------------------------------------------


class CorruptStore(GwatError):
    def __init__(self, detail: str):
        super().__init__(f"annotation store is corrupt: {detail}")
        self.detail = detail


class IoFailure(GwatError):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UnknownPicture(GwatError):
    def __init__(self, name: str):
        super().__init__(f"picture not in catalog: {name!r}")
        self.name = name


class UnknownSynset(GwatError):
    def __init__(self, id_text: str):
        super().__init__(f"synset not in lexicon: {id_text!r}")
        self.id_text = id_text


class AlreadyAttached(GwatError):
    def __init__(self, picture_name: str, id_text: str):
        super().__init__(f"synset {id_text} already attached to {picture_name!r}")
        self.picture_name = picture_name
        self.id_text = id_text


class NotAttached(GwatError):
    def __init__(self, picture_name: str, id_text: str):
        super().__init__(f"synset {id_text} is not attached to {picture_name!r}")
        self.picture_name = picture_name
        self.id_text = id_text


# --- export / import ----------------------------------------------------


class DanglingSynsetError(GwatError):
    """Stored synset ids that no longer resolve in the loaded lexicon."""

    def __init__(self, id_texts: tuple[str, ...]):
        super().__init__(f"stored synsets unresolved in lexicon: {', '.join(id_texts)}")
        self.id_texts = id_texts


class UnsupportedStatement(GwatError):
    def __init__(self, line_number: int, reason: str):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class ForeignKeyViolation(GwatError):
    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class UnterminatedString(GwatError):
    def __init__(self, line_number: int):
        super().__init__(f"line {line_number}: unterminated string literal")
        self.line_number = line_number


class UnknownFormat(GwatError):
    def __init__(self, fmt: str):
        super().__init__(f"unknown export format: {fmt!r} (expected sql, csv or json)")
        self.fmt = fmt


# --- configuration ------------------------------------------------------


class ConfigError(GwatError):
    pass
