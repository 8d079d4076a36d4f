"""HTTP JSON API over the lexicon, catalog, store and exporter.

Every deliberate error is returned as ``{"error_code": ..., "message": ...}``
with the status from :data:`ERROR_MAP`; the mapping covers every package
error exactly once. The built web client, when present, is served under
``/`` as static files.
"""

from __future__ import annotations

import mimetypes
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import errors
from .catalog import Catalog, PictureRef
from .export import export_csv, export_json, export_sql
from .store import AnnotationListing, Annotation, AnnotationStore
from .wordnet import DEFAULT_SEARCH_LIMIT, Lexicon, SearchResultPage, Synset

ERROR_MAP: dict[type, tuple[int, str]] = {
    errors.MalformedLine: (500, "malformed_line"),
    errors.MissingFile: (500, "missing_file"),
    errors.InvalidIdFormat: (400, "invalid_synset_id"),
    errors.SynsetNotFound: (404, "synset_not_found"),
    errors.EmptyQuery: (400, "empty_query"),
    errors.MissingRoot: (500, "missing_root"),
    errors.DuplicateFilename: (500, "duplicate_filename"),
    errors.UnknownCategoryPrefix: (400, "unknown_category_prefix"),
    errors.PictureNotFound: (404, "picture_not_found"),
    errors.EmptyCatalog: (404, "empty_catalog"),
    errors.StaleRef: (404, "stale_ref"),
    errors.CorruptStore: (500, "corrupt_store"),
    errors.IoFailure: (500, "io_failure"),
    errors.UnknownPicture: (404, "unknown_picture"),
    errors.UnknownSynset: (404, "unknown_synset"),
    errors.AlreadyAttached: (409, "already_attached"),
    errors.NotAttached: (404, "not_attached"),
    errors.DanglingSynsetError: (409, "dangling_synset"),
    errors.UnsupportedStatement: (400, "unsupported_statement"),
    errors.ForeignKeyViolation: (400, "foreign_key_violation"),
    errors.UnterminatedString: (400, "unterminated_string"),
    errors.UnknownFormat: (400, "unknown_format"),
    errors.ConfigError: (500, "config_error"),
}

EXPORT_MEDIA_TYPES = {
    "sql": "application/sql",
    "csv": "text/csv; charset=utf-8",
    "json": "application/json",
}


# --- JSON shapes ----------------------------------------------------------


def picture_json(ref: PictureRef, total: int) -> dict:
    return {
        "name": ref.filename,
        "category": ref.category.code,
        "ordinal": ref.ordinal,
        "total": total,
    }


def synset_json(synset: Synset) -> dict:
    return {
        "id": synset.id.text,
        "lexical_type": synset.lexical_type.word,
        "name": synset.name,
        "lemmas": list(synset.display_lemmas),
        "gloss": synset.gloss,
    }


def search_page_json(query: str, page: SearchResultPage) -> dict:
    return {
        "query": query,
        "groups": [
            {"lexical_type": lt.word, "synsets": [synset_json(s) for s in members]}
            for lt, members in page.groups
        ],
        "truncated": page.truncated,
        "total_matches": page.total_matches,
    }


def listing_json(picture_name: str, listing: AnnotationListing) -> dict:
    return {
        "picture": picture_name,
        "groups": [
            {
                "lexical_type": lt.word,
                "annotations": [
                    {"synset": synset_json(synset), "created_at": created_at}
                    for synset, created_at in members
                ],
            }
            for lt, members in listing.groups
        ],
        "dangling": list(listing.dangling),
    }


def annotation_json(annotation: Annotation) -> dict:
    return {
        "picture": annotation.picture_name,
        "synset": annotation.synset_id.text,
        "created_at": annotation.created_at,
    }


class AttachRequest(BaseModel):
    picture: str
    synset: str


def create_app(
    lexicon: Lexicon,
    catalog: Catalog,
    store: AnnotationStore,
    *,
    search_limit: int = DEFAULT_SEARCH_LIMIT,
    ui_dir: "Path | str | None" = None,
) -> FastAPI:
    app = FastAPI(title="gwat", docs_url=None, redoc_url=None)
    app.state.lexicon = lexicon
    app.state.catalog = catalog
    app.state.store = store
    app.state.search_limit = search_limit

    @app.exception_handler(errors.GwatError)
    async def handle_gwat_error(_request: Request, exc: errors.GwatError) -> JSONResponse:
        status, code = ERROR_MAP.get(type(exc), (500, "internal_error"))
        return JSONResponse(status_code=status, content={"error_code": code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(
        _request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"error_code": "bad_request", "message": str(exc)}
        )

    @app.get("/api/pictures/first")
    def pictures_first() -> dict:
        return picture_json(catalog.first(), len(catalog))

    @app.get("/api/pictures/last")
    def pictures_last() -> dict:
        return picture_json(catalog.last(), len(catalog))

    @app.get("/api/pictures/{name}/image")
    def picture_image(name: str) -> Response:
        ref = catalog.find(name)
        path = catalog.image_path(ref.filename)
        if path is None or not path.is_file():
            return JSONResponse(
                status_code=404,
                content={
                    "error_code": "image_unavailable",
                    "message": f"no image bytes available for {name!r}",
                },
            )
        media_type = mimetypes.guess_type(ref.filename)[0] or "application/octet-stream"
        return Response(content=path.read_bytes(), media_type=media_type)

    @app.get("/api/pictures/{name}/next")
    def picture_next(name: str) -> dict:
        return picture_json(catalog.next(catalog.find(name)), len(catalog))

    @app.get("/api/pictures/{name}/prev")
    def picture_prev(name: str) -> dict:
        return picture_json(catalog.prev(catalog.find(name)), len(catalog))

    @app.get("/api/pictures/{name}/annotations")
    def picture_annotations(name: str) -> dict:
        return listing_json(name, store.list_for_picture(name, lexicon))

    @app.get("/api/pictures/{name}")
    def picture_by_name(name: str) -> dict:
        return picture_json(catalog.find(name), len(catalog))

    @app.get("/api/search")
    def search(q: Optional[str] = None) -> dict:
        if q is None:
            raise errors.EmptyQuery()
        page = lexicon.search(q, limit=search_limit)
        return search_page_json(q, page)

    @app.post("/api/annotations", status_code=201)
    def attach(body: AttachRequest) -> dict:
        annotation = store.attach(body.picture, body.synset, catalog=catalog, lexicon=lexicon)
        return annotation_json(annotation)

    @app.delete("/api/annotations/{picture}/{synset}")
    def detach(picture: str, synset: str) -> dict:
        store.detach(picture, synset)
        return {"detached": True, "picture": picture, "synset": synset}

    @app.get("/api/export")
    def export(format: Optional[str] = None) -> Response:
        fmt = (format or "").lower()
        if fmt == "sql":
            document = export_sql(store, lexicon)
        elif fmt == "csv":
            document = export_csv(store, lexicon)
        elif fmt == "json":
            document = export_json(store, lexicon)
        else:
            raise errors.UnknownFormat(format or "")
        return Response(
            content=document,
            media_type=EXPORT_MEDIA_TYPES[fmt],
            headers={"Content-Disposition": f"attachment; filename=annotations.{fmt}"},
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/")
        def root() -> dict:
            return {
                "service": "gwat",
                "pictures": len(catalog),
                "synsets": len(lexicon),
                "api": "/api",
            }

    return app
