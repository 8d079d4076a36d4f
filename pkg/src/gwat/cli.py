"""Command line entry point: serve, ingest, export and stats subcommands."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional

from .catalog import Catalog
from .config import ServiceConfig, resolve_config
from .errors import GwatError, UnknownFormat
from .export import export_csv, export_json, export_sql
from .store import open_store
from .wordnet import LexicalType, load_lexicon

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ("sql", "csv", "json")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dict", dest="dict", metavar="DIR", help="WordNet dict directory")
    parser.add_argument("--gaped", metavar="DIR", help="picture root with category folders")
    parser.add_argument("--manifest", metavar="FILE", help="picture-name manifest (no images)")
    parser.add_argument("--db", metavar="FILE", help="annotation store path")
    parser.add_argument("--listen", metavar="HOST:PORT", help="serve address")
    parser.add_argument("--search-limit", dest="search_limit", metavar="N", help="max synsets per search")
    parser.add_argument("--ui", metavar="DIR", help="built web client directory served at /")
    parser.add_argument("--config", metavar="FILE", help="INI config file with a [gwat] section")


def _resolve(args: argparse.Namespace) -> ServiceConfig:
    flags = {
        "dict": args.dict,
        "gaped": args.gaped,
        "manifest": args.manifest,
        "db": args.db,
        "listen": args.listen,
        "search_limit": args.search_limit,
        "ui": args.ui,
    }
    return resolve_config(flags, config_file=args.config)


def _build_catalog(config: ServiceConfig) -> Catalog:
    config.require_picture_source()
    if config.gaped_root is not None:
        return Catalog.from_directory(config.gaped_root)
    assert config.manifest is not None
    return Catalog.from_manifest(config.manifest)


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import create_app

    import uvicorn

    config = _resolve(args)
    lexicon = load_lexicon(config.require_dict())
    logger.info("lexicon loaded: %d synsets", len(lexicon))
    catalog = _build_catalog(config)
    logger.info("catalog loaded: %d pictures", len(catalog))
    store = open_store(config.require_store())
    app = create_app(
        lexicon, catalog, store, search_limit=config.search_limit, ui_dir=config.ui_dir
    )
    host, port = config.listen_host_port()
    logger.info("listening on %s:%d", host, port)
    uvicorn.run(app, host=host, port=port, log_level="info")
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    config = _resolve(args)
    lexicon = load_lexicon(config.require_dict())
    counts = lexicon.counts
    for lt in LexicalType:
        print(f"{lt.word}s: {counts[lt]}")
    print(f"synsets: {len(lexicon)}")
    catalog = _build_catalog(config)
    print(f"pictures: {len(catalog)}")
    if len(catalog) > 0:
        print(f"first: {catalog.first().filename}")
        print(f"last: {catalog.last().filename}")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    config = _resolve(args)
    fmt = args.format.lower()
    if fmt not in EXPORT_FORMATS:
        raise UnknownFormat(args.format)
    lexicon = load_lexicon(config.require_dict())
    with open_store(config.require_store()) as store:
        if fmt == "sql":
            document = export_sql(store, lexicon)
        elif fmt == "csv":
            document = export_csv(store, lexicon)
        else:
            document = export_json(store, lexicon)
    if args.output == "-":
        sys.stdout.write(document)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(document)
        logger.info("wrote %s export to %s", fmt, args.output)
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    config = _resolve(args)
    with open_store(config.require_store()) as store:
        stats = store.stats()
    print(f"annotations: {stats.annotations}")
    print(f"annotated pictures: {stats.annotated_pictures}")
    print(f"distinct synsets: {stats.distinct_synsets}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwat",
        description="Attach WordNet synsets to pictures of a GAPED-style picture set.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="load everything and run the HTTP service")
    _add_common_flags(serve)
    serve.set_defaults(func=_cmd_serve)

    ingest = sub.add_parser("ingest", help="validate the dictionary and picture source")
    _add_common_flags(ingest)
    ingest.set_defaults(func=_cmd_ingest)

    export = sub.add_parser("export", help="write the annotation store as sql, csv or json")
    _add_common_flags(export)
    export.add_argument("--format", required=True, metavar="FMT", help="sql, csv or json")
    export.add_argument("--output", default="-", metavar="FILE", help="output path ('-' = stdout)")
    export.set_defaults(func=_cmd_export)

    stats = sub.add_parser("stats", help="print store aggregates")
    _add_common_flags(stats)
    stats.set_defaults(func=_cmd_stats)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GwatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
