"""Command-line entry point.

Subcommands::

    gum2onto convert  --in CORPUS --out DIR [--stop-after-step K] [--retain-singletons]
                      [--trace DIR] [--format conll|tsv] [--jobs N]
    gum2onto score    --key DIR_OR_FILE --response DIR_OR_FILE [--tsv PATH] [--macro]
    gum2onto stats    --in CORPUS [--pre-conversion] [--tsv PATH]
    gum2onto validate --in CORPUS

Exit status: 0 success, 1 diagnostics found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import analysis, emit, ingest, pipeline, scorer, stats
from .errors import EmitError, ParseError

log = logging.getLogger("gum2onto")

EXIT_OK, EXIT_DIAGNOSTICS, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser():
    p = _Parser(prog="gum2onto", description="Convert GUM-style coreference to the "
                "OntoNotes scheme, score and describe the result.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("convert", help="convert a corpus directory")
    c.add_argument("--in", dest="inp", required=True, type=Path)
    c.add_argument("--out", required=True, type=Path)
    c.add_argument("--stop-after-step", type=int, default=8, choices=range(1, 9),
                   metavar="K")
    c.add_argument("--retain-singletons", action="store_true")
    c.add_argument("--trace", type=Path, help="directory for <doc_id>.trace.tsv files")
    c.add_argument("--format", choices=("conll", "tsv"), default="conll",
                   help="conll writes <doc_id>.conll; tsv writes the two-file input layout")
    c.add_argument("--genre", action="append", help="only these genres (repeatable)")
    c.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("score", help="score a response against a key")
    s.add_argument("--key", required=True, type=Path)
    s.add_argument("--response", required=True, type=Path)
    s.add_argument("--tsv", type=Path, help="write genre/metric/P/R/F1 lines here")
    s.add_argument("--genre", action="append")
    s.add_argument("--macro", action="store_true",
                   help="macro-average over documents (non-standard)")

    t = sub.add_parser("stats", help="genre breakdown statistics")
    t.add_argument("--in", dest="inp", required=True, type=Path)
    t.add_argument("--pre-conversion", action="store_true",
                   help="count the input annotation instead of the converted one")
    t.add_argument("--tsv", type=Path)
    t.add_argument("--genre", action="append")
    t.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("validate", help="report structural problems")
    v.add_argument("--in", dest="inp", required=True, type=Path)
    return p


def _load_corpus(root, genres=None):
    source = ingest.discover_corpus(root)
    docs = []
    for doc_id, genre in source.documents:
        if genres and genre not in genres:
            continue
        docs.append(source.load(doc_id))
    return docs


def _options(args):
    return pipeline.ConvertOptions(retain_singletons=args.retain_singletons,
                                   stop_after=args.stop_after_step,
                                   lexicon=analysis.load_lexicon())


def _cmd_convert(args):
    docs = _load_corpus(args.inp, args.genre)
    results = pipeline.convert_many(docs, _options(args), jobs=args.jobs)
    args.out.mkdir(parents=True, exist_ok=True)
    if args.trace:
        args.trace.mkdir(parents=True, exist_ok=True)
    n_diag = 0
    for doc, trace in results:
        if args.format == "tsv":
            ingest.write_document(doc, args.out)
        else:
            (args.out / f"{doc.doc_id}.conll").write_text(
                emit.emit_conll2012(doc), encoding="utf-8", newline="\n")
        if args.trace:
            (args.trace / f"{doc.doc_id}.trace.tsv").write_text(
                trace.to_text(), encoding="utf-8", newline="\n")
        for d in trace.diagnostics:
            print(f"{doc.doc_id}\t{d}", file=sys.stderr)
            n_diag += 1
    log.info("converted %d documents into %s", len(results), args.out)
    return EXIT_DIAGNOSTICS if n_diag else EXIT_OK


def _read_conll(path):
    path = Path(path)
    if path.is_dir():
        files = sorted(p for p in path.iterdir()
                       if p.is_file() and (p.suffix == ".conll" or p.name.endswith("_conll")))
    elif path.is_file():
        files = [path]
    else:
        raise FileNotFoundError(path)
    docs = []
    for f in files:
        try:
            docs.extend(emit.parse_conll2012(f.read_text(encoding="utf-8")))
        except ParseError as e:
            raise ParseError(f"{f}: {e}") from None
    return docs


def _cmd_score(args):
    key = _read_conll(args.key)
    response = _read_conll(args.response)
    if args.genre:
        key = [d for d in key if ingest.genre_of(d.doc_id) in args.genre]
    report = scorer.score_documents(key, response, macro=args.macro)
    sys.stdout.write(scorer.format_report_table(report))
    if args.tsv:
        args.tsv.write_text(scorer.format_report_tsv(report), encoding="utf-8")
    return EXIT_OK


def _cmd_stats(args):
    docs = _load_corpus(args.inp, args.genre)
    if not args.pre_conversion:
        options = pipeline.ConvertOptions(lexicon=analysis.load_lexicon())
        docs = [d for d, _ in pipeline.convert_many(docs, options, jobs=args.jobs)]
    rows = stats.corpus_stats(docs)
    sys.stdout.write(stats.format_stats_table(rows))
    if args.tsv:
        args.tsv.write_text(stats.format_stats_tsv(rows), encoding="utf-8")
    return EXIT_OK


def _cmd_validate(args):
    n = 0
    for doc in _load_corpus(args.inp):
        for d in ingest.validate_document(doc):
            print(d)
            n += 1
    return EXIT_DIAGNOSTICS if n else EXIT_OK


COMMANDS = {
    "convert": _cmd_convert,
    "score": _cmd_score,
    "stats": _cmd_stats,
    "validate": _cmd_validate,
}


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as e:
        print(f"gum2onto: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as e:
        path = e.filename if e.filename else e.args[0] if e.args else e
        print(f"gum2onto: no such file or directory: {path}", file=sys.stderr)
    except (ParseError, EmitError, ValueError) as e:
        print(f"gum2onto: {e}", file=sys.stderr)
    return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
