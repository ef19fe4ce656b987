"""Genre-breakdown corpus statistics."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .analysis import classify_mention_type
from .model import GENRES, IDENTITY_TYPES, derive_clusters

COLUMNS = ("documents", "tokens", "mentions", "proper", "pronoun", "other", "clusters")
_HEADERS = ("Genre", "Documents", "Tokens", "Mentions", "Proper", "Pron.", "Other", "Clusters")


@dataclass(frozen=True)
class GenreStats:
    genre: str
    documents: int = 0
    tokens: int = 0
    mentions: int = 0
    proper: int = 0
    pronoun: int = 0
    other: int = 0
    clusters: int = 0

    def __add__(self, other):
        return GenreStats(self.genre, *(getattr(self, c) + getattr(other, c) for c in COLUMNS))

    def values(self):
        return tuple(getattr(self, c) for c in COLUMNS)


def document_stats(doc):
    """Counts for a single document.

    Mentions are all markables present; clusters are identity chains with at
    least two members.
    """
    types = [classify_mention_type(doc, m) for m in doc.markables]
    clusters = sum(1 for c in derive_clusters(doc, IDENTITY_TYPES) if len(c) >= 2)
    return GenreStats(doc.genre, 1, len(doc.tokens), len(doc.markables),
                      types.count("proper"), types.count("pronoun"), types.count("other"),
                      clusters)


def corpus_stats(docs, genres=GENRES):
    """Per-genre rows (alphabetical) followed by a ``Total`` row.

    Every genre in ``genres`` gets a row even when it has no documents;
    genres outside the list are appended after them.
    """
    rows = {g: GenreStats(g) for g in genres}
    for doc in docs:
        s = document_stats(doc)
        rows[s.genre] = rows.get(s.genre, GenreStats(s.genre)) + s
    ordered = [rows[g] for g in sorted(rows)]
    total = GenreStats("Total")
    for r in ordered:
        total = total + GenreStats("Total", *r.values())
    return ordered + [total]


def format_stats_table(rows):
    table = [_HEADERS] + [(r.genre,) + tuple(f"{v:,}" for v in r.values()) for r in rows]
    widths = [max(len(row[j]) for row in table) for j in range(len(_HEADERS))]
    lines = []
    for k, row in enumerate(table):
        lines.append("  ".join([row[0].ljust(widths[0])]
                               + [v.rjust(widths[j]) for j, v in enumerate(row) if j]))
        if k == 0 or k == len(table) - 2:
            lines.append("-" * len(lines[-1]))
    return "\n".join(lines) + "\n"


def format_stats_tsv(rows):
    lines = ["\t".join(f.name for f in fields(GenreStats))]
    lines += ["\t".join([r.genre, *map(str, r.values())]) for r in rows]
    return "\n".join(lines) + "\n"
