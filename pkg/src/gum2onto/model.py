"""In-memory representation of an annotated document.

Documents are immutable. Every transformation returns a new ``Document``;
coreference clusters are never stored, they are derived from the relation
edges on demand with :func:`derive_clusters`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .errors import PipelineError

GENRES = (
    "academic", "bio", "conversation", "fiction", "interview", "news",
    "reddit", "speech", "textbook", "vlog", "voyage", "whow",
)

REL_TYPES = frozenset({"coref", "ana", "cata", "bridge", "appos"})

#: Edge types that assert identity of reference and therefore build clusters.
IDENTITY_TYPES = frozenset({"coref", "ana", "appos"})

_SPEAKER_COMMENT = re.compile(r"^#\s*speaker\s*=\s*(.*?)\s*$")
_NEWDOC_COMMENT = re.compile(r"^#\s*newdoc id\s*=\s*(.*?)\s*$")


@dataclass(frozen=True)
class Token:
    index: int  # document-global, 0-based
    sentence_index: int  # ID column, 1-based within the sentence
    form: str
    lemma: str
    upos: str
    xpos: str
    head: int  # sentence-local ID of the governor, 0 = root
    deprel: str
    sentence: int = 0
    deps: str = "_"
    misc: str = "_"
    speaker: Optional[str] = None


@dataclass(frozen=True)
class Sentence:
    tokens: tuple
    comments: tuple = ()

    @property
    def speaker(self):
        for line in self.comments:
            m = _SPEAKER_COMMENT.match(line)
            if m:
                return m.group(1)
        return None

    @property
    def newdoc_id(self):
        for line in self.comments:
            m = _NEWDOC_COMMENT.match(line)
            if m:
                return m.group(1)
        return None

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class Markable:
    id: str
    start: int
    end: int
    head_index: int
    etype: str = "_"

    @property
    def span(self):
        return (self.start, self.end)

    def __len__(self):
        return self.end - self.start + 1

    def contains(self, other):
        """True if ``other`` lies strictly inside this span."""
        return (self.start <= other.start and other.end <= self.end
                and self.span != other.span)


@dataclass(frozen=True)
class RelationEdge:
    anaphor: str
    antecedent: str
    rel_type: str

    def __str__(self):
        return f"{self.rel_type}({self.anaphor}->{self.antecedent})"

    def touches(self, mid):
        return mid == self.anaphor or mid == self.antecedent

    def other(self, mid):
        return self.antecedent if mid == self.anaphor else self.anaphor


@dataclass(frozen=True)
class Cluster:
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mid):
        return mid in self.members


def _markable_order(m):
    return (m.start, m.end, m.id)


@dataclass(frozen=True)
class Document:
    doc_id: str
    genre: str
    sentences: tuple
    markables: tuple = ()
    edges: tuple = ()
    tokens: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tokens",
                           tuple(t for s in self.sentences for t in s.tokens))
        object.__setattr__(self, "markables",
                           tuple(sorted(self.markables, key=_markable_order)))
        ids = [m.id for m in self.markables]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"{self.doc_id}: duplicate markable ids {dup}")
        known = set(ids)
        order = {m.id: k for k, m in enumerate(self.markables)}
        edges = []
        for e in dict.fromkeys(self.edges):
            if e.anaphor not in known or e.antecedent not in known:
                raise ValueError(f"{self.doc_id}: edge {e} names an unknown markable")
            edges.append(e)
        edges.sort(key=lambda e: (order[e.anaphor], order[e.antecedent], e.rel_type))
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def has_gold_speakers(self):
        return any(t.speaker for t in self.tokens)

    @property
    def markable_map(self):
        return {m.id: m for m in self.markables}

    def markable(self, mid):
        for m in self.markables:
            if m.id == mid:
                return m
        raise KeyError(mid)

    def sentence_offsets(self):
        """Document-global index of the first token of every sentence."""
        offsets, n = [], 0
        for s in self.sentences:
            offsets.append(n)
            n += len(s)
        return offsets

    def governor(self, index):
        """Global index of the token governing ``index``, or None for the root."""
        tok = self.tokens[index]
        if tok.head == 0:
            return None
        return index - tok.sentence_index + tok.head

    def dependents(self, index):
        tok = self.tokens[index]
        first = index - tok.sentence_index + 1
        sent = self.sentences[tok.sentence].tokens
        return [first + k for k, t in enumerate(sent) if t.head == tok.sentence_index]

    def evolve(self, markables=None, edges=None):
        """Copy with replaced markables and/or edges (re-normalized)."""
        return replace(
            self,
            markables=self.markables if markables is None else tuple(markables),
            edges=self.edges if edges is None else tuple(edges),
        )

    def span_text(self, m):
        return " ".join(t.form for t in self.tokens[m.start:m.end + 1])


def derive_clusters(doc, edge_filter=IDENTITY_TYPES):
    """Connected components of the markable graph restricted to ``edge_filter``.

    Markables touching no selected edge come back as singleton clusters.
    Members are in document order and clusters are ordered by first member.
    """
    parent = {m.id: m.id for m in doc.markables}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in doc.edges:
        if e.rel_type in edge_filter:
            a, b = find(e.anaphor), find(e.antecedent)
            if a != b:
                parent[a] = b

    groups = {}
    for m in doc.markables:  # already (start, end) sorted
        groups.setdefault(find(m.id), []).append(m.id)
    return [Cluster(tuple(ids)) for ids in groups.values()]


def remove_markable(doc, mid):
    """Drop markable ``mid`` and every edge incident to it."""
    if not any(m.id == mid for m in doc.markables):
        raise PipelineError(f"{doc.doc_id}: no markable {mid!r} to remove")
    return doc.evolve(
        markables=[m for m in doc.markables if m.id != mid],
        edges=[e for e in doc.edges if not e.touches(mid)],
    )


def remove_edges(doc, edges: Iterable[RelationEdge]):
    drop = set(edges)
    return doc.evolve(edges=[e for e in doc.edges if e not in drop])
