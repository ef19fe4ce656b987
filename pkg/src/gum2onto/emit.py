"""CoNLL-2012 coreference format: writer and reader.

Columns per token row: document id, part number, word number, word, POS,
parse bit, predicate lemma, frameset id, word sense, speaker, named
entities, coreference. Only the coreference column carries information
produced by the conversion; the parse bit is always ``*`` and the OntoNotes
proposition/sense/NE layers are blank.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EmitError, ParseError
from .model import IDENTITY_TYPES, derive_clusters

_BEGIN = re.compile(r"^#begin document \((.*)\); part (\d+)\s*$")
_END = "#end document"
_CELL = re.compile(r"^(\()?(\d+)(\))?$")


@dataclass(frozen=True)
class ConllRow:
    """One token row minus the document, part, word-number and coref columns."""
    fields: tuple  # word, POS, parse, lemma, frameset, sense, speaker, NE, ...

    @property
    def form(self):
        return self.fields[0]


@dataclass(frozen=True)
class Conll2012Document:
    doc_id: str
    part_number: int
    sentences: tuple  # tuple of tuples of ConllRow
    clusters: tuple  # tuple of tuples of (start, end), document-global token offsets

    @property
    def key(self):
        return (self.doc_id, self.part_number)

    @property
    def n_tokens(self):
        return sum(len(s) for s in self.sentences)

    @property
    def mentions(self):
        return [m for c in self.clusters for m in c]


def _clean(value):
    value = re.sub(r"\s+", "_", value) if value else ""
    return value or "-"


def _normalize_clusters(clusters):
    """Dedupe mentions, sort, and number clusters by first mention."""
    out = []
    for c in clusters:
        spans = sorted(set(c))
        if spans:
            out.append(tuple(spans))
    out.sort(key=lambda c: (c[0][0], -c[0][1], c))
    return tuple(out)


def to_conll_document(doc, part_number=0):
    """Build the CoNLL-2012 view of a converted document."""
    by_id = doc.markable_map
    clusters = [[by_id[mid].span for mid in c]
                for c in derive_clusters(doc, IDENTITY_TYPES)]
    sentences = []
    for s in doc.sentences:
        rows = []
        for t in s.tokens:
            pos = t.xpos if t.xpos not in ("", "_") else t.upos
            rows.append(ConllRow((_clean(t.form), _clean(pos), "*", "-", "-", "-",
                                  _clean(t.speaker), "*")))
        sentences.append(tuple(rows))
    return Conll2012Document(doc.doc_id, part_number, tuple(sentences),
                             _normalize_clusters(clusters))


def _check_unambiguous(cdoc):
    for cid, spans in enumerate(cdoc.clusters):
        for i, (s1, e1) in enumerate(spans):
            for s2, e2 in spans[i + 1:]:
                overlap = s1 <= e2 and s2 <= e1
                nested = (s1 <= s2 and e2 <= e1) or (s2 <= s1 and e1 <= e2)
                if overlap and not nested:
                    raise EmitError(
                        f"{cdoc.doc_id}: mentions {s1}-{e1} and {s2}-{e2} of cluster "
                        f"{cid} overlap without nesting")


def coref_cells(cdoc):
    """Coreference column value for every token, in document order."""
    _check_unambiguous(cdoc)
    n = cdoc.n_tokens
    opens = [[] for _ in range(n)]
    singles = [[] for _ in range(n)]
    closes = [[] for _ in range(n)]
    for cid, spans in enumerate(cdoc.clusters):
        for s, e in spans:
            if not 0 <= s <= e < n:
                raise EmitError(f"{cdoc.doc_id}: mention {s}-{e} outside 0..{n - 1}")
            if s == e:
                singles[s].append(cid)
            else:
                opens[s].append((-e, cid))
                closes[e].append((-s, cid))
    cells = []
    for k in range(n):
        parts = [f"({cid}" for _, cid in sorted(opens[k])]
        parts += [f"({cid})" for cid in sorted(singles[k])]
        parts += [f"{cid})" for _, cid in sorted(closes[k])]
        cells.append("|".join(parts) or "-")
    return cells


def format_conll2012(cdoc):
    cells = coref_cells(cdoc)
    part = f"{cdoc.part_number:03d}"
    table = []
    k = 0
    for sent in cdoc.sentences:
        block = []
        for i, row in enumerate(sent):
            block.append([cdoc.doc_id, str(cdoc.part_number), str(i), *row.fields, cells[k]])
            k += 1
        table.append(block)
    widths = {}
    for block in table:
        for cols in block:
            for j, v in enumerate(cols[:-1]):
                widths[j] = max(widths.get(j, 0), len(v))
    lines = [f"#begin document ({cdoc.doc_id}); part {part}"]
    for block in table:
        for cols in block:
            lines.append(" ".join(v.ljust(widths[j]) for j, v in enumerate(cols[:-1]))
                         + " " + cols[-1])
        lines.append("")
    lines.append(_END)
    return "\n".join(lines) + "\n"


def emit_conll2012(doc, part_number=0):
    return format_conll2012(to_conll_document(doc, part_number))


def parse_conll2012(text):
    """Parse every ``#begin document`` ... ``#end document`` unit in ``text``."""
    docs = []
    current = None
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.rstrip("\r")
        if line.startswith("#begin document"):
            if current is not None:
                raise ParseError("#begin document inside an open document", lineno)
            m = _BEGIN.match(line)
            if not m:
                raise ParseError(f"malformed header {line!r}", lineno)
            current = _Builder(m.group(1), int(m.group(2)), lineno)
        elif line.startswith(_END):
            if current is None:
                raise ParseError("#end document without #begin document", lineno)
            docs.append(current.finish(lineno))
            current = None
        elif not line.strip():
            if current is not None:
                current.end_sentence()
        elif line.startswith("#"):
            continue
        else:
            if current is None:
                raise ParseError("token row outside a document", lineno)
            current.add_row(line.split(), lineno)
    if current is not None:
        raise ParseError(f"document {current.doc_id!r} lacks #end document", lineno)
    return docs


class _Builder:
    def __init__(self, doc_id, part, lineno):
        self.doc_id, self.part, self.lineno = doc_id, part, lineno
        self.sentences, self.rows = [], []
        self.n = 0
        self.width = None
        self.stacks = {}
        self.clusters = {}

    def end_sentence(self):
        if self.rows:
            self.sentences.append(tuple(self.rows))
            self.rows = []

    def add_row(self, cols, lineno):
        if len(cols) < 5:
            raise ParseError(f"expected at least 5 columns, found {len(cols)}", lineno)
        if self.width is None:
            self.width = len(cols)
        elif len(cols) != self.width:
            raise ParseError(f"expected {self.width} columns, found {len(cols)}", lineno)
        if cols[0] != self.doc_id:
            raise ParseError(f"row document {cols[0]!r} != {self.doc_id!r}", lineno)
        if cols[2] != str(len(self.rows)):
            raise ParseError(f"word number {cols[2]} but expected {len(self.rows)}", lineno)
        self.rows.append(ConllRow(tuple(cols[3:-1])))
        self._coref(cols[-1], lineno)
        self.n += 1

    def _coref(self, cell, lineno):
        if cell == "-":
            return
        parsed = []
        for part in cell.split("|"):
            m = _CELL.match(part)
            if not m or not (m.group(1) or m.group(3)):
                raise ParseError(f"malformed coreference entry {part!r}", lineno)
            parsed.append((bool(m.group(1)), int(m.group(2)), bool(m.group(3))))
        k = self.n
        for opening, cid, closing in parsed:
            if opening and not closing:
                self.stacks.setdefault(cid, []).append(k)
        for opening, cid, closing in parsed:
            if opening and closing:
                self.clusters.setdefault(cid, []).append((k, k))
        for opening, cid, closing in parsed:
            if closing and not opening:
                stack = self.stacks.get(cid)
                if not stack:
                    raise ParseError(f"{cid}) closes no open mention", lineno)
                self.clusters.setdefault(cid, []).append((stack.pop(), k))

    def finish(self, lineno):
        self.end_sentence()
        for cid, stack in self.stacks.items():
            if stack:
                raise ParseError(f"({cid} opened at token {stack[-1]} is never closed", lineno)
        return Conll2012Document(self.doc_id, self.part, tuple(self.sentences),
                                 _normalize_clusters(self.clusters.values()))
