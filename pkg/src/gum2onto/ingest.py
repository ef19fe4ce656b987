"""Readers and writers for the two-file input layout.

A document is stored as ``<doc_id>.dep.tsv`` (dependency layer) next to
``<doc_id>.coref.tsv`` (markables and relations).

Dependency file: ten tab-separated columns per token, ``ID FORM LEMMA UPOS
XPOS HEAD DEPREL DEPS MISC SPEAKER``. Blank lines end sentences, ``#`` lines
are comments; ``# newdoc id = ...`` names the document and ``# speaker = ...``
sets the speaker of every token in the sentence unless the token carries
its own (SPEAKER column, or ``Speaker=`` in MISC).

Coreference file::

    M   <id>   <start>-<end>   <etype>      (document-global, inclusive)
    R   <anaphor>   <antecedent>   <rel_type>
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .analysis import assign_heads
from .errors import ParseError
from .model import GENRES, REL_TYPES, Document, Markable, RelationEdge, Sentence, Token

DEP_SUFFIX = ".dep.tsv"
COREF_SUFFIX = ".coref.tsv"
N_COLUMNS = 10


def genre_of(doc_id):
    parts = doc_id.split("_")
    return parts[1] if len(parts) >= 3 else ""


def _misc_speaker(misc):
    for item in misc.split("|"):
        if item.startswith("Speaker="):
            return item[len("Speaker="):]
    return None


def parse_dependency_file(text):
    """Parse the dependency layer into a list of :class:`Sentence`."""
    sentences = []
    comments, rows = [], []
    first_line = None

    def flush():
        nonlocal comments, rows
        if rows:
            sentences.append(_build_sentence(rows, comments, len(sentences),
                                             sum(len(s) for s in sentences), first_line))
        elif comments and sentences:
            raise ParseError("comment block without tokens", first_line)
        comments, rows = [], []

    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            if rows:
                raise ParseError("comment inside a sentence", lineno)
            if not comments:
                first_line = lineno
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != N_COLUMNS:
            raise ParseError(f"expected {N_COLUMNS} columns, found {len(cols)}", lineno)
        if "-" in cols[0] or "." in cols[0]:
            continue  # multiword-token range or empty node
        if not rows and not comments:
            first_line = lineno
        rows.append((lineno, cols))
    flush()
    return sentences


def _build_sentence(rows, comments, sent_no, offset, first_line):
    sentence_speaker = Sentence((), tuple(comments)).speaker
    n = len(rows)
    tokens = []
    roots = 0
    for k, (lineno, cols) in enumerate(rows, 1):
        tid, form, lemma, upos, xpos, head, deprel, deps, misc, speaker = cols
        try:
            tid = int(tid)
        except ValueError:
            raise ParseError(f"non-integer token id {tid!r}", lineno) from None
        if tid != k:
            raise ParseError(f"token id {tid} out of sequence (expected {k})", lineno)
        try:
            head = int(head)
        except ValueError:
            raise ParseError(f"non-integer head {head!r}", lineno) from None
        if not 0 <= head <= n:
            raise ParseError(f"head {head} out of range 0..{n}", lineno)
        if head == tid:
            raise ParseError(f"token {tid} governs itself", lineno)
        if head == 0:
            roots += 1
            if roots > 1:
                raise ParseError("sentence has more than one root", lineno)
        if speaker == "_":
            speaker = _misc_speaker(misc) or sentence_speaker
        tokens.append(Token(index=offset + k - 1, sentence_index=tid, form=form,
                            lemma=lemma, upos=upos, xpos=xpos, head=head,
                            deprel=deprel, sentence=sent_no, deps=deps, misc=misc,
                            speaker=speaker))
    if roots == 0:
        raise ParseError("sentence has no root", first_line)
    _check_acyclic(tokens, first_line)
    return Sentence(tuple(tokens), tuple(comments))


def _check_acyclic(tokens, lineno):
    heads = {t.sentence_index: t.head for t in tokens}
    for t in tokens:
        seen, cur = set(), t.sentence_index
        while cur:
            if cur in seen:
                raise ParseError(f"dependency cycle through token {cur}", lineno)
            seen.add(cur)
            cur = heads[cur]


def format_dependency_file(sentences):
    lines = []
    for s in sentences:
        lines.extend(s.comments)
        inherited = s.speaker
        for t in s.tokens:
            default = _misc_speaker(t.misc) or inherited
            speaker = "_" if t.speaker == default or t.speaker is None else t.speaker
            lines.append("\t".join([str(t.sentence_index), t.form, t.lemma, t.upos,
                                    t.xpos, str(t.head), t.deprel, t.deps, t.misc,
                                    speaker]))
        lines.append("")
    return "\n".join(lines) + ("\n" if lines else "")


def _normalize_rel(rel, lineno):
    if rel.startswith("bridge:"):
        return "bridge"
    if rel not in REL_TYPES:
        raise ParseError(f"unknown relation type {rel!r}", lineno)
    return rel


def parse_coref_file(text, sentences=None):
    """Parse the coreference layer into ``(markables, edges)``.

    When ``sentences`` is given, spans are checked against the token range
    and sentence boundaries. ``head_index`` is provisionally the span start;
    :func:`build_document` assigns the real heads.
    """
    spans = {}
    edges = []
    etypes = {}
    edge_lines = []
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        kind = cols[0]
        if kind == "M":
            if len(cols) != 4:
                raise ParseError("markable line needs 4 columns", lineno)
            _, mid, span, etype = cols
            if mid in spans:
                raise ParseError(f"duplicate markable id {mid!r}", lineno)
            start, sep, end = span.partition("-")
            try:
                start, end = int(start), int(end)
            except ValueError:
                raise ParseError(f"malformed span {span!r}", lineno) from None
            if not sep or start < 0 or end < start:
                raise ParseError(f"malformed span {span!r}", lineno)
            spans[mid] = (start, end, lineno)
            etypes[mid] = etype
        elif kind == "R":
            if len(cols) != 4:
                raise ParseError("relation line needs 4 columns", lineno)
            _, ana, ant, rel = cols
            if ana == ant:
                raise ParseError(f"self-loop on {ana!r}", lineno)
            edges.append(RelationEdge(ana, ant, _normalize_rel(rel, lineno)))
            edge_lines.append(lineno)
        else:
            raise ParseError(f"unknown record type {kind!r}", lineno)

    for e, lineno in zip(edges, edge_lines):
        for mid in (e.anaphor, e.antecedent):
            if mid not in spans:
                raise ParseError(f"relation names undefined markable {mid!r}", lineno)

    if sentences is not None:
        sent_of = [s_no for s_no, s in enumerate(sentences) for _ in s.tokens]
        for mid, (start, end, lineno) in spans.items():
            if end >= len(sent_of):
                raise ParseError(f"span {start}-{end} beyond last token {len(sent_of) - 1}", lineno)
            if sent_of[start] != sent_of[end]:
                raise ParseError(f"span {start}-{end} crosses a sentence boundary", lineno)

    markables = [Markable(mid, start, end, start, etypes[mid])
                 for mid, (start, end, _) in spans.items()]
    return markables, edges


def format_coref_file(doc):
    lines = [f"M\t{m.id}\t{m.start}-{m.end}\t{m.etype}" for m in doc.markables]
    lines += [f"R\t{e.anaphor}\t{e.antecedent}\t{e.rel_type}" for e in doc.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def build_document(doc_id, sentences, markables=(), edges=()):
    doc = Document(doc_id=doc_id, genre=genre_of(doc_id), sentences=tuple(sentences),
                   markables=tuple(markables), edges=tuple(edges))
    return assign_heads(doc)


def read_document(dep_text, coref_text, doc_id=None):
    sentences = parse_dependency_file(dep_text)
    if doc_id is None:
        doc_id = sentences[0].newdoc_id if sentences else None
        if doc_id is None:
            raise ParseError("no '# newdoc id' comment and no document id given")
    markables, edges = parse_coref_file(coref_text, sentences)
    return build_document(doc_id, sentences, markables, edges)


@dataclass(frozen=True)
class Diagnostic:
    doc_id: str
    code: str
    message: str

    def __str__(self):
        return f"{self.doc_id}\t{self.code}\t{self.message}"


def validate_document(doc):
    diags = []
    if doc.genre not in GENRES:
        diags.append(Diagnostic(doc.doc_id, "genre",
                                f"genre {doc.genre!r} is not one of {', '.join(GENRES)}"))
    by_id = doc.markable_map
    for m in doc.markables:
        if not m.start <= m.head_index <= m.end:
            diags.append(Diagnostic(doc.doc_id, "head",
                                    f"markable {m.id} head {m.head_index} outside {m.start}-{m.end}"))
    for e in doc.edges:
        ana, ant = by_id[e.anaphor], by_id[e.antecedent]
        if e.rel_type == "cata":
            ok = ant.start > ana.start
        else:
            ok = ant.start < ana.start
        if not ok:
            want = "follow" if e.rel_type == "cata" else "precede"
            diags.append(Diagnostic(doc.doc_id, "direction",
                                    f"{e}: antecedent must {want} the anaphor"))
    return diags


@dataclass(frozen=True)
class CorpusSource:
    root_path: Path
    documents: tuple = field(default=())

    def load(self, doc_id):
        return load_document(self.root_path, doc_id)

    def load_all(self):
        return [self.load(doc_id) for doc_id, _ in self.documents]


def discover_corpus(root):
    """Find ``<doc_id>.dep.tsv`` files under ``root`` (non-recursive)."""
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(root)
    docs = []
    for path in sorted(root.glob("*" + DEP_SUFFIX)):
        doc_id = path.name[:-len(DEP_SUFFIX)]
        docs.append((doc_id, genre_of(doc_id)))
    return CorpusSource(root, tuple(docs))


def load_document(root, doc_id):
    root = Path(root)
    dep = root / (doc_id + DEP_SUFFIX)
    coref = root / (doc_id + COREF_SUFFIX)
    for p in (dep, coref):
        if not p.is_file():
            raise FileNotFoundError(p)
    doc = read_document(dep.read_text(encoding="utf-8"),
                        coref.read_text(encoding="utf-8"), doc_id=doc_id)
    return doc


def write_document(doc, root):
    """Write ``doc`` in the two-file layout under ``root``."""
    root = Path(root)
    (root / (doc.doc_id + DEP_SUFFIX)).write_text(format_dependency_file(doc.sentences),
                                                  encoding="utf-8", newline="\n")
    (root / (doc.doc_id + COREF_SUFFIX)).write_text(format_coref_file(doc),
                                                    encoding="utf-8", newline="\n")
