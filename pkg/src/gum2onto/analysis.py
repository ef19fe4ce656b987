"""Dependency-tree classifiers consulted by the conversion rules."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

LEXICON_ENV = "GUM2ONTO_DETERMINERS"

# "any" only counts as definite outside negative-polarity contexts.
NEGATORS = frozenset({"not", "n't", "never", "no", "without", "nor"})

DEFINITENESS_REASONS = ("pronoun", "possessed", "proper", "definite-determiner", "none")


@dataclass(frozen=True)
class Definiteness:
    value: str
    reason: str

    def __post_init__(self):
        if self.reason not in DEFINITENESS_REASONS:
            raise ValueError(f"unknown definiteness reason {self.reason!r}")
        if (self.value == "definite") != (self.reason != "none"):
            raise ValueError(f"inconsistent definiteness {self.value}/{self.reason}")

    @property
    def definite(self):
        return self.value == "definite"


def parse_lexicon(text):
    """One lemma per line; ``#`` starts a comment."""
    lemmas = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lemmas.add(line.lower())
    return frozenset(lemmas)


def load_lexicon(path=None):
    """Definite-determiner lemmas from ``path``, the env override, or the bundled list."""
    path = path or os.environ.get(LEXICON_ENV)
    if path:
        return parse_lexicon(Path(path).read_text(encoding="utf-8"))
    text = resources.files("gum2onto").joinpath("data/determiners.txt").read_text(encoding="utf-8")
    return parse_lexicon(text)


DEFAULT_LEXICON = load_lexicon()


def find_head(doc, markable):
    """Global index of the span's syntactic head.

    The head is the token whose governor lies outside the span (or which is
    the sentence root). Ill-formed spans with several such tokens resolve to
    the leftmost one.
    """
    return span_head(doc, markable.start, markable.end)


def span_head(doc, start, end):
    for i in range(start, end + 1):
        gov = doc.governor(i)
        if gov is None or not start <= gov <= end:
            return i
    # unreachable for trees: some token in any span has an external governor
    return start


def assign_heads(doc):
    """Recompute every markable's head token from the dependency tree."""
    return doc.evolve(markables=[replace(m, head_index=find_head(doc, m))
                                 for m in doc.markables])


def _negated(doc, head, det):
    # only the nominal's own dependents count, so material outside the
    # mention cannot flip the result
    for i in (head, det):
        for d in doc.dependents(i):
            if doc.tokens[d].lemma.lower() in NEGATORS:
                return True
    return False


def classify_definiteness(doc, markable, lexicon=None):
    lexicon = DEFAULT_LEXICON if lexicon is None else lexicon
    head = doc.tokens[markable.head_index]
    if head.upos == "PRON":
        return Definiteness("definite", "pronoun")
    deps = doc.dependents(markable.head_index)
    if any(doc.tokens[d].deprel == "nmod:poss" for d in deps):
        return Definiteness("definite", "possessed")
    if head.upos == "PROPN":
        return Definiteness("definite", "proper")
    for d in deps:
        lemma = doc.tokens[d].lemma.lower()
        if doc.tokens[d].deprel == "det" and lemma in lexicon:
            if lemma == "any" and _negated(doc, markable.head_index, d):
                continue
            return Definiteness("definite", "definite-determiner")
    return Definiteness("indefinite", "none")


def classify_mention_type(doc, markable):
    upos = doc.tokens[markable.head_index].upos
    if upos == "PROPN":
        return "proper"
    if upos == "PRON":
        return "pronoun"
    return "other"


def is_verbal(doc, markable):
    return doc.tokens[markable.head_index].upos == "VERB"


def is_copula_predicate(doc, subject_mk, predicate_mk):
    """True if ``predicate_mk`` is the nominal predicate of a copula whose
    subject is ``subject_mk``."""
    h = predicate_mk.head_index
    gov = doc.governor(h)
    if gov is not None and predicate_mk.start <= gov <= predicate_mk.end:
        return False
    deps = doc.dependents(h)
    if not any(doc.tokens[d].deprel == "cop" for d in deps):
        return False
    subj = subject_mk.head_index
    return doc.governor(subj) == h and doc.tokens[subj].deprel == "nsubj"


def is_common_compound_modifier(doc, markable):
    """Common-noun compound modifiers; proper-name modifiers are exempt."""
    head = doc.tokens[markable.head_index]
    if head.deprel != "compound" or head.upos != "NOUN":
        return False
    gov = doc.governor(markable.head_index)
    return gov is not None and doc.tokens[gov].upos == "NOUN"


def is_nested_in_antecedent(doc, inner_mk, outer_mk):
    return outer_mk.contains(inner_mk)
