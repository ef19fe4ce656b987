"""CoNLL coreference metrics: MUC, B-cubed, CEAF-e and mention detection.

Clusters are iterables of hashable mentions (typically ``(start, end)``
spans). Each metric returns :class:`MetricCounts`, whose numerators and
denominators add up across documents, so corpus scores are micro-averaged
the way the reference scorer does it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import ingest

METRICS = ("muc", "bcub", "ceafe")


def _ratio(num, den):
    return num / den if den else 0.0


@dataclass(frozen=True)
class MetricCounts:
    recall_num: Fraction = Fraction(0)
    recall_den: Fraction = Fraction(0)
    precision_num: Fraction = Fraction(0)
    precision_den: Fraction = Fraction(0)

    @property
    def recall(self):
        return float(_ratio(self.recall_num, self.recall_den))

    @property
    def precision(self):
        return float(_ratio(self.precision_num, self.precision_den))

    @property
    def f1(self):
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def __add__(self, other):
        return MetricCounts(self.recall_num + other.recall_num,
                            self.recall_den + other.recall_den,
                            self.precision_num + other.precision_num,
                            self.precision_den + other.precision_den)

    def swapped(self):
        return MetricCounts(self.precision_num, self.precision_den,
                            self.recall_num, self.recall_den)


def _clean(clusters):
    return [frozenset(c) for c in clusters if c]


def _muc_side(key, response):
    owner = {m: i for i, c in enumerate(response) for m in c}
    num = den = 0
    for k in key:
        parts = set()
        for m in k:
            parts.add(owner.get(m, ("alone", m)))
        num += len(k) - len(parts)
        den += len(k) - 1
    return Fraction(num), Fraction(den)


def score_muc(key, response):
    key, response = _clean(key), _clean(response)
    rn, rd = _muc_side(key, response)
    pn, pd = _muc_side(response, key)
    return MetricCounts(rn, rd, pn, pd)


def _b3_side(key, response):
    owner = {m: c for c in response for m in c}
    # sum overlap/|k| as one integer fraction, normalized once at the end
    num, scale, den = 0, 1, 0
    for k in key:
        den += len(k)
        overlap = sum(len(k & owner[m]) for m in k if m in owner)
        num, scale = num * len(k) + overlap * scale, scale * len(k)
    return Fraction(num, scale), Fraction(den)


def score_b3(key, response):
    key, response = _clean(key), _clean(response)
    rn, rd = _b3_side(key, response)
    pn, pd = _b3_side(response, key)
    return MetricCounts(rn, rd, pn, pd)


def phi4(k, r):
    return Fraction(2 * len(k & r), len(k) + len(r))


def ceaf_alignment(key, response):
    """Optimal one-to-one alignment of key and response clusters under phi4.

    Returns the list of aligned ``(key_index, response_index)`` pairs and the
    total similarity.
    """
    key, response = _clean(key), _clean(response)
    if not key or not response:
        return [], Fraction(0)
    overlap = [[len(k & r) for r in response] for k in key]
    weights = np.array([[2 * overlap[i][j] / (len(k) + len(r)) for j, r in enumerate(response)]
                        for i, k in enumerate(key)])
    rows, cols = linear_sum_assignment(weights, maximize=True)
    pairs = [(int(i), int(j)) for i, j in zip(rows, cols) if overlap[i][j]]
    # the solver only picks the pairs; the total is summed exactly
    num, scale = 0, 1
    for i, j in pairs:
        size = len(key[i]) + len(response[j])
        num, scale = num * size + 2 * overlap[i][j] * scale, scale * size
    return pairs, Fraction(num, scale)


def score_ceaf_e(key, response):
    key, response = _clean(key), _clean(response)
    _, total = ceaf_alignment(key, response)
    return MetricCounts(total, Fraction(len(key)), total, Fraction(len(response)))


def score_mention_detection(key, response):
    k = {m for c in key for m in c}
    r = {m for c in response for m in c}
    hit = Fraction(len(k & r))
    return MetricCounts(hit, Fraction(len(k)), hit, Fraction(len(r)))


SCORERS = {
    "muc": score_muc,
    "bcub": score_b3,
    "ceafe": score_ceaf_e,
    "mentions": score_mention_detection,
}


def score_all(key, response):
    """All four counts for one document, keyed by metric name."""
    return {name: fn(key, response) for name, fn in SCORERS.items()}


def aggregate(counts):
    """Micro-aggregate per-document counts for one metric."""
    total = MetricCounts()
    for c in counts:
        total = total + c
    return total


def conll_average(muc, bcub, ceafe):
    """Mean F1 of the three metrics, as a percentage with one decimal.

    Each argument is either :class:`MetricCounts` or a plain F1 value. Plain
    values are read as fractions in [0, 1] unless one of them exceeds 1, in
    which case all plain values are taken to be percentages already.
    """
    args = (muc, bcub, ceafe)
    plain = [float(x) for x in args if not isinstance(x, MetricCounts)]
    scale = 100.0 if plain and max(plain) > 1 else 1.0
    f1s = [x.f1 if isinstance(x, MetricCounts) else float(x) / scale for x in args]
    return round(100 * sum(f1s) / 3 + 1e-9, 1)


@dataclass(frozen=True)
class ScoreReport:
    """Counts per document and per genre for a key/response comparison."""
    per_document: dict  # (doc_id, part) -> {metric: MetricCounts}
    genres: dict  # genre -> {metric: MetricCounts}
    total: dict  # {metric: MetricCounts}
    macro: bool = False

    def rows(self):
        """``(label, counts)`` for each genre in alphabetical order, then the total."""
        out = [(g, self.genres[g]) for g in sorted(self.genres)]
        out.append(("all", self.total))
        return out

    def average(self, counts):
        if self.macro:
            return None
        return conll_average(counts["muc"], counts["bcub"], counts["ceafe"])


def score_documents(key_docs, response_docs, genre_of=None, macro=False):
    """Score CoNLL-2012 documents (``Conll2012Document``) pairwise by id and part.

    A key document missing from the response scores against an empty
    response; response-only documents are ignored.
    """
    genre_of = genre_of or ingest.genre_of
    responses = {d.key: d for d in response_docs}
    per_doc = {}
    for kd in key_docs:
        rd = responses.get(kd.key)
        if rd is not None and rd.n_tokens != kd.n_tokens:
            raise ValueError(f"{kd.doc_id} part {kd.part_number}: key has {kd.n_tokens} "
                             f"tokens, response {rd.n_tokens}")
        per_doc[kd.key] = score_all(kd.clusters, rd.clusters if rd else ())

    by_genre = {}
    for (doc_id, _), counts in per_doc.items():
        by_genre.setdefault(genre_of(doc_id), []).append(counts)
    metrics = list(SCORERS)
    if macro:
        genres = {g: {m: _macro_counts([c[m] for c in docs]) for m in metrics}
                  for g, docs in by_genre.items()}
        total = {m: _macro_counts([c[m] for c in per_doc.values()]) for m in metrics}
    else:
        genres = {g: {m: aggregate(c[m] for c in docs) for m in metrics}
                  for g, docs in by_genre.items()}
        total = {m: aggregate(c[m] for c in per_doc.values()) for m in metrics}
    return ScoreReport(per_doc, genres, total, macro)


def _macro_counts(counts):
    """Encode macro-averaged P and R as counts over the document count."""
    n = len(counts)
    p = sum((Fraction(_ratio(c.precision_num, c.precision_den)) for c in counts), Fraction(0))
    r = sum((Fraction(_ratio(c.recall_num, c.recall_den)) for c in counts), Fraction(0))
    return MetricCounts(r, Fraction(n), p, Fraction(n))


_HEAD1 = ["", "MUC", "", "", "B3", "", "", "CEAF_phi4", "", "", "", "Mention Detection", "", ""]
_HEAD2 = ["Genre", "P", "R", "F1", "P", "R", "F1", "P", "R", "F1", "Avg. F1", "P", "R", "F1"]


def _pct(x):
    return f"{100 * x:.1f}"


def format_report_table(report):
    """Aligned text table with the usual coreference results layout."""
    rows = [_HEAD1, _HEAD2]
    for label, c in report.rows():
        row = [label]
        for m in METRICS:
            row += [_pct(c[m].precision), _pct(c[m].recall), _pct(c[m].f1)]
        if report.macro:
            row.append(_pct(sum(c[m].f1 for m in METRICS) / 3))
        else:
            row.append(f"{report.average(c):.1f}")
        md = c["mentions"]
        row += [_pct(md.precision), _pct(md.recall), _pct(md.f1)]
        rows.append(row)
    widths = [max(len(r[j]) for r in rows) for j in range(len(_HEAD2))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [v.rjust(widths[j]) for j, v in enumerate(r) if j]
        lines.append("  ".join(cells).rstrip())
    if report.macro:
        lines.append("(macro-averaged over documents; not the standard CoNLL aggregation)")
    return "\n".join(lines) + "\n"


def format_report_tsv(report):
    """``genre<TAB>metric<TAB>P<TAB>R<TAB>F1`` lines, values in percent."""
    lines = []
    for label, c in report.rows():
        for m in METRICS + ("mentions",):
            x = c[m]
            lines.append(f"{label}\t{m}\t{100 * x.precision:.2f}\t{100 * x.recall:.2f}\t"
                         f"{100 * x.f1:.2f}")
        avg = (sum(c[m].f1 for m in METRICS) / 3 * 100 if report.macro
               else report.average(c))
        lines.append(f"{label}\tconll\t-\t-\t{avg:.2f}")
    return "\n".join(lines) + "\n"
