"""The eight ordered conversion steps and the orchestrator.

Every step takes a document and returns a new one. Steps only touch the
markable and edge sets; chain structure follows from
:func:`~gum2onto.model.derive_clusters`. Markables that lose their links are
left in place as singletons and only deleted by the final step.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from . import analysis
from .analysis import assign_heads, span_head
from .model import IDENTITY_TYPES, RelationEdge, derive_clusters


@dataclass(frozen=True)
class TraceRecord:
    step: int
    rule: str
    action: str
    target: str
    detail: str = ""

    def __str__(self):
        return f"STEP{self.step}\t{self.rule}\t{self.action}\t{self.target}\t{self.detail}"


@dataclass(frozen=True)
class ConversionTrace:
    records: tuple = ()

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def for_step(self, step):
        return [r for r in self.records if r.step == step]

    @property
    def diagnostics(self):
        return [r for r in self.records if r.action == "diagnostic"]

    def to_text(self):
        return "".join(f"{r}\n" for r in self.records)


@dataclass(frozen=True)
class ConvertOptions:
    retain_singletons: bool = False
    stop_after: int = 8
    lexicon: frozenset = None

    def __post_init__(self):
        if not 1 <= self.stop_after <= 8:
            raise ValueError(f"stop_after must be in 1..8, got {self.stop_after}")


class _Log:
    """Collects trace records for one step."""

    def __init__(self, sink, step, rule):
        self.sink, self.step, self.rule = sink, step, rule

    def __call__(self, action, target, detail=""):
        if self.sink is not None:
            self.sink.append(TraceRecord(self.step, self.rule, action, str(target), detail))


def _mk(m):
    return f"{m.id}[{m.start}-{m.end}]"


def _order_key(m):
    # earlier start first; on a shared start the longer span comes first
    return (m.start, -m.end, m.id)


def _relink_children(doc, src, dst, log):
    """Strand ``src``: drop all its edges, re-pointing its anaphors at ``dst``.

    Edges in which ``src`` is the antecedent are rewritten to point at
    ``dst``; every other edge touching ``src`` is dropped.
    """
    by_id = doc.markable_map
    kept, added = [], []
    for e in doc.edges:
        if not e.touches(src.id):
            kept.append(e)
            continue
        other = e.other(src.id)
        if e.antecedent == src.id and other != dst.id and e.rel_type in IDENTITY_TYPES:
            a, b = by_id[other], dst
            ana, ant = (a, b) if _order_key(a) > _order_key(b) else (b, a)
            new = RelationEdge(ana.id, ant.id, e.rel_type)
            added.append(new)
            log("relink_edge", e, str(new))
        else:
            log("remove_edge", e)
    existing = set(kept)
    kept.extend(e for e in dict.fromkeys(added) if e not in existing)
    return doc.evolve(edges=kept)


def _transfer_all(doc, src, dst, log):
    """Move every edge of ``src`` onto ``dst`` (apposition merge)."""
    by_id = doc.markable_map
    kept, added = [], []
    for e in doc.edges:
        if not e.touches(src.id):
            kept.append(e)
            continue
        other = e.other(src.id)
        if other == dst.id:
            log("remove_edge", e)
            continue
        a, b = by_id[other], dst
        if e.rel_type == "cata":
            ana, ant = (a, b) if _order_key(a) < _order_key(b) else (b, a)
        else:
            ana, ant = (a, b) if _order_key(a) > _order_key(b) else (b, a)
        new = RelationEdge(ana.id, ant.id, e.rel_type)
        added.append(new)
        log("relink_edge", e, str(new))
    existing = set(kept)
    kept.extend(e for e in dict.fromkeys(added) if e not in existing)
    return doc.evolve(edges=kept)


def _same_sentence(doc, a, b):
    return doc.tokens[a.start].sentence == doc.tokens[b.start].sentence


def step1_remove_bridging_and_cataphora(doc, log=None, lexicon=None):
    log = log or _Log(None, 1, "")
    drop = [e for e in doc.edges if e.rel_type in ("bridge", "cata")]
    for e in drop:
        log("remove_edge", e)
    return doc.evolve(edges=[e for e in doc.edges if e not in drop]) if drop else doc


def step2_contract_verbal_spans(doc, log=None, lexicon=None):
    log = log or _Log(None, 2, "")
    out = []
    for m in doc.markables:
        if analysis.is_verbal(doc, m) and m.start != m.end:
            new = replace(m, start=m.head_index, end=m.head_index)
            log("rewrite_span", _mk(m), _mk(new))
            m = new
        out.append(m)
    return doc.evolve(markables=out)


def step3_merge_appositions(doc, log=None, lexicon=None):
    log = log or _Log(None, 3, "")
    while True:
        by_id = doc.markable_map
        appos = [e for e in doc.edges if e.rel_type == "appos"]
        if not appos:
            return doc
        e = min(appos, key=lambda e: (_order_key(by_id[e.antecedent]),
                                      _order_key(by_id[e.anaphor])))
        a, b = by_id[e.antecedent], by_id[e.anaphor]
        doc = doc.evolve(edges=[x for x in doc.edges if x != e])
        log("remove_edge", e)
        if not _same_sentence(doc, a, b):
            log("diagnostic", e, "apposition crosses a sentence boundary; not merged")
            continue
        start, end = min(a.start, b.start), max(a.end, b.end)
        head = span_head(doc, start, end)
        if doc.tokens[head].upos == "VERB":
            start = end = head  # keep verbal mentions contracted
        crossing = [m.id for m in doc.markables
                    if m.id not in (a.id, b.id) and m.start <= end and start <= m.end
                    and not (start <= m.start and m.end <= end)
                    and not (m.start <= start and end <= m.end)]
        if crossing:
            # can happen once step 2 has shrunk one side to its head
            log("diagnostic", e, f"merged span {start}-{end} would cross {','.join(crossing)}; "
                                 "not merged")
            continue
        merged = replace(a, start=start, end=end, head_index=head)
        log("merge", _mk(b), f"into {_mk(merged)}")
        doc = doc.evolve(markables=[merged if m.id == a.id else m for m in doc.markables])
        doc = _transfer_all(doc, b, merged, log)
        doc = doc.evolve(markables=[m for m in doc.markables if m.id != b.id])
        log("remove_markable", _mk(b), "merged")


def step4_remove_nn_compounding(doc, log=None, lexicon=None):
    log = log or _Log(None, 4, "")
    for _ in range(len(doc.markables) + 1):
        linked = {mid for e in doc.edges for mid in (e.anaphor, e.antecedent)}
        targets = {m.id for m in doc.markables
                   if m.id in linked and analysis.is_common_compound_modifier(doc, m)}
        if not targets:
            break
        drop = [e for e in doc.edges if e.anaphor in targets or e.antecedent in targets]
        for e in drop:
            log("remove_edge", e, "compound modifier")
        doc = doc.evolve(edges=[e for e in doc.edges if e not in drop])
    return doc


def _first_pair(doc, match):
    """First (earlier, later) cluster-mate pair satisfying ``match``."""
    by_id = doc.markable_map
    for cluster in derive_clusters(doc, IDENTITY_TYPES):
        if len(cluster) < 2:
            continue
        members = sorted((by_id[mid] for mid in cluster), key=_order_key)
        for j, later in enumerate(members):
            for earlier in members[:j]:
                if match(earlier, later):
                    return earlier, later
    return None


def step5_remove_copula(doc, log=None, lexicon=None):
    log = log or _Log(None, 5, "")

    def copula(subj, pred):
        return (subj.start < pred.start and _same_sentence(doc, subj, pred)
                and analysis.is_copula_predicate(doc, subj, pred))

    for _ in range(len(doc.markables) + 1):
        pair = _first_pair(doc, copula)
        if pair is None:
            break
        subj, pred = pair
        log("strand", _mk(pred), f"copula predicate of {_mk(subj)}")
        doc = _relink_children(doc, pred, subj, log)
    return doc


def step6_remove_nested_entities(doc, log=None, lexicon=None):
    log = log or _Log(None, 6, "")
    for _ in range(len(doc.markables) + 1):
        by_id = doc.markable_map
        inner = None
        for cluster in derive_clusters(doc, IDENTITY_TYPES):
            ms = [by_id[mid] for mid in cluster]
            for m in ms:
                outers = [o for o in ms if o.contains(m)]
                if outers:
                    inner, outer = m, max(outers, key=lambda o: (len(o), -o.start))
                    break
            if inner is not None:
                break
        if inner is None:
            break
        log("strand", _mk(inner), f"nested in {_mk(outer)}")
        doc = _relink_children(doc, inner, outer, log)
    return doc


def step7_adjust_chains_by_definiteness(doc, log=None, lexicon=None):
    log = log or _Log(None, 7, "")
    by_id = doc.markable_map
    indefinite = {
        m.id for m in doc.markables
        if not analysis.classify_definiteness(doc, m, lexicon).definite
    }

    def later(e):
        # span contraction can reorder endpoints, so go by position
        return max(by_id[e.anaphor], by_id[e.antecedent], key=_order_key)

    drop = [e for e in doc.edges if later(e).id in indefinite]
    for e in drop:
        log("remove_edge", e, f"indefinite anaphor {_mk(later(e))}")
    return doc.evolve(edges=[e for e in doc.edges if e not in drop]) if drop else doc


def step8_remove_singletons(doc, log=None, lexicon=None):
    log = log or _Log(None, 8, "")
    linked = {mid for e in doc.edges for mid in (e.anaphor, e.antecedent)}
    for m in doc.markables:
        if m.id not in linked:
            log("remove_markable", _mk(m), "singleton")
    return doc.evolve(markables=[m for m in doc.markables if m.id in linked])


STEPS = (
    (1, "remove_bridging_and_cataphora", step1_remove_bridging_and_cataphora),
    (2, "contract_verbal_spans", step2_contract_verbal_spans),
    (3, "merge_appositions", step3_merge_appositions),
    (4, "remove_nn_compounding", step4_remove_nn_compounding),
    (5, "remove_copula", step5_remove_copula),
    (6, "remove_nested_entities", step6_remove_nested_entities),
    (7, "adjust_chains_by_definiteness", step7_adjust_chains_by_definiteness),
    (8, "remove_singletons", step8_remove_singletons),
)


def _record_splits(before, after, log):
    new_of = {}
    for k, c in enumerate(derive_clusters(after, IDENTITY_TYPES)):
        for mid in c:
            new_of[mid] = k
    for c in derive_clusters(before, IDENTITY_TYPES):
        if len(c) < 2:
            continue
        parts = {}
        for mid in c:
            if mid in new_of:
                parts.setdefault(new_of[mid], []).append(mid)
        if len(parts) > 1:
            log("split_chain", ",".join(c.members),
                " | ".join(",".join(p) for p in parts.values()))


def run_steps(doc, steps=STEPS, lexicon=None):
    """Apply ``steps`` (``(number, name, function)`` triples) in the given order."""
    records = []
    doc = assign_heads(doc)
    for number, name, fn in steps:
        log = _Log(records, number, name)
        after = fn(doc, log=log, lexicon=lexicon)
        _record_splits(doc, after, log)
        doc = after
    return doc, ConversionTrace(tuple(records))


def convert(doc, options=None):
    """Run the conversion steps in their fixed order.

    Returns the converted document and a trace of every mutation.
    """
    options = options or ConvertOptions()
    steps = [s for s in STEPS if s[0] <= options.stop_after]
    if options.retain_singletons:
        steps = [s for s in steps if s[0] != 8]
    return run_steps(doc, steps, options.lexicon)


def _convert_one(args):
    return convert(*args)


def convert_many(docs, options=None, jobs=1):
    """Convert documents in input order, optionally across worker processes."""
    docs = list(docs)
    if jobs <= 1 or len(docs) < 2:
        return [convert(d, options) for d in docs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_convert_one, [(d, options) for d in docs]))
