import re

import pytest
from hypothesis import given, settings

from builders import FARM, ids, make_doc
from expected import expected_partition, load_fixtures, partition
from gum2onto import fixtures_path, load_document
from gum2onto.model import IDENTITY_TYPES, derive_clusters
from gum2onto.pipeline import (
    STEPS,
    ConvertOptions,
    convert,
    convert_many,
    run_steps,
    step1_remove_bridging_and_cataphora,
    step2_contract_verbal_spans,
    step3_merge_appositions,
    step4_remove_nn_compounding,
    step5_remove_copula,
    step6_remove_nested_entities,
    step7_adjust_chains_by_definiteness,
    step8_remove_singletons,
)
from invariants import check, violations
from randomdocs import documents, random_documents

FLAT = [[("w0", "NOUN", 0, "root")] + [(f"w{k}", "NOUN", 1, "dep") for k in range(1, 8)]]


def fixture(doc_id):
    return load_document(fixtures_path(), doc_id)


def upto(doc_id, last):
    """Fixture after steps 1..last."""
    doc, _ = run_steps(fixture(doc_id), STEPS[:last])
    return doc


def edge_strs(doc):
    return {str(e) for e in doc.edges}


def test_step1_cataphora_example():
    doc = make_doc(FLAT, [("it1", 0, 0), ("clause", 2, 4), ("it2", 6, 6)],
                   [("it1", "clause", "cata"), ("it2", "it1", "coref")])
    out = step1_remove_bridging_and_cataphora(doc)
    assert edge_strs(out) == {"coref(it2->it1)"}
    assert ids(derive_clusters(out)) == {frozenset({"it1", "it2"}), frozenset({"clause"})}
    assert out.markables == doc.markables


def test_step1_bridging_example():
    doc = upto("GUM_academic_bridging", 1)
    assert edge_strs(doc) == {"coref(paper_2->paper_1)", "ana(we_2->we)"}
    singles = {c.members[0] for c in derive_clusters(doc) if len(c) == 1}
    assert {"claire", "andrew", "daniel"} <= singles


def test_step1_without_bridges_is_identity():
    doc = make_doc(FLAT, [("a", 0, 0), ("b", 2, 2)], [("b", "a", "coref")])
    assert step1_remove_bridging_and_cataphora(doc) == doc


def test_step2_contracts_clause_to_head_verb():
    doc = upto("GUM_interview_cataphora", 2)
    clause = doc.markable("clause")
    assert (clause.start, clause.end) == (clause.head_index, clause.head_index)
    assert doc.tokens[clause.head_index].form == "be"


def test_step2_leaves_nominals_and_single_verbs():
    doc = make_doc([[("ran", "VERB", 0, "root"), ("the", "DET", 3, "det"),
                     ("dog", "NOUN", 1, "obj")]], [("v", 0, 0), ("dog", 1, 2)])
    assert step2_contract_verbal_spans(doc) == doc


def test_step3_merges_lens_apposition():
    doc = upto("GUM_news_lens", 3)
    lens = doc.markable("lens_a")
    assert (lens.start, lens.end) == (8, 21)
    assert doc.tokens[12].form == ","  # the comma between the two spans is inside
    assert "lens_b" not in doc.markable_map
    assert "coref(lens_c->lens_a)" in edge_strs(doc)


def test_step3_without_appositions_is_identity():
    doc = make_doc(FLAT, [("a", 0, 0), ("b", 2, 2)], [("b", "a", "coref")])
    assert step3_merge_appositions(doc) == doc


def test_step3_reattaches_anaphor_of_merged_markable():
    doc = make_doc(FLAT, [("a", 1, 2), ("b", 3, 4), ("c", 6, 6)],
                   [("b", "a", "appos"), ("c", "b", "coref")])
    out = step3_merge_appositions(doc)
    assert edge_strs(out) == {"coref(c->a)"}
    assert out.markable("a").span == (1, 4)


def test_step3_cascade_merges_left_to_right():
    doc = upto("GUM_bio_norton", 3)
    norton = doc.markable("norton")
    assert norton.span == (0, 9)
    assert edge_strs(doc) == {"ana(he->norton)", "coref(paris_2->paris_1)"}


def test_step3_cross_sentence_apposition_is_a_diagnostic():
    doc = make_doc([FLAT[0], FLAT[0]], [("a", 1, 2), ("b", 9, 9)], [("b", "a", "appos")])
    out, trace = run_steps(doc, [STEPS[2]])
    assert out.edges == ()
    assert out.markable("a").span == (1, 2)
    assert len(trace.diagnostics) == 1


def test_step3_merge_that_would_cross_a_markable_is_skipped():
    # "a" sits inside "x"; absorbing "b" would give 2-7, which crosses x at 1-3
    doc = make_doc(FLAT, [("x", 1, 3), ("a", 2, 2), ("b", 7, 7)],
                   [("b", "a", "appos"), ("a", "x", "ana")])
    out, trace = run_steps(doc, [STEPS[2]])
    assert [m.span for m in out.markables] == [(1, 3), (2, 2), (7, 7)]
    assert edge_strs(out) == {"ana(a->x)"}
    assert len(trace.diagnostics) == 1


def test_step4_strands_cataract_chain():
    doc = upto("GUM_news_lens", 4)
    assert not any(e.touches("cataract_1") or e.touches("cataract_2") for e in doc.edges)
    assert {"cataract_1", "cataract_2"} <= doc.markable_map.keys()


def test_step4_proper_name_modifiers_untouched():
    doc = upto("GUM_textbook_cell", 3)
    after = step4_remove_nn_compounding(doc)
    assert "coref(mendel_2->mendel_1)" in edge_strs(after)


def test_step4_splits_chain_through_compound():
    doc = upto("GUM_textbook_cell", 4)
    clusters = ids(derive_clusters(doc))
    assert frozenset({"cell_1"}) in clusters and frozenset({"cell_3"}) in clusters


def test_step5_copula():
    doc = upto("GUM_academic_art", 5)
    assert edge_strs(doc) == {"ana(it->experience)"}
    assert "one" in doc.markable_map


def test_step5_without_copula_is_identity():
    doc = make_doc(FARM, [("parents", 0, 1), ("they", 6, 6)], [("they", "parents", "ana")])
    assert step5_remove_copula(doc) == doc


def test_step5_stacked_copulas():
    doc = upto("GUM_speech_promise", 5)
    assert ids(derive_clusters(doc)) == {frozenset({"plan", "promise_2", "it"}),
                                         frozenset({"promise_1"}), frozenset({"contract"}),
                                         frozenset({"us"})}


def test_step6_nested_it_unlinked():
    doc = upto("GUM_reddit_visit", 6)
    assert not any(e.touches("it") for e in doc.edges)
    assert "ana(that->way)" in edge_strs(doc)


def test_step6_disjoint_pair_unchanged():
    doc = make_doc(FLAT, [("a", 0, 1), ("b", 3, 3)], [("b", "a", "coref")])
    assert step6_remove_nested_entities(doc) == doc


def test_step6_relinks_later_anaphor_to_outer():
    doc = make_doc(FLAT, [("outer", 1, 4), ("inner", 3, 3), ("later", 6, 6)],
                   [("inner", "outer", "ana"), ("later", "inner", "ana")])
    out = step6_remove_nested_entities(doc)
    assert edge_strs(out) == {"ana(later->outer)"}


def test_step7_farm_split():
    doc = upto("GUM_fiction_farm", 7)
    clusters = ids(derive_clusters(doc))
    assert frozenset({"home"}) in clusters
    assert frozenset({"farm_1", "farm_2"}) in clusters


def test_step7_definite_chain_unchanged():
    doc = make_doc(FARM, [("parents", 0, 1), ("they", 6, 6)], [("they", "parents", "ana")])
    assert step7_adjust_chains_by_definiteness(doc) == doc


def test_step7_indefinite_first_mention_unchanged():
    doc = make_doc(FARM, [("farm_1", 4, 5), ("farm_2", 8, 9)], [("farm_2", "farm_1", "coref")])
    assert step7_adjust_chains_by_definiteness(doc) == doc


def test_step8_drops_17th_century():
    doc = upto("GUM_voyage_zurbaran", 8)
    assert "century" not in doc.markable_map


def test_step8_keeps_linked_markables():
    doc = make_doc(FLAT, [("a", 0, 0), ("b", 2, 2)], [("b", "a", "coref")])
    assert step8_remove_singletons(doc) == doc


def test_home_survives_until_step8():
    assert "home" in upto("GUM_fiction_farm", 7).markable_map
    assert "home" not in upto("GUM_fiction_farm", 8).markable_map


@pytest.mark.parametrize("doc", load_fixtures(), ids=lambda d: d.doc_id)
def test_fixture_partitions(doc):
    out, _ = convert(doc)
    assert partition(out) == expected_partition(doc.doc_id)
    assert violations(out) == []


def test_empty_document():
    doc = make_doc([[("x", "NOUN", 0, "root")]])
    out, trace = convert(doc)
    assert out == doc and len(trace) == 0


def test_trace_format_and_order():
    _, trace = convert(fixture("GUM_news_lens"))
    steps = [r.step for r in trace]
    assert steps == sorted(steps)
    line = re.compile(r"^STEP[1-8]\t[a-z_]+\t(remove_edge|relink_edge|rewrite_span|merge|"
                      r"remove_markable|strand|split_chain|diagnostic)\t[^\t]+\t[^\t]*$")
    for text in trace.to_text().splitlines():
        assert line.match(text), text


def test_stop_after_and_retain_singletons():
    doc = fixture("GUM_fiction_farm")
    partial, trace = convert(doc, ConvertOptions(stop_after=7))
    assert {r.step for r in trace} <= set(range(1, 8))
    assert "home" in partial.markable_map
    kept, _ = convert(doc, ConvertOptions(retain_singletons=True))
    assert "home" in kept.markable_map
    with pytest.raises(ValueError):
        ConvertOptions(stop_after=9)


def test_parallel_matches_serial():
    docs = load_fixtures()
    assert convert_many(docs, jobs=2) == convert_many(docs, jobs=1)


def test_random_documents_satisfy_invariants():
    bad = {d.doc_id: v for d in random_documents(11, 300) if (v := check(d))}
    assert bad == {}


@settings(max_examples=200, deadline=None)
@given(documents())
def test_invariants_property(doc):
    assert check(doc) == []


@settings(max_examples=200, deadline=None)
@given(documents())
def test_edges_never_grow_and_spans_only_widen_by_merging(doc):
    out, trace = convert(doc)
    assert len(out.edges) <= len(doc.edges)
    merged = {r.detail.split()[-1].split("[")[0] for r in trace if r.action == "merge"}
    before = doc.markable_map
    for m in out.markables:
        if m.id not in merged:
            old = before[m.id]
            assert old.start <= m.start and m.end <= old.end


@settings(max_examples=200, deadline=None)
@given(documents())
def test_clusters_after_conversion_have_two_members(doc):
    out, _ = convert(doc)
    assert all(len(c) >= 2 for c in derive_clusters(out, IDENTITY_TYPES))
