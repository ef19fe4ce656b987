from hypothesis import given, settings
from hypothesis import strategies as st

from expected import load_fixtures
from gum2onto import GENRES, convert
from gum2onto.stats import (
    GenreStats,
    corpus_stats,
    document_stats,
    format_stats_table,
    format_stats_tsv,
)
from randomdocs import documents


def test_empty_corpus():
    rows = corpus_stats([])
    assert [r.genre for r in rows] == sorted(GENRES) + ["Total"]
    assert all(r.values() == (0,) * 7 for r in rows)


def test_fixture_counts():
    docs = [convert(d)[0] for d in load_fixtures()]
    rows = {r.genre: r for r in corpus_stats(docs)}
    farm = rows["fiction"]
    assert (farm.documents, farm.mentions, farm.clusters) == (1, 12, 4)
    assert farm.tokens == sum(len(s) for d in docs if d.genre == "fiction" for s in d.sentences)
    assert rows["Total"].documents == 13


def test_table_has_header_and_total():
    text = format_stats_table(corpus_stats([convert(d)[0] for d in load_fixtures()]))
    lines = text.splitlines()
    assert lines[0].split() == ["Genre", "Documents", "Tokens", "Mentions", "Proper", "Pron.",
                                "Other", "Clusters"]
    assert lines[-1].startswith("Total")


def test_tsv():
    lines = format_stats_tsv(corpus_stats([])).splitlines()
    assert lines[0] == "genre\tdocuments\ttokens\tmentions\tproper\tpronoun\tother\tclusters"
    assert lines[-1] == "Total\t0\t0\t0\t0\t0\t0\t0"


@settings(max_examples=50, deadline=None)
@given(st.lists(documents(), max_size=6))
def test_rows_sum_to_total_and_types_partition(docs):
    converted = [convert(d)[0] for d in docs]
    rows = corpus_stats(converted)
    total = GenreStats("Total")
    for r in rows[:-1]:
        assert r.proper + r.pronoun + r.other == r.mentions
        total = total + GenreStats("Total", *r.values())
    assert rows[-1] == total


@settings(max_examples=50, deadline=None)
@given(documents())
def test_tokens_independent_of_conversion(doc):
    assert document_stats(doc).tokens == document_stats(convert(doc)[0]).tokens == len(doc.tokens)
