"""Scoring a system response against a key with MUC, B-cubed and CEAF-e.

Clusters are plain sets of hashable mentions, so toy examples need no documents.
"""

from gum2onto import conll_average, score_b3, score_ceaf_e, score_muc
from gum2onto.scorer import ceaf_alignment, format_report_table, score_documents
from gum2onto import convert, emit_conll2012, fixtures_path, load_document, parse_conll2012

key = [{"a", "b", "c"}, {"d", "e"}]
response = [{"a", "b"}, {"c", "d", "e"}]

for name, fn in (("MUC", score_muc), ("B3", score_b3), ("CEAF-e", score_ceaf_e)):
    m = fn(key, response)
    print(f"{name:7} P={m.precision:.3f} R={m.recall:.3f} F1={m.f1:.3f}")
    # counts are exact fractions; swapping roles swaps precision and recall
    assert fn(response, key) == m.swapped()

# the optimal one-to-one cluster alignment behind CEAF-e
pairs, total = ceaf_alignment(key, response)
print(pairs, total)

muc, b3, ceafe = score_muc(key, response), score_b3(key, response), score_ceaf_e(key, response)
print("CoNLL average:", conll_average(muc, b3, ceafe))
# plain F1 values work too, as fractions or percentages
print(conll_average(85.3, 78.1, 75.3))

# document level: a corpus scored against itself
docs = []
for doc_id in ("GUM_fiction_farm", "GUM_academic_art", "GUM_news_lens"):
    text = emit_conll2012(convert(load_document(fixtures_path(), doc_id))[0])
    docs += parse_conll2012(text)
print(format_report_table(score_documents(docs, docs)))
