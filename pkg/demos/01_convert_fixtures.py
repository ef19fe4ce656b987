"""Walk the bundled miniature corpus through the conversion, one document at a time.

Run with ``python3 demos/01_convert_fixtures.py``.
"""

from gum2onto import (
    ConvertOptions,
    classify_definiteness,
    convert,
    derive_clusters,
    emit_conll2012,
    fixtures_path,
    load_document,
)

root = fixtures_path()
farm = load_document(root, "GUM_fiction_farm")

# clusters are derived from the identity edges, never stored
for cluster in derive_clusters(farm):
    print([farm.span_text(farm.markable(m)) for m in cluster])

# definiteness of every markable, as the step 7 rule sees it
for m in farm.markables:
    print(f"{m.id:10} {classify_definiteness(farm, m)}")

# full conversion plus the trace of every mutation
converted, trace = convert(farm)
print(trace.to_text())

# stop early and keep singletons to look at an intermediate state
partial, _ = convert(farm, ConvertOptions(stop_after=6, retain_singletons=True))
print(len(partial.markables), "markables after step 6,", len(converted.markables), "at the end")

# OntoNotes-style output
print(emit_conll2012(converted))
