"""Genre breakdown of a corpus before and after conversion."""

import os

from gum2onto import convert_many, corpus_stats, discover_corpus, fixtures_path
from gum2onto.stats import format_stats_table

# point GUM_CORPUS at a full corpus directory, otherwise use the bundled fixtures
root = os.environ.get("GUM_CORPUS") or fixtures_path()
docs = discover_corpus(root).load_all()

print(format_stats_table(corpus_stats(docs)))

converted = [d for d, _ in convert_many(docs)]
rows = corpus_stats(converted)
print(format_stats_table(rows))

total = rows[-1]
print(f"{total.mentions / total.clusters:.2f} mentions per cluster")
