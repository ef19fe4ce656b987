"""Convert multilayer GUM-style coreference annotation to the OntoNotes scheme."""

from importlib import resources

from .analysis import (
    Definiteness,
    classify_definiteness,
    classify_mention_type,
    find_head,
    is_common_compound_modifier,
    is_copula_predicate,
    is_nested_in_antecedent,
)
from .emit import Conll2012Document, emit_conll2012, format_conll2012, parse_conll2012
from .errors import EmitError, ParseError, PipelineError
from .ingest import (
    build_document,
    discover_corpus,
    load_document,
    parse_coref_file,
    parse_dependency_file,
    read_document,
    validate_document,
)
from .model import (
    GENRES,
    Cluster,
    Document,
    Markable,
    RelationEdge,
    Sentence,
    Token,
    derive_clusters,
    remove_markable,
)
from .pipeline import STEPS, ConversionTrace, ConvertOptions, convert, convert_many
from .scorer import (
    MetricCounts,
    aggregate,
    conll_average,
    score_b3,
    score_ceaf_e,
    score_mention_detection,
    score_muc,
)
from .stats import GenreStats, corpus_stats

__version__ = "0.1.0"


def fixtures_path():
    """Directory holding the bundled miniature corpus."""
    return resources.files(__name__).joinpath("data/fixtures")
