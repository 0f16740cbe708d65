"""gridkg: power-equipment knowledge graphs from heterogeneous sources.

Pipeline: dictionary-constrained HMM segmentation -> dictionary entity
tagging -> rule-based relation classification -> fusion with structured
station topology -> indexed triple store -> interactive retrieval with
forward-chaining inference.
"""

from .errors import (
    CategoryConflict,
    DanglingReference,
    DuplicateSurface,
    EmptyCorpus,
    GridKgError,
    InvalidParams,
    InvalidTriple,
    MalformedLine,
    RuleError,
    SpanOutOfBounds,
    TargetNotRevealed,
    UnknownEntity,
)
from .fusion import (
    ComponentDecl,
    FusedTriple,
    StationDocument,
    SystemDecl,
    SystemKind,
    filter_redundant,
    fold_coreferences,
    load_station_document,
    structured_to_triples,
)
from .lexicon import Category, Lexicon, LexiconEntry, Source, load_lexicon, save_lexicon
from .mentions import Mention, tag_tokens
from .model import (
    CandidateTriple,
    Endpoint,
    EntityCategory,
    Predicate,
    PredicateCategory,
    ProvKind,
    Provenance,
    get_predicate,
)
from .pipeline import BuildConfig, build, build_and_save
from .query import QueryEngine, ResultTree, Session, TraceNode
from .relations import extract_relations
from .rules import DEFAULT_RULES, InferenceRule, load_rules, parse_rule, parse_rules
from .segmenter import (
    HmmParams,
    Sentence,
    Token,
    fit_params,
    load_params,
    lock_spans,
    save_params,
    segment,
    split_sentences,
    viterbi,
)
from .store import Direction, EntityRecord, GraphStore, Triple
from .text import graphemes, normalize

__version__ = "0.1.0"
