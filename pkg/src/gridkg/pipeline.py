"""End-to-end graph construction: extraction, fusion, loading.

Text corpora are segmented, tagged, and mined for candidate triples;
structured station documents are flattened; the union is folded,
de-duplicated, and loaded into a :class:`GraphStore`. Ingesting the same
inputs twice produces byte-identical graph files.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import GridKgError
from .fusion import filter_redundant, fold_coreferences, load_station_document, structured_to_triples
from .lexicon import Lexicon
from .mentions import tag_tokens
from .model import CandidateTriple
from .relations import extract_relations
from .rules import load_rules
from .segmenter import HmmParams, fit_params, load_params, load_tagged_corpus, segment, split_sentences
from .store import GraphStore


@dataclass
class BuildConfig:
    common_path: Optional[str] = None
    power_path: Optional[str] = None
    hmm_path: Optional[str] = None
    train_path: Optional[str] = None
    corpus_paths: list[str] = field(default_factory=list)
    structured_paths: list[str] = field(default_factory=list)
    rules_path: Optional[str] = None
    out_path: Optional[str] = None

    def validate(self) -> None:
        if not self.corpus_paths and not self.structured_paths:
            raise GridKgError("supply at least one corpus or structured document")
        if self.corpus_paths and not (self.hmm_path or self.train_path):
            raise GridKgError("text corpora need segmentation parameters (--hmm or --train)")


def build(config: BuildConfig) -> tuple[GraphStore, dict]:
    """Run the full pipeline; returns the store and the build report."""
    config.validate()
    lexicon = Lexicon.from_files(config.common_path, config.power_path)
    report: dict = {
        "sentences": 0,
        "tokens": 0,
        "mentions": Counter(),
    }

    candidates: list[CandidateTriple] = []
    if config.corpus_paths:
        if config.hmm_path:
            params = load_params(config.hmm_path)
        else:
            params = fit_params(load_tagged_corpus(config.train_path))
        for corpus_path in config.corpus_paths:
            text = Path(corpus_path).read_text(encoding="utf-8")
            for sentence in split_sentences(text, Path(corpus_path).name):
                tokens = segment(sentence, params, lexicon)
                mentions = tag_tokens(tokens, lexicon, sentence.id)
                report["sentences"] += 1
                report["tokens"] += len(tokens)
                report["mentions"].update(m.category.value for m in mentions)
                candidates.extend(extract_relations(mentions))

    for structured_path in config.structured_paths:
        doc = load_station_document(structured_path)
        candidates.extend(structured_to_triples(doc))

    if config.rules_path:
        load_rules(config.rules_path)  # validate early; inference stays query-time

    fused = filter_redundant(fold_coreferences(candidates, lexicon))

    store = GraphStore()
    for triple in fused:
        store.insert(triple.subject.label, triple.predicate, triple.object.label,
                     triple.provenances,
                     subject_category=triple.subject.category,
                     object_category=triple.object.category)

    _register_aliases(store, lexicon, candidates)

    report["mentions"] = dict(sorted(report["mentions"].items()))
    report["candidate_triples"] = len(candidates)
    report["post_filter_triples"] = len(fused)
    entity_counts = Counter(r.category.value for r in store.entities())
    report["entities"] = len(store.entities())
    report["entities_by_category"] = dict(sorted(entity_counts.items()))
    return store, report


def _register_aliases(store: GraphStore, lexicon: Lexicon,
                      candidates: list[CandidateTriple]) -> None:
    """Attach surface variants to their canonical entities so later
    queries resolve them: both variants observed during this build and
    alias entries of the lexicon itself."""
    for candidate in candidates:
        for end in (candidate.subject, candidate.object):
            canonical = lexicon.canonical(end.label)
            record = store.entity_by_label(canonical)
            if record is not None and end.label != canonical:
                store.add_alias(record.id, end.label)
    for entry in lexicon.entries():
        if entry.canonical is None:
            continue
        record = store.entity_by_label(entry.canonical)
        if record is not None:
            store.add_alias(record.id, entry.surface)


def build_and_save(config: BuildConfig) -> dict:
    store, report = build(config)
    if config.out_path:
        store.save(config.out_path)
        report["graph_file"] = config.out_path
    return report
