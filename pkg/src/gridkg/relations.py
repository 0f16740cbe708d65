"""Relation extraction as classification over entity-pair categories.

Each relation word pairs with its nearest entity mentions on either
side; the (left category, right category, relation category) combination
is classified against the supported rows:

    E1  E1  R1  ->  equipment-to-equipment relation
    E1  E2  R2  ->  the E2 side operates/manages the equipment
    E1  E3  R3  ->  the E3 side manufactures the equipment
    E1  P       ->  adjacency, no relation word: (equipment, occurs, P)

Everything else is No Relation. At least one endpoint of every emitted
triple is equipment (E1).
"""

from __future__ import annotations

from .lexicon import Category, ENTITY_CATEGORIES, RELATION_CATEGORIES
from .mentions import Mention
from .model import (
    CandidateTriple,
    Endpoint,
    OCCURS,
    ProvKind,
    Provenance,
    entity_category,
    get_predicate,
)

# An (E1, P) pair triggers "occurs" when at most this many token
# positions apart with no relation word in between.
OCCURS_WINDOW = 2


def _endpoint(m: Mention) -> Endpoint:
    return Endpoint(label=m.canonical, category=entity_category(m.category))


def extract_relations(mentions: list[Mention]) -> list[CandidateTriple]:
    """Classify entity pairs of one sentence into candidate triples."""
    if not mentions:
        return []
    provenance = Provenance(ProvKind.TEXT, mentions[0].sentence_id)
    entities = [m for m in mentions if m.category in ENTITY_CATEGORIES]
    relation_words = [m for m in mentions if m.category in RELATION_CATEGORIES]

    triples: list[CandidateTriple] = []
    for rel in relation_words:
        left = _nearest(entities, rel.token_index, before=True)
        right = _nearest(entities, rel.token_index, before=False)
        if left is None or right is None:
            continue
        triple = _classify(left, rel, right, provenance)
        if triple is not None:
            triples.append(triple)

    for phen in (m for m in mentions if m.category is Category.P):
        partner = _occurs_partner(phen, entities, relation_words)
        if partner is not None:
            triples.append(CandidateTriple(
                subject=_endpoint(partner),
                predicate=OCCURS,
                object=_endpoint(phen),
                provenance=provenance,
            ))
    return triples


def _nearest(entities: list[Mention], index: int, before: bool) -> Mention | None:
    side = [m for m in entities if (m.token_index < index if before else m.token_index > index)]
    if not side:
        return None
    return max(side, key=lambda m: m.token_index) if before else min(side, key=lambda m: m.token_index)


def _classify(left: Mention, rel: Mention, right: Mention,
              provenance: Provenance) -> CandidateTriple | None:
    cats = (left.category, right.category)
    if cats == (Category.E1, Category.E1) and rel.category is Category.R1:
        predicate = get_predicate(rel.canonical, rel.category)
        if predicate.symmetric:
            subject, object_ = sorted((left, right), key=lambda m: m.canonical)
        else:
            subject, object_ = left, right
        return CandidateTriple(_endpoint(subject), predicate, _endpoint(object_), provenance)
    if set(cats) == {Category.E1, Category.E2} and rel.category is Category.R2:
        e2 = left if left.category is Category.E2 else right
        e1 = right if e2 is left else left
        return CandidateTriple(_endpoint(e2), get_predicate(rel.canonical, rel.category),
                               _endpoint(e1), provenance)
    if set(cats) == {Category.E1, Category.E3} and rel.category is Category.R3:
        e3 = left if left.category is Category.E3 else right
        e1 = right if e3 is left else left
        return CandidateTriple(_endpoint(e3), get_predicate(rel.canonical, rel.category),
                               _endpoint(e1), provenance)
    return None


def _occurs_partner(phen: Mention, entities: list[Mention],
                    relation_words: list[Mention]) -> Mention | None:
    candidates = []
    for ent in entities:
        if ent.category is not Category.E1:
            continue
        distance = abs(ent.token_index - phen.token_index)
        if not 0 < distance <= OCCURS_WINDOW:
            continue
        lo, hi = sorted((ent.token_index, phen.token_index))
        if any(lo < r.token_index < hi for r in relation_words):
            continue
        candidates.append((distance, ent.token_index, ent))
    if not candidates:
        return None
    # nearest wins; on equal distance the mention on the left does
    return min(candidates, key=lambda c: (c[0], c[1]))[2]
