"""Shared triple-model types: entity categories, predicates, provenance."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import CategoryConflict
from .lexicon import Category


class EntityCategory(enum.Enum):
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    P = "P"
    CLASS = "Class"
    STATION = "Station"
    SYSTEM = "System"
    COMPANY = "Company"


_FROM_LEXICON = {
    Category.E1: EntityCategory.E1,
    Category.E2: EntityCategory.E2,
    Category.E3: EntityCategory.E3,
    Category.P: EntityCategory.P,
}


def entity_category(cat: Category) -> EntityCategory:
    return _FROM_LEXICON[cat]


# When a text-derived category meets a structured one for the same label,
# the structured, more specific category wins.
_CATEGORY_MERGE = {
    frozenset({EntityCategory.E2, EntityCategory.SYSTEM}): EntityCategory.SYSTEM,
    frozenset({EntityCategory.E2, EntityCategory.COMPANY}): EntityCategory.COMPANY,
    frozenset({EntityCategory.E1, EntityCategory.CLASS}): EntityCategory.CLASS,
}


def merge_categories(label: str, a: EntityCategory, b: EntityCategory) -> EntityCategory:
    if a is b:
        return a
    merged = _CATEGORY_MERGE.get(frozenset({a, b}))
    if merged is None:
        raise CategoryConflict(label, a.value, b.value)
    return merged


class ProvKind(enum.Enum):
    TEXT = "Text"
    STRUCTURED = "Structured"
    DERIVED = "Derived"


@dataclass(frozen=True, order=True)
class Provenance:
    kind: ProvKind
    source_id: str

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.source_id}"

    # Structured sources sort (and therefore display) first.
    _KIND_ORDER = {ProvKind.STRUCTURED: 0, ProvKind.TEXT: 1, ProvKind.DERIVED: 2}

    @property
    def sort_key(self) -> tuple[int, str]:
        return (self._KIND_ORDER[self.kind], self.source_id)


class PredicateCategory(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    OCCURS = "Occurs"


@dataclass(frozen=True)
class Predicate:
    name: str
    category: PredicateCategory
    symmetric: bool = False

    def __post_init__(self):
        if self.category is PredicateCategory.OCCURS and self.name != "occurs":
            raise ValueError("the occurrence predicate is always named 'occurs'")
        if self.symmetric and self.category is not PredicateCategory.R1:
            raise ValueError(f"only R1 predicates may be symmetric, not {self.name!r}")


CONNECT = Predicate("Connect", PredicateCategory.R1, symmetric=True)
BELONG_TO = Predicate("BelongTo", PredicateCategory.R1)
OPERATE = Predicate("Operate", PredicateCategory.R2)
MANAGE = Predicate("Manage", PredicateCategory.R2)
MANUFACTURE = Predicate("Manufacture", PredicateCategory.R3)
CONTROL = Predicate("Control", PredicateCategory.R2)
OCCURS = Predicate("occurs", PredicateCategory.OCCURS)

PREDICATES: dict[str, Predicate] = {
    p.name: p for p in (CONNECT, BELONG_TO, OPERATE, MANAGE, MANUFACTURE, CONTROL, OCCURS)
}

_CATEGORY_DEFAULT = {
    Category.R1: PredicateCategory.R1,
    Category.R2: PredicateCategory.R2,
    Category.R3: PredicateCategory.R3,
}


def get_predicate(name: str, relation_category: Category | None = None) -> Predicate:
    """Fixed-vocabulary predicate, or an asymmetric one built on demand
    for relation words and rules outside the built-in vocabulary."""
    known = PREDICATES.get(name)
    if known is not None:
        return known
    category = _CATEGORY_DEFAULT.get(relation_category, PredicateCategory.R2)
    made = Predicate(name, category)
    PREDICATES[name] = made
    return made


@dataclass(frozen=True)
class Endpoint:
    label: str
    category: EntityCategory


@dataclass(frozen=True)
class CandidateTriple:
    """Pre-fusion fact: canonical endpoint labels plus one provenance."""

    subject: Endpoint
    predicate: Predicate
    object: Endpoint
    provenance: Provenance

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject.label, self.predicate.name, self.object.label)
