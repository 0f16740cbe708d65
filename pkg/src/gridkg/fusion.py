"""Knowledge fusion: structured topology ingestion, coreference folding
across text/structured label variants, and redundancy filtering.

The structured side is a station document: a YAML tree naming the
station, its ontology classes, components, connections, systems, and
companies. Its facts become triples with structured provenance and merge
with the text-extracted ones into a single graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import yaml

from .errors import DanglingReference, MalformedLine
from .lexicon import Lexicon
from .model import (
    BELONG_TO,
    CONNECT,
    CONTROL,
    CandidateTriple,
    Endpoint,
    EntityCategory,
    MANAGE,
    MANUFACTURE,
    OPERATE,
    Predicate,
    ProvKind,
    Provenance,
    merge_categories,
)


class SystemKind(enum.Enum):
    OPERATION = "Operation"
    MANAGEMENT = "Management"


@dataclass(frozen=True)
class ComponentDecl:
    id: str
    label: str
    ontology_class: str
    voltage_level: str = ""
    manufacturer: Optional[str] = None
    operator_system: Optional[str] = None
    management_system: Optional[str] = None


@dataclass(frozen=True)
class SystemDecl:
    label: str
    kind: SystemKind
    controlled_by: Optional[str] = None


@dataclass(frozen=True)
class StationDocument:
    station_label: str
    voltage_class: str
    ontology_classes: tuple[str, ...]
    components: tuple[ComponentDecl, ...]
    connections: tuple[tuple[str, str], ...]
    systems: tuple[SystemDecl, ...] = ()
    companies: tuple[str, ...] = ()
    source_id: str = ""

    def validate(self) -> None:
        classes = set(self.ontology_classes)
        component_labels = {c.label for c in self.components}
        system_labels = {s.label for s in self.systems}
        companies = set(self.companies)
        for comp in self.components:
            if comp.ontology_class not in classes:
                raise DanglingReference(comp.ontology_class, f"ontology_class of {comp.label!r}")
            for ref in (comp.operator_system, comp.management_system):
                if ref is not None and ref not in system_labels:
                    raise DanglingReference(ref, f"system of {comp.label!r}")
        for a, b in self.connections:
            for end in (a, b):
                if end not in component_labels:
                    raise DanglingReference(end, "connection endpoint")
        for system in self.systems:
            if system.controlled_by is not None and system.controlled_by not in companies:
                raise DanglingReference(system.controlled_by, f"controlled_by of {system.label!r}")


def load_station_document(path: str | Path) -> StationDocument:
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise MalformedLine(0, "station document must be a mapping", str(path))

    def require(mapping, key, context):
        if not isinstance(mapping, dict) or key not in mapping:
            raise MalformedLine(0, f"missing {key!r} in {context}", str(path))
        return mapping[key]

    station = require(raw, "station", "document")
    components = []
    for item in raw.get("components", []) or []:
        components.append(ComponentDecl(
            id=str(require(item, "id", "component")),
            label=str(require(item, "label", "component")),
            ontology_class=str(require(item, "ontology_class", "component")),
            voltage_level=str(item.get("voltage_level", "")),
            manufacturer=item.get("manufacturer"),
            operator_system=item.get("operator_system"),
            management_system=item.get("management_system"),
        ))
    connections = []
    for pair in raw.get("connections", []) or []:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise MalformedLine(0, f"connection {pair!r} is not a two-element list", str(path))
        connections.append((str(pair[0]), str(pair[1])))
    systems = []
    for item in raw.get("systems", []) or []:
        kind_token = str(require(item, "kind", "system"))
        try:
            kind = SystemKind(kind_token)
        except ValueError:
            raise MalformedLine(0, f"unknown system kind {kind_token!r}", str(path)) from None
        systems.append(SystemDecl(
            label=str(require(item, "label", "system")),
            kind=kind,
            controlled_by=item.get("controlled_by"),
        ))
    doc = StationDocument(
        station_label=str(require(station, "label", "station")),
        voltage_class=str(require(station, "voltage_class", "station")),
        ontology_classes=tuple(str(c) for c in raw.get("ontology_classes", []) or []),
        components=tuple(components),
        connections=tuple(connections),
        systems=tuple(systems),
        companies=tuple(str(c) for c in raw.get("companies", []) or []),
        source_id=Path(path).name,
    )
    doc.validate()
    return doc


def structured_to_triples(doc: StationDocument) -> list[CandidateTriple]:
    """Flatten a station document into candidate triples.

    Components belong to their ontology class and reach the station
    through the class chain; connections are symmetric and stored in
    canonical label order. ``voltage_level`` is descriptive only and
    emits no triple.
    """
    doc.validate()
    prov = Provenance(ProvKind.STRUCTURED, doc.source_id)
    station = Endpoint(doc.station_label, EntityCategory.STATION)
    out: list[CandidateTriple] = []
    for cls in doc.ontology_classes:
        out.append(CandidateTriple(Endpoint(cls, EntityCategory.CLASS), BELONG_TO, station, prov))
    for comp in doc.components:
        equipment = Endpoint(comp.label, EntityCategory.E1)
        out.append(CandidateTriple(equipment, BELONG_TO,
                                   Endpoint(comp.ontology_class, EntityCategory.CLASS), prov))
        if comp.operator_system:
            out.append(CandidateTriple(Endpoint(comp.operator_system, EntityCategory.SYSTEM),
                                       OPERATE, equipment, prov))
        if comp.management_system:
            out.append(CandidateTriple(Endpoint(comp.management_system, EntityCategory.SYSTEM),
                                       MANAGE, equipment, prov))
        if comp.manufacturer:
            out.append(CandidateTriple(Endpoint(comp.manufacturer, EntityCategory.E3),
                                       MANUFACTURE, equipment, prov))
    for a, b in doc.connections:
        lo, hi = sorted((a, b))
        out.append(CandidateTriple(Endpoint(lo, EntityCategory.E1), CONNECT,
                                   Endpoint(hi, EntityCategory.E1), prov))
    for system in doc.systems:
        if system.controlled_by:
            out.append(CandidateTriple(Endpoint(system.controlled_by, EntityCategory.COMPANY),
                                       CONTROL, Endpoint(system.label, EntityCategory.SYSTEM), prov))
    return out


@dataclass(frozen=True)
class FusedTriple:
    """Post-filter fact: one (s, p, o) with every supporting provenance."""

    subject: Endpoint
    predicate: Predicate
    object: Endpoint
    provenances: tuple[Provenance, ...]

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject.label, self.predicate.name, self.object.label)


AnyTriple = Union[CandidateTriple, FusedTriple]


def _provenances(triple: AnyTriple) -> tuple[Provenance, ...]:
    if isinstance(triple, FusedTriple):
        return triple.provenances
    return (triple.provenance,)


def fold_coreferences(triples: Sequence[AnyTriple], lexicon: Lexicon) -> list[AnyTriple]:
    """Replace every endpoint label by its canonical form.

    Canonicalization is normalize-then-alias against the lexicon. The
    categories of labels that fold together must agree (up to the
    structured-beats-text merge table). Triples whose endpoints collapse
    onto one entity are dropped: a relation of an entity to itself under
    two names is pure redundancy.
    """
    categories: dict[str, EntityCategory] = {}
    folded_endpoints: list[tuple[str, str]] = []
    for triple in triples:
        pair = []
        for end in (triple.subject, triple.object):
            label = lexicon.canonical(end.label)
            merged = categories.get(label)
            categories[label] = end.category if merged is None else merge_categories(
                label, merged, end.category)
            pair.append(label)
        folded_endpoints.append((pair[0], pair[1]))

    out: list[AnyTriple] = []
    for triple, (s_label, o_label) in zip(triples, folded_endpoints):
        if s_label == o_label:
            continue
        if triple.predicate.symmetric and o_label < s_label:
            s_label, o_label = o_label, s_label
        subject = Endpoint(s_label, categories[s_label])
        object_ = Endpoint(o_label, categories[o_label])
        if isinstance(triple, FusedTriple):
            out.append(FusedTriple(subject, triple.predicate, object_, triple.provenances))
        else:
            out.append(CandidateTriple(subject, triple.predicate, object_, triple.provenance))
    return out


def filter_redundant(triples: Sequence[AnyTriple]) -> list[FusedTriple]:
    """Collapse exact (subject, predicate, object) duplicates.

    Provenances of collapsed triples merge into one deduplicated list,
    structured sources first; output is sorted by triple key, so the
    result does not depend on input order.
    """
    grouped: dict[tuple[str, str, str], dict] = {}
    for triple in triples:
        entry = grouped.setdefault(triple.key, {
            "subject": triple.subject,
            "predicate": triple.predicate,
            "object": triple.object,
            "provenances": set(),
        })
        entry["provenances"].update(_provenances(triple))
    out = []
    for key in sorted(grouped):
        entry = grouped[key]
        out.append(FusedTriple(
            subject=entry["subject"],
            predicate=entry["predicate"],
            object=entry["object"],
            provenances=tuple(sorted(entry["provenances"], key=lambda p: p.sort_key)),
        ))
    return out
