"""Indexed in-memory triple store with line-oriented persistence.

Three permutation indexes (SPO / POS / OSP) back pattern scans; labels
are the external identity of entities while dense integer ids are used
internally. Mutation is single-writer: queries may run concurrently over
a store that is no longer being written (the HTTP service swaps whole
snapshots instead of mutating).

Persistence format, one record per line, sections ``#entities`` and
``#triples``:

    E<TAB>label<TAB>category<TAB>alias1,alias2
    T<TAB>subject<TAB>predicate<TAB>object<TAB>kind:source;...<TAB>0|1

Fields never contain tabs; labels and aliases containing tab, newline,
comma (aliases) or semicolon (sources) are rejected at insert. Derived
triples are recomputable and therefore skipped on save by default.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional

from .errors import CategoryConflict, InvalidTriple, MalformedLine, UnknownEntity
from .model import (
    EntityCategory,
    Predicate,
    ProvKind,
    Provenance,
    get_predicate,
    merge_categories,
)
from .text import normalize


class Direction(enum.Enum):
    OUT = "Out"
    IN = "In"


@dataclass
class EntityRecord:
    id: int
    label: str
    category: EntityCategory
    aliases: set[str] = field(default_factory=set)


@dataclass
class Triple:
    s: int
    p: Predicate
    o: int
    provenance: tuple[Provenance, ...] = ()
    derived: bool = False

    def key(self) -> tuple[int, str, int]:
        return (self.s, self.p.name, self.o)


def _check_text(value: str, what: str) -> None:
    if not value:
        raise InvalidTriple(f"empty {what}")
    if "\t" in value or "\n" in value:
        raise InvalidTriple(f"{what} {value!r} contains tab or newline")


class GraphStore:
    def __init__(self) -> None:
        self._records: list[EntityRecord] = []
        self._by_label: dict[str, int] = {}
        self._by_norm: dict[str, int] = {}
        self._triples: dict[tuple[int, str, int], Triple] = {}
        self._spo: dict[int, dict[str, set[int]]] = {}
        self._pos: dict[str, dict[int, set[int]]] = {}
        self._osp: dict[int, dict[int, set[str]]] = {}

    # -- entities ---------------------------------------------------------

    def ensure_entity(self, label: str, category: EntityCategory,
                      aliases: Iterable[str] = ()) -> int:
        _check_text(label, "label")
        eid = self._by_label.get(label)
        if eid is None:
            eid = len(self._records)
            record = EntityRecord(id=eid, label=label, category=category)
            self._records.append(record)
            self._by_label[label] = eid
            self._by_norm.setdefault(normalize(label), eid)
        else:
            record = self._records[eid]
            record.category = merge_categories(label, record.category, category)
        for alias in aliases:
            self.add_alias(eid, alias)
        return eid

    def add_alias(self, eid: int, alias: str) -> None:
        _check_text(alias, "alias")
        if "," in alias:
            raise InvalidTriple(f"alias {alias!r} contains a comma")
        record = self._records[eid]
        if alias == record.label:
            return
        record.aliases.add(alias)
        # label keys are authoritative; among aliases, first registration wins
        key = normalize(alias)
        if key not in self._by_norm:
            self._by_norm[key] = eid

    def entity(self, eid: int) -> EntityRecord:
        if not 0 <= eid < len(self._records):
            raise UnknownEntity(eid)
        return self._records[eid]

    def entity_by_label(self, label: str) -> Optional[EntityRecord]:
        eid = self._by_label.get(label)
        return None if eid is None else self._records[eid]

    def resolve(self, query: str) -> Optional[int]:
        """Normalized label/alias lookup; None when nothing matches."""
        return self._by_norm.get(normalize(query))

    def entities(self) -> list[EntityRecord]:
        return list(self._records)

    # -- triples ----------------------------------------------------------

    def insert(self, subject_label: str, predicate: Predicate, object_label: str,
               provenances: Iterable[Provenance] = (), derived: bool = False,
               subject_category: Optional[EntityCategory] = None,
               object_category: Optional[EntityCategory] = None) -> Triple:
        """Insert one triple, auto-creating endpoints that carry a declared
        category. Re-inserting an existing (s, p, o) only merges provenance;
        an asserted fact never degrades back to derived."""
        if predicate.symmetric and object_label < subject_label:
            subject_label, object_label = object_label, subject_label
            subject_category, object_category = object_category, subject_category
        if subject_label == object_label:
            raise InvalidTriple(f"self-loop on {subject_label!r}")
        s = self._endpoint(subject_label, subject_category)
        o = self._endpoint(object_label, object_category)
        key = (s, predicate.name, o)
        existing = self._triples.get(key)
        if existing is not None:
            merged = set(existing.provenance) | set(provenances)
            existing.provenance = tuple(sorted(merged, key=lambda p: p.sort_key))
            if not derived:
                existing.derived = False
            return existing
        triple = Triple(s=s, p=predicate, o=o,
                        provenance=tuple(sorted(set(provenances), key=lambda p: p.sort_key)),
                        derived=derived)
        self._triples[key] = triple
        self._spo.setdefault(s, {}).setdefault(predicate.name, set()).add(o)
        self._pos.setdefault(predicate.name, {}).setdefault(o, set()).add(s)
        self._osp.setdefault(o, {}).setdefault(s, set()).add(predicate.name)
        return triple

    def _endpoint(self, label: str, category: Optional[EntityCategory]) -> int:
        eid = self._by_label.get(label)
        if eid is not None:
            if category is not None:
                record = self._records[eid]
                record.category = merge_categories(label, record.category, category)
            return eid
        if category is None:
            raise UnknownEntity(label)
        return self.ensure_entity(label, category)

    def triple(self, s: int, predicate_name: str, o: int) -> Optional[Triple]:
        return self._triples.get((s, predicate_name, o))

    def triples(self, include_derived: bool = True) -> list[Triple]:
        if include_derived:
            return list(self._triples.values())
        return [t for t in self._triples.values() if not t.derived]

    def __len__(self) -> int:
        return len(self._triples)

    def index_sizes(self) -> tuple[int, int, int]:
        spo = sum(len(os) for ps in self._spo.values() for os in ps.values())
        pos = sum(len(ss) for os in self._pos.values() for ss in os.values())
        osp = sum(len(ps) for ss in self._osp.values() for ps in ss.values())
        return (spo, pos, osp)

    def neighbors(self, eid: int) -> list[tuple[Triple, Direction]]:
        """Every triple incident to the entity, sorted by (predicate name,
        other-endpoint label). Symmetric predicates read as outgoing from
        either endpoint."""
        self.entity(eid)
        edges: list[tuple[Triple, Direction]] = []
        for pname, objects in self._spo.get(eid, {}).items():
            for o in objects:
                edges.append((self._triples[(eid, pname, o)], Direction.OUT))
        for s, pnames in self._osp.get(eid, {}).items():
            for pname in pnames:
                triple = self._triples[(s, pname, eid)]
                direction = Direction.OUT if triple.p.symmetric else Direction.IN
                edges.append((triple, direction))
        return sorted(edges, key=lambda e: self.edge_sort_key(eid, *e))

    def edge_sort_key(self, eid: int, triple: Triple, direction: Direction):
        other = triple.o if triple.s == eid else triple.s
        return (triple.p.name, self._records[other].label, direction.value)

    def other_end(self, eid: int, triple: Triple) -> int:
        return triple.o if triple.s == eid else triple.s

    # -- persistence ------------------------------------------------------

    def save(self, path: str | Path, include_derived: bool = False) -> None:
        lines = ["#entities"]
        for record in sorted(self._records, key=lambda r: r.label):
            aliases = ",".join(sorted(record.aliases))
            lines.append(f"E\t{record.label}\t{record.category.value}\t{aliases}")
        lines.append("#triples")
        rows = []
        for triple in self._triples.values():
            if triple.derived and not include_derived:
                continue
            rows.append((
                self._records[triple.s].label,
                triple.p.name,
                self._records[triple.o].label,
                ";".join(str(p) for p in triple.provenance),
                "1" if triple.derived else "0",
            ))
        for row in sorted(rows):
            lines.append("T\t" + "\t".join(row))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "GraphStore":
        store = cls()
        section = None
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, raw in enumerate(fh, start=1):
                raw = raw.rstrip("\n")
                if not raw:
                    continue
                if raw in ("#entities", "#triples"):
                    section = raw
                    continue
                fields = raw.split("\t")
                if section == "#entities" and fields[0] == "E":
                    if len(fields) != 4:
                        raise MalformedLine(line_no, f"entity record has {len(fields)} fields", str(path))
                    try:
                        category = EntityCategory(fields[2])
                    except ValueError:
                        raise MalformedLine(line_no, f"unknown category {fields[2]!r}", str(path)) from None
                    aliases = [a for a in fields[3].split(",") if a]
                    store.ensure_entity(fields[1], category, aliases)
                elif section == "#triples" and fields[0] == "T":
                    if len(fields) != 6:
                        raise MalformedLine(line_no, f"triple record has {len(fields)} fields", str(path))
                    provenances = []
                    for chunk in fields[4].split(";"):
                        if not chunk:
                            continue
                        kind_token, _, source = chunk.partition(":")
                        try:
                            provenances.append(Provenance(ProvKind(kind_token), source))
                        except ValueError:
                            raise MalformedLine(line_no, f"unknown provenance kind {kind_token!r}", str(path)) from None
                    if fields[5] not in ("0", "1"):
                        raise MalformedLine(line_no, f"bad derived flag {fields[5]!r}", str(path))
                    for end in (fields[1], fields[3]):
                        if end not in store._by_label:
                            raise MalformedLine(line_no, f"triple references undeclared entity {end!r}", str(path))
                    store.insert(fields[1], get_predicate(fields[2]), fields[3],
                                 provenances, derived=fields[5] == "1")
                else:
                    raise MalformedLine(line_no, f"unexpected record {raw!r}", str(path))
        return store
