"""Common-words and electric-power dictionaries.

Both dictionaries share one file format: UTF-8 text, one entry per line,

    surface<TAB>category<TAB>canonical?<TAB>comment?

where category is one of ``E1 E2 E3 R1 R2 R3 P -`` (``-`` meaning no
category). A missing canonical column means the entry is its own
canonical form; when present, the canonical column must name the surface
of another entry that carries a category. Lines starting with ``#`` and
blank lines are ignored.

Power entries shadow common entries with the same surface, and lookup is
keyed on the normalized surface so width/case variants resolve to the
same entry.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .errors import DanglingReference, DuplicateSurface, MalformedLine
from .text import graphemes, normalize


class Category(enum.Enum):
    E1 = "E1"  # power equipment / component nouns
    E2 = "E2"  # company / operator / management-organization nouns
    E3 = "E3"  # manufacturer nouns
    R1 = "R1"  # connection-status verbs
    R2 = "R2"  # operation / inspection verbs
    R3 = "R3"  # manufacturing verbs
    P = "P"    # operation/inspection phenomena nouns
    NONE = "-"

ENTITY_CATEGORIES = frozenset({Category.E1, Category.E2, Category.E3, Category.P})
RELATION_CATEGORIES = frozenset({Category.R1, Category.R2, Category.R3})


class Source(enum.Enum):
    COMMON = "Common"
    POWER = "Power"


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    source: Source
    category: Category = Category.NONE
    canonical: Optional[str] = None

    @property
    def canonical_form(self) -> str:
        """The label this entry resolves to: alias target or own surface."""
        return self.canonical if self.canonical is not None else self.surface


def _parse_line(raw: str, line_no: int, source: Source, path: str) -> LexiconEntry:
    fields = raw.split("\t")
    if not 2 <= len(fields) <= 4:
        raise MalformedLine(line_no, f"expected 2-4 tab-separated fields, got {len(fields)}", path)
    surface = fields[0]
    if not surface:
        raise MalformedLine(line_no, "empty surface", path)
    try:
        category = Category(fields[1])
    except ValueError:
        raise MalformedLine(line_no, f"unknown category token {fields[1]!r}", path) from None
    if category is not Category.NONE and source is not Source.POWER:
        raise MalformedLine(line_no, f"category {category.value} only allowed in the power dictionary", path)
    canonical = None
    if len(fields) >= 3 and fields[2]:
        canonical = fields[2]
        if canonical == surface:
            raise MalformedLine(line_no, "canonical column must name a different entry", path)
    return LexiconEntry(surface=surface, source=source, category=category, canonical=canonical)


def load_lexicon(path: str | Path, source: Source) -> list[LexiconEntry]:
    """Parse one dictionary file into a list of entries.

    Rejects duplicate surfaces within the file, including two surfaces
    that collide after normalization (lookup would be ambiguous).
    """
    entries: list[LexiconEntry] = []
    seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            raw = raw.rstrip("\n")
            if not raw or raw.startswith("#"):
                continue
            entry = _parse_line(raw, line_no, source, str(path))
            key = normalize(entry.surface)
            if not key:
                raise MalformedLine(line_no, "surface normalizes to the empty string", str(path))
            if key in seen:
                raise DuplicateSurface(entry.surface)
            seen.add(key)
            entries.append(entry)
    return entries


def save_lexicon(path: str | Path, entries: Iterable[LexiconEntry]) -> None:
    """Write entries of one dictionary back out in the load format."""
    with open(path, "w", encoding="utf-8") as fh:
        for e in entries:
            fields = [e.surface, e.category.value]
            if e.canonical is not None:
                fields.append(e.canonical)
            fh.write("\t".join(fields) + "\n")


class Lexicon:
    """Merged view over the common and power dictionaries."""

    def __init__(self, common: Iterable[LexiconEntry] = (), power: Iterable[LexiconEntry] = ()):
        self._common: dict[str, LexiconEntry] = {}
        self._power: dict[str, LexiconEntry] = {}
        for entry in common:
            self._add(self._common, entry, Source.COMMON)
        for entry in power:
            self._add(self._power, entry, Source.POWER)
        self._validate_aliases()
        self.max_surface_len = max(
            (len(graphemes(e.surface)) for e in self.entries()), default=0
        )

    @staticmethod
    def _add(index: dict[str, LexiconEntry], entry: LexiconEntry, expected: Source) -> None:
        if entry.source is not expected:
            raise ValueError(f"{entry.surface!r} loaded as {entry.source.value}, placed as {expected.value}")
        key = normalize(entry.surface)
        if key in index:
            raise DuplicateSurface(entry.surface)
        index[key] = entry

    def _validate_aliases(self) -> None:
        for entry in self.entries():
            if entry.canonical is None:
                continue
            target = self.lookup(entry.canonical)
            if target is None or target.surface != entry.canonical:
                raise DanglingReference(entry.canonical, f"canonical of {entry.surface!r}")
            if target.category is Category.NONE:
                raise DanglingReference(entry.canonical, "canonical target has no category")
            if target.canonical is not None:
                raise DanglingReference(entry.canonical, "canonical target must itself be self-canonical")

    def entries(self) -> list[LexiconEntry]:
        return list(self._common.values()) + list(self._power.values())

    def power_entries(self) -> list[LexiconEntry]:
        return list(self._power.values())

    def lookup(self, surface: str) -> Optional[LexiconEntry]:
        """Resolve a surface; power entries shadow common ones."""
        key = normalize(surface)
        return self._power.get(key) or self._common.get(key)

    def canonical(self, surface: str) -> str:
        """Canonical label for a surface: alias target, own surface for a
        known self-canonical entry, or the normalized surface otherwise."""
        entry = self.lookup(surface)
        if entry is not None:
            return entry.canonical_form
        return normalize(surface)

    @classmethod
    def from_files(cls, common_path: str | Path | None, power_path: str | Path | None) -> "Lexicon":
        common = load_lexicon(common_path, Source.COMMON) if common_path else []
        power = load_lexicon(power_path, Source.POWER) if power_path else []
        return cls(common, power)
