"""Grapheme-level text primitives.

Grapheme clusters (not bytes, not code points) are the atomic unit
everywhere in the pipeline, so ideographic and alphabetic inputs get the
same treatment. Cluster boundaries follow the Unicode extended grapheme
cluster rules via the ``regex`` module's ``\\X``.
"""

from __future__ import annotations

import regex

_GRAPHEME = regex.compile(r"\X")

# Full-width digit/letter forms folded to their ASCII counterparts.
_WIDTH_FOLD = {cp: cp - 0xFF10 + 0x30 for cp in range(0xFF10, 0xFF1A)}
_WIDTH_FOLD.update({cp: cp - 0xFF21 + 0x41 for cp in range(0xFF21, 0xFF3B)})
_WIDTH_FOLD.update({cp: cp - 0xFF41 + 0x61 for cp in range(0xFF41, 0xFF5B)})


def graphemes(s: str) -> list[str]:
    """Split a string into extended grapheme clusters."""
    return _GRAPHEME.findall(s)


def width_fold(s: str) -> str:
    """Map full-width digits and letters to their half-width forms."""
    return s.translate(_WIDTH_FOLD)


def normalize(surface: str) -> str:
    """Canonical text form used for matching and coreference.

    Width-folds, case-folds, trims, and collapses internal whitespace
    runs to a single space. Idempotent.
    """
    return " ".join(width_fold(surface).casefold().split())


def fold_grapheme(g: str) -> str:
    """Length-insensitive fold of one grapheme, for dictionary matching."""
    return width_fold(g).casefold()
