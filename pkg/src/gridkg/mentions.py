"""Dictionary tagging of segmented tokens into entity/relation mentions.

Part-of-speech tagging is purely dictionary-driven: a token either hits
a categorized dictionary entry and becomes a mention, or it is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import Category, Lexicon
from .segmenter import Token


@dataclass(frozen=True)
class Mention:
    surface: str
    category: Category  # never Category.NONE: uncategorized words are dropped
    sentence_id: str
    token_index: int
    canonical: str


def tag_tokens(tokens: list[Token], lexicon: Lexicon, sentence_id: str = "") -> list[Mention]:
    """One mention per token whose surface hits a categorized entry.

    Tokens that miss both dictionaries, or hit an uncategorized entry,
    are dropped. ``token_index`` keeps the position among *all* tokens
    of the sentence so distances survive the drops.
    """
    mentions: list[Mention] = []
    for index, token in enumerate(tokens):
        entry = lexicon.lookup(token.surface)
        if entry is None or entry.category is Category.NONE:
            continue
        mentions.append(Mention(
            surface=token.surface,
            category=entry.category,
            sentence_id=sentence_id,
            token_index=index,
            canonical=entry.canonical_form,
        ))
    return mentions
