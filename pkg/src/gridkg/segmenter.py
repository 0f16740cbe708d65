"""Sentence segmentation with a 4-state BMES HMM and dictionary locking.

A sentence is decoded as a sequence of hidden states over its grapheme
clusters: B/M/E mark the begin/middle/end of a multi-grapheme token, S a
single-grapheme token. Power-dictionary matches are locked before
decoding so domain terms always survive segmentation intact.

Whitespace never reaches the decoder: runs of whitespace are stripped
from the grapheme sequence and leave forced token boundaries behind, so
alphabetic and ideographic inputs share one code path.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import EmptyCorpus, InvalidParams, MalformedLine, SpanOutOfBounds
from .lexicon import Lexicon
from .text import fold_grapheme, graphemes

NEG_INF = float("-inf")


class State(enum.IntEnum):
    B = 0
    M = 1
    E = 2
    S = 3


STATES = (State.B, State.M, State.E, State.S)
# BMES structure: token-initial states can only follow token-final ones.
LEGAL_NEXT = {
    State.B: (State.M, State.E),
    State.M: (State.M, State.E),
    State.E: (State.B, State.S),
    State.S: (State.B, State.S),
}
START_STATES = (State.B, State.S)
END_STATES = (State.E, State.S)

_SENTENCE_BREAK = re.compile(r"[。．.!?;；\n]")


@dataclass(frozen=True)
class Sentence:
    """One input sentence, whitespace already stripped.

    ``forced_breaks`` holds grapheme indexes that must start a new token
    because whitespace preceded them in the raw text.
    """

    id: str
    graphemes: tuple[str, ...]
    source: str = ""
    forced_breaks: frozenset[int] = frozenset()

    @classmethod
    def from_text(cls, sid: str, text: str, source: str = "") -> "Sentence":
        kept: list[str] = []
        breaks: set[int] = set()
        pending_break = False
        for g in graphemes(text):
            if g.isspace():
                pending_break = True
                continue
            if pending_break and kept:
                breaks.add(len(kept))
            pending_break = False
            kept.append(g)
        return cls(id=sid, graphemes=tuple(kept), source=source, forced_breaks=frozenset(breaks))

    @property
    def text(self) -> str:
        return "".join(self.graphemes)


def split_sentences(text: str, doc_id: str) -> list[Sentence]:
    """Split raw text into sentences on 。．.!?;； and newlines."""
    sentences = []
    for k, chunk in enumerate(_SENTENCE_BREAK.split(text)):
        sent = Sentence.from_text(f"{doc_id}:{k}", chunk, source=doc_id)
        if sent.graphemes:
            sentences.append(sent)
    return sentences


@dataclass(frozen=True)
class Token:
    surface: str
    span: tuple[int, int]
    locked: bool = False


@dataclass
class HmmParams:
    """Log-probabilities of the segmentation HMM.

    ``transition`` only carries structurally legal pairs; everything else
    is -inf by construction. ``emission`` maps state -> grapheme -> logp,
    with absent graphemes falling back to ``unseen_emission_logp``.
    """

    initial: dict[State, float]
    transition: dict[tuple[State, State], float]
    emission: dict[State, dict[str, float]]
    unseen_emission_logp: float

    def emit(self, state: State, grapheme: str) -> float:
        return self.emission.get(state, {}).get(grapheme, self.unseen_emission_logp)

    def validate(self) -> None:
        for s in (State.M, State.E):
            if self.initial.get(s, NEG_INF) != NEG_INF:
                raise InvalidParams(f"initial[{s.name}] must be -inf")
        total = sum(math.exp(self.initial.get(s, NEG_INF)) for s in STATES)
        if abs(total - 1.0) > 1e-9:
            raise InvalidParams(f"initial probabilities sum to {total}")
        for s in STATES:
            for t in STATES:
                if t not in LEGAL_NEXT[s] and self.transition.get((s, t), NEG_INF) != NEG_INF:
                    raise InvalidParams(f"illegal transition {s.name}->{t.name} has finite probability")
            row = sum(math.exp(self.transition.get((s, t), NEG_INF)) for t in LEGAL_NEXT[s])
            if abs(row - 1.0) > 1e-9:
                raise InvalidParams(f"transition row {s.name} sums to {row}")


def lock_spans(sentence: Sentence, lexicon: Lexicon) -> list[tuple[int, int]]:
    """Greedy left-to-right longest match of power-dictionary surfaces.

    Matching is width/case folded per grapheme; matches never cross a
    forced (whitespace) boundary. Common entries do not lock anything.
    """
    trie = _power_trie(lexicon)
    folded = [fold_grapheme(g) for g in sentence.graphemes]
    n = len(folded)
    spans: list[tuple[int, int]] = []
    i = 0
    while i < n:
        node = trie
        best_end = -1
        j = i
        while j < n:
            if j > i and (j in sentence.forced_breaks):
                break
            node = node.get(folded[j])
            if node is None:
                break
            j += 1
            if _TRIE_LEAF in node:
                best_end = j
        if best_end > i:
            spans.append((i, best_end))
            i = best_end
        else:
            i += 1
    return spans


_TRIE_LEAF = ""


def _power_trie(lexicon: Lexicon) -> dict:
    trie = getattr(lexicon, "_span_trie", None)
    if trie is None:
        trie = {}
        for entry in lexicon.power_entries():
            node = trie
            for g in graphemes(entry.surface):
                node = node.setdefault(fold_grapheme(g), {})
            node[_TRIE_LEAF] = True
        lexicon._span_trie = trie
    return trie


def _allowed_states(sentence: Sentence, locked: Sequence[tuple[int, int]]) -> list[set[State]]:
    n = len(sentence.graphemes)
    allowed: list[set[State]] = [set(STATES) for _ in range(n)]
    allowed[0] &= set(START_STATES)
    allowed[n - 1] &= set(END_STATES)
    for i in sentence.forced_breaks:
        if 0 < i < n:
            allowed[i] &= set(START_STATES)
            allowed[i - 1] &= set(END_STATES)
    last_end = 0
    for a, b in sorted(locked):
        if not (0 <= a < b <= n):
            raise SpanOutOfBounds((a, b), n)
        if a < last_end:
            raise SpanOutOfBounds((a, b), n)
        if any(a < k < b for k in sentence.forced_breaks):
            raise SpanOutOfBounds((a, b), n)
        last_end = b
        if b - a == 1:
            allowed[a] &= {State.S}
        else:
            allowed[a] &= {State.B}
            for k in range(a + 1, b - 1):
                allowed[k] &= {State.M}
            allowed[b - 1] &= {State.E}
    if any(not states for states in allowed):
        raise SpanOutOfBounds((0, n), n)
    return allowed


def viterbi(sentence: Sentence, params: HmmParams,
            locked: Sequence[tuple[int, int]] = ()) -> list[Token]:
    """Maximum log-probability BMES decode under the given constraints.

    Ties are broken toward the earlier state in the order B<M<E<S at the
    latest position where candidate paths differ; iterating states in
    enum order and only replacing on strictly better scores implements
    exactly that during backtracking.
    """
    params.validate()
    gs = sentence.graphemes
    if not gs:
        return []
    allowed = _allowed_states(sentence, locked)
    n = len(gs)

    delta: list[dict[State, float]] = [dict() for _ in range(n)]
    psi: list[dict[State, Optional[State]]] = [dict() for _ in range(n)]
    for s in STATES:
        if s in allowed[0]:
            delta[0][s] = params.initial.get(s, NEG_INF) + params.emit(s, gs[0])
            psi[0][s] = None
    for t in range(1, n):
        for j in STATES:
            if j not in allowed[t]:
                continue
            best: Optional[float] = None
            best_prev: Optional[State] = None
            for i in STATES:
                if i not in delta[t - 1] or j not in LEGAL_NEXT[i]:
                    continue
                score = delta[t - 1][i] + params.transition.get((i, j), NEG_INF)
                if best is None or score > best:
                    best = score
                    best_prev = i
            if best is not None:
                delta[t][j] = best + params.emit(j, gs[t])
                psi[t][j] = best_prev

    final: Optional[State] = None
    final_score: Optional[float] = None
    for s in STATES:
        if s in delta[n - 1] and (final_score is None or delta[n - 1][s] > final_score):
            final_score = delta[n - 1][s]
            final = s
    if final is None:
        raise SpanOutOfBounds((0, n), n)

    states = [final]
    for t in range(n - 1, 0, -1):
        states.append(psi[t][states[-1]])
    states.reverse()

    locked_set = set(tuple(s) for s in locked)
    tokens: list[Token] = []
    start = 0
    for t, s in enumerate(states):
        if s in END_STATES:
            span = (start, t + 1)
            tokens.append(Token(surface="".join(gs[start:t + 1]), span=span,
                                locked=span in locked_set))
            start = t + 1
    return tokens


def segment(sentence: Sentence, params: HmmParams, lexicon: Lexicon) -> list[Token]:
    """Lock dictionary spans, then decode."""
    return viterbi(sentence, params, lock_spans(sentence, lexicon))


def fit_params(tagged_corpus: Iterable[tuple[Sentence, Sequence[int]]]) -> HmmParams:
    """Maximum-likelihood parameters from gold-segmented sentences.

    Gold segmentation is given as the sorted token end positions of each
    sentence. Emissions get add-one smoothing over the corpus grapheme
    vocabulary; transition rows of states never observed fall back to a
    uniform distribution over their legal successors so every row stays
    normalized.
    """
    init_counts: dict[State, int] = {s: 0 for s in STATES}
    trans_counts: dict[tuple[State, State], int] = {}
    emit_counts: dict[State, dict[str, int]] = {s: {} for s in STATES}
    vocab: set[str] = set()
    n_obs = 0
    n_sentences = 0

    for sentence, ends in tagged_corpus:
        states = _states_from_ends(sentence, ends)
        n_sentences += 1
        init_counts[states[0]] += 1
        for (a, b) in zip(states, states[1:]):
            trans_counts[(a, b)] = trans_counts.get((a, b), 0) + 1
        for g, s in zip(sentence.graphemes, states):
            emit_counts[s][g] = emit_counts[s].get(g, 0) + 1
            vocab.add(g)
            n_obs += 1
    if n_sentences == 0:
        raise EmptyCorpus("no tagged sentences")

    initial = {s: NEG_INF for s in STATES}
    for s in START_STATES:
        if init_counts[s]:
            initial[s] = math.log(init_counts[s] / n_sentences)

    transition: dict[tuple[State, State], float] = {}
    for s in STATES:
        total = sum(trans_counts.get((s, t), 0) for t in LEGAL_NEXT[s])
        for t in LEGAL_NEXT[s]:
            if total == 0:
                transition[(s, t)] = math.log(1.0 / len(LEGAL_NEXT[s]))
            else:
                c = trans_counts.get((s, t), 0)
                transition[(s, t)] = math.log(c / total) if c else NEG_INF

    v = len(vocab)
    emission: dict[State, dict[str, float]] = {}
    for s in STATES:
        total = sum(emit_counts[s].values())
        emission[s] = {
            g: math.log((emit_counts[s].get(g, 0) + 1) / (total + v)) for g in vocab
        }
    return HmmParams(
        initial=initial,
        transition=transition,
        emission=emission,
        unseen_emission_logp=math.log(1.0 / (n_obs + v)) if n_obs + v else NEG_INF,
    )


def _states_from_ends(sentence: Sentence, ends: Sequence[int]) -> list[State]:
    n = len(sentence.graphemes)
    if not ends or list(ends) != sorted(set(ends)) or ends[-1] != n or ends[0] <= 0:
        raise ValueError(f"bad gold boundaries {list(ends)!r} for length {n}")
    states: list[State] = []
    start = 0
    for end in ends:
        if end - start == 1:
            states.append(State.S)
        else:
            states.append(State.B)
            states.extend([State.M] * (end - start - 2))
            states.append(State.E)
        start = end
    return states


def load_tagged_corpus(path: str | Path) -> list[tuple[Sentence, list[int]]]:
    """Read a gold-segmented corpus: one sentence per line, token
    boundaries marked with ``|``. Blank and ``#`` lines are skipped."""
    corpus = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            raw = raw.rstrip("\n")
            if not raw or raw.startswith("#"):
                continue
            ends: list[int] = []
            count = 0
            for piece in raw.split("|"):
                count += len(graphemes(piece))
                if not piece:
                    raise MalformedLine(line_no, "empty token", str(path))
                ends.append(count)
            sentence = Sentence(id=f"{path}:{line_no}",
                                graphemes=tuple(graphemes(raw.replace("|", ""))),
                                source=str(path))
            corpus.append((sentence, ends))
    return corpus


_UNSEEN_KEY = "*"


def save_params(params: HmmParams, path: str | Path) -> None:
    """Serialize params: [initial] / [transition] / [emission] sections.

    The reserved ``*<TAB>*`` emission line carries the unseen-grapheme
    floor; all other absent emission entries imply that floor.
    """
    lines = ["[initial]"]
    for s in START_STATES:
        lines.append(f"{s.name}\t{params.initial.get(s, NEG_INF)!r}")
    lines.append("[transition]")
    for s in STATES:
        for t in LEGAL_NEXT[s]:
            lines.append(f"{s.name}\t{t.name}\t{params.transition.get((s, t), NEG_INF)!r}")
    lines.append("[emission]")
    lines.append(f"{_UNSEEN_KEY}\t{_UNSEEN_KEY}\t{params.unseen_emission_logp!r}")
    for s in STATES:
        for g in sorted(params.emission.get(s, {})):
            lines.append(f"{s.name}\t{g}\t{params.emission[s][g]!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_params(path: str | Path) -> HmmParams:
    initial = {s: NEG_INF for s in STATES}
    transition: dict[tuple[State, State], float] = {}
    emission: dict[State, dict[str, float]] = {s: {} for s in STATES}
    unseen: Optional[float] = None
    section = None
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            raw = raw.rstrip("\n")
            if not raw:
                continue
            if raw.startswith("["):
                if raw not in ("[initial]", "[transition]", "[emission]"):
                    raise MalformedLine(line_no, f"unknown section {raw!r}", str(path))
                section = raw
                continue
            fields = raw.split("\t")
            try:
                if section == "[initial]" and len(fields) == 2:
                    initial[State[fields[0]]] = float(fields[1])
                elif section == "[transition]" and len(fields) == 3:
                    transition[(State[fields[0]], State[fields[1]])] = float(fields[2])
                elif section == "[emission]" and len(fields) == 3:
                    if fields[0] == _UNSEEN_KEY and fields[1] == _UNSEEN_KEY:
                        unseen = float(fields[2])
                    else:
                        emission[State[fields[0]]][fields[1]] = float(fields[2])
                else:
                    raise MalformedLine(line_no, "unexpected record shape", str(path))
            except (KeyError, ValueError) as exc:
                raise MalformedLine(line_no, f"cannot parse: {exc}", str(path)) from None
    if unseen is None:
        raise MalformedLine(0, "missing unseen-emission floor line", str(path))
    params = HmmParams(initial=initial, transition=transition, emission=emission,
                       unseen_emission_logp=unseen)
    params.validate()
    return params
