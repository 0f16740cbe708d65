"""Horn rules over triple patterns, for forward-chaining inference.

Rule file format, one rule per line:

    name: (?a, BelongTo, ?b) & (?b, BelongTo, ?c) => (?a, BelongTo, ?c)

Terms starting with ``?`` are variables; anything else is a constant
entity label. Predicates are always constant names. Every conclusion
variable must be bound by a premise, so rules can never introduce new
entities and saturation is guaranteed to reach a fixpoint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import RuleError

_PATTERN = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)")


@dataclass(frozen=True)
class TriplePattern:
    s: str
    p: str
    o: str

    @staticmethod
    def is_var(term: str) -> bool:
        return term.startswith("?")

    @property
    def variables(self) -> set[str]:
        return {t for t in (self.s, self.o) if self.is_var(t)}


@dataclass(frozen=True)
class InferenceRule:
    name: str
    premises: tuple[TriplePattern, ...]
    conclusion: TriplePattern

    def validate(self) -> None:
        if not self.name:
            raise RuleError("rule without a name")
        if not self.premises:
            raise RuleError(f"rule {self.name!r} has no premises")
        bound = set().union(*(p.variables for p in self.premises))
        unbound = self.conclusion.variables - bound
        if unbound:
            raise RuleError(
                f"rule {self.name!r} would introduce new entities: "
                f"conclusion variables {sorted(unbound)} are unbound")
        if TriplePattern.is_var(self.conclusion.p) or any(
                TriplePattern.is_var(p.p) for p in self.premises):
            raise RuleError(f"rule {self.name!r}: predicates must be constant names")


def parse_rule(line: str) -> InferenceRule:
    name, sep, rest = line.partition(":")
    if not sep:
        raise RuleError(f"missing ':' after rule name in {line!r}")
    body, sep, head = rest.partition("=>")
    if not sep:
        raise RuleError(f"missing '=>' in rule {name.strip()!r}")
    premises = tuple(TriplePattern(*m.groups()) for m in _PATTERN.finditer(body))
    heads = [TriplePattern(*m.groups()) for m in _PATTERN.finditer(head)]
    if len(heads) != 1:
        raise RuleError(f"rule {name.strip()!r} needs exactly one conclusion pattern")
    rule = InferenceRule(name=name.strip(), premises=premises, conclusion=heads[0])
    rule.validate()
    return rule


def parse_rules(text: str) -> list[InferenceRule]:
    rules = []
    for raw in text.splitlines():
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        rules.append(parse_rule(raw))
    names = [r.name for r in rules]
    if len(set(names)) != len(names):
        raise RuleError("duplicate rule names")
    return rules


def load_rules(path: str | Path) -> list[InferenceRule]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


BELONGTO_TRANSITIVITY = parse_rule(
    "belongto-trans: (?a, BelongTo, ?b) & (?b, BelongTo, ?c) => (?a, BelongTo, ?c)")

DEFAULT_RULES = (BELONGTO_TRANSITIVITY,)
