"""Interactive retrieval over the graph store.

The entry points mirror the operator workflow: exact-match lookup,
exhaustive level-1 listing, iterative drill-down that also surfaces
facts (asserted or inferred) between already-revealed entities,
connected-component traces, and shortest paths. Everything is
deterministic so golden tests and the UI see stable output.

"Not found" and "no path" are ordinary return values (None), never
errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import RuleError, TargetNotRevealed, UnknownEntity
from .model import ProvKind, Provenance, get_predicate
from .rules import InferenceRule, TriplePattern
from .store import Direction, GraphStore, Triple

Edge = tuple[Triple, Direction]


@dataclass
class Level:
    frontier: list[int]
    edges: list[Edge]


@dataclass
class ResultTree:
    root: Optional[int]
    levels: list[Level]
    not_found: bool = False

    def edge_keys(self) -> set[tuple[int, str, int]]:
        return {t.key() for level in self.levels for t, _ in level.edges}

    def edges(self) -> list[Edge]:
        return [e for level in self.levels for e in level.edges]


@dataclass
class Session:
    tree: ResultTree
    revealed: set[int]
    path: list[int] = field(default_factory=list)


@dataclass
class TraceNode:
    entity: int
    edge: Optional[Edge]
    children: list["TraceNode"] = field(default_factory=list)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def edge_count(self) -> int:
        return (0 if self.edge is None else 1) + sum(c.edge_count() for c in self.children)


class QueryEngine:
    """Read-only query surface over a store snapshot.

    The rule set is fixed at construction; saturation runs immediately
    and its conclusions live in the store flagged as derived.
    """

    def __init__(self, store: GraphStore, rules: Sequence[InferenceRule] = ()):
        self.store = store
        self.rules = tuple(rules)
        for rule in self.rules:
            rule.validate()
        self.saturate()

    # -- inference --------------------------------------------------------

    def saturate(self) -> list[Triple]:
        """Forward-chain the rules to fixpoint; returns newly derived
        triples. Conclusions that collapse to self-loops are discarded,
        and a fact already asserted is never re-derived."""
        store = self.store
        derived: list[Triple] = []
        delta = {t.key() for t in store.triples()}
        while delta:
            new_keys: set[tuple[int, str, int]] = set()
            for rule in self.rules:
                for pivot in range(len(rule.premises)):
                    for binding in self._join(rule.premises, 0, {}, pivot, delta):
                        triple = self._conclude(rule, binding)
                        if triple is not None and triple.key() not in delta:
                            new_keys.add(triple.key())
                            derived.append(triple)
            delta = new_keys
        return derived

    def _join(self, premises: Sequence[TriplePattern], i: int, binding: dict,
              pivot: int, delta: set) -> Iterable[dict]:
        if i == len(premises):
            yield dict(binding)
            return
        restrict = delta if i == pivot else None
        for s, o in self._match(premises[i], binding, restrict):
            extended = dict(binding)
            if TriplePattern.is_var(premises[i].s):
                extended[premises[i].s] = s
            if TriplePattern.is_var(premises[i].o):
                extended[premises[i].o] = o
            yield from self._join(premises, i + 1, extended, pivot, delta)

    def _term_id(self, term: str, binding: dict) -> Optional[int]:
        if TriplePattern.is_var(term):
            return binding.get(term)
        record = self.store.entity_by_label(term)
        return -1 if record is None else record.id

    def _match(self, pattern: TriplePattern, binding: dict,
               restrict: Optional[set]) -> Iterable[tuple[int, int]]:
        s = self._term_id(pattern.s, binding)
        o = self._term_id(pattern.o, binding)
        if s == -1 or o == -1:  # constant label absent from the store
            return
        pname = pattern.p
        store = self.store
        if s is not None and o is not None:
            keys = [(s, pname, o)]
        elif s is not None:
            keys = [(s, pname, obj) for obj in store._spo.get(s, {}).get(pname, ())]
        elif o is not None:
            keys = [(subj, pname, o) for subj in store._pos.get(pname, {}).get(o, ())]
        else:
            keys = [(subj, pname, obj)
                    for obj, subjects in store._pos.get(pname, {}).items()
                    for subj in subjects]
        same_var = (TriplePattern.is_var(pattern.s) and pattern.s == pattern.o)
        for key in keys:
            if store.triple(*key) is None:
                continue
            if restrict is not None and key not in restrict:
                continue
            if same_var and key[0] != key[2]:
                continue
            yield key[0], key[2]

    def _conclude(self, rule: InferenceRule, binding: dict) -> Optional[Triple]:
        def label_of(term: str) -> str:
            if TriplePattern.is_var(term):
                return self.store.entity(binding[term]).label
            if self.store.entity_by_label(term) is None:
                raise RuleError(
                    f"rule {rule.name!r} concludes with unknown entity {term!r}")
            return term

        s_label = label_of(rule.conclusion.s)
        o_label = label_of(rule.conclusion.o)
        if s_label == o_label:
            return None
        predicate = get_predicate(rule.conclusion.p)
        if predicate.symmetric and o_label < s_label:
            s_label, o_label = o_label, s_label
        s = self.store.entity_by_label(s_label).id
        o = self.store.entity_by_label(o_label).id
        if self.store.triple(s, predicate.name, o) is not None:
            return None
        return self.store.insert(s_label, predicate, o_label,
                                 [Provenance(ProvKind.DERIVED, rule.name)], derived=True)

    # -- retrieval --------------------------------------------------------

    def find_entity(self, query: str) -> Optional[int]:
        """Normalize and alias-resolve the query to an entity id."""
        return self.store.resolve(query)

    def level1(self, eid: int) -> ResultTree:
        self.store.entity(eid)
        edges = self.store.neighbors(eid)
        frontier = self._sorted_ids({self.store.other_end(eid, t) for t, _ in edges})
        return ResultTree(root=eid, levels=[Level(frontier=frontier, edges=edges)])

    def not_found(self) -> ResultTree:
        return ResultTree(root=None, levels=[], not_found=True)

    def start_session(self, eid: int) -> Session:
        tree = self.level1(eid)
        revealed = {eid} | set(tree.levels[0].frontier)
        return Session(tree=tree, revealed=revealed)

    def drill(self, session: Session, target: int) -> Session:
        """Expand one revealed entity: its unseen incident edges plus any
        unseen facts whose endpoints are all revealed afterwards."""
        if target not in session.revealed:
            raise TargetNotRevealed(target)
        level = self._drill_level(session.tree.edge_keys(), session.revealed, target)
        session.tree.levels.append(level)
        for triple, _ in level.edges:
            session.revealed.update((triple.s, triple.o))
        session.path.append(target)
        return session

    def drill_stateless(self, revealed: set[int], target: int,
                        root: Optional[int], has_drilled: bool) -> tuple[Level, set[int]]:
        """Stateless replay of :meth:`drill` for the HTTP service.

        The edges already shown to the client are reconstructible from
        the session shape: after level 1 they are exactly the root's
        incident edges, after any drill exactly the edges among the
        revealed set.
        """
        if target not in revealed:
            raise TargetNotRevealed(target)
        if has_drilled or root is None:
            shown = self._edges_within(revealed)
        else:
            shown = {t.key() for t, _ in self.store.neighbors(root)}
        level = self._drill_level(shown, revealed, target)
        new_revealed = set(revealed)
        for triple, _ in level.edges:
            new_revealed.update((triple.s, triple.o))
        return level, new_revealed

    def _edges_within(self, scope: set[int]) -> set[tuple[int, str, int]]:
        keys = set()
        for u in scope:
            for triple, _ in self.store.neighbors(u):
                if triple.s in scope and triple.o in scope:
                    keys.add(triple.key())
        return keys

    def _drill_level(self, shown: set, revealed: set[int], target: int) -> Level:
        store = self.store
        incident = [(t, d) for t, d in store.neighbors(target) if t.key() not in shown]
        new_frontier = {store.other_end(target, t) for t, _ in incident} - revealed
        scope = revealed | new_frontier
        seen = shown | {t.key() for t, _ in incident}
        cross: list[Edge] = []
        for u in self._sorted_ids(scope):
            for triple, _ in store.neighbors(u):
                if triple.key() in seen:
                    continue
                if triple.s in scope and triple.o in scope:
                    cross.append((triple, Direction.OUT))
                    seen.add(triple.key())
        cross.sort(key=lambda e: (e[0].p.name, store.entity(e[0].s).label,
                                  store.entity(e[0].o).label))
        edges = incident + cross
        endpoints = {t.s for t, _ in edges} | {t.o for t, _ in edges}
        return Level(frontier=self._sorted_ids(endpoints - {target}), edges=edges)

    def neighborhood(self, eid: int, depth: int) -> ResultTree:
        """Leveled expansion to the given depth.

        Depth 1 is exactly the level-1 result; every further level is
        what drilling every frontier entity of the previous level would
        reveal, including facts between entities that are both visible
        afterwards. The final edge set therefore does not depend on any
        drill order.
        """
        self.store.entity(eid)
        tree = ResultTree(root=eid, levels=[])
        visited = {eid}
        frontier = [eid]
        shown: set[tuple[int, str, int]] = set()
        for step in range(depth):
            edges: list[Edge] = []
            for u in frontier:
                for triple, direction in self.store.neighbors(u):
                    if triple.key() in shown:
                        continue
                    shown.add(triple.key())
                    edges.append((triple, direction))
            endpoints = {t.s for t, _ in edges} | {t.o for t, _ in edges}
            new_frontier = self._sorted_ids(endpoints - visited)
            visited |= endpoints
            if step > 0:
                cross: list[Edge] = []
                for u in self._sorted_ids(visited):
                    for triple, _ in self.store.neighbors(u):
                        if triple.key() in shown:
                            continue
                        if triple.s in visited and triple.o in visited:
                            shown.add(triple.key())
                            cross.append((triple, Direction.OUT))
                cross.sort(key=lambda e: (e[0].p.name, self.store.entity(e[0].s).label,
                                          self.store.entity(e[0].o).label))
                edges.extend(cross)
            tree.levels.append(Level(frontier=new_frontier, edges=edges))
            frontier = new_frontier
            if not frontier:
                break
        return tree

    def trace(self, eid: int) -> TraceNode:
        """Spanning tree of the connected component, ignoring direction."""
        self.store.entity(eid)
        root = TraceNode(entity=eid, edge=None)
        visited = {eid}
        queue = [root]
        while queue:
            node = queue.pop(0)
            for triple, direction in self.store.neighbors(node.entity):
                other = self.store.other_end(node.entity, triple)
                if other in visited:
                    continue
                visited.add(other)
                child = TraceNode(entity=other, edge=(triple, direction))
                node.children.append(child)
                queue.append(child)
        return root

    def shortest_path(self, a: int, b: int) -> Optional[list[Triple]]:
        """Undirected BFS shortest path; among equal-length paths the one
        with the lexicographically smallest (predicate, label) sequence
        wins. None when the entities are disconnected."""
        self.store.entity(a)
        self.store.entity(b)
        if a == b:
            return []
        # seq is the tie-break key: tuple of (predicate, label) pairs
        info: dict[int, tuple[tuple, tuple]] = {a: ((), ())}
        current = [a]
        seen = {a}
        while current:
            candidates: dict[int, tuple[tuple, tuple]] = {}
            for u in current:
                seq_u, path_u = info[u]
                for triple, _ in self.store.neighbors(u):
                    v = self.store.other_end(u, triple)
                    if v in seen:
                        continue
                    cand = (seq_u + ((triple.p.name, self.store.entity(v).label),),
                            path_u + (triple,))
                    if v not in candidates or cand[0] < candidates[v][0]:
                        candidates[v] = cand
            if not candidates:
                return None
            info.update(candidates)
            seen |= set(candidates)
            if b in candidates:
                return list(candidates[b][1])
            current = self._sorted_ids(set(candidates))
        return None

    def _sorted_ids(self, ids: Iterable[int]) -> list[int]:
        return sorted(ids, key=lambda i: self.store.entity(i).label)


# -- wire payloads ---------------------------------------------------------

def entity_payload(store: GraphStore, eid: int) -> dict:
    record = store.entity(eid)
    return {
        "id": record.id,
        "label": record.label,
        "category": record.category.value,
        "aliases": sorted(record.aliases),
    }


def edge_payload(store: GraphStore, triple: Triple, direction: Direction) -> dict:
    return {
        "subject": store.entity(triple.s).label,
        "predicate": triple.p.name,
        "object": store.entity(triple.o).label,
        "direction": direction.value,
        "derived": triple.derived,
        "provenance": [str(p) for p in triple.provenance],
    }


def level_payload(store: GraphStore, level: Level) -> dict:
    return {
        "frontier": [entity_payload(store, eid) for eid in level.frontier],
        "edges": [edge_payload(store, t, d) for t, d in level.edges],
    }


def tree_payload(store: GraphStore, tree: ResultTree) -> dict:
    return {
        "root": None if tree.root is None else entity_payload(store, tree.root),
        "not_found": tree.not_found,
        "levels": [level_payload(store, level) for level in tree.levels],
    }


def trace_payload(store: GraphStore, node: TraceNode) -> dict:
    payload = {
        "entity": entity_payload(store, node.entity),
        "children": [trace_payload(store, child) for child in node.children],
    }
    if node.edge is not None:
        payload["edge"] = edge_payload(store, *node.edge)
    return payload
