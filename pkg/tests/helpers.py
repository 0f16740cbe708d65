"""Shared fixture builders for the test suite."""

from __future__ import annotations

import math
import random

from gridkg.lexicon import Category, Lexicon, LexiconEntry, Source
from gridkg.model import EntityCategory, get_predicate
from gridkg.segmenter import HmmParams, LEGAL_NEXT, NEG_INF, STATES, State
from gridkg.store import GraphStore


def power_entry(surface, category="-", canonical=None):
    return LexiconEntry(surface=surface, source=Source.POWER,
                        category=Category(category), canonical=canonical)


def common_entry(surface):
    return LexiconEntry(surface=surface, source=Source.COMMON)


def make_lexicon(power=(), common=()):
    return Lexicon(common=common, power=power)


def uniform_params(alphabet="abcdef"):
    """Equal mass on everything legal: every tie-break path is exercised."""
    initial = {s: NEG_INF for s in STATES}
    initial[State.B] = math.log(0.5)
    initial[State.S] = math.log(0.5)
    transition = {}
    for s in STATES:
        for t in LEGAL_NEXT[s]:
            transition[(s, t)] = math.log(1.0 / len(LEGAL_NEXT[s]))
    emission = {s: {c: math.log(1.0 / len(alphabet)) for c in alphabet} for s in STATES}
    return HmmParams(initial=initial, transition=transition, emission=emission,
                     unseen_emission_logp=math.log(1.0 / (len(alphabet) * 4)))


def random_params(rng: random.Random, alphabet="abcd"):
    b_mass = rng.uniform(0.05, 0.95)
    initial = {s: NEG_INF for s in STATES}
    initial[State.B] = math.log(b_mass)
    initial[State.S] = math.log(1.0 - b_mass)
    transition = {}
    for s in STATES:
        weights = [rng.uniform(0.05, 1.0) for _ in LEGAL_NEXT[s]]
        total = sum(weights)
        for t, w in zip(LEGAL_NEXT[s], weights):
            transition[(s, t)] = math.log(w / total)
    emission = {
        s: {c: rng.uniform(-3.0, -0.1) for c in alphabet} for s in STATES
    }
    return HmmParams(initial=initial, transition=transition, emission=emission,
                     unseen_emission_logp=rng.uniform(-8.0, -4.0))


def plain_dicts(params: HmmParams):
    """Re-key params into the letter-keyed dicts the oracle uses."""
    initial = {s.name: params.initial.get(s, NEG_INF) for s in STATES}
    transition = {f"{s.name}{t.name}": v for (s, t), v in params.transition.items()}
    emission = {s.name: dict(params.emission.get(s, {})) for s in STATES}
    return initial, transition, emission, params.unseen_emission_logp


PREDICATE_POOL = ("Connect", "BelongTo", "Operate", "Manage", "Manufacture", "occurs")


def random_graph(rng: random.Random, n_entities: int, n_triples: int,
                 belongto_forest: bool = True) -> GraphStore:
    """Random store; BelongTo edges form a forest (child -> parent with a
    smaller index) so transitive closures stay bounded."""
    store = GraphStore()
    for i in range(n_entities):
        store.ensure_entity(f"n{i:04d}", EntityCategory.E1)
    made = 0
    attempts = 0
    while made < n_triples and attempts < n_triples * 20:
        attempts += 1
        name = rng.choice(PREDICATE_POOL)
        if name == "BelongTo" and belongto_forest:
            child = rng.randrange(1, n_entities)
            parent = rng.randrange(0, child)
            s, o = f"n{child:04d}", f"n{parent:04d}"
        else:
            a, b = rng.sample(range(n_entities), 2)
            s, o = f"n{a:04d}", f"n{b:04d}"
        before = len(store)
        store.insert(s, get_predicate(name), o)
        if len(store) > before:
            made += 1
    return store
