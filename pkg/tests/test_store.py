import random

import pytest

from gridkg.errors import CategoryConflict, InvalidTriple, MalformedLine, UnknownEntity
from gridkg.model import (
    BELONG_TO,
    CONNECT,
    EntityCategory,
    OPERATE,
    ProvKind,
    Provenance,
    get_predicate,
)
from gridkg.store import Direction, GraphStore

from helpers import random_graph

PROV = Provenance(ProvKind.TEXT, "t:0")


def small_store():
    store = GraphStore()
    store.insert("Transformer #1", CONNECT, "#2016",
                 [PROV], subject_category=EntityCategory.E1,
                 object_category=EntityCategory.E1)
    return store


def test_insert_visible_through_all_indexes():
    store = small_store()
    assert store.index_sizes() == (1, 1, 1)
    t1 = store.entity_by_label("Transformer #1").id
    sw = store.entity_by_label("#2016").id
    # symmetric, so canonical order put #2016 in subject position
    assert store.triple(sw, "Connect", t1) is not None
    assert [t.key() for t, _ in store.neighbors(t1)] == [(sw, "Connect", t1)]
    assert [t.key() for t, _ in store.neighbors(sw)] == [(sw, "Connect", t1)]


def test_duplicate_insert_merges_provenance_only():
    store = small_store()
    other = Provenance(ProvKind.STRUCTURED, "station.yaml")
    store.insert("Transformer #1", CONNECT, "#2016", [other])
    assert len(store) == 1
    (triple,) = store.triples()
    assert triple.provenance == (other, PROV)


def test_random_inserts_keep_indexes_equal():
    # oracle: all three index totals must equal the triple-set size
    rng = random.Random(4)
    store = random_graph(rng, 40, 1000)
    n = len(store)
    assert store.index_sizes() == (n, n, n)


def test_neighbors_matches_linear_scan():
    rng = random.Random(5)
    store = random_graph(rng, 30, 400)
    for record in store.entities():
        want = {t.key() for t in store.triples() if record.id in (t.s, t.o)}
        got = {t.key() for t, _ in store.neighbors(record.id)}
        assert got == want


def test_neighbors_direction_and_order():
    store = GraphStore()
    store.insert("b", OPERATE, "a", subject_category=EntityCategory.E2,
                 object_category=EntityCategory.E1)
    store.insert("a", BELONG_TO, "c", subject_category=EntityCategory.E1,
                 object_category=EntityCategory.CLASS)
    store.insert("a", CONNECT, "d", object_category=EntityCategory.E1)
    a = store.entity_by_label("a").id
    edges = store.neighbors(a)
    assert [(t.p.name, d) for t, d in edges] == [
        ("BelongTo", Direction.OUT),
        ("Connect", Direction.OUT),
        ("Operate", Direction.IN),
    ]


def test_symmetric_edges_are_out_from_both_ends():
    store = small_store()
    for label in ("Transformer #1", "#2016"):
        eid = store.entity_by_label(label).id
        (edge,) = store.neighbors(eid)
        assert edge[1] is Direction.OUT


def test_neighbors_unknown_entity():
    with pytest.raises(UnknownEntity):
        small_store().neighbors(99)


def test_isolated_entity_has_no_neighbors():
    store = small_store()
    eid = store.ensure_entity("loner", EntityCategory.E1)
    assert store.neighbors(eid) == []


def test_union_of_out_edges_covers_triples_exactly_once():
    rng = random.Random(6)
    store = random_graph(rng, 25, 300)
    out_keys = []
    for record in store.entities():
        for triple, direction in store.neighbors(record.id):
            if direction is Direction.OUT and triple.s == record.id:
                out_keys.append(triple.key())
            elif direction is Direction.IN:
                pass
            elif triple.p.symmetric and triple.o == record.id:
                pass  # symmetric edges read Out from both ends; count once
    assert sorted(out_keys) == sorted(t.key() for t in store.triples())


def test_self_loop_rejected():
    store = GraphStore()
    with pytest.raises(InvalidTriple):
        store.insert("a", OPERATE, "a", subject_category=EntityCategory.E1,
                     object_category=EntityCategory.E1)


def test_label_with_tab_rejected():
    store = GraphStore()
    with pytest.raises(InvalidTriple):
        store.ensure_entity("bad\tlabel", EntityCategory.E1)
    with pytest.raises(InvalidTriple):
        store.ensure_entity("bad\nlabel", EntityCategory.E1)


def test_category_conflict_on_reinsert():
    store = small_store()
    with pytest.raises(CategoryConflict):
        store.insert("Transformer #1", OPERATE, "x",
                     subject_category=EntityCategory.P,
                     object_category=EntityCategory.E1)


def test_unknown_endpoint_without_category():
    store = GraphStore()
    with pytest.raises(UnknownEntity):
        store.insert("a", OPERATE, "b")


def test_alias_lookup():
    store = small_store()
    eid = store.entity_by_label("Transformer #1").id
    store.add_alias(eid, "transformer#1")
    assert store.resolve("TRANSFORMER#1") == eid
    assert store.resolve("Transformer  #1") == eid
    assert store.resolve("nothing") is None


def test_round_trip_station_like_store(tmp_path):
    store = small_store()
    eid = store.entity_by_label("Transformer #1").id
    store.add_alias(eid, "transformer#1")
    store.insert("Transformer #1", BELONG_TO, "Transformer",
                 [Provenance(ProvKind.STRUCTURED, "station.yaml")],
                 object_category=EntityCategory.CLASS)
    path = tmp_path / "graph.tsv"
    store.save(path)
    again = GraphStore.load(path)

    def shape(s):
        return (
            sorted((r.label, r.category.value, tuple(sorted(r.aliases))) for r in s.entities()),
            sorted((s.entity(t.s).label, t.p.name, s.entity(t.o).label, t.provenance, t.derived)
                   for t in s.triples()),
        )

    assert shape(again) == shape(store)


def test_round_trip_empty_store(tmp_path):
    path = tmp_path / "empty.tsv"
    GraphStore().save(path)
    again = GraphStore.load(path)
    assert len(again) == 0
    assert again.entities() == []


def test_round_trip_random_store_preserves_triple_multiset(tmp_path):
    rng = random.Random(7)
    store = random_graph(rng, 30, 500)
    path = tmp_path / "graph.tsv"
    store.save(path)
    again = GraphStore.load(path)
    to_labels = lambda s: sorted(
        (s.entity(t.s).label, t.p.name, s.entity(t.o).label) for t in s.triples())
    assert to_labels(again) == to_labels(store)
    # save -> load -> save is byte-stable
    path2 = tmp_path / "graph2.tsv"
    again.save(path2)
    assert path.read_bytes() == path2.read_bytes()


def test_load_rejects_bad_column_count(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("#entities\nE\tonly-two\n", encoding="utf-8")
    with pytest.raises(MalformedLine) as err:
        GraphStore.load(path)
    assert err.value.line_no == 2


def test_load_rejects_unknown_record(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("#entities\nX\ta\tb\tc\n", encoding="utf-8")
    with pytest.raises(MalformedLine):
        GraphStore.load(path)


def test_derived_triples_skipped_on_save_by_default(tmp_path):
    store = small_store()
    store.insert("Transformer #1", BELONG_TO, "Station",
                 [Provenance(ProvKind.DERIVED, "belongto-trans")], derived=True,
                 object_category=EntityCategory.STATION)
    default = tmp_path / "default.tsv"
    full = tmp_path / "full.tsv"
    store.save(default)
    store.save(full, include_derived=True)
    assert len(GraphStore.load(default)) == 1
    loaded = GraphStore.load(full)
    assert len(loaded) == 2
    derived = [t for t in loaded.triples() if t.derived]
    assert len(derived) == 1
