from gridkg.lexicon import Category
from gridkg.mentions import Mention
from gridkg.model import EntityCategory, ProvKind
from gridkg.relations import extract_relations


def mention(surface, category, index, canonical=None):
    return Mention(surface=surface, category=Category(category), sentence_id="s1",
                   token_index=index, canonical=canonical or surface)


def keys(triples):
    return {(t.subject.label, t.predicate.name, t.object.label) for t in triples}


def test_symmetric_r1_orders_canonically():
    # hand-applied: row E1/E1 with a symmetric R1 word; "switch #2016"
    # precedes "transformer #1" in label order
    mentions = [
        mention("transformer #1", "E1", 0),
        mention("connects", "R1", 1, canonical="Connect"),
        mention("switch #2016", "E1", 2),
    ]
    (triple,) = extract_relations(mentions)
    assert triple.subject.label == "switch #2016"
    assert triple.object.label == "transformer #1"
    assert triple.predicate.name == "Connect"
    assert triple.provenance.kind is ProvKind.TEXT


def test_swapping_symmetric_entities_gives_identical_triple():
    a = [
        mention("transformer #1", "E1", 0),
        mention("connects", "R1", 1, canonical="Connect"),
        mention("switch #2016", "E1", 2),
    ]
    b = [
        mention("switch #2016", "E1", 0),
        mention("connects", "R1", 1, canonical="Connect"),
        mention("transformer #1", "E1", 2),
    ]
    assert keys(extract_relations(a)) == keys(extract_relations(b))


def test_r2_subject_is_the_e2_side():
    mentions = [
        mention("operation system 1", "E2", 0),
        mention("operates", "R2", 1, canonical="Operate"),
        mention("transformer #1", "E1", 2),
    ]
    (triple,) = extract_relations(mentions)
    assert (triple.subject.label, triple.predicate.name, triple.object.label) == (
        "operation system 1", "Operate", "transformer #1")
    assert triple.subject.category is EntityCategory.E2


def test_r2_subject_is_e2_even_when_right_of_the_verb():
    mentions = [
        mention("transformer #2", "E1", 0),
        mention("managedby", "R2", 1, canonical="Manage"),
        mention("management system 1", "E2", 2),
    ]
    (triple,) = extract_relations(mentions)
    assert triple.subject.label == "management system 1"
    assert triple.object.label == "transformer #2"


def test_r3_subject_is_the_manufacturer():
    mentions = [
        mention("manufacturer 1", "E3", 0),
        mention("manufactures", "R3", 1, canonical="Manufacture"),
        mention("transformer #1", "E1", 2),
    ]
    (triple,) = extract_relations(mentions)
    assert triple.subject.label == "manufacturer 1"
    assert triple.subject.category is EntityCategory.E3


def test_asymmetric_r1_subject_is_left_mention():
    mentions = [
        mention("transformer #1", "E1", 0),
        mention("belongsto", "R1", 1, canonical="BelongTo"),
        mention("transformer", "E1", 2),
    ]
    (triple,) = extract_relations(mentions)
    assert (triple.subject.label, triple.object.label) == ("transformer #1", "transformer")


def test_adjacent_equipment_phenomenon_emits_occurs():
    mentions = [
        mention("transformer #1", "E1", 0),
        mention("outage", "P", 1),
    ]
    (triple,) = extract_relations(mentions)
    assert (triple.subject.label, triple.predicate.name, triple.object.label) == (
        "transformer #1", "occurs", "outage")


def test_occurs_subject_is_equipment_regardless_of_order():
    mentions = [
        mention("outage", "P", 0),
        mention("transformer #1", "E1", 1),
    ]
    (triple,) = extract_relations(mentions)
    assert triple.subject.label == "transformer #1"
    assert triple.object.label == "outage"


def test_occurs_requires_window_of_two():
    near = [mention("transformer #1", "E1", 0), mention("outage", "P", 2)]
    far = [mention("transformer #1", "E1", 0), mention("outage", "P", 3)]
    assert len(extract_relations(near)) == 1
    assert extract_relations(far) == []


def test_occurs_suppressed_by_intervening_relation_word():
    mentions = [
        mention("transformer #1", "E1", 0),
        mention("connects", "R1", 1, canonical="Connect"),
        mention("outage", "P", 2),
    ]
    # the R1 row does not apply to (E1, P) and the relation word blocks
    # the adjacency rule
    assert extract_relations(mentions) == []


def test_e2_pairs_are_no_relation():
    mentions = [
        mention("operation system 1", "E2", 0),
        mention("operates", "R2", 1, canonical="Operate"),
        mention("operation system 2", "E2", 2),
    ]
    assert extract_relations(mentions) == []


def test_relation_word_without_both_sides_is_dropped():
    left_only = [mention("transformer #1", "E1", 0), mention("connects", "R1", 1, canonical="Connect")]
    right_only = [mention("connects", "R1", 0, canonical="Connect"), mention("transformer #1", "E1", 1)]
    assert extract_relations(left_only) == []
    assert extract_relations(right_only) == []


def test_no_relation_words_no_adjacency_no_triples():
    mentions = [mention("transformer #1", "E1", 0), mention("switch #2016", "E1", 1)]
    assert extract_relations(mentions) == []


def test_every_triple_is_anchored_on_equipment():
    mentions = [
        mention("a1", "E1", 0),
        mention("connects", "R1", 1, canonical="Connect"),
        mention("a2", "E1", 2),
        mention("org", "E2", 3),
        mention("operates", "R2", 4, canonical="Operate"),
        mention("a3", "E1", 5),
        mention("fire", "P", 6),
    ]
    triples = extract_relations(mentions)
    assert triples
    for t in triples:
        assert EntityCategory.E1 in (t.subject.category, t.object.category)


def test_deterministic_output():
    mentions = [
        mention("a1", "E1", 0),
        mention("connects", "R1", 1, canonical="Connect"),
        mention("a2", "E1", 2),
    ]
    assert extract_relations(mentions) == extract_relations(mentions)


def test_empty_input():
    assert extract_relations([]) == []
