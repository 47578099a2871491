import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES
from derivlink.records import (
    AtomList,
    EmptyAttributeName,
    Record,
    RecList,
    RecordSyntaxError,
    Symbol,
    UnbalancedDelimiter,
    UnterminatedString,
    get_all,
    parse_record,
    parse_records,
    serialize_record,
)


def test_nested_hypernym():
    r = parse_record('{ Hypernym { Lemma "plate" } }')
    assert r.names() == ["Hypernym"]
    assert r.get("Hypernym") == Record([("Lemma", "plate")])


def test_empty_record():
    assert parse_record("{ }") == Record()
    assert serialize_record(Record()) == "{\n}"


def test_atom_list():
    r = parse_record("{ NextMorphs (Noun_Plural None) }")
    assert r.get("NextMorphs") == AtomList(["Noun_Plural", "None"])
    assert isinstance(r.get("NextMorphs"), AtomList)


def test_empty_atom_list_is_allowed():
    assert parse_record("{ X () }").get("X") == AtomList()


def test_single_string_serializes_quoted():
    assert serialize_record(Record([("Lemma", "person")])) == '{\n  Lemma "person"\n}'


def test_bare_atoms_stay_bare():
    text = serialize_record(parse_record("{ Cat Noun Ldoce 102 }"))
    assert "Cat Noun" in text and "Ldoce 102" in text


def test_repeated_records_merge_in_order():
    r = parse_record('{ A {Lemma "x"} B 1 A {Lemma "y"} }')
    assert r.names() == ["A", "B"]
    assert isinstance(r.get("A"), RecList)
    assert [x.get("Lemma") for x in get_all(r, "A")] == ["x", "y"]


def test_one_name_several_records():
    r = parse_record('{ SubjOf {Lemma "study"} {Lemma "know"} }')
    assert len(get_all(r, "SubjOf")) == 2


def test_get_all_absent():
    assert get_all(Record(), "X") == []


def test_geographer_subjof_has_two(lex):
    s = next(s for s in lex.senses if s.headword == "geographer")
    assert [x.get("Lemma") for x in get_all(s.record, "SubjOf")] == ["study", "know"]


def test_comments_skipped():
    r = parse_record("// note\n{ A 1\n  // inner note\n}")
    assert r.get("A") == "1"
    assert parse_records("// only a comment\n") == []


def test_slashes_inside_strings_survive():
    assert parse_record('{ A "x // y" }').get("A") == "x // y"


def test_escapes_round_trip():
    r = Record([("A", 'say "hi" \\ bye')])
    assert parse_record(serialize_record(r)) == r


@pytest.mark.parametrize(
    "text, err, where",
    [
        ("{ A 1", UnbalancedDelimiter, (1, 1)),
        ("{ A 1 } }", UnbalancedDelimiter, (1, 9)),
        ("{ A (x y }", UnbalancedDelimiter, (1, 10)),
        ('{ A "abc }', UnterminatedString, (1, 5)),
        ('{\n  "A" 1 }', EmptyAttributeName, (2, 3)),
        ("{ {B 1} }", EmptyAttributeName, (1, 3)),
    ],
)
def test_typed_errors_with_position(text, err, where):
    with pytest.raises(err) as info:
        parse_record(text)
    assert (info.value.line, info.value.column) == where


def test_name_without_value():
    with pytest.raises(RecordSyntaxError):
        parse_record("{ A }")


def test_record_inside_list_rejected():
    with pytest.raises(RecordSyntaxError):
        parse_record("{ A ({B 1}) }")


def test_symbol_equals_str():
    assert Symbol("x") == "x"
    assert parse_record("{ A x }") == Record([("A", "x")])


def test_replace_and_remove():
    r = parse_record("{ A 1 B 2 }")
    assert r.replace("A", "9").get("A") == "9"
    assert r.replace("C", "3").names() == ["A", "B", "C"]
    assert r.replace("A", None).names() == ["B"]


def test_every_fixture_file_round_trips():
    for path in sorted(FIXTURES.glob("*.rec")):
        recs = parse_records(path.read_text())
        assert recs, path.name
        for r in recs:
            assert parse_record(serialize_record(r)) == r, path.name


def test_parse_is_deterministic():
    text = (FIXTURES / "lexicon.rec").read_text()
    assert parse_records(text) == parse_records(text)


# -- property-based --------------------------------------------------------

_names = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,6}", fullmatch=True)
_atoms = st.one_of(
    st.text(max_size=8),
    st.from_regex(r"[a-z0-9_\-]{1,6}", fullmatch=True).map(Symbol),
)
_lists = st.lists(_atoms, max_size=3).map(AtomList)


def _records(depth: int = 2):
    leaf = st.one_of(_atoms, _lists)
    if depth == 0:
        values = leaf
    else:
        sub = _records(depth - 1)
        values = st.one_of(leaf, sub, st.lists(sub, min_size=2, max_size=3).map(RecList))
    return st.lists(st.tuples(_names, values), max_size=4).map(Record)


@settings(max_examples=100, deadline=None)
@given(_records())
def test_round_trip_property(r):
    assert parse_record(serialize_record(r)) == r


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet='{}()" ab\n\\/', max_size=20))
def test_errors_are_typed(text):
    try:
        parse_records(text)
    except RecordSyntaxError as e:
        assert e.line >= 1 and e.column >= 1
