import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rted.tree import Tree, TreeParseError, XMLIngestError, ingest_xml, parse_bracket, serialize_bracket


def test_single_node():
    t = parse_bracket("{a}")
    assert t.label == "a" and t.children == []


def test_children_in_order():
    t = parse_bracket("{a{b}{c}}")
    assert t.label == "a"
    assert [c.label for c in t.children] == ["b", "c"]


@pytest.mark.parametrize("text, offset", [
    ("{a{b}", 5),
    ("", 0),
    ("   ", 3),
    ("{}", 0),
    ("{a}{b}", 3),
    ("{a}x", 3),
    ("a", 0),
    ("{a\\", 2),
])
def test_parse_errors_report_offsets(text, offset):
    with pytest.raises(TreeParseError) as err:
        parse_bracket(text)
    assert err.value.offset == offset


def test_offset_is_in_bytes():
    # "é" is two bytes in UTF-8, so the stray "}" sits at byte 4
    with pytest.raises(TreeParseError) as err:
        parse_bracket("{é}}x")
    assert err.value.offset == 4


def test_serialize_examples():
    assert serialize_bracket(Tree("a")) == "{a}"
    assert serialize_bracket(Tree("a", [Tree("b"), Tree("c")])) == "{a{b}{c}}"
    assert serialize_bracket(Tree("x{y")) == "{x\\{y}"


def test_escapes_round_trip():
    t = Tree("a\\b", [Tree("}"), Tree("{x}")])
    assert parse_bracket(serialize_bracket(t)) == t


def test_whitespace_inside_labels_is_kept():
    assert parse_bracket(" {a b{c}} \n").label == "a b"


def test_deep_tree_does_not_recurse():
    n = 50_000
    text = "{x" * n + "}" * n
    t = parse_bracket(text)
    assert len(t) == n
    assert serialize_bracket(t) == text
    assert t == parse_bracket(text)


def test_mirror():
    t = parse_bracket("{a{b{d}{e}}{c}}")
    assert serialize_bracket(t.mirror()) == "{a{c}{b{e}{d}}}"


labels = st.text(alphabet="ab{}\\ é", min_size=1, max_size=3)
trees = st.recursive(
    st.builds(Tree, labels),
    lambda kids: st.builds(Tree, labels, st.lists(kids, max_size=4)),
    max_leaves=20,
)


@settings(max_examples=200, deadline=None)
@given(trees)
def test_parse_serialize_round_trip(t):
    text = serialize_bracket(t)
    assert parse_bracket(text) == t
    assert serialize_bracket(parse_bracket(text)) == text


def test_xml_examples():
    assert serialize_bracket(ingest_xml("<a><b/><c/></a>")) == "{a{b}{c}}"
    assert serialize_bracket(ingest_xml("<a>text</a>")) == "{a}"
    assert serialize_bracket(ingest_xml('<a x="1"><b>t<c/>u</b></a>')) == "{a{b{c}}}"


def test_xml_malformed():
    with pytest.raises(XMLIngestError):
        ingest_xml("<a><b></a>")
