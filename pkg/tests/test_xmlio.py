import pytest

from semwsdl.xmlio import (
    Comment,
    MalformedXml,
    ProcessingInstruction,
    XmlElement,
    parse_xml,
    serialize,
)

SAMPLE = b"""<?xml version="1.0" encoding="UTF-8"?>
<a:root xmlns:a="urn:alpha" xmlns:b="urn:beta" b:flag="1">
  <a:child attr="v&amp;w">text &lt;here&gt;</a:child>
  <!-- a note -->
  <plain xmlns="urn:default"><inner/></plain>
</a:root>
"""


def test_names_and_prefixes_kept_as_written():
    doc = parse_xml(SAMPLE)
    assert doc.root.name == "a:root"
    children = list(doc.root.iter_elements())
    assert children[0].name == "a:child"
    assert children[0].attrs == {"attr": "v&w"}
    assert doc.root.attrs["b:flag"] == "1"


def test_qname_resolution_with_default_namespace():
    doc = parse_xml(SAMPLE)
    plain = list(doc.root.iter_elements())[1]
    assert plain.qname() == ("urn:default", "plain")
    inner = next(plain.iter_elements())
    assert inner.qname() == ("urn:default", "inner")
    assert doc.root.qname() == ("urn:alpha", "root")


def test_resolve_qname_value_uses_scope():
    doc = parse_xml(b'<r xmlns:t="urn:t"><c type="t:Foo"/></r>')
    child = next(doc.root.iter_elements())
    assert child.resolve_qname(child.attrs["type"]) == ("urn:t", "Foo")
    # unprefixed attribute values resolve through the default namespace
    doc2 = parse_xml(b'<r xmlns="urn:d"><c type="Foo"/></r>')
    child2 = next(doc2.root.iter_elements())
    assert child2.resolve_qname("Foo") == ("urn:d", "Foo")


def test_nested_prefix_redefinition():
    doc = parse_xml(b'<r xmlns:p="urn:one"><p:mid xmlns:p="urn:two"><p:leaf/></p:mid></r>')
    mid = next(doc.root.iter_elements())
    leaf = next(mid.iter_elements())
    assert mid.qname() == ("urn:two", "mid")
    assert leaf.qname() == ("urn:two", "leaf")


def test_serialization_is_stable_after_one_round():
    first = serialize(parse_xml(SAMPLE))
    second = serialize(parse_xml(first))
    assert first == second


def test_comment_and_pi_survive_round_trip():
    source = b'<?xml version="1.0"?>\n<?style sheet?>\n<r><!--inside--><x/></r>\n<!--after-->\n'
    doc = parse_xml(source)
    assert any(isinstance(n, ProcessingInstruction) for n in doc.prolog)
    assert any(isinstance(n, Comment) for n in doc.epilog)
    out = serialize(doc)
    assert b"<?style sheet?>" in out
    assert b"<!--inside-->" in out
    assert b"<!--after-->" in out
    assert serialize(parse_xml(out)) == out


def test_empty_element_forms_collapse():
    assert serialize(parse_xml(b"<r><a></a></r>")) == serialize(parse_xml(b"<r><a/></r>"))


def test_attribute_escaping_round_trips():
    doc = parse_xml(b"<r/>")
    doc.root.attrs["v"] = 'a"b<c>&\n\t'
    out = serialize(doc)
    again = parse_xml(out)
    assert again.root.attrs["v"] == 'a"b<c>&\n\t'
    assert serialize(again) == out


def test_text_merging_and_escaping():
    doc = parse_xml(b"<r>one &amp; two</r>")
    assert doc.root.children == ["one & two"]
    assert b"one &amp; two" in serialize(doc)


def test_bom_is_tolerated():
    doc = parse_xml(b"\xef\xbb\xbf<r/>")
    assert doc.root.name == "r"


def test_malformed_raises():
    with pytest.raises(MalformedXml):
        parse_xml(b"<r><unclosed></r>")
    with pytest.raises(MalformedXml):
        parse_xml(b"not xml at all")
    with pytest.raises(MalformedXml):
        parse_xml(b"")


def test_append_sets_parent():
    root = XmlElement("root")
    child = XmlElement("child")
    root.append(child)
    assert child.parent is root
    assert list(root.iter_elements()) == [child]
