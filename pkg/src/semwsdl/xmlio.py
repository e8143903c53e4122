"""Prefix-preserving XML parsing and serialization built on expat.

The annotation writer has to re-emit WSDL documents whose QName-valued
attributes (``type="tns:categoryDetail"``) still resolve after a round
trip, and has to produce byte-identical output when run twice on its own
output.  ``xml.etree`` rewrites namespace prefixes and drops the original
declarations on serialization, which breaks both requirements, so this
module keeps its own lightweight tree: element and attribute names exactly
as written, ``xmlns`` declarations as ordinary attributes, and children as
an ordered mix of text runs and nodes.
"""

from __future__ import annotations

import xml.parsers.expat
from dataclasses import dataclass, field

XML_NAMESPACE = "http://www.w3.org/XML/1998/namespace"

_UTF8_BOM = b"\xef\xbb\xbf"


class MalformedXml(ValueError):
    """Raised when a document cannot be parsed (or is not the expected kind)."""


@dataclass(eq=False)
class Comment:
    text: str


@dataclass(eq=False)
class ProcessingInstruction:
    target: str
    data: str


@dataclass(eq=False)
class XmlElement:
    """An element with names kept exactly as written in the source."""

    name: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list = field(default_factory=list)
    parent: "XmlElement | None" = field(default=None, repr=False)

    def append(self, child) -> None:
        if isinstance(child, XmlElement):
            child.parent = self
        self.children.append(child)

    def nsmap(self) -> dict[str, str]:
        """In-scope prefix -> URI map ('' is the default namespace)."""
        chain = []
        node: XmlElement | None = self
        while node is not None:
            chain.append(node)
            node = node.parent
        scope: dict[str, str] = {"xml": XML_NAMESPACE}
        for element in reversed(chain):
            for name, value in element.attrs.items():
                if name == "xmlns":
                    scope[""] = value
                elif name.startswith("xmlns:"):
                    scope[name[6:]] = value
        return scope

    def qname(self) -> tuple[str, str]:
        """Resolved (namespace URI, local name) of this element."""
        return self.resolve_qname(self.name)

    def resolve_qname(self, value: str) -> tuple[str, str]:
        """Resolve a QName-valued string against this element's scope.

        Unprefixed names take the default namespace, as XSD QName
        resolution requires.  An undeclared prefix resolves to the empty
        namespace rather than raising.
        """
        value = value.strip()
        scope = self.nsmap()
        if ":" in value:
            prefix, local = value.split(":", 1)
            return scope.get(prefix, ""), local
        return scope.get("", ""), value

    def iter_elements(self):
        """Direct element children, in document order."""
        for child in self.children:
            if isinstance(child, XmlElement):
                yield child

    def find_children(self, namespace: str, local: str):
        """Direct element children matching the resolved (namespace, local)."""
        for child in self.iter_elements():
            if child.qname() == (namespace, local):
                yield child

    def first_child(self, namespace: str, local: str) -> "XmlElement | None":
        for child in self.find_children(namespace, local):
            return child
        return None

    def text_content(self) -> str:
        parts = []
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            elif isinstance(child, XmlElement):
                parts.append(child.text_content())
        return "".join(parts)


@dataclass(eq=False)
class XmlDocument:
    root: XmlElement
    prolog: list = field(default_factory=list)
    epilog: list = field(default_factory=list)


class _TreeBuilder:
    def __init__(self):
        self.root: XmlElement | None = None
        self.prolog: list = []
        self.epilog: list = []
        self._stack: list[XmlElement] = []

    def _append_misc(self, node) -> None:
        if self._stack:
            self._stack[-1].append(node)
        elif self.root is None:
            self.prolog.append(node)
        else:
            self.epilog.append(node)

    def start_element(self, name: str, attrs: dict[str, str]) -> None:
        element = XmlElement(name=name, attrs=dict(attrs))
        if self._stack:
            self._stack[-1].append(element)
        elif self.root is None:
            self.root = element
        self._stack.append(element)

    def end_element(self, name: str) -> None:
        self._stack.pop()

    def character_data(self, data: str) -> None:
        if not self._stack:
            return
        children = self._stack[-1].children
        if children and isinstance(children[-1], str):
            children[-1] += data
        else:
            children.append(data)

    def comment(self, data: str) -> None:
        self._append_misc(Comment(data))

    def processing_instruction(self, target: str, data: str) -> None:
        self._append_misc(ProcessingInstruction(target, data))


def parse_xml(data: bytes) -> XmlDocument:
    """Parse bytes into an XmlDocument; raises MalformedXml on bad input."""
    if data.startswith(_UTF8_BOM):
        data = data[len(_UTF8_BOM):]
    builder = _TreeBuilder()
    parser = xml.parsers.expat.ParserCreate()
    parser.buffer_text = True
    parser.StartElementHandler = builder.start_element
    parser.EndElementHandler = builder.end_element
    parser.CharacterDataHandler = builder.character_data
    parser.CommentHandler = builder.comment
    parser.ProcessingInstructionHandler = builder.processing_instruction
    try:
        parser.Parse(data, True)
    except xml.parsers.expat.ExpatError as exc:
        raise MalformedXml(f"XML parse error: {exc}") from None
    if builder.root is None:
        raise MalformedXml("document has no root element")
    return XmlDocument(root=builder.root, prolog=builder.prolog, epilog=builder.epilog)


def _escape_text(value: str) -> str:
    value = value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    return value.replace("\r", "&#13;")


def _escape_attr(value: str) -> str:
    value = value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    value = value.replace('"', "&quot;")
    # literal whitespace in attribute values would be normalized away on reparse
    return value.replace("\t", "&#9;").replace("\n", "&#10;").replace("\r", "&#13;")


def _write_node(node, out: list[str]) -> None:
    if isinstance(node, str):
        out.append(_escape_text(node))
    elif isinstance(node, Comment):
        out.append(f"<!--{node.text}-->")
    elif isinstance(node, ProcessingInstruction):
        data = f" {node.data}" if node.data else ""
        out.append(f"<?{node.target}{data}?>")
    else:
        out.append(f"<{node.name}")
        for name, value in node.attrs.items():
            out.append(f' {name}="{_escape_attr(value)}"')
        if node.children:
            out.append(">")
            for child in node.children:
                _write_node(child, out)
            out.append(f"</{node.name}>")
        else:
            out.append("/>")


def serialize(document: XmlDocument) -> bytes:
    """Serialize deterministically: UTF-8, fixed declaration, stable escaping."""
    out: list[str] = ['<?xml version="1.0" encoding="utf-8"?>\n']
    for node in document.prolog:
        _write_node(node, out)
        out.append("\n")
    _write_node(document.root, out)
    out.append("\n")
    for node in document.epilog:
        _write_node(node, out)
        out.append("\n")
    return "".join(out).encode("utf-8")
