"""Parsing WSDL 1.1 documents into the in-memory model.

Only the structural subset needed for annotation is modeled: portType
operations, their messages and parts, and the inline XSD schemas that
define parameter types.  Bindings, services and policy elements are
parsed past without complaint.  Raw bytes are kept alongside so the
writer can later inject attributes into the original documents.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

from . import xmlio
from .model import (
    XSD_NAMESPACE,
    Direction,
    Operation,
    Parameter,
    QName,
    SubParameter,
    TypeDefinition,
    TypeKind,
    WsDescription,
    is_builtin,
)
from .xmlio import MalformedXml, XmlDocument, XmlElement

WSDL_NAMESPACE = "http://schemas.xmlsoap.org/wsdl/"

_ANY_TYPE = QName(XSD_NAMESPACE, "anyType")

# content models that make a complexType "other" (present but not a sequence)
_OTHER_MODELS = ("choice", "all", "group", "complexContent", "simpleContent")


class EmptyCorpus(ValueError):
    """No description in the whole batch could be parsed."""


@dataclass(frozen=True)
class SkippedFile:
    path: str
    error: str


@dataclass
class Corpus:
    """Parsed descriptions plus the original bytes, one entry per source."""

    descriptions: list[WsDescription]
    raw_documents: dict[str, bytes]
    skipped: list[SkippedFile] = field(default_factory=list)


@dataclass
class _RawParam:
    name: str
    direction: Direction
    type_ref: QName
    param_id: str
    node: XmlElement


@dataclass
class _RawOperation:
    name: str
    inputs: list[_RawParam] = field(default_factory=list)
    outputs: list[_RawParam] = field(default_factory=list)


@dataclass
class _SchemaIndex:
    types: dict[QName, TypeDefinition] = field(default_factory=dict)
    element_type: dict[QName, QName] = field(default_factory=dict)
    element_node: dict[QName, XmlElement] = field(default_factory=dict)


@dataclass
class _Analysis:
    """Everything one document walk produces, including node references."""

    operations: list[_RawOperation]
    types: dict[QName, TypeDefinition]
    warnings: list[str]
    import_locations: list[str]

    def params(self):
        for operation in self.operations:
            yield from operation.inputs
            yield from operation.outputs


def _attr_qname(element: XmlElement, value: str) -> QName | None:
    """QName from an attribute value, or None when it is unusable."""
    uri, local = element.resolve_qname(value)
    if not local:
        return None
    return QName(uri, local)


def _index_schemas(schemas: list[XmlElement]) -> tuple[_SchemaIndex, list[str]]:
    """Collect named types and top-level elements from inline schemas.

    Two phases: first register every global element and queue every
    complexType, then classify the queue.  Classification needs the
    complete element table because sequence members may use `ref`.
    Anonymous inline types get synthesized names ending in "$anon"; such
    names are internal and never mined for words.
    """
    index = _SchemaIndex()
    pending: list[tuple[QName, XmlElement, str, bool]] = []
    import_locations: list[str] = []
    for schema in schemas:
        tns = schema.attrs.get("targetNamespace", "")
        for child in schema.iter_elements():
            uri, local = child.qname()
            if uri != XSD_NAMESPACE:
                continue
            if local in ("import", "include"):
                location = child.attrs.get("schemaLocation", "").strip()
                if location:
                    import_locations.append(location)
                continue
            name = child.attrs.get("name", "")
            if not name:
                continue
            if local == "complexType":
                pending.append((QName(tns, name), child, tns, False))
            elif local == "simpleType":
                qn = QName(tns, name)
                index.types[qn] = TypeDefinition(qn, TypeKind.CUSTOM_SIMPLE)
            elif local == "element":
                _register_element(child, QName(tns, name), tns, index, pending)
    while pending:
        qname, node, tns, anonymous = pending.pop(0)
        index.types[qname] = _classify_complex(qname, node, tns, anonymous, index, pending)
    return index, import_locations


def _register_element(element: XmlElement, qn: QName, tns: str,
                      index: _SchemaIndex, pending: list) -> None:
    index.element_node[qn] = element
    type_attr = element.attrs.get("type", "")
    if type_attr.strip():
        type_ref = _attr_qname(element, type_attr)
        index.element_type[qn] = type_ref if type_ref else _ANY_TYPE
        return
    inline_complex = element.first_child(XSD_NAMESPACE, "complexType")
    inline_simple = element.first_child(XSD_NAMESPACE, "simpleType")
    if inline_complex is not None:
        synthetic = QName(tns, f"{qn.local_name}$anon")
        pending.append((synthetic, inline_complex, tns, True))
        index.element_type[qn] = synthetic
    elif inline_simple is not None:
        synthetic = QName(tns, f"{qn.local_name}$anon")
        index.types[synthetic] = TypeDefinition(synthetic, TypeKind.CUSTOM_SIMPLE, anonymous=True)
        index.element_type[qn] = synthetic
    else:
        index.element_type[qn] = _ANY_TYPE


def _classify_complex(qname: QName, node: XmlElement, tns: str, anonymous: bool,
                      index: _SchemaIndex, pending: list) -> TypeDefinition:
    sequence = node.first_child(XSD_NAMESPACE, "sequence")
    if sequence is None:
        for model in _OTHER_MODELS:
            if node.first_child(XSD_NAMESPACE, model) is not None:
                return TypeDefinition(qname, TypeKind.COMPLEX_OTHER, anonymous=anonymous)
        return TypeDefinition(qname, TypeKind.EMPTY_COMPLEX, anonymous=anonymous)
    base = qname.local_name.removesuffix("$anon")
    members: list[SubParameter] = []
    for position, member in enumerate(sequence.find_children(XSD_NAMESPACE, "element"), start=1):
        ref_attr = member.attrs.get("ref", "")
        if ref_attr.strip():
            ref = _attr_qname(member, ref_attr)
            if ref is None:
                continue
            members.append(SubParameter(ref.local_name, index.element_type.get(ref, _ANY_TYPE)))
            continue
        member_name = member.attrs.get("name", "")
        type_attr = member.attrs.get("type", "")
        if type_attr.strip():
            type_ref = _attr_qname(member, type_attr)
            members.append(SubParameter(member_name, type_ref if type_ref else _ANY_TYPE))
            continue
        inline_complex = member.first_child(XSD_NAMESPACE, "complexType")
        inline_simple = member.first_child(XSD_NAMESPACE, "simpleType")
        if inline_complex is not None:
            synthetic = QName(tns, f"{base}.{position}$anon")
            pending.append((synthetic, inline_complex, tns, True))
            members.append(SubParameter(member_name, synthetic))
        elif inline_simple is not None:
            synthetic = QName(tns, f"{base}.{position}$anon")
            index.types[synthetic] = TypeDefinition(synthetic, TypeKind.CUSTOM_SIMPLE, anonymous=True)
            members.append(SubParameter(member_name, synthetic))
        else:
            members.append(SubParameter(member_name, _ANY_TYPE))
    if not members:
        return TypeDefinition(qname, TypeKind.EMPTY_COMPLEX, anonymous=anonymous)
    return TypeDefinition(qname, TypeKind.COMPLEX_SEQUENCE, tuple(members), anonymous=anonymous)


def _build_param(source_id: str, op_name: str, direction: Direction,
                 part: XmlElement, index: _SchemaIndex,
                 id_counts: dict[str, int]) -> _RawParam:
    element_attr = part.attrs.get("element", "")
    type_attr = part.attrs.get("type", "")
    node = part
    if element_attr.strip() and (ref := _attr_qname(part, element_attr)):
        # element-style part: the referenced element gives name and type
        name = ref.local_name
        type_ref = index.element_type.get(ref, ref)
        node = index.element_node.get(ref, part)
    elif type_attr.strip() and (type_ref_attr := _attr_qname(part, type_attr)):
        name = part.attrs.get("name", "")
        type_ref = type_ref_attr
    else:
        name = part.attrs.get("name", "")
        type_ref = _ANY_TYPE
    base = f"{source_id}::{op_name}::{direction.value}::{name}"
    count = id_counts.get(base, 0) + 1
    id_counts[base] = count
    param_id = base if count == 1 else f"{base}::{count}"
    return _RawParam(name, direction, type_ref, param_id, node)


def _analyze(source_id: str, document: XmlDocument) -> _Analysis:
    root = document.root
    if root.qname() != (WSDL_NAMESPACE, "definitions"):
        raise MalformedXml(f"{source_id}: root element is not wsdl:definitions")
    schemas = [
        schema
        for types in root.find_children(WSDL_NAMESPACE, "types")
        for schema in types.find_children(XSD_NAMESPACE, "schema")
    ]
    index, import_locations = _index_schemas(schemas)
    warnings: list[str] = []
    target_ns = root.attrs.get("targetNamespace", "")
    messages: dict[QName, list[XmlElement]] = {}
    for message in root.find_children(WSDL_NAMESPACE, "message"):
        name = message.attrs.get("name", "")
        if not name:
            warnings.append("unnamed message skipped")
            continue
        messages[QName(target_ns, name)] = list(message.find_children(WSDL_NAMESPACE, "part"))
    operations: list[_RawOperation] = []
    id_counts: dict[str, int] = {}
    for port_type in root.find_children(WSDL_NAMESPACE, "portType"):
        for operation in port_type.find_children(WSDL_NAMESPACE, "operation"):
            op_name = operation.attrs.get("name", "")
            if not op_name:
                warnings.append("unnamed operation skipped")
                continue
            message_refs: dict[Direction, QName] = {}
            usable = True
            for direction, tag in ((Direction.INPUT, "input"), (Direction.OUTPUT, "output")):
                port = operation.first_child(WSDL_NAMESPACE, tag)
                if port is None:
                    continue
                ref = _attr_qname(port, port.attrs.get("message", ""))
                if ref is None or ref not in messages:
                    warnings.append(
                        f"operation {op_name}: {tag} message "
                        f"{port.attrs.get('message', '(none)')!r} not declared; operation skipped")
                    usable = False
                    break
                message_refs[direction] = ref
            if not usable:
                continue
            raw_op = _RawOperation(op_name)
            for direction, bucket in ((Direction.INPUT, raw_op.inputs),
                                      (Direction.OUTPUT, raw_op.outputs)):
                ref = message_refs.get(direction)
                if ref is None:
                    continue
                for part in messages[ref]:
                    bucket.append(_build_param(source_id, op_name, direction, part,
                                               index, id_counts))
            operations.append(raw_op)
    return _Analysis(operations, dict(index.types), warnings, import_locations)


def _description(source_id: str, analysis: _Analysis) -> WsDescription:
    operations = tuple(
        Operation(
            raw.name,
            tuple(Parameter(p.name, p.direction, p.type_ref, p.param_id) for p in raw.inputs),
            tuple(Parameter(p.name, p.direction, p.type_ref, p.param_id) for p in raw.outputs),
        )
        for raw in analysis.operations
    )
    return WsDescription(source_id, operations, dict(analysis.types),
                         tuple(analysis.warnings))


def parse_wsdl(source_id: str, document: bytes) -> WsDescription:
    """Parse one WSDL document.  Raises MalformedXml on unusable input."""
    xdoc = xmlio.parse_xml(document)
    return _description(source_id, _analyze(source_id, xdoc))


def resolve_type(description: WsDescription, ref: QName) -> TypeDefinition:
    """Total lookup: builtins and unknowns come back synthesized, never None."""
    if is_builtin(ref):
        return TypeDefinition(ref, TypeKind.BUILTIN)
    found = description.types.get(ref)
    if found is not None:
        return found
    return TypeDefinition(ref, TypeKind.UNKNOWN)


def load_corpus(paths: list) -> Corpus:
    """Load and parse a batch of files; failures are recorded, not fatal.

    Standalone XSD files are indexed as import targets: a description
    whose schema imports/includes one of them (by schemaLocation,
    resolved relative to the importing file) sees its named types.
    Import resolution never leaves the supplied file set.
    """
    descriptions: list[WsDescription] = []
    raw_documents: dict[str, bytes] = {}
    skipped: list[SkippedFile] = []
    schema_files: dict[Path, tuple[dict[QName, TypeDefinition], list[str], Path]] = {}
    description_imports: dict[str, tuple[Path, list[str]]] = {}
    for path in paths:
        source_id = str(path)
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            skipped.append(SkippedFile(source_id, f"io error: {exc}"))
            continue
        try:
            xdoc = xmlio.parse_xml(data)
        except MalformedXml as exc:
            skipped.append(SkippedFile(source_id, str(exc)))
            continue
        root_name = xdoc.root.qname()
        resolved = Path(path).resolve()
        if root_name == (XSD_NAMESPACE, "schema"):
            index, locations = _index_schemas([xdoc.root])
            schema_files[resolved] = (index.types, locations, resolved.parent)
            continue
        try:
            analysis = _analyze(source_id, xdoc)
        except MalformedXml as exc:
            skipped.append(SkippedFile(source_id, str(exc)))
            continue
        descriptions.append(_description(source_id, analysis))
        raw_documents[source_id] = data
        description_imports[source_id] = (resolved.parent, analysis.import_locations)
    for position, description in enumerate(descriptions):
        base_dir, locations = description_imports[description.source_id]
        imported = _imported_types(base_dir, locations, schema_files)
        if imported:
            merged = {**imported, **description.types}
            descriptions[position] = replace(description, types=merged)
    if not descriptions:
        raise EmptyCorpus("no parseable WSDL description in input")
    return Corpus(descriptions, raw_documents, skipped)


def _imported_types(base_dir: Path, locations: list[str],
                    schema_files: dict) -> dict[QName, TypeDefinition]:
    """Transitive closure of schemaLocation imports over the supplied files."""
    merged: dict[QName, TypeDefinition] = {}
    queue = [(base_dir, location) for location in locations]
    visited: set[Path] = set()
    while queue:
        base, location = queue.pop(0)
        try:
            target = (base / location).resolve()
        except OSError:
            continue
        if target in visited or target not in schema_files:
            visited.add(target)
            continue
        visited.add(target)
        types, further, schema_dir = schema_files[target]
        for qn, definition in types.items():
            merged.setdefault(qn, definition)
        queue.extend((schema_dir, loc) for loc in further)
    return merged
