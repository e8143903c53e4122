"""Emitting annotated WSDL copies and the JSON batch report.

Annotations become SAWSDL ``modelReference`` attributes on the element
that declared each parameter (the message part, or the referenced
top-level schema element).  Concepts found deeper in the type structure
are still attached to that root declaration.  Everything else in the
document is preserved, and injecting the same annotations twice yields
byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from urllib.parse import urlparse

from . import xmlio
from .ingest import SkippedFile, WsDescription, _analyze
from .model import Annotation
from .xmlio import MalformedXml, XmlElement

SAWSDL_NAMESPACE = "http://www.w3.org/ns/sawsdl"


class StructureMismatch(ValueError):
    """The description does not match the document it claims to describe."""


@dataclass(frozen=True)
class WriterConfig:
    uri_prefix: str = "http://www.ontologyportal.org/SUMO.owl#"
    report_pretty: bool = False

    def __post_init__(self):
        parsed = urlparse(self.uri_prefix)
        if not parsed.scheme:
            raise ValueError(f"uri_prefix must be an absolute URI: {self.uri_prefix!r}")


def _rate(annotated: int, total: int) -> float:
    return annotated / total if total else 0.0


def _ensure_root_declaration(root: XmlElement) -> str:
    """Make sure a prefix for the SAWSDL namespace is declared on the root."""
    for name, value in root.attrs.items():
        if name.startswith("xmlns:") and value == SAWSDL_NAMESPACE:
            return name[6:]
    scope = root.nsmap()
    candidate = "sawsdl"
    counter = 0
    while candidate in scope:
        counter += 1
        candidate = f"sawsdl{counter}"
    root.attrs[f"xmlns:{candidate}"] = SAWSDL_NAMESPACE
    return candidate


def _merge_model_reference(node: XmlElement, uris: list[str], root_prefix: str) -> None:
    scope = node.nsmap()
    attr_name = None
    for name in node.attrs:
        if ":" in name:
            prefix, local = name.split(":", 1)
            if local == "modelReference" and scope.get(prefix) == SAWSDL_NAMESPACE:
                attr_name = name
                break
    if attr_name is None:
        if scope.get(root_prefix) == SAWSDL_NAMESPACE:
            prefix = root_prefix
        else:
            prefix = next((p for p, uri in scope.items()
                           if uri == SAWSDL_NAMESPACE and p), None)
            if prefix is None:
                # root prefix is shadowed here; declare one locally
                counter = 0
                prefix = "sawsdl"
                while prefix in scope:
                    counter += 1
                    prefix = f"sawsdl{counter}"
                node.attrs[f"xmlns:{prefix}"] = SAWSDL_NAMESPACE
        attr_name = f"{prefix}:modelReference"
    merged = node.attrs.get(attr_name, "").split()
    for uri in uris:
        if uri not in merged:
            merged.append(uri)
    node.attrs[attr_name] = " ".join(merged)


def write_sawsdl(original: bytes, desc: WsDescription,
                 annotations: list[Annotation],
                 config: WriterConfig | None = None) -> bytes:
    """Return a copy of the original document with modelReference attributes.

    Raises StructureMismatch when the description's parameters do not line
    up with what the document actually declares.
    """
    config = config or WriterConfig()
    document = xmlio.parse_xml(original)
    try:
        analysis = _analyze(desc.source_id, document)
    except MalformedXml as exc:
        raise StructureMismatch(str(exc)) from None
    document_ids = [raw.param_id for raw in analysis.params()]
    description_ids = [param.param_id for param in desc.parameters()]
    if document_ids != description_ids:
        raise StructureMismatch(
            f"{desc.source_id}: document declares {len(document_ids)} parameters "
            f"that do not match the description")
    node_for = {raw.param_id: raw.node for raw in analysis.params()}
    by_id = {annotation.param_id: annotation for annotation in annotations}
    # group URI lists per target node; one node can declare several parameters
    buckets: list[tuple[XmlElement, list[str]]] = []
    bucket_index: dict[int, int] = {}
    for param_id in description_ids:
        annotation = by_id.get(param_id)
        if annotation is None or not annotation.entries:
            continue
        node = node_for[param_id]
        uris = [config.uri_prefix + entry.concept.id for entry in annotation.entries]
        position = bucket_index.get(id(node))
        if position is None:
            bucket_index[id(node)] = len(buckets)
            buckets.append((node, uris))
        else:
            buckets[position][1].extend(uris)
    root_prefix = _ensure_root_declaration(document.root)
    for node, uris in buckets:
        _merge_model_reference(node, uris, root_prefix)
    return xmlio.serialize(document)


def _direction_summary(annotated: int, total: int) -> dict:
    return {"total": total, "annotated": annotated, "rate": _rate(annotated, total)}


def write_report(annotations: list[Annotation], descriptions: list[WsDescription],
                 skipped: list[SkippedFile] | tuple = (),
                 config: WriterConfig | None = None) -> bytes:
    """Serialize the batch outcome as deterministic UTF-8 JSON."""
    config = config or WriterConfig()
    by_id = {annotation.param_id: annotation for annotation in annotations}
    records = []
    counts = {"input": [0, 0], "output": [0, 0]}
    for description in descriptions:
        for param in description.parameters():
            annotation = by_id.get(param.param_id)
            entries = annotation.entries if annotation else ()
            direction = param.direction.value
            counts[direction][0] += 1
            counts[direction][1] += bool(entries)
            records.append({
                "param_id": param.param_id,
                "direction": direction,
                "status": "annotated" if entries else "failed",
                "entries": [
                    {
                        "concept": entry.concept.id,
                        "ontology": entry.concept.ontology,
                        "word": entry.word.text,
                        "source": entry.source.value,
                        "path": list(entry.path),
                        "depth": entry.depth,
                    }
                    for entry in entries
                ],
            })
    total = counts["input"][0] + counts["output"][0]
    annotated = counts["input"][1] + counts["output"][1]
    payload = {
        "summary": {
            "total": total,
            "annotated": annotated,
            "rate": _rate(annotated, total),
            "inputs": _direction_summary(counts["input"][1], counts["input"][0]),
            "outputs": _direction_summary(counts["output"][1], counts["output"][0]),
        },
        "parameters": records,
        "skipped": [{"path": skip.path, "error": skip.error} for skip in skipped],
        "notes": [
            "input and output parameters are both enumerated; the summary reports "
            "them separately and combined",
        ],
    }
    if config.report_pretty:
        text = json.dumps(payload, ensure_ascii=False, indent=2)
    else:
        text = json.dumps(payload, ensure_ascii=False, separators=(",", ":"))
    return text.encode("utf-8")
