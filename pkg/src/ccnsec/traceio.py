"""TraceDocument v1: single-file JSON form of a :class:`~ccnsec.engine.Trace`.

Example::

    {
      "format": "ccn-trace", "version": "v1", "field": 13,
      "topology": {"kind": "ccn", "m": 3, "h": 2, "orientation": "directed"},
      "origin": {"scheme": "ksc", "params": {"m": 3, "h": 2}, "adversary": {"kind": "node", "k": 1}},
      "message_dim": 1,
      "variables": [{"id": "w1", "kind": "message", "owner": "S"}, ...],
      "transmissions": [{"round": 1, "edge": "S->S1", "from": "S", "to": "S1",
                         "payload": {"k1": 1}}, ...],
      "notes": []
    }

Payloads are sparse ``{variable id: residue}`` maps.  Loading rebuilds the
network from its descriptor and replays every transmission, so a document
that violates the protocol rules is rejected just like a buggy scheme.
"""

from __future__ import annotations

import json
from pathlib import Path

from .engine import LinearForm, ProtocolError, Session, Trace, Variable
from .field import make_field
from .network import build_network

FORMAT = "ccn-trace"
VERSION = "v1"


class TraceFormatError(ValueError):
    pass


def to_document(trace: Trace) -> dict:
    ids = [v.id for v in trace.variables]
    return {
        "format": FORMAT,
        "version": VERSION,
        "field": trace.p,
        "topology": trace.network.descriptor(),
        "origin": trace.origin,
        "message_dim": trace.message_dim,
        "variables": [{"id": v.id, "kind": v.kind, "owner": v.owner} for v in trace.variables],
        "transmissions": [
            {
                "round": t.round,
                "edge": t.edge,
                "from": t.sender,
                "to": t.receiver,
                "payload": {ids[i]: c for i, c in sorted(t.payload.terms.items())},
            }
            for t in trace.transmissions
        ],
        "notes": list(trace.notes),
    }


def dumps(trace: Trace) -> str:
    return json.dumps(to_document(trace), indent=1, ensure_ascii=False)


def save(trace: Trace, path) -> None:
    Path(path).write_text(dumps(trace) + "\n", encoding="utf-8")


def _need(doc: dict, key: str, typ, where: str):
    if key not in doc:
        raise TraceFormatError(f"{where}: missing field {key!r}")
    val = doc[key]
    if not isinstance(val, typ) or isinstance(val, bool):
        raise TraceFormatError(f"{where}.{key}: expected {getattr(typ, '__name__', typ)}, got {type(val).__name__}")
    return val


def from_document(doc) -> Trace:
    if not isinstance(doc, dict):
        raise TraceFormatError("document root must be an object")
    if doc.get("format") != FORMAT or doc.get("version") != VERSION:
        raise TraceFormatError(f"expected format {FORMAT!r} version {VERSION!r}")
    p = _need(doc, "field", int, "$")
    try:
        F = make_field(p)
    except ValueError as exc:
        raise TraceFormatError(f"$.field: {exc}") from None
    topo = _need(doc, "topology", dict, "$")
    try:
        net = build_network(topo)
    except (KeyError, ValueError, TypeError) as exc:
        raise TraceFormatError(f"$.topology: {exc}") from None
    r = _need(doc, "message_dim", int, "$")
    variables = _need(doc, "variables", list, "$")
    if r < 1:
        raise TraceFormatError("$.message_dim: must be >= 1")
    s = Session(net, r, F)
    index = {}
    for i, v in enumerate(variables):
        where = f"$.variables[{i}]"
        if not isinstance(v, dict):
            raise TraceFormatError(f"{where}: expected an object")
        vid = _need(v, "id", str, where)
        kind = _need(v, "kind", str, where)
        owner = _need(v, "owner", str, where)
        if i < r:
            if (vid, kind, owner) != (f"w{i + 1}", "message", net.source):
                raise TraceFormatError(f"{where}: expected message symbol w{i + 1} owned by {net.source}")
        else:
            if kind != "random":
                raise TraceFormatError(f"{where}.kind: only the first {r} variables are message symbols")
            try:
                s._register(Variable(vid, kind, owner))
            except (KeyError, ValueError) as exc:
                raise TraceFormatError(f"{where}: {exc}") from None
        index[vid] = i
    if len(variables) < r:
        raise TraceFormatError(f"$.variables: fewer than message_dim={r} entries")

    for i, t in enumerate(_need(doc, "transmissions", list, "$")):
        where = f"$.transmissions[{i}]"
        if not isinstance(t, dict):
            raise TraceFormatError(f"{where}: expected an object")
        rnd = _need(t, "round", int, where)
        edge = _need(t, "edge", str, where)
        sender = _need(t, "from", str, where)
        payload = _need(t, "payload", dict, where)
        terms = {}
        for vid, c in payload.items():
            if vid not in index:
                raise TraceFormatError(f"{where}.payload.{vid}: unknown variable")
            if not isinstance(c, int) or isinstance(c, bool):
                raise TraceFormatError(f"{where}.payload.{vid}: coefficient must be an integer")
            terms[index[vid]] = c
        try:
            tr = s.transmit(rnd, edge, LinearForm(terms, p), sender=sender)
        except (ProtocolError, KeyError, ValueError) as exc:
            raise TraceFormatError(f"{where}: {exc.args[0] if exc.args else exc}") from None
        if "to" in t and t["to"] != tr.receiver:
            raise TraceFormatError(f"{where}.to: {edge} from {sender} reaches {tr.receiver}, not {t['to']}")
    try:
        return s.finalize(origin=doc.get("origin"), notes=doc.get("notes") or ())
    except ProtocolError as exc:
        raise TraceFormatError(f"$.transmissions: {exc}") from None


def loads(text: str) -> Trace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


def load(path) -> Trace:
    return loads(Path(path).read_text(encoding="utf-8"))
