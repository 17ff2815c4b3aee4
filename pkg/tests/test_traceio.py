import json

import pytest

from ccnsec import schemes, traceio
from ccnsec.engine import replay
from ccnsec.network import AdversarySpec
from ccnsec.traceio import TraceFormatError
from ccnsec.verifier import verify_all

ALL = [
    ("ksc", {"m": 4, "h": 3}),
    ("cai-yeung", {"m": 3, "h": 2, "k": 1}),
    ("routing-h3", {"m": 6}),
    ("hadamard-h2", {"m": 5}),
    ("plus-one", {"h": 3}),
    ("undirected", {"m": 5, "h": 3}),
    ("bidirected-node", {"m": 4, "h": 3}),
    ("bidirected-edge", {"m": 3, "h": 2}),
    ("fig2", {"variant": "b", "h": 3, "k": 2}),
    ("fig2", {"variant": "c", "h": 3, "q": 1, "k": 2}),
    ("fig2", {"variant": "d", "h": 3}),
]


@pytest.mark.parametrize("name,params", ALL, ids=[n + "-" + "-".join(map(str, p.values())) for n, p in ALL])
def test_round_trip_identity(name, params):
    tr = schemes.build(name, params).trace
    text = traceio.dumps(tr)
    back = traceio.loads(text)
    assert back.variables == tr.variables
    assert back.transmissions == tr.transmissions
    assert back.origin == tr.origin and back.notes == tr.notes
    assert traceio.dumps(back) == text
    assert replay(back).transmissions == tr.transmissions


def test_payloads_are_sparse():
    doc = traceio.to_document(schemes.build("ksc", {"m": 3, "h": 2}).trace)
    assert doc["format"] == "ccn-trace" and doc["version"] == "v1"
    assert all(0 not in t["payload"].values() for t in doc["transmissions"])


def test_save_load(tmp_path):
    tr = schemes.build("undirected", {"m": 4, "h": 2}).trace
    path = tmp_path / "u.json"
    traceio.save(tr, path)
    assert traceio.load(path).transmissions == tr.transmissions


def _doc():
    return traceio.to_document(schemes.build("ksc", {"m": 3, "h": 2}).trace)


def _mutations():
    def drop(key):
        def f(d):
            del d[key]
        return f

    def setter(path, value):
        def f(d):
            obj = d
            for k in path[:-1]:
                obj = obj[k]
            obj[path[-1]] = value
        return f

    return [
        (drop("field"), r"missing field 'field'"),
        (setter(["field"], 4), r"\$\.field"),
        (setter(["version"], "v2"), r"version"),
        (setter(["topology", "kind"], "ring"), r"\$\.topology"),
        (setter(["transmissions", 0, "edge"], "S1->S"), r"\$\.transmissions\[0\]"),
        (setter(["transmissions", 0, "payload"], {"zz": 1}), r"unknown variable"),
        (setter(["transmissions", 1, "payload"], {"w1": 1}), r"cannot compute"),
        (setter(["transmissions", 0, "to"], "A1"), r"\.to"),
        (setter(["transmissions", 2, "round"], 0), r"\$\.transmissions\[2\]"),
        (setter(["variables", 0, "id"], "m1"), r"\$\.variables\[0\]"),
        (setter(["transmissions", 0, "payload"], {"k1": "1"}), r"integer"),
    ]


@pytest.mark.parametrize("mutate,pattern", _mutations())
def test_malformed_documents(mutate, pattern):
    doc = _doc()
    mutate(doc)
    with pytest.raises(TraceFormatError, match=pattern):
        traceio.from_document(doc)


def test_json_syntax_error_has_position():
    with pytest.raises(TraceFormatError, match=r"line 2, column"):
        traceio.loads('{"format": "ccn-trace",\n ]')


def test_tampered_document_loads_and_leaks():
    doc = _doc()
    for t in doc["transmissions"]:
        t["payload"].pop("k1", None)
    tr = traceio.loads(json.dumps(doc))
    assert not verify_all(tr, AdversarySpec("node", 1)).all_secure
