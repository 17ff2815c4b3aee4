from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccnsec import schemes
from ccnsec.engine import zero_variable
from ccnsec.field import matmul
from ccnsec.network import AdversarySpec
from ccnsec.verifier import (
    NoBoundStated,
    adversary_view,
    decodability_check,
    leakage,
    outer_bound,
    secrecy_check,
    verify_all,
)

SMALL = [
    ("ksc", {"m": 4, "h": 3}),
    ("undirected", {"m": 4, "h": 3}),
    ("routing-h3", {"m": 5}),
    ("plus-one", {"h": 3}),
    ("bidirected-node", {"m": 4, "h": 3}),
    ("fig2", {"variant": "c", "h": 3, "q": 1, "k": 2}),
]
BUILT = {n + str(p): schemes.build(n, p) for n, p in SMALL}


def padless(trace):
    for v in trace.variables[trace.message_dim :]:
        trace = zero_variable(trace, v.id)
    return trace


def test_view_of_trivial_coding_node():
    tr = schemes.build("ksc", {"m": 3, "h": 2}).trace
    view = adversary_view(tr, ("A1",))
    assert view.rows == 1  # keys stop at S_i; A1 only forwards its padded symbol
    assert secrecy_check(view) == (True, 0)
    coding = adversary_view(tr, ("A3",))
    assert coding.rows == 2 and leakage(coding) == 0


def test_tapped_source_sees_everything():
    tr = schemes.build("ksc", {"m": 4, "h": 3}).trace
    assert leakage(adversary_view(tr, ("S",))) == tr.message_dim


def test_edge_view_uses_only_that_edge():
    tr = schemes.build("fig2", {"variant": "a", "h": 3, "k": 1}).trace
    view = adversary_view(tr, ("S->R#1",), "edge")
    assert view.rows == 1 and leakage(view) == 0
    assert leakage(adversary_view(tr, ("S->R#1", "S->R#2"), "edge")) == 1


def test_unknown_names_rejected():
    tr = schemes.build("ksc", {"m": 3, "h": 2}).trace
    with pytest.raises(KeyError):
        adversary_view(tr, ("A9",))
    with pytest.raises(KeyError):
        adversary_view(tr, ("S->A9",), "edge")
    with pytest.raises(ValueError):
        adversary_view(tr, ("A1",), "wire")


@pytest.mark.parametrize("key", list(BUILT))
def test_padless_trace_leaks(key):
    res = BUILT[key]
    v = verify_all(padless(res.trace), res.adversary)
    assert not v.all_secure
    assert max(s.leakage for s in v.secrecy) >= 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(list(BUILT)), st.integers(0, 2**32 - 1))
def test_decoders_recover_concrete_messages(key, seed):
    tr = BUILT[key].trace
    rng = np.random.default_rng(seed)
    x = rng.integers(0, tr.p, size=tr.dim)
    for rcv in tr.network.receivers:
        d = decodability_check(tr, rcv)
        assert d.ok
        # what the receiver actually holds: its own symbols, then payload values in order
        held = [x[i] for i in tr.owned(rcv)] + [int(t.payload.dense(tr.dim) @ x % tr.p) for t in tr.received(rcv)]
        w = matmul(d.decoder, np.array(held, dtype=np.int64).reshape(-1, 1), tr.field).ravel()
        assert np.array_equal(w, x[: tr.message_dim])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(list(BUILT)), st.data())
def test_leakage_monotone_in_tapped_set(key, data):
    tr = BUILT[key].trace
    nodes = [n for n in tr.network.nodes if n != tr.network.source]
    a = data.draw(st.lists(st.sampled_from(nodes), min_size=1, max_size=3, unique=True))
    b = data.draw(st.lists(st.sampled_from(nodes), max_size=2, unique=True))
    la = leakage(adversary_view(tr, a))
    lab = leakage(adversary_view(tr, sorted(set(a) | set(b))))
    assert 0 <= la <= lab <= tr.message_dim


def test_negative_control_edge_scheme_vs_node():
    res = schemes.build("bidirected-edge", {"m": 3, "h": 2})
    assert verify_all(res.trace, res.adversary).passed
    v = verify_all(res.trace, AdversarySpec("node", 1))
    assert any(s.tapped[0].startswith(("S", "A", "B")) for s in v.insecure())


def test_negative_control_ksc_zeroed_key():
    res = schemes.build("ksc", {"m": 3, "h": 2})
    v = verify_all(zero_variable(res.trace, "k1"), res.adversary)
    assert max(s.leakage for s in v.secrecy) >= 1


@pytest.mark.parametrize(
    "args,expected",
    [
        (("directed", 4, 3), Fraction(4, 3)),
        (("directed", 3, 3), Fraction(2)),
        (("directed", 5, 2), Fraction(1, 2)),
        (("undirected", 4, 3), Fraction(2)),
        (("bidirected", 4, 3), Fraction(3)),
        (("directed", 4, 3, "edge", 1), Fraction(2)),
        (("fig2a", None, 3, "edge", 1), Fraction(2)),
        (("fig2c", None, 2, "edge", 2, 2), Fraction(2)),
        (("fig2c", None, 3, "edge", 2, 1), Fraction(2)),
    ],
)
def test_outer_bounds(args, expected):
    assert outer_bound(*args) == expected


def test_no_bound_for_feedback_edge_case():
    with pytest.raises(NoBoundStated):
        outer_bound("bidirected", 4, 3, "edge", 1)
    with pytest.raises(NoBoundStated):
        outer_bound("fig2d", None, 2)


def test_verdict_dict_is_exact():
    res = schemes.build("undirected", {"m": 5, "h": 3})
    d = verify_all(res.trace, res.adversary).to_dict()
    assert d["rate"] == "3/2" and d["bound"] == "2/1" and d["passed"]
    assert any("directed outer bound" in n for n in d["notes"])
