import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccnsec import schemes
from ccnsec.engine import (
    BadDirection,
    EdgeReused,
    LinearForm,
    NotComputable,
    ProtocolError,
    Session,
    replay,
    truncate,
    zero_variable,
)
from ccnsec.field import make_field, rank
from ccnsec.network import build_ccn


@pytest.fixture
def session():
    return Session(build_ccn(3, 2), 1, make_field(5))


@settings(max_examples=50)
@given(st.dictionaries(st.integers(0, 4), st.integers(-20, 20)), st.dictionaries(st.integers(0, 4), st.integers(-20, 20)), st.integers(-9, 9))
def test_linear_form_arithmetic(a, b, c):
    p = 7
    fa, fb = LinearForm(a, p), LinearForm(b, p)
    assert np.array_equal((fa + fb * c).dense(5), (fa.dense(5) + c * fb.dense(5)) % p)
    assert not (fa - fa)
    assert sum([fa, fb]) == fa + fb


def test_sender_must_know_payload(session):
    (k,) = session.keys("S", 1)
    with pytest.raises(NotComputable):
        session.transmit(1, "S1->A1", k)
    session.transmit(1, "S->S1", k)
    session.transmit(1, "S1->A1", k)  # causal within the round


def test_edge_once_per_round(session):
    w = session.message[0]
    session.transmit(1, "S->S1", w)
    with pytest.raises(EdgeReused):
        session.transmit(1, "S->S1", w * 2)
    session.transmit(2, "S->S1", w * 2)
    with pytest.raises(ProtocolError):
        session.transmit(1, "S->S2", w)


def test_direction_enforced(session):
    with pytest.raises(BadDirection):
        session.transmit(1, "S->S1", session.message[0], sender="S1")
    with pytest.raises(KeyError):
        session.transmit(1, "S1->S", session.message[0])


def test_undirected_edge_one_use_either_way():
    s = Session(build_ccn(3, 2, "undirected"), 1, make_field(5))
    (k,) = s.keys("A3", 1)
    s.transmit(1, "S1--A3", k, sender="A3")
    with pytest.raises(EdgeReused):
        s.transmit(1, "S1--A3", k, sender="S1")


def test_zero_payload_always_allowed(session):
    session.transmit(1, "A3->B3", LinearForm.zero(5))


def test_replay_is_identity():
    tr = schemes.build("undirected", {"m": 4, "h": 3}).trace
    again = replay(tr)
    assert again.transmissions == tr.transmissions and again.variables == tr.variables


def test_knowledge_grows_monotonically():
    tr = schemes.build("ksc", {"m": 4, "h": 3}).trace
    cuts = range(0, len(tr.transmissions) + 1, 5)
    for node in ("A4", "B4", "R{1,2,4}"):
        ranks = [rank(tr.knowledge(node, upto=c), tr.field) for c in cuts]
        assert ranks == sorted(ranks)


def test_truncate_and_zero_variable():
    tr = schemes.build("ksc", {"m": 3, "h": 2}).trace
    assert truncate(tr, 1).rounds == 1
    z = zero_variable(tr, "k1")
    assert all(tr.index("k1") not in t.payload.terms for t in z.transmissions)
