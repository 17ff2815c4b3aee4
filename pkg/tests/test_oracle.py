import itertools
from fractions import Fraction

import pytest

from ccnsec import schemes
from ccnsec.engine import zero_variable
from ccnsec.field import make_field
from ccnsec.network import adversary_sets
from ccnsec.oracle import OracleBudgetExceeded, brute_force_oracle
from ccnsec.verifier import adversary_view, leakage


def naive_conditional_entropy_zero(trace, tapped):
    """Pure-python check: does every observation pin down W uniquely?"""
    p, dim, r = trace.p, trace.dim, trace.message_dim
    own = set(trace.owned(tapped[0])) if tapped else set()
    seen = {}
    for x in itertools.product(range(p), repeat=dim):
        obs = tuple(x[i] for i in sorted(own)) + tuple(
            sum(c * x[i] for i, c in t.payload.terms.items()) % p for t in trace.transmissions if t.receiver in tapped
        )
        seen.setdefault(obs, set()).add(x[:r])
    return all(len(ws) == 1 for ws in seen.values())


GF3 = make_field(3)

SMALL = [
    ("ksc", {"m": 3, "h": 2}),
    ("fig2", {"variant": "a", "h": 3, "k": 1}),
    ("fig2", {"variant": "c", "h": 2, "q": 2, "k": 2}),
    ("fig2", {"variant": "c", "h": 3, "q": 1, "k": 2}),
    ("fig2", {"variant": "d", "h": 2}),
    ("bidirected-node", {"m": 3, "h": 2}),
    ("hadamard-h2", {"m": 4}),
    ("cai-yeung", {"m": 3, "h": 2, "k": 1}),
]


@pytest.mark.parametrize("name,params", SMALL, ids=lambda x: x if isinstance(x, str) else "-".join(map(str, x.values())))
def test_oracle_agrees_with_rank(name, params):
    res = schemes.build_small(name, params, fields=(3, 5))
    tr = res.trace
    for s in adversary_sets(tr.network, res.adversary):
        o = brute_force_oracle(tr, s, res.adversary.kind)
        assert o.h_w == tr.message_dim
        assert o.information == leakage(adversary_view(tr, s, res.adversary.kind)) == 0


def test_oracle_measures_leak_exactly():
    tr = schemes.build("ksc", {"m": 3, "h": 2}, GF3).trace
    leaky = zero_variable(tr, "k1")
    for node in ("A3", "A1", "B3"):
        o = brute_force_oracle(leaky, (node,))
        assert o.information == leakage(adversary_view(leaky, (node,)))


def test_padless_trace_reveals_all():
    tr = schemes.build("fig2", {"variant": "a", "h": 2, "k": 1}, GF3).trace
    for v in tr.variables[tr.message_dim :]:
        tr = zero_variable(tr, v.id)
    o = brute_force_oracle(tr, ("S->R#1", "S->R#2"), "edge")
    assert o.h_w_given_v == 0 and o.information == Fraction(tr.message_dim)


def test_zero_conditional_entropy_matches_naive_count():
    tr = schemes.build("fig2", {"variant": "a", "h": 2, "k": 1}, GF3).trace
    padded = brute_force_oracle(tr, ("R",))
    assert padded.h_w_given_v == 0 and naive_conditional_entropy_zero(tr, ("R",))


def test_leak_is_whole_symbols():
    # every leak is a whole number of field symbols for linear schemes
    tr = zero_variable(schemes.build("undirected", {"m": 4, "h": 3}, GF3).trace, "kS1")
    for node in ("A4", "S1", "B4"):
        o = brute_force_oracle(tr, (node,))
        assert o.information.denominator == 1
        assert o.information == leakage(adversary_view(tr, (node,)))


def test_budget():
    tr = schemes.build("undirected", {"m": 4, "h": 3}).trace
    with pytest.raises(OracleBudgetExceeded):
        brute_force_oracle(tr, ("A4",), budget=10**6)
