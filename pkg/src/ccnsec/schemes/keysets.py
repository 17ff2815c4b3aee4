"""Schemes built on the single-round CCN code: plain secure coding, key-set
cancellation, and the feedback schemes for undirected and bidirected CCNs."""

from __future__ import annotations

from ..engine import LinearForm, Session
from ..field import PrimeField, make_field
from ..network import AdversarySpec, Orientation, build_ccn, receiver_id
from .common import (
    SchemeParameterError,
    SchemeResult,
    code_round,
    origin,
    secure_code,
    zero_sum_keys,
)

NODE1 = AdversarySpec("node", 1)


def _need_coding_nodes(m: int, h: int, what: str) -> None:
    if h < 2 or m <= h:
        raise SchemeParameterError(f"{what} needs m > h >= 2, got m={m}, h={h}")


def cai_yeung_code(m: int, h: int, k: int, F: PrimeField | None = None) -> SchemeResult:
    """One round, h - k message symbols, secure against any k tapped edges."""
    F = F or make_field()
    if not 1 <= k < h or m < h:
        raise SchemeParameterError(f"need 1 <= k < h <= m, got m={m}, h={h}, k={k}")
    net = build_ccn(m, h, Orientation.DIRECTED)
    code = secure_code(m, h, k, F)
    s = Session(net, h - k, F)
    code_round(s, 1, code, s.message)
    adv = AdversarySpec("edge", k)
    params = {"m": m, "h": h, "k": k}
    trace = s.finalize(origin("cai-yeung", params, adv))
    return SchemeResult("cai-yeung", params, trace, adv, {"code": code})


def ksc(m: int, h: int, F: PrimeField | None = None) -> SchemeResult:
    """Key-set cancellation: keys summing to zero in round 1 pad every input of the
    non-trivial coding nodes in round 2 and cancel there."""
    F = F or make_field()
    _need_coding_nodes(m, h, "KSC")
    net = build_ccn(m, h, Orientation.DIRECTED)
    code = secure_code(m, h, 1, F)
    s = Session(net, h - 1, F)
    keys = zero_sum_keys(s, "S", h, "k")
    for i in range(1, h + 1):
        s.transmit(1, net.link("S", f"S{i}"), keys[i - 1])
    pads = {f"A{j}": keys for j in range(h + 1, m + 1)}
    code_round(s, 2, code, s.message, pads)
    params = {"m": m, "h": h}
    trace = s.finalize(origin("ksc", params, NODE1))
    return SchemeResult("ksc", params, trace, NODE1, {"code": code, "keys": keys})


def _uplink_from_receiver(s: Session, rnd: int, h: int, prefix: str) -> list[LinearForm]:
    """The receiver on B_1..B_h sends a zero-sum key set to S_1..S_h along R-B_i-A_i-S_i."""
    net = s.network
    rstar = receiver_id(range(1, h + 1))
    keys = zero_sum_keys(s, rstar, h, prefix)
    for i in range(1, h + 1):
        path = [rstar, f"B{i}", f"A{i}", f"S{i}"]
        for u, v in zip(path, path[1:]):
            s.transmit(rnd, net.link(u, v), keys[i - 1], sender=u)
    return keys


def undirected_scheme(m: int, h: int, F: PrimeField | None = None) -> SchemeResult:
    """One uplink round collecting zero-sum key sets at S_1..S_h, then m - h + 1
    downlink rounds, each cancelling a different key set at every non-trivial node."""
    F = F or make_field()
    _need_coding_nodes(m, h, "the undirected scheme")
    net = build_ccn(m, h, Orientation.UNDIRECTED)
    code = secure_code(m, h, 1, F)
    downlink = m - h + 1
    s = Session(net, (h - 1) * downlink, F)

    key_s = zero_sum_keys(s, "S", h, "kS")
    for i in range(1, h + 1):
        s.transmit(1, net.link("S", f"S{i}"), key_s[i - 1])
    key_r = _uplink_from_receiver(s, 1, h, "kR")
    nontrivial = [f"A{j}" for j in range(h + 1, m + 1)]
    key_a = {}
    for a in nontrivial:
        key_a[a] = zero_sum_keys(s, a, h, f"k{a}_")
        for i in range(1, h + 1):
            s.transmit(1, net.link(a, f"S{i}"), key_a[a][i - 1], sender=a)

    schedule = [{a: "S" for a in nontrivial}, {a: "R" for a in nontrivial}]
    n = len(nontrivial)
    for u in range(downlink - 2):
        # A_j takes the set of the (u+1)-th next non-trivial node: never its own, never repeated
        schedule.append({a: nontrivial[(jj + 1 + u) % n] for jj, a in enumerate(nontrivial)})
    sets = {"S": key_s, "R": key_r, **key_a}
    msg = s.message
    for t, plan in enumerate(schedule):
        pads = {a: sets[src] for a, src in plan.items()}
        code_round(s, t + 2, code, msg[t * (h - 1) : (t + 1) * (h - 1)], pads)
    params = {"m": m, "h": h}
    trace = s.finalize(origin("undirected", params, NODE1))
    return SchemeResult("undirected", params, trace, NODE1, {"code": code, "schedule": schedule})


def bidirected_node_scheme(m: int, h: int, F: PrimeField | None = None) -> SchemeResult:
    """Single round: the receiver's keys travel backward to S_1..S_h, then cancel at
    the non-trivial coding nodes on the way forward."""
    F = F or make_field()
    _need_coding_nodes(m, h, "the bidirected node scheme")
    net = build_ccn(m, h, Orientation.BIDIRECTED)
    code = secure_code(m, h, 1, F)
    s = Session(net, h - 1, F)
    key_r = _uplink_from_receiver(s, 1, h, "kR")
    pads = {f"A{j}": key_r for j in range(h + 1, m + 1)}
    code_round(s, 1, code, s.message, pads)
    params = {"m": m, "h": h}
    trace = s.finalize(origin("bidirected-node", params, NODE1))
    return SchemeResult("bidirected-node", params, trace, NODE1, {"code": code})


def bidirected_edge_scheme(m: int, h: int, F: PrimeField | None = None) -> SchemeResult:
    """Rate-h multicast where every forward arc is one-time padded by a key its head
    first sends on the parallel backward arc."""
    F = F or make_field()
    if h < 2 or m < h:
        raise SchemeParameterError(f"need m >= h >= 2, got m={m}, h={h}")
    net = build_ccn(m, h, Orientation.BIDIRECTED)
    code = secure_code(m, h, 0, F)
    s = Session(net, h, F)
    p = F.p

    def padded(u: str, v: str, value: LinearForm) -> None:
        (kappa,) = s.keys(v, 1, "kappa")
        s.transmit(1, net.link(v, u), kappa, sender=v)
        s.transmit(1, net.link(u, v), value + kappa, sender=u)

    y = s.message
    on_b = {}
    for i in range(1, h + 1):
        padded("S", f"S{i}", y[i - 1])
        padded(f"S{i}", f"A{i}", y[i - 1])
        on_b[i] = y[i - 1]
    for j in range(h + 1, m + 1):
        a = code.coding[:, j - 1]
        for i in range(1, h + 1):
            padded(f"S{i}", f"A{j}", y[i - 1])
        on_b[j] = sum((y[i] * int(a[i]) for i in range(h)), LinearForm.zero(p))
    for j in range(1, m + 1):
        padded(f"A{j}", f"B{j}", on_b[j])
    for j in range(1, m + 1):
        for rcv in net.receivers_of(j):
            padded(f"B{j}", rcv, on_b[j])
    adv = AdversarySpec("edge", 1)
    params = {"m": m, "h": h}
    trace = s.finalize(origin("bidirected-edge", params, adv))
    return SchemeResult("bidirected-edge", params, trace, adv, {"code": code})
