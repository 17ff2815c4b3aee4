"""Decodability and perfect-secrecy checks for linear protocol traces.

Every variable is uniform and independent, and every observation is linear,
so secrecy reduces to a rank condition: an adversary whose view splits as
``[M_w | M_rho]`` (message columns, unknown-randomness columns) learns exactly

    leakage = rank([M_w | M_rho]) - rank(M_rho)

message symbols, i.e. ``I(W; view) = leakage * log p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .engine import Trace
from .field import PrimeField, left_solve, rank
from .network import AdversarySpec, Orientation, adversary_sets


class NoBoundStated(LookupError):
    """No closed-form outer bound is known for this topology/adversary combination."""


@dataclass(frozen=True)
class AdversaryView:
    p: int
    tapped: tuple[str, ...]
    message: np.ndarray  # rows x r
    randomness: np.ndarray  # rows x (unknown random symbols)
    unknown: tuple[str, ...]

    @property
    def rows(self) -> int:
        return self.message.shape[0]

    def joint(self) -> np.ndarray:
        return np.concatenate([self.message, self.randomness], axis=1)


def adversary_view(trace: Trace, tapped, kind: str = "node") -> AdversaryView:
    """Everything a node or edge adversary observes over the whole protocol.

    A tapped node sees its incoming payloads and knows its own symbols: its own
    random symbols are removed from the unknown side, and any message symbols
    it owns (only the source) become unit rows.
    """
    tapped = tuple(tapped)
    net = trace.network
    r, dim = trace.message_dim, trace.dim
    rows: list[np.ndarray] = []
    known: set[int] = set()
    if kind == "node":
        for n in tapped:
            if n not in net.nodes:
                raise KeyError(f"unknown node {n!r}")
            known.update(trace.owned(n))
        for i in sorted(known):
            if i < r:
                rows.append(np.eye(dim, dtype=np.int64)[i])
        rows += [t.payload.dense(dim) for t in trace.transmissions if t.receiver in tapped]
    elif kind == "edge":
        for eid in tapped:
            if not net.has_edge(eid):
                raise KeyError(f"unknown edge {eid!r}")
        rows += [t.payload.dense(dim) for t in trace.transmissions if t.edge in tapped]
    else:
        raise ValueError(f"adversary kind must be 'node' or 'edge', got {kind!r}")

    unknown = [i for i in range(r, dim) if i not in known]
    M = np.vstack(rows) if rows else np.zeros((0, dim), dtype=np.int64)
    return AdversaryView(
        p=trace.p,
        tapped=tapped,
        message=M[:, :r],
        randomness=M[:, unknown],
        unknown=tuple(trace.variables[i].id for i in unknown),
    )


def leakage(view: AdversaryView) -> int:
    F = PrimeField(view.p)
    if view.rows == 0:
        return 0
    return rank(view.joint(), F) - rank(view.randomness, F)


def secrecy_check(view: AdversaryView) -> tuple[bool, int]:
    lk = leakage(view)
    return lk == 0, lk


@dataclass(frozen=True)
class Decoding:
    ok: bool
    decoder: np.ndarray | None


def decodability_check(trace: Trace, receiver: str) -> Decoding:
    """Find D with D @ knowledge = [I_r | 0]: the receiver recovers W exactly, whatever the keys."""
    if receiver not in trace.network.receivers:
        raise KeyError(f"{receiver!r} is not a receiver")
    A = trace.knowledge(receiver)
    r = trace.message_dim
    target = np.zeros((r, trace.dim), dtype=np.int64)
    target[:, :r] = np.eye(r, dtype=np.int64)
    if A.shape[0] == 0:
        return Decoding(False, None)
    D = left_solve(A, target, trace.field)
    return Decoding(D is not None, D)


def recoverable(trace: Trace, node: str, target) -> bool:
    """Whether ``node`` can compute the linear functional ``target`` of the variables."""
    A = trace.knowledge(node)
    t = target.dense(trace.dim) if hasattr(target, "dense") else np.asarray(target, dtype=np.int64)
    if A.shape[0] == 0:
        return not t.any()
    return left_solve(A, t.reshape(1, -1), trace.field) is not None


def rate(trace: Trace) -> Fraction:
    return Fraction(trace.message_dim, trace.rounds)


def outer_bound(topology: str, m: int | None, h: int, adversary: str = "node", k: int = 1, q: int = 0) -> Fraction:
    """Closed-form outer bounds on the secrecy rate.

    topology is one of directed/undirected/bidirected (CCNs) or fig2a..fig2d.
    """
    if topology == "directed" and adversary == "node" and k == 1:
        if m is not None and m > h:
            return Fraction((h - 1) ** 2, h)
        return Fraction(h - 1)
    if topology == "directed" and adversary == "edge" and k < h:
        return Fraction(h - k)
    if topology == "undirected" and adversary == "node" and k == 1:
        return Fraction(h - 1)
    if topology == "bidirected" and adversary == "node" and k == 1:
        return Fraction(h)
    if topology in ("fig2a", "fig2b") and adversary == "edge":
        return Fraction(max(h - k, 0))
    if topology == "fig2c" and adversary == "edge":
        return Fraction(max(min(h, h + q - k), 0))
    raise NoBoundStated(f"no outer bound for {topology} with a {k}-{adversary} adversary")


def topology_key(trace: Trace) -> tuple[str, dict]:
    net = trace.network
    if net.kind == "ccn":
        return net.params["orientation"], {"m": net.m, "h": net.h}
    return "fig2" + net.params["variant"], {"m": None, "h": net.params["h"], "q": net.params["q"]}


@dataclass(frozen=True)
class SetVerdict:
    tapped: tuple[str, ...]
    secure: bool
    leakage: int


@dataclass
class Verdict:
    decodable: dict[str, bool]
    decoders: dict[str, np.ndarray | None]
    secrecy: list[SetVerdict]
    rate: Fraction
    bound: Fraction | None
    adversary: AdversarySpec
    p: int
    notes: list[str] = field(default_factory=list)

    @property
    def all_decodable(self) -> bool:
        return all(self.decodable.values())

    @property
    def all_secure(self) -> bool:
        return all(s.secure for s in self.secrecy)

    @property
    def within_bound(self) -> bool:
        return self.bound is None or self.rate <= self.bound

    @property
    def passed(self) -> bool:
        return self.all_decodable and self.all_secure and self.within_bound

    def insecure(self) -> list[SetVerdict]:
        return [s for s in self.secrecy if not s.secure]

    def to_dict(self) -> dict:
        bits = math.log2(self.p)
        return {
            "rate": fraction_str(self.rate),
            "bound": None if self.bound is None else fraction_str(self.bound),
            "adversary": self.adversary.as_dict(),
            "decodable": dict(self.decodable),
            "secrecy": [
                {"set": list(s.tapped), "secure": s.secure, "leakage": s.leakage, "leakage_bits": s.leakage * bits}
                for s in self.secrecy
            ],
            "all_decodable": self.all_decodable,
            "all_secure": self.all_secure,
            "passed": self.passed,
            "notes": list(self.notes),
        }


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def verify_all(trace: Trace, spec: AdversarySpec) -> Verdict:
    net = trace.network
    decodable, decoders = {}, {}
    for rcv in net.receivers:
        d = decodability_check(trace, rcv)
        decodable[rcv] = d.ok
        decoders[rcv] = d.decoder
    secrecy = []
    for s in adversary_sets(net, spec):
        ok, lk = secrecy_check(adversary_view(trace, s, spec.kind))
        secrecy.append(SetVerdict(s, ok, lk))
    topo, kw = topology_key(trace)
    try:
        bound = outer_bound(topo, kw["m"], kw["h"], spec.kind, spec.k, kw.get("q", 0))
    except NoBoundStated:
        bound = None
    notes = list(trace.notes)
    if spec.kind == "node" and not (spec.include_source or spec.include_receivers):
        notes.append("node adversary pool excludes the source and all receivers")
    if net.kind == "ccn" and net.orientation is not Orientation.DIRECTED and bound is not None:
        notes.append(f"directed outer bound for comparison: {fraction_str(outer_bound('directed', net.m, net.h))}")
    return Verdict(decodable, decoders, secrecy, rate(trace), bound, spec, trace.p, notes)
