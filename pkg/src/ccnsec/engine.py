"""Round-based execution of linear protocols.

A :class:`Session` records transmissions one by one.  Each payload is a
:class:`LinearForm` over the message symbols and every node's private random
symbols; the session refuses any payload the sender could not have computed
from what it owns and what it has received so far.  Within a round the order
of transmissions is causal, so a value received earlier in the round may be
forwarded later in the same round.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Iterable

import numpy as np

from .field import PrimeField, rank
from .network import Network


class ProtocolError(Exception):
    pass


class NotComputable(ProtocolError):
    pass


class EdgeReused(ProtocolError):
    pass


class BadDirection(ProtocolError):
    pass


class LinearForm:
    """Homogeneous linear combination of protocol variables over GF(p).

    Stored sparsely as ``{variable index: coefficient}``.
    """

    __slots__ = ("terms", "p")

    def __init__(self, terms: dict[int, int], p: int):
        self.p = p
        self.terms = {i: c % p for i, c in terms.items() if c % p}

    @classmethod
    def zero(cls, p: int) -> LinearForm:
        return cls({}, p)

    @classmethod
    def unit(cls, index: int, p: int) -> LinearForm:
        return cls({index: 1}, p)

    def _check(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("forms over different fields")
        return other

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for i, c in other.terms.items():
            t[i] = t.get(i, 0) + c
        return LinearForm(t, self.p)

    __radd__ = __add__

    def __neg__(self):
        return LinearForm({i: -c for i, c in self.terms.items()}, self.p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, np.integer)):
            return NotImplemented
        return LinearForm({i: c * int(scalar) for i, c in self.terms.items()}, self.p)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LinearForm) and other.p == self.p and other.terms == self.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def dense(self, n: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        for i, c in self.terms.items():
            v[i] = c
        return v

    def __repr__(self):
        return f"LinearForm({self.terms}, p={self.p})"


def combine(coeffs: Iterable[int], forms: list[LinearForm], p: int) -> LinearForm:
    out = LinearForm.zero(p)
    for c, f in zip(coeffs, forms, strict=True):
        if int(c) % p:
            out = out + f * int(c)
    return out


@dataclass(frozen=True)
class Variable:
    id: str
    kind: str  # "message" or "random"
    owner: str


@dataclass(frozen=True)
class Transmission:
    round: int
    seq: int
    edge: str
    sender: str
    receiver: str
    payload: LinearForm


def _knowledge_rows(variables, transmissions, node, dim, upto=None) -> np.ndarray:
    rows = [np.eye(dim, dtype=np.int64)[i] for i, v in enumerate(variables) if v.owner == node]
    for t in transmissions:
        if upto is not None and t.seq >= upto:
            break
        if t.receiver == node:
            rows.append(t.payload.dense(dim))
    if not rows:
        return np.zeros((0, dim), dtype=np.int64)
    return np.vstack(rows)


@dataclass(frozen=True)
class Trace:
    """Immutable record of one protocol run."""

    network: Network
    field: PrimeField
    variables: tuple[Variable, ...]
    transmissions: tuple[Transmission, ...]
    message_dim: int
    rounds: int
    origin: dict | None = None
    notes: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def p(self) -> int:
        return self.field.p

    def index(self, vid: str) -> int:
        for i, v in enumerate(self.variables):
            if v.id == vid:
                return i
        raise KeyError(f"unknown variable {vid!r}")

    def owned(self, node: str) -> list[int]:
        return [i for i, v in enumerate(self.variables) if v.owner == node]

    def received(self, node: str) -> list[Transmission]:
        return [t for t in self.transmissions if t.receiver == node]

    def on_edge(self, eid: str) -> list[Transmission]:
        return [t for t in self.transmissions if t.edge == eid]

    def knowledge(self, node: str, upto: int | None = None) -> np.ndarray:
        """Own-symbol unit rows plus received payloads (only those with seq < upto, if given)."""
        if node not in self.network.nodes:
            raise KeyError(f"unknown node {node!r}")
        return _knowledge_rows(self.variables, self.transmissions, node, self.dim, upto)

    def form(self, vid: str) -> LinearForm:
        return LinearForm.unit(self.index(vid), self.p)


class Session:
    """Single-writer builder for a :class:`Trace`."""

    def __init__(self, net: Network, r: int, F: PrimeField):
        if r < 1:
            raise ValueError("message dimension r must be >= 1")
        self.network = net
        self.field = F
        self.r = r
        self.variables: list[Variable] = []
        self.transmissions: list[Transmission] = []
        self._used: set[tuple[int, str]] = set()
        self._prefix_count: dict[str, int] = defaultdict(int)
        for i in range(1, r + 1):
            self._register(Variable(f"w{i}", "message", net.source))

    def _register(self, var: Variable) -> int:
        if any(v.id == var.id for v in self.variables):
            raise ValueError(f"duplicate variable id {var.id!r}")
        if var.owner not in self.network.nodes:
            raise KeyError(f"unknown owner {var.owner!r}")
        self.variables.append(var)
        return len(self.variables) - 1

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def message(self) -> list[LinearForm]:
        return [LinearForm.unit(i, self.field.p) for i in range(self.r)]

    def var(self, vid: str) -> LinearForm:
        for i, v in enumerate(self.variables):
            if v.id == vid:
                return LinearForm.unit(i, self.field.p)
        raise KeyError(f"unknown variable {vid!r}")

    def fresh_randomness(self, owner: str, count: int, prefix: str = "k") -> list[str]:
        """Register ``count`` new uniform symbols private to ``owner``."""
        if owner not in self.network.nodes:
            raise KeyError(f"unknown owner {owner!r}")
        ids = []
        for _ in range(count):
            self._prefix_count[prefix] += 1
            vid = f"{prefix}{self._prefix_count[prefix]}"
            while any(v.id == vid for v in self.variables):
                self._prefix_count[prefix] += 1
                vid = f"{prefix}{self._prefix_count[prefix]}"
            self._register(Variable(vid, "random", owner))
            ids.append(vid)
        return ids

    def keys(self, owner: str, count: int, prefix: str = "k") -> list[LinearForm]:
        return [self.var(v) for v in self.fresh_randomness(owner, count, prefix)]

    def knowledge(self, node: str, upto: int | None = None) -> np.ndarray:
        if node not in self.network.nodes:
            raise KeyError(f"unknown node {node!r}")
        return _knowledge_rows(self.variables, self.transmissions, node, self.dim, upto)

    def can_compute(self, node: str, payload: LinearForm) -> bool:
        K = self.knowledge(node)
        v = payload.dense(self.dim)
        if not v.any():
            return True
        return rank(np.vstack([K, v]), self.field) == rank(K, self.field)

    def transmit(self, round: int, edge: str, payload: LinearForm, sender: str | None = None) -> Transmission:
        e = self.network.edge(edge)
        sender = e.tail if sender is None else sender
        if sender not in (e.tail, e.head):
            raise BadDirection(f"{sender} is not an endpoint of {edge}")
        receiver = e.other(sender)
        if not e.can_carry(sender, receiver):
            raise BadDirection(f"{edge} cannot be used from {sender} to {receiver}")
        if round < 1:
            raise ProtocolError("rounds are numbered from 1")
        if self.transmissions and round < self.transmissions[-1].round:
            raise ProtocolError(f"round {round} after round {self.transmissions[-1].round}")
        if (round, edge) in self._used:
            raise EdgeReused(f"{edge} already used in round {round}")
        if payload.p != self.field.p:
            raise ValueError("payload over the wrong field")
        if max(payload.terms, default=-1) >= self.dim:
            raise KeyError("payload references an unregistered variable")
        if not self.can_compute(sender, payload):
            raise NotComputable(f"{sender} cannot compute its payload on {edge} in round {round}")
        t = Transmission(round, len(self.transmissions), edge, sender, receiver, payload)
        self.transmissions.append(t)
        self._used.add((round, edge))
        return t

    def finalize(self, origin: dict | None = None, notes: Iterable[str] = ()) -> Trace:
        if not self.transmissions:
            raise ProtocolError("cannot finalize an empty session")
        return Trace(
            network=self.network,
            field=self.field,
            variables=tuple(self.variables),
            transmissions=tuple(self.transmissions),
            message_dim=self.r,
            rounds=max(t.round for t in self.transmissions),
            origin=origin,
            notes=tuple(notes),
        )


def replay(trace: Trace, transmissions: Iterable[Transmission] | None = None) -> Trace:
    """Re-run a trace's transmissions through a fresh session (all checks re-applied)."""
    s = Session(trace.network, trace.message_dim, trace.field)
    for v in trace.variables[trace.message_dim:]:
        s._register(v)
    if [v.id for v in s.variables] != [v.id for v in trace.variables]:
        raise ProtocolError("variable registry does not start with w1..wr")
    for t in trace.transmissions if transmissions is None else transmissions:
        s.transmit(t.round, t.edge, t.payload, sender=t.sender)
    return s.finalize(origin=trace.origin, notes=trace.notes)


def zero_variable(trace: Trace, vid: str) -> Trace:
    """Same protocol with one symbol forced to zero wherever it appears."""
    i = trace.index(vid)
    ts = [
        replace(t, payload=LinearForm({j: c for j, c in t.payload.terms.items() if j != i}, trace.p))
        for t in trace.transmissions
    ]
    return replay(trace, ts)


def truncate(trace: Trace, last_round: int) -> Trace:
    ts = [t for t in trace.transmissions if t.round <= last_round]
    return replay(trace, ts)
