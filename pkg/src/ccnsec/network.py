"""Topologies: (m, h) canonical combination networks and the four abstract S-R graphs.

Node ids are stable strings ("S", "S1", "A4", "B2", "R{1,2,4}") so traces stay
readable.  Edge ids encode their use: ``"u->v"`` is a directed arc, ``"u--v"``
an undirected edge usable once per round in either direction, and parallel
edges get a ``#i`` suffix.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx


class Orientation(str, enum.Enum):
    DIRECTED = "directed"
    UNDIRECTED = "undirected"
    BIDIRECTED = "bidirected"


@dataclass(frozen=True)
class Role:
    kind: str  # source | first_layer | coding | relay | receiver | intermediate
    index: int | None = None
    trivial: bool | None = None
    subset: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    undirected: bool = False
    backward: bool = False

    def can_carry(self, sender: str, receiver: str) -> bool:
        if (sender, receiver) == (self.tail, self.head):
            return True
        return self.undirected and (sender, receiver) == (self.head, self.tail)

    def other(self, node: str) -> str:
        return self.head if node == self.tail else self.tail


@dataclass(frozen=True)
class Network:
    kind: str  # "ccn" or "fig2"
    params: dict
    nodes: dict[str, Role]
    edges: tuple[Edge, ...]
    source: str
    receivers: tuple[str, ...]
    _by_id: dict[str, Edge] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {e.id: e for e in self.edges})
        if len(self._by_id) != len(self.edges):
            raise ValueError("duplicate edge ids")

    def edge(self, eid: str) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise KeyError(f"unknown edge {eid!r}") from None

    def has_edge(self, eid: str) -> bool:
        return eid in self._by_id

    def links(self, u: str, v: str) -> list[str]:
        """Ids of every edge that can carry a value from u to v, in declaration order."""
        return [e.id for e in self.edges if e.can_carry(u, v)]

    def link(self, u: str, v: str, index: int = 0) -> str:
        found = self.links(u, v)
        if len(found) <= index:
            raise KeyError(f"no edge #{index} from {u} to {v}")
        return found[index]

    @property
    def orientation(self) -> Orientation:
        return Orientation(self.params["orientation"])

    @property
    def m(self) -> int:
        return self.params["m"]

    @property
    def h(self) -> int:
        return self.params["h"]

    def receiver_for(self, subset: Iterable[int]) -> str:
        return receiver_id(subset)

    def receivers_of(self, b: int) -> list[str]:
        """Receivers attached to relay B_b (CCN only)."""
        return [r for r in self.receivers if b in self.nodes[r].subset]

    def indegree(self, node: str) -> int:
        return sum(1 for e in self.edges if e.head == node and not e.backward)

    def descriptor(self) -> dict:
        return {"kind": self.kind, **self.params}


def receiver_id(subset: Iterable[int]) -> str:
    return "R{" + ",".join(str(i) for i in sorted(subset)) + "}"


def _orient(pairs: list[tuple[str, str]], o: Orientation) -> list[Edge]:
    edges = []
    for u, v in pairs:
        if o is Orientation.UNDIRECTED:
            edges.append(Edge(f"{u}--{v}", u, v, undirected=True))
        else:
            edges.append(Edge(f"{u}->{v}", u, v))
            if o is Orientation.BIDIRECTED:
                edges.append(Edge(f"{v}->{u}", v, u, backward=True))
    return edges


def build_ccn(m: int, h: int, orientation: Orientation | str = Orientation.DIRECTED) -> Network:
    """Canonical combination network with m coding points and mincut h."""
    o = Orientation(orientation)
    if h < 2 or m < h:
        raise ValueError(f"a (m,h)-CCN needs m >= h >= 2, got m={m}, h={h}")
    nodes: dict[str, Role] = {"S": Role("source")}
    for i in range(1, h + 1):
        nodes[f"S{i}"] = Role("first_layer", i)
    for i in range(1, m + 1):
        nodes[f"A{i}"] = Role("coding", i, trivial=i <= h)
    for i in range(1, m + 1):
        nodes[f"B{i}"] = Role("relay", i)
    receivers = []
    for sub in itertools.combinations(range(1, m + 1), h):
        rid = receiver_id(sub)
        nodes[rid] = Role("receiver", subset=sub)
        receivers.append(rid)

    pairs = [("S", f"S{i}") for i in range(1, h + 1)]
    for i in range(1, h + 1):
        pairs.append((f"S{i}", f"A{i}"))
        pairs.extend((f"S{i}", f"A{j}") for j in range(h + 1, m + 1))
    pairs.extend((f"A{i}", f"B{i}") for i in range(1, m + 1))
    for rid in receivers:
        pairs.extend((f"B{b}", rid) for b in nodes[rid].subset)
    params = {"m": m, "h": h, "orientation": o.value}
    return Network("ccn", params, nodes, tuple(_orient(pairs, o)), "S", tuple(receivers))


def build_fig2(variant: str, h: int, q: int = 0) -> Network:
    """The abstract single-receiver graphs: (a) h arcs S->R, (b) h undirected S-R edges,
    (c) h forward plus q backward arcs, (d) h bidirected two-hop paths S-C_i-R."""
    if variant not in ("a", "b", "c", "d"):
        raise ValueError(f"unknown variant {variant!r}; expected one of a, b, c, d")
    if h < 1:
        raise ValueError("h must be >= 1")
    if q < 0:
        raise ValueError("q must be >= 0")
    if variant != "c":
        q = 0
    nodes = {"S": Role("source"), "R": Role("receiver")}
    edges: list[Edge] = []
    if variant == "a":
        edges = [Edge(f"S->R#{i}", "S", "R") for i in range(1, h + 1)]
    elif variant == "b":
        edges = [Edge(f"S--R#{i}", "S", "R", undirected=True) for i in range(1, h + 1)]
    elif variant == "c":
        edges = [Edge(f"S->R#{i}", "S", "R") for i in range(1, h + 1)]
        edges += [Edge(f"R->S#{j}", "R", "S", backward=True) for j in range(1, q + 1)]
    else:
        for i in range(1, h + 1):
            nodes[f"C{i}"] = Role("intermediate", i)
        pairs = [("S", f"C{i}") for i in range(1, h + 1)] + [(f"C{i}", "R") for i in range(1, h + 1)]
        edges = _orient(pairs, Orientation.BIDIRECTED)
    params = {"variant": variant, "h": h, "q": q}
    return Network("fig2", params, nodes, tuple(edges), "S", ("R",))


def build_network(descriptor: dict) -> Network:
    """Rebuild a network from its serialized descriptor."""
    kind = descriptor.get("kind")
    if kind == "ccn":
        return build_ccn(int(descriptor["m"]), int(descriptor["h"]), descriptor["orientation"])
    if kind == "fig2":
        return build_fig2(descriptor["variant"], int(descriptor["h"]), int(descriptor.get("q", 0)))
    raise ValueError(f"unknown topology kind {kind!r}")


def flow_graph(net: Network) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(net.nodes)

    def bump(u, v):
        if g.has_edge(u, v):
            g[u][v]["capacity"] += 1
        else:
            g.add_edge(u, v, capacity=1)

    for e in net.edges:
        bump(e.tail, e.head)
        if e.undirected:
            bump(e.head, e.tail)
    return g


def mincut(net: Network, src: str, dst: str) -> int:
    if src == dst:
        raise ValueError("mincut needs two distinct nodes")
    for n in (src, dst):
        if n not in net.nodes:
            raise KeyError(f"unknown node {n!r}")
    return int(nx.maximum_flow_value(flow_graph(net), src, dst))


@dataclass(frozen=True)
class AdversarySpec:
    kind: str  # "node" or "edge"
    k: int = 1
    include_source: bool = False
    include_receivers: bool = False

    def __post_init__(self):
        if self.kind not in ("node", "edge"):
            raise ValueError(f"adversary kind must be 'node' or 'edge', got {self.kind!r}")
        if self.k < 1:
            raise ValueError("adversary strength k must be >= 1")

    def as_dict(self) -> dict:
        return {"kind": self.kind, "k": self.k}


def candidate_pool(net: Network, spec: AdversarySpec) -> list[str]:
    if spec.kind == "edge":
        return [e.id for e in net.edges]
    pool = []
    for n in net.nodes:
        if n == net.source and not spec.include_source:
            continue
        if n in net.receivers and not spec.include_receivers:
            continue
        pool.append(n)
    return pool


def adversary_sets(net: Network, spec: AdversarySpec) -> list[tuple[str, ...]]:
    pool = candidate_pool(net, spec)
    if spec.k > len(pool):
        raise ValueError(f"k={spec.k} exceeds the candidate pool of {len(pool)}")
    return list(itertools.combinations(pool, spec.k))
