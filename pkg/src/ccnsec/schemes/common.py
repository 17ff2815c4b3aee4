"""Pieces shared by the scheme constructors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..engine import LinearForm, Session, Trace, combine
from ..field import (
    FieldTooSmall,
    PrimeField,
    extended_points,
    mds_generator,
    rank,
    systematic,
)
from ..network import AdversarySpec, Network


class SchemeParameterError(ValueError):
    pass


@dataclass(frozen=True)
class SchemeResult:
    name: str
    params: dict
    trace: Trace
    adversary: AdversarySpec
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.trace.message_dim, self.trace.rounds)

    @property
    def rounds(self) -> int:
        return self.trace.rounds


def origin(name: str, params: dict, adversary: AdversarySpec) -> dict:
    return {"scheme": name, "params": dict(params), "adversary": adversary.as_dict()}


def complete_basis(cols: np.ndarray, n: int, F: PrimeField) -> np.ndarray:
    """Unit vectors that extend the given columns to a basis of F^n."""
    current = cols.copy() if cols.size else np.zeros((n, 0), dtype=np.int64)
    extra = []
    for i in range(n):
        e = np.zeros((n, 1), dtype=np.int64)
        e[i, 0] = 1
        trial = np.concatenate([current, e], axis=1)
        if rank(trial, F) > rank(current, F):
            current = trial
            extra.append(e)
        if current.shape[1] == n:
            break
    if current.shape[1] != n or rank(current, F) != n:
        raise ValueError("columns are linearly dependent")
    return np.concatenate(extra, axis=1) if extra else np.zeros((n, 0), dtype=np.int64)


def coding_vectors(m: int, h: int, F: PrimeField) -> np.ndarray:
    """h x m global coding vectors of a CCN multicast code: e_1..e_h, then a^j for A_{h+1}..A_m.

    Any h of them are independent (a systematic MDS generator), so every receiver decodes.
    """
    if m == h:
        return F.eye(h)
    return systematic(mds_generator(m, h, F, extended_points(m, F)), F)


def _key_candidates(h: int, k: int, F: PrimeField):
    p = F.p
    # Vandermonde-derived first, then everything with nonzero entries, then the rest
    for shift in range(p - h + 1 if p > h else 1):
        pts = [(shift + i) % p for i in range(1, h + 1)]
        yield np.array([[pow(x, t, p) for t in range(k)] for x in pts], dtype=np.int64)
    for vals in itertools.product(range(1, p), repeat=h * k):
        yield np.array(vals, dtype=np.int64).reshape(h, k)
    for vals in itertools.product(range(p), repeat=h * k):
        if 0 in vals:
            yield np.array(vals, dtype=np.int64).reshape(h, k)


@dataclass(frozen=True)
class SecureCode:
    """Single-round multicast code on a directed (m, h)-CCN secure against k tapped edges.

    The source sends ``y = mixing @ (w_1..w_{h-k}, u_1..u_k)`` on S->S_i and the
    edge feeding B_j carries ``coding[:, j] . y``.  Every k distinct coding vectors
    see the keys through an invertible k x k block, so no k edges leak anything.
    """

    h: int
    k: int
    coding: np.ndarray
    mixing: np.ndarray

    @property
    def message_symbols(self) -> int:
        return self.h - self.k


def secure_code(m: int, h: int, k: int, F: PrimeField, limit: int = 200_000) -> SecureCode:
    if not 0 <= k < h:
        raise SchemeParameterError(f"need 0 <= k < h, got k={k}, h={h}")
    G = coding_vectors(m, h, F)
    if k == 0:
        return SecureCode(h, 0, G, F.eye(h))
    subsets = [list(c) for c in itertools.combinations(range(G.shape[1]), k)]
    for tries, Mk in enumerate(_key_candidates(h, k, F)):
        if tries >= limit:
            break
        seen = (G.T @ Mk) % F.p  # m x k: key part of each edge's view
        if all(rank(seen[s], F) == k for s in subsets):
            Mw = complete_basis(Mk, h, F)
            return SecureCode(h, k, G, np.concatenate([Mw, Mk], axis=1))
    raise FieldTooSmall(f"no {k}-edge secure code for the ({m},{h})-CCN found over {F}")


def code_round(
    s: Session,
    rnd: int,
    code: SecureCode,
    message: list[LinearForm],
    pads: dict[str, list[LinearForm]] | None = None,
    key_prefix: str = "u",
) -> list[LinearForm]:
    """One round of the multicast code on a CCN, every edge used forward.

    ``pads`` maps a non-trivial coding node A_j to h keys held at S_1..S_h;
    S_i adds its key to what it sends A_j, and A_j forwards the sum of its inputs.
    Returns y (the values on S->S_i).
    """
    net: Network = s.network
    p = s.field.p
    m, h = net.m, net.h
    if len(message) != code.message_symbols:
        raise ValueError("message slice does not match the code")
    keys = s.keys(net.source, code.k, key_prefix)
    x = list(message) + keys
    y = [combine(code.mixing[i], x, p) for i in range(h)]
    on_b: dict[int, LinearForm] = {}
    for i in range(1, h + 1):
        s.transmit(rnd, net.link("S", f"S{i}"), y[i - 1])
        s.transmit(rnd, net.link(f"S{i}", f"A{i}"), y[i - 1])
        on_b[i] = y[i - 1]
    for j in range(h + 1, m + 1):
        a = code.coding[:, j - 1]
        total = LinearForm.zero(p)
        for i in range(1, h + 1):
            v = y[i - 1] * int(a[i - 1])
            if pads is not None and f"A{j}" in pads:
                v = v + pads[f"A{j}"][i - 1]
            s.transmit(rnd, net.link(f"S{i}", f"A{j}"), v)
            total = total + v
        on_b[j] = total
    for j in range(1, m + 1):
        s.transmit(rnd, net.link(f"A{j}", f"B{j}"), on_b[j])
    deliver(s, rnd, on_b)
    return y


def deliver(s: Session, rnd: int, on_b: dict[int, LinearForm]) -> None:
    net = s.network
    for j in sorted(on_b):
        for rcv in net.receivers_of(j):
            s.transmit(rnd, net.link(f"B{j}", rcv), on_b[j])


def zero_sum_keys(s: Session, owner: str, h: int, prefix: str) -> list[LinearForm]:
    """h keys k_1..k_{h-1} fresh and k_h = -(k_1 + ... + k_{h-1})."""
    ks = s.keys(owner, h - 1, prefix)
    return ks + [-sum(ks, LinearForm.zero(s.field.p))]
