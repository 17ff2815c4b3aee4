"""Exhaustive-enumeration entropy oracle.

Enumerates every joint assignment of message and random symbols, evaluates
what the adversary observes, and computes H(W) and H(W | view) by counting.
It shares no code with the rank-based checks in :mod:`ccnsec.verifier`:
observations are rebuilt straight from the transmissions and entropies come
from empirical counts, not from ranks.

Entropies are returned as exact rationals in units of ``log p``.  Each
conditional probability that arises is ``count(w, v) / count(v)``; for linear
protocols that ratio is always ``p**-e`` for an integer ``e``, and anything
else is reported as an error rather than rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .engine import Trace

DEFAULT_BUDGET = 2**24
CHUNK = 1 << 18


class OracleBudgetExceeded(RuntimeError):
    pass


class InexactEntropy(ArithmeticError):
    pass


@dataclass(frozen=True)
class OracleResult:
    p: int
    states: int
    h_w: Fraction  # in units of log p
    h_w_given_v: Fraction

    @property
    def secure(self) -> bool:
        return self.h_w == self.h_w_given_v

    @property
    def information(self) -> Fraction:
        return self.h_w - self.h_w_given_v


def observation_matrix(trace: Trace, tapped, kind: str = "node") -> np.ndarray:
    """Rows: one per observed payload, plus one per symbol the tapped nodes own."""
    dim = trace.dim
    rows = []
    if kind == "node":
        for i, v in enumerate(trace.variables):
            if v.owner in tapped:
                e = np.zeros(dim, dtype=np.int64)
                e[i] = 1
                rows.append(e)
        for t in trace.transmissions:
            if t.receiver in tapped:
                rows.append(t.payload.dense(dim))
    elif kind == "edge":
        for t in trace.transmissions:
            if t.edge in tapped:
                rows.append(t.payload.dense(dim))
    else:
        raise ValueError(f"unknown adversary kind {kind!r}")
    if not rows:
        return np.zeros((0, dim), dtype=np.int64)
    # identical rows carry identical observations
    return np.unique(np.vstack(rows), axis=0)


def _log_p_ratios(num: np.ndarray, den: np.ndarray, p: int) -> np.ndarray:
    """Integer e with num/den == p**e elementwise; raises if any ratio is not a power of p."""
    num = np.asarray(num, dtype=np.int64)
    den = np.asarray(den, dtype=np.int64)
    if (num % den).any():
        raise InexactEntropy(f"count ratio is not a power of {p}")
    q = num // den
    e = np.rint(np.log(q) / np.log(p)).astype(np.int64)
    if not np.array_equal(p ** e, q):
        raise InexactEntropy(f"count ratio is not a power of {p}")
    return e


def _entropy(group_counts: np.ndarray, cell_counts: np.ndarray, total: int, p: int) -> Fraction:
    """sum over cells of P(cell) * log_p(group count / cell count), exactly."""
    e = _log_p_ratios(group_counts, cell_counts, p)
    return Fraction(int((cell_counts * e).sum()), total)


def brute_force_oracle(trace: Trace, tapped, kind: str = "node", budget: int = DEFAULT_BUDGET) -> OracleResult:
    p, r, n = trace.p, trace.message_dim, trace.dim
    total = p**n
    if total > budget:
        raise OracleBudgetExceeded(f"{p}^{n} = {total} joint states exceeds budget {budget}")
    O = observation_matrix(trace, tuple(tapped), kind)
    rows = O.shape[0]
    radix = p ** np.arange(n, dtype=np.int64)
    w_span = p**r
    # (view, message) packs into one int64 when p**(rows + r) stays below 2**62
    scalar = (rows + r) * np.log2(p) < 62
    vradix = p ** np.arange(rows, dtype=np.int64)

    keys, key_counts = [], []
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        X = (idx[:, None] // radix[None, :]) % p  # one assignment per row
        w_key = idx % w_span  # message symbols are the first r variables
        V = (X @ O.T) % p
        if scalar:
            uniq, counts = np.unique((V @ vradix) * w_span + w_key, return_counts=True)
        else:
            uniq, counts = np.unique(np.concatenate([V, w_key[:, None]], axis=1), axis=0, return_counts=True)
        keys.append(uniq)
        key_counts.append(counts)

    allkeys = np.concatenate(keys)
    uniq, inv = np.unique(allkeys, axis=0 if allkeys.ndim == 2 else None, return_inverse=True)
    counts = np.bincount(inv.ravel(), weights=np.concatenate(key_counts)).astype(np.int64)
    if scalar:
        v_part, w_col = uniq // w_span, uniq % w_span
        _, v_ids = np.unique(v_part, return_inverse=True)
    else:
        _, v_ids = np.unique(uniq[:, :-1], axis=0, return_inverse=True)
        w_col = uniq[:, -1]
    v_ids = v_ids.ravel()

    # H(W) from the marginal of the same enumeration
    _, w_ids = np.unique(w_col, return_inverse=True)
    count_w = np.bincount(w_ids.ravel(), weights=counts).astype(np.int64)
    h_w = _entropy(np.full(count_w.size, total), count_w, total, p)
    count_v = np.bincount(v_ids, weights=counts).astype(np.int64)
    h_w_v = _entropy(count_v[v_ids], counts, total, p)
    return OracleResult(p, total, h_w, h_w_v)
