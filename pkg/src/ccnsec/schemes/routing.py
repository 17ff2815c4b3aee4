"""Multi-round routing schemes for directed CCNs.

In each round the source masks its per-round codeword symbols with one key
delta and sends h different padded combinations ("routing symbols") to
S_1..S_h.  A routing matrix fixes, round by round, which of these symbols
each A_i -> B_i edge carries.  Every non-trivial coding node uses exactly one
incoming edge per round, so any single node sees one delta-padded value per
round and learns nothing; receivers that collect two different symbols in a
round can cancel delta.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..engine import LinearForm, Session, combine
from ..field import (
    FieldTooSmall,
    PrimeField,
    default_points,
    inverse,
    make_field,
    matmul,
    mds_generator,
    nullspace,
    rank,
    sylvester_hadamard_codewords,
)
from ..network import AdversarySpec, Orientation, build_ccn
from .common import SchemeParameterError, SchemeResult, deliver, origin

NODE1 = AdversarySpec("node", 1)

PRINTED_PADS_NOTE = (
    "pad profile uses c1+d, c2+d, c1+c2+d: the printed combinations c1+d, c1+c2+d, c1-c2+d "
    "satisfy v2+v3 = 2*v1, have rank 2 over (c1, c2, d), and never reveal c1"
)


@dataclass(frozen=True)
class PadProfile:
    """h x h coefficients mapping (c_1..c_{h-1}, delta) to the h routing symbols of a round."""

    matrix: np.ndarray

    @classmethod
    def of(cls, rows, F: PrimeField, validate: bool = True) -> PadProfile:
        M = F.matrix(rows)
        h = M.shape[0]
        if M.shape != (h, h):
            raise ValueError("pad profile must be square")
        if validate:
            if rank(M, F) != h:
                raise ValueError("pad profile is not invertible")
            if not M[:, -1].all():
                raise ValueError("every routing symbol must carry the round key")
        return cls(M)

    @property
    def h(self) -> int:
        return self.matrix.shape[0]

    def symbols(self, codeword: list[LinearForm], delta: LinearForm, p: int) -> list[LinearForm]:
        return [combine(row, codeword + [delta], p) for row in self.matrix]

    def functionals(self, seen, F: PrimeField) -> np.ndarray:
        """Key-free functionals of the codeword obtainable from the given symbols."""
        rows = self.matrix[sorted(set(seen))]
        lam = nullspace(rows[:, -1:].T, F)  # combinations that cancel delta
        if lam.shape[0] == 0:
            return np.zeros((0, self.h - 1), dtype=np.int64)
        return matmul(lam, rows[:, :-1], F)


@dataclass(frozen=True)
class RoutingMatrix:
    """N x m table of routing-symbol indices; column i is what A_i -> B_i carries."""

    rows: tuple[tuple[int, ...], ...]
    h: int

    def __post_init__(self):
        for col in range(self.h):
            if any(r[col] != col for r in self.rows):
                raise ValueError(f"column {col + 1} must constantly carry symbol {col}")
        if any(not 0 <= v < self.h for r in self.rows for v in r):
            raise ValueError("routing symbols must lie in 0..h-1")

    @property
    def N(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(r[i] for r in self.rows)


def receiver_functionals(R: RoutingMatrix, profiles: list[PadProfile], subset, F: PrimeField) -> list[np.ndarray]:
    """Per round, the codeword functionals a receiver attached to ``subset`` can compute."""
    return [profiles[i].functionals({R.rows[i][b - 1] for b in subset}, F) for i in range(R.N)]


def _block(per_round: list[np.ndarray], width: int) -> np.ndarray:
    rows = []
    for i, f in enumerate(per_round):
        for row in f:
            full = np.zeros(len(per_round) * width, dtype=np.int64)
            full[i * width : (i + 1) * width] = row
            rows.append(full)
    return np.array(rows, dtype=np.int64).reshape(-1, len(per_round) * width)


def find_encoding(r: int, functional_sets: list[np.ndarray], n: int, F: PrimeField, limit: int = 20_000) -> np.ndarray:
    """An r x n generator such that every receiver's functional matrix composed with it has rank r.

    Vandermonde generators (over reorderings of the default points) are tried
    first; the condition does not need a full MDS code, so small fields fall
    back to a seeded search over arbitrary generators.
    """

    def fits(G):
        return all(rank(matmul(Phi, G.T, F), F) == r for Phi in functional_sets)

    if n <= F.p:
        for pts in itertools.islice(itertools.permutations(default_points(n, F)), limit):
            G = mds_generator(n, r, F, pts)
            if fits(G):
                return G
    rng = np.random.default_rng(n * 1000 + r)
    for _ in range(limit):
        G = rng.integers(0, F.p, size=(r, n), dtype=np.int64)
        if fits(G):
            return G
    raise FieldTooSmall(f"no compatible [{n},{r}] encoding found over {F}")


def _routing_trace(name, params, net, F, R, profiles, r, encoding, notes=()):
    h, m = net.h, net.m
    width = h - 1
    s = Session(net, r, F)
    p = F.p
    w = s.message
    codeword = [combine(encoding[:, c], w, p) for c in range(encoding.shape[1])]
    for i in range(R.N):
        rnd = i + 1
        (delta,) = s.keys("S", 1, "d")
        sym = profiles[i].symbols(codeword[i * width : (i + 1) * width], delta, p)
        on_b = {}
        for j in range(1, h + 1):
            s.transmit(rnd, net.link("S", f"S{j}"), sym[j - 1])
            s.transmit(rnd, net.link(f"S{j}", f"A{j}"), sym[j - 1])
            on_b[j] = sym[j - 1]
        for col in range(h + 1, m + 1):
            idx = R.rows[i][col - 1]
            s.transmit(rnd, net.link(f"S{idx + 1}", f"A{col}"), sym[idx])
            on_b[col] = sym[idx]
        for j in range(1, m + 1):
            s.transmit(rnd, net.link(f"A{j}", f"B{j}"), on_b[j])
        deliver(s, rnd, on_b)
    trace = s.finalize(origin(name, params, NODE1), notes)
    extras = {"routing": R, "profiles": profiles, "encoding": encoding, "codeword": codeword}
    return SchemeResult(name, params, trace, NODE1, extras)


def _encoding_for(net, R, profiles, r, F):
    width = net.h - 1
    sets = [_block(receiver_functionals(R, profiles, net.nodes[rc].subset, F), width) for rc in net.receivers]
    return find_encoding(r, sets, R.N * width, F)


H3_COLUMNS = [(0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 1, 2), (1, 2, 0), (2, 0, 1)]
H3_CORRECTED = [[1, 0, 1], [0, 1, 1], [1, 1, 1]]
H3_PRINTED = [[1, 0, 1], [1, 1, 1], [1, -1, 1]]


def routing_scheme_h3(m: int, F: PrimeField | None = None, pads: str = "corrected") -> SchemeResult:
    """3 rounds, 4 message symbols, on a directed (m, 3)-CCN with 4 <= m <= 6 (rate 4/3)."""
    F = F or make_field()
    if not 4 <= m <= 6:
        raise SchemeParameterError(f"routing scheme for h=3 needs 4 <= m <= 6, got {m}")
    net = build_ccn(m, 3, Orientation.DIRECTED)
    R = RoutingMatrix(tuple(tuple(col[i] for col in H3_COLUMNS[:m]) for i in range(3)), 3)
    params = {"m": m}
    if pads == "corrected":
        profiles = [PadProfile.of(H3_CORRECTED, F)] * 3
        encoding = _encoding_for(net, R, profiles, 4, F)
        notes = [PRINTED_PADS_NOTE]
    elif pads == "printed":
        profiles = [PadProfile.of(H3_PRINTED, F, validate=False)] * 3
        encoding = np.hstack([F.eye(4), F.matrix([[1, 1], [1, 2], [1, 3], [1, 4]])])
        notes = ["printed pad profile (c1+d, c1+c2+d, c1-c2+d): expected to fail decoding"]
        params["pads"] = "printed"
    else:
        raise SchemeParameterError(f"pads must be 'corrected' or 'printed', got {pads!r}")
    return _routing_trace("routing-h3", params, net, F, R, profiles, 4, encoding, notes)


def hadamard_columns(m: int) -> tuple[int, list[tuple[int, ...]]]:
    """N and the first m columns of the Hadamard routing matrix (all-0, all-1, then the rest)."""
    N = 2 ** math.ceil(math.log2(max(m, 4) / 2))
    words = sylvester_hadamard_codewords(N)
    rows, comps = words[:N], words[N:]
    ordered = [rows[0], comps[0]] + rows[1:] + comps[1:]
    return N, ordered[:m]


def hadamard_scheme_h2(m: int, F: PrimeField | None = None) -> SchemeResult:
    """N rounds, N/2 message symbols, on a directed (m, 2)-CCN (rate 1/2)."""
    F = F or make_field()
    if m < 3:
        raise SchemeParameterError(f"the Hadamard scheme needs m >= 3, got {m}")
    N, cols = hadamard_columns(m)
    net = build_ccn(m, 2, Orientation.DIRECTED)
    R = RoutingMatrix(tuple(tuple(c[i] for c in cols) for i in range(N)), 2)
    profiles = [PadProfile.of([[1, 1], [0, 1]], F)] * N
    encoding = _encoding_for(net, R, profiles, N // 2, F)
    return _routing_trace("hadamard-h2", {"m": m}, net, F, R, profiles, N // 2, encoding)


def plus_one_profiles(h: int, F: PrimeField) -> list[PadProfile]:
    """Round-i profiles of the (h+1, h) scheme, written over the codeword symbols.

    x is obtained from c by inverting c_j = sum(x) - x_j; S_i gets sum(x) + delta and
    the other S_j get the x_l + delta in order.
    """
    n = h - 1
    T = (np.ones((n, n), dtype=np.int64) - np.eye(n, dtype=np.int64)) % F.p
    Tinv = inverse(T, F)  # x = Tinv @ c
    total = Tinv.sum(axis=0) % F.p
    profiles = []
    for i in range(1, h + 1):
        rows = []
        for j in range(1, h + 1):
            if j < i:
                row = Tinv[j - 1]
            elif j == i:
                row = total
            else:
                row = Tinv[j - 2]
            rows.append(list(row) + [1])
        profiles.append(PadProfile.of(rows, F))
    return profiles


def plus_one_scheme(h: int, F: PrimeField | None = None) -> SchemeResult:
    """h rounds, (h-1)^2 message symbols, on a directed (h+1, h)-CCN."""
    F = F or make_field()
    if h < 3:
        raise SchemeParameterError(f"the (h+1, h) scheme needs h >= 3, got {h}")
    if (h - 2) % F.p == 0:
        raise SchemeParameterError("h - 2 must be invertible in the field")
    m = h + 1
    net = build_ccn(m, h, Orientation.DIRECTED)
    R = RoutingMatrix(tuple(tuple(range(h)) + (i,) for i in range(h)), h)
    profiles = plus_one_profiles(h, F)
    r = (h - 1) ** 2
    encoding = _encoding_for(net, R, profiles, r, F)
    return _routing_trace("plus-one", {"h": h}, net, F, R, profiles, r, encoding)


def round_ranks(result: SchemeResult) -> dict[str, list[int]]:
    """Per receiver, how many independent codeword functionals each round yields."""
    R, profiles = result.extras["routing"], result.extras["profiles"]
    net, F = result.trace.network, result.trace.field
    return {
        rc: [rank(f, F) if f.size else 0 for f in receiver_functionals(R, profiles, net.nodes[rc].subset, F)]
        for rc in net.receivers
    }
