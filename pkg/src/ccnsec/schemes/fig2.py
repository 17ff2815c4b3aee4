"""Schemes on the single source / single receiver graphs.

Variants a-c share one construction.  Keys u = (r_1..r_q fed back by R,
t_1..t_{K-q} drawn by S) with K = max(k, q).  Forward edge i carries a
message combination plus the pad ``A[:, i] . u`` where ``[I_K | A]`` is a
systematic MDS generator, so any K of {observed r_j} U {pads} are
independent and k <= K taps never see an unmasked message combination.
R knows its own r's and solves for the rest.
"""

from __future__ import annotations

import numpy as np

from ..engine import LinearForm, Session, combine
from ..field import PrimeField, extended_points, make_field, mds_generator, systematic
from ..network import AdversarySpec, build_fig2
from .common import SchemeParameterError, SchemeResult, complete_basis, origin


def pad_matrix(K: int, h: int, F: PrimeField) -> np.ndarray:
    """K x h block A of a systematic [K + h, K] MDS generator."""
    G = systematic(mds_generator(K + h, K, F, extended_points(K + h, F)), F)
    return G[:, K:]


def fig2_scheme(variant: str, h: int, q: int = 0, k: int = 1, F: PrimeField | None = None) -> SchemeResult:
    F = F or make_field()
    if variant == "d":
        return _fig2_d(h, F)
    if variant not in ("a", "b", "c"):
        raise SchemeParameterError(f"unknown variant {variant!r}")
    if variant != "c" and q:
        raise SchemeParameterError("only variant c has backward edges (q)")
    if k < 1:
        raise SchemeParameterError("k must be >= 1")
    K = max(k, q)
    r = h - (K - q)
    if r < 1:
        raise SchemeParameterError(f"k={k} taps leave no secret capacity (h={h}, q={q})")

    net = build_fig2(variant, h, q)
    p = F.p
    s = Session(net, r, F)
    fed_back = s.keys("R", q, "r") if q else []
    for j, rj in enumerate(fed_back, start=1):
        s.transmit(1, net.link("R", "S", j - 1), rj, sender="R")
    own = s.keys("S", K - q, "t") if K > q else []
    u = fed_back + own

    A = pad_matrix(K, h, F)
    A_t = A[q:, :].T  # h x (K - q): how each forward edge sees S's own keys
    M_b = complete_basis(A_t, h, F) if K > q else F.eye(h)
    for i in range(h):
        value = combine(M_b[i], s.message, p) + combine(A[:, i], u, p)
        s.transmit(1, net.link("S", "R", i), value, sender="S")

    adv = AdversarySpec("edge", k)
    params = {"variant": variant, "h": h, "q": q, "k": k}
    trace = s.finalize(origin("fig2", params, adv))
    return SchemeResult("fig2", params, trace, adv, {"pads": A, "keys": K})


def _fig2_d(h: int, F: PrimeField) -> SchemeResult:
    """R sends k_i back through C_i; S pads every forward path with k_1 + ... + k_h."""
    if h < 2:
        raise SchemeParameterError("variant d needs h >= 2 (a lone path reveals its own key)")
    net = build_fig2("d", h)
    s = Session(net, h, F)
    keys = s.keys("R", h, "k")
    for i, ki in enumerate(keys, start=1):
        s.transmit(1, net.link("R", f"C{i}"), ki, sender="R")
        s.transmit(1, net.link(f"C{i}", "S"), ki, sender=f"C{i}")
    pad = sum(keys, LinearForm.zero(F.p))
    for i, b in enumerate(s.message, start=1):
        s.transmit(1, net.link("S", f"C{i}"), b + pad)
        s.transmit(1, net.link(f"C{i}", "R"), b + pad)
    adv = AdversarySpec("node", 1)
    params = {"variant": "d", "h": h, "q": 0, "k": 1}
    trace = s.finalize(origin("fig2", params, adv))
    return SchemeResult("fig2", params, trace, adv)
