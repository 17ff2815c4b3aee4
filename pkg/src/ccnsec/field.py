"""Exact linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays holding residues in ``[0, p)``.
Products of two residues stay below 2**62 for any p < 2**31, so a single
``% p`` after each multiply-accumulate step keeps everything exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

MAX_MODULUS = 2**31


class FieldTooSmall(ValueError):
    """A construction needs more distinct field elements than GF(p) has."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, (int, np.integer)) or isinstance(self.modulus, bool):
            raise TypeError(f"modulus must be an int, got {self.modulus!r}")
        if not 2 <= self.modulus < MAX_MODULUS or not is_prime(int(self.modulus)):
            raise ValueError(f"GF(p) needs a prime 2 <= p < 2**31, got {self.modulus}")

    @property
    def p(self) -> int:
        return self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return pow(int(a), -1, self.p)

    def matrix(self, rows) -> np.ndarray:
        m = np.array(rows, dtype=np.int64)
        if m.ndim == 1:
            m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
        return m % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def __str__(self):
        return f"GF({self.p})"


def make_field(p: int = 13) -> PrimeField:
    return PrimeField(p)


def _as_matrix(M, F: PrimeField) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {A.shape}")
    return A % F.p


def rref(M, F: PrimeField) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = _as_matrix(M, F).copy()
    p = F.p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        factors = A[:, c].copy()
        factors[r] = 0
        if factors.any():
            A = (A - np.outer(factors, A[r]) % p) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, F: PrimeField) -> int:
    A = _as_matrix(M, F)
    if A.size == 0:
        return 0
    return len(rref(A, F)[1])


def matmul(A, B, F: PrimeField) -> np.ndarray:
    A = _as_matrix(A, F)
    B = _as_matrix(B, F)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # accumulate one column of A at a time so nothing overflows int64
    for t in range(A.shape[1]):
        out = (out + np.outer(A[:, t], B[t, :]) % F.p) % F.p
    return out


def left_solve(A, T, F: PrimeField) -> np.ndarray | None:
    """Find D with ``D @ A == T``; ``None`` when some row of T is outside rowspace(A)."""
    A = _as_matrix(A, F)
    T = _as_matrix(T, F)
    if A.shape[1] != T.shape[1]:
        raise ValueError(f"column mismatch: A has {A.shape[1]}, T has {T.shape[1]}")
    a, t = A.shape[0], T.shape[0]
    # solve A^T X = T^T, then D = X^T
    aug = np.concatenate([A.T, T.T], axis=1)
    R, pivots = rref(aug, F)
    if any(c >= a for c in pivots):
        return None
    X = np.zeros((a, t), dtype=np.int64)
    for row, c in enumerate(pivots):
        X[c] = R[row, a:]
    return X.T.copy()


def inverse(M, F: PrimeField) -> np.ndarray:
    M = _as_matrix(M, F)
    n, c = M.shape
    if n != c:
        raise ValueError("only square matrices are invertible")
    D = left_solve(M, F.eye(n), F)
    if D is None:
        raise ZeroDivisionError("matrix is singular over " + str(F))
    return D


def nullspace(M, F: PrimeField) -> np.ndarray:
    """Basis (as rows) of the right nullspace {x : M x = 0}."""
    M = _as_matrix(M, F)
    cols = M.shape[1]
    R, pivots = rref(M, F) if M.shape[0] else (M, [])
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, c in enumerate(pivots):
            basis[i, c] = (-R[row, f]) % F.p
    return basis


def default_points(n: int, F: PrimeField) -> list[int]:
    """Distinct evaluation points: nonzero ones when the field has enough."""
    if n <= F.p - 1:
        return list(range(1, n + 1))
    if n <= F.p:
        return list(range(n))
    raise FieldTooSmall(f"need {n} distinct evaluation points, {F} has {F.p}")


def mds_generator(n: int, k: int, F: PrimeField, points=None) -> np.ndarray:
    """k x n Vandermonde generator: every k x k column submatrix is invertible.

    ``points`` may list n distinct field elements; ``None`` inside it stands for
    the point at infinity (column e_k), which lets n reach p + 1.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if points is None:
        points = default_points(n, F)
    points = list(points)
    if len(points) != n or len(set(points)) != n:
        raise ValueError("need n distinct evaluation points")
    G = np.zeros((k, n), dtype=np.int64)
    for j, x in enumerate(points):
        if x is None:
            G[k - 1, j] = 1
            continue
        if not 0 <= x < F.p:
            raise ValueError(f"evaluation point {x} outside {F}")
        for t in range(k):
            G[t, j] = pow(int(x), t, F.p)
    return G


def extended_points(n: int, F: PrimeField) -> list:
    """Points for an n-column MDS code, using infinity once the field runs out."""
    if n <= F.p:
        return default_points(n, F)
    if n == F.p + 1:
        return list(range(F.p)) + [None]
    raise FieldTooSmall(f"no [n={n}] Reed-Solomon code over {F}")


def systematic(G, F: PrimeField) -> np.ndarray:
    """Row-reduce a generator to ``[I | P]`` form (requires the leading block invertible)."""
    G = _as_matrix(G, F)
    k = G.shape[0]
    return matmul(inverse(G[:, :k], F), G, F)


def is_mds(G, F: PrimeField) -> bool:
    G = _as_matrix(G, F)
    k, n = G.shape
    return all(rank(G[:, list(cols)], F) == k for cols in itertools.combinations(range(n), k))


def sylvester_hadamard_codewords(N: int) -> list[tuple[int, ...]]:
    """2N binary words of length N: rows of the Sylvester matrix H_N and their complements.

    The first word is all-zero and word N is all-one; any two differ in at least N/2 places.
    """
    if not isinstance(N, int) or N < 1 or N & (N - 1):
        raise ValueError(f"Sylvester construction needs N a power of 2, got {N}")
    H = np.array([[1]], dtype=np.int64)
    while H.shape[0] < N:
        H = np.block([[H, H], [H, -H]])
    rows = [tuple(int(v) for v in (H[i] < 0)) for i in range(N)]
    return rows + [tuple(1 - b for b in r) for r in rows]


def hamming_distance(a, b) -> int:
    return sum(x != y for x, y in zip(a, b, strict=True))
