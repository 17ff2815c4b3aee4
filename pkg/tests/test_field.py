import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccnsec.field import (
    FieldTooSmall,
    PrimeField,
    extended_points,
    hamming_distance,
    inverse,
    is_mds,
    left_solve,
    make_field,
    matmul,
    mds_generator,
    nullspace,
    rank,
    rref,
    sylvester_hadamard_codewords,
    systematic,
)


def span_size(M, p):
    """Row space cardinality by enumeration: p ** rank."""
    M = np.asarray(M, dtype=np.int64)
    seen = {tuple((np.array(c) @ M) % p) for c in itertools.product(range(p), repeat=M.shape[0])}
    return len(seen)


def small_matrices(max_rows=3, max_cols=4, primes=(2, 3, 5)):
    return st.sampled_from(primes).flatmap(
        lambda p: st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
            lambda shape: st.tuples(
                st.just(p),
                st.lists(
                    st.lists(st.integers(0, p - 1), min_size=shape[1], max_size=shape[1]),
                    min_size=shape[0],
                    max_size=shape[0],
                ),
            )
        )
    )


def test_rejects_composite_and_huge():
    for bad in (1, 4, 9, 2**31 + 11):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_inverse_elements(gf13):
    for a in range(1, 13):
        assert gf13.mul(a, gf13.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        gf13.inv(0)


def test_rref_known():
    F = make_field(5)
    R, piv = rref([[2, 4, 1], [1, 2, 4]], F)
    assert piv == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


@settings(max_examples=80, deadline=None)
@given(small_matrices())
def test_rank_matches_enumeration(case):
    p, rows = case
    F = make_field(p)
    r = rank(rows, F)
    assert p**r == span_size(rows, p)
    assert r == rank(np.array(rows).T, F)


@settings(max_examples=80, deadline=None)
@given(small_matrices(max_rows=3, max_cols=3))
def test_nullspace_is_annihilating_and_complete(case):
    p, rows = case
    F = make_field(p)
    M = F.matrix(rows)
    N = nullspace(M, F)
    assert N.shape[0] == M.shape[1] - rank(M, F)
    if N.size:
        assert not matmul(M, N.T, F).any()


@settings(max_examples=60, deadline=None)
@given(small_matrices(max_rows=4, max_cols=3), st.integers(0, 10**6))
def test_left_solve_sound(case, seed):
    p, rows = case
    F = make_field(p)
    A = F.matrix(rows)
    rng = np.random.default_rng(seed)
    D0 = rng.integers(0, p, size=(2, A.shape[0]))
    T = matmul(D0, A, F)  # reachable target
    D = left_solve(A, T, F)
    assert D is not None and np.array_equal(matmul(D, A, F), T)


def test_left_solve_unreachable(gf13):
    assert left_solve([[1, 0, 0]], [[0, 1, 0]], gf13) is None
    with pytest.raises(ValueError):
        left_solve([[1, 0]], [[1, 0, 0]], gf13)


def test_inverse_round_trip(gf13):
    M = gf13.matrix([[2, 3], [5, 7]])
    assert np.array_equal(matmul(M, inverse(M, gf13), gf13), gf13.eye(2))
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]], gf13)


def test_mds_6_4_over_gf13(gf13):
    G = mds_generator(6, 4, gf13)
    assert G.shape == (4, 6)
    assert is_mds(G, gf13)
    assert is_mds(systematic(G, gf13), gf13)


def test_mds_with_point_at_infinity():
    F = make_field(5)
    G = mds_generator(6, 3, F, extended_points(6, F))
    assert is_mds(G, F)
    with pytest.raises(FieldTooSmall):
        extended_points(7, F)


def test_non_mds_detected(gf13):
    assert not is_mds([[1, 0, 1], [0, 1, 0]], gf13)


@pytest.mark.parametrize("N", [2, 4, 8, 16])
def test_hadamard_distance(N):
    words = sylvester_hadamard_codewords(N)
    assert len(set(words)) == 2 * N
    assert words[0] == (0,) * N and words[N] == (1,) * N
    assert min(hamming_distance(a, b) for a, b in itertools.combinations(words, 2)) >= N // 2


def test_hadamard_needs_power_of_two():
    with pytest.raises(ValueError):
        sylvester_hadamard_codewords(6)
