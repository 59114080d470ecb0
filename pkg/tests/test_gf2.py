import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from s2r_involutions import gf2

vectors = st.integers(0, 2**12 - 1)


def dense_rank(rows, n=12):
    # oracle: plain elimination on a numpy 0/1 matrix
    M = np.array([gf2.from_bits(r, n) for r in rows], dtype=np.uint8).reshape(len(rows), n)
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(M)) if M[i, col]), None)
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        for i in range(len(M)):
            if i != rank and M[i, col]:
                M[i] ^= M[rank]
        rank += 1
    return rank


def test_bits_roundtrip():
    assert gf2.to_bits([1, 0, 1]) == 5
    assert gf2.from_bits(5, 4).tolist() == [1, 0, 1, 0]
    assert gf2.low_bit(12) == 2 and gf2.parity(7) == 1


@given(st.lists(vectors, max_size=10))
def test_rank_matches_dense_elimination(rows):
    assert gf2.rank(rows) == dense_rank(rows)


@given(st.lists(vectors, max_size=10))
def test_nullspace_is_orthogonal_and_complete(rows):
    basis = gf2.nullspace(rows, 12)
    assert all(gf2.parity(r & z) == 0 for r in rows for z in basis)
    assert gf2.rank(basis) == len(basis) == 12 - gf2.rank(rows)


@given(st.lists(vectors, max_size=8), vectors)
def test_solve(columns, target):
    combo = gf2.solve(columns, target)
    in_span = gf2.rank(columns + [target]) == gf2.rank(columns)
    assert (combo is not None) == in_span
    if combo is not None:
        acc = 0
        for i, c in enumerate(columns):
            if (combo >> i) & 1:
                acc ^= c
        assert acc == target


def test_echelon_tags_track_combinations():
    ech = gf2.Echelon()
    assert ech.add(0b011) and ech.add(0b110)
    assert not ech.add(0b101)
    rem, tag = ech.reduce(0b101)
    assert rem == 0 and tag == 0b011
