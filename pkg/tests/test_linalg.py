from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meshalg.fields import GF2, QQ, PrimeField
from meshalg.kernels import rref_modp_numpy
from meshalg.linalg import ExactMatrix, row_space_rank, rref


def test_field_basics():
    assert QQ.of(3) / QQ.of(6) == Fraction(1, 2)
    f5 = PrimeField(5)
    assert f5.inv(2) == 3
    assert f5.of(-1) == 4
    assert GF2.add(1, 1) == 0
    with pytest.raises(ValueError):
        PrimeField(6)


def test_field_string_roundtrip():
    assert QQ.from_str(QQ.to_str(Fraction(-3, 2))) == Fraction(-3, 2)
    f7 = PrimeField(7)
    assert f7.from_str(f7.to_str(5)) == 5


def test_rref_rational():
    rows = [[QQ.of(x) for x in r] for r in ([1, 2, 3], [2, 4, 6], [1, 0, 1])]
    red, piv = rref(rows, QQ)
    assert piv == [0, 1]
    assert len(red) == 2


def test_exact_matrix_rank_nullspace_solve():
    m = ExactMatrix([[QQ.of(1), QQ.of(2)], [QQ.of(2), QQ.of(4)]], QQ)
    assert m.rank() == 1
    ns = m.nullspace()
    assert len(ns) == 1
    assert all(QQ.is_zero(x) for x in m.apply(ns[0]))
    sol = m.solve([QQ.of(3), QQ.of(6)])
    assert sol is not None and m.apply(sol) == [QQ.of(3), QQ.of(6)]
    assert m.solve([QQ.of(1), QQ.of(0)]) is None


def test_row_space_rank_modp():
    f3 = PrimeField(3)
    vecs = [[1, 2, 0], [2, 0, 1], [0, 0, 1]]
    assert row_space_rank(vecs, f3) == 3
    assert row_space_rank([[1, 2, 0], [2, 4, 0]], f3) == 1
    # 2*(1,2,0) = (2,1,0) mod 3: dependent over GF(3), independent over QQ
    assert row_space_rank([[1, 2, 0], [2, 1, 0]], f3) == 1
    assert row_space_rank([[QQ.of(1), QQ.of(2)], [QQ.of(2), QQ.of(1)]], QQ) == 2


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 8),
    st.integers(2, 8),
    st.sampled_from([2, 3, 5, 101]),
    st.data(),
)
def test_kernel_lanes_agree(nr, nc, p, data):
    entries = data.draw(
        st.lists(st.integers(0, p - 1), min_size=nr * nc, max_size=nr * nc)
    )
    a = np.array(entries, dtype=np.int64).reshape(nr, nc)
    from meshalg.kernels import rref_modp

    r1, p1 = rref_modp(a.copy(), p)
    r2, p2 = rref_modp_numpy(a.copy(), p)
    assert np.array_equal(p1, p2)
    assert np.array_equal(r1 % p, r2 % p)
    # pivots index an identity submatrix
    for i, c in enumerate(p2):
        col = r2[:, c]
        assert col[i] == 1 and all(col[j] == 0 for j in range(nr) if j != i)
