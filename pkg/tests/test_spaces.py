from __future__ import annotations

import cmath

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bentforge.errors import PrimeMismatch, SpaceMismatch
from bentforge.galois import GF, field_new
from bentforge.spaces import (
    CycInt,
    NotRational,
    VSpace,
    abs_sq,
    char_sum,
    cyc_conj,
    cyc_mul,
    inner,
    reduce_cyc,
)

SPACES = [((2,), [1, 1]), ((2,), [3]), ((2,), [2, 2]), ((3,), [1]), ((3,), [2]), ((3,), [1, 2]),
          ((3,), [2, 2]), ((5,), [1, 1]), ((5,), [2])]
spaces = st.sampled_from(SPACES).map(lambda t: VSpace.of(t[0][0], t[1]))


def cyc(p):
    return st.lists(st.integers(-20, 20), min_size=p - 1, max_size=p - 1).map(
        lambda c: CycInt(p, tuple(c)))


def naive_char_sums(V: VSpace, A) -> list[CycInt]:
    out = []
    for u in range(V.size):
        vals = V.inner_with(u)[np.asarray(A, dtype=np.int64)]
        out.append(CycInt.from_unreduced(V.p, np.bincount(vals, minlength=V.p).tolist()))
    return out


def test_zeta_minimal_polynomial():
    for p in (2, 3, 5, 7):
        total = CycInt.integer(p, 0)
        for k in range(p):
            total = total + CycInt.zeta(p, k)
        assert not total


def test_cyc_product_example():
    one_z = CycInt.integer(3, 1) + CycInt.zeta(3)
    one_z2 = CycInt.integer(3, 1) + CycInt.zeta(3, 2)
    assert cyc_mul(one_z, one_z2) == CycInt.integer(3, 1)
    assert abs_sq(one_z) == 1


def test_abs_sq_units_and_zero():
    for p in (2, 3, 5):
        for k in range(p):
            assert abs_sq(CycInt.zeta(p, k)) == 1
        assert abs_sq(CycInt.integer(p, 0)) == 0


def test_abs_sq_irrational():
    # 1 + 2 zeta in Z[zeta_5] has |z|^2 = 5 + 2(zeta + zeta^4): not rational
    z = CycInt.integer(5, 1) + CycInt.zeta(5) * 2
    assert isinstance(abs_sq(z), NotRational)


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        CycInt.zeta(3) + CycInt.zeta(5)


@given(st.sampled_from([2, 3, 5, 7]).flatmap(lambda p: st.tuples(cyc(p), cyc(p), cyc(p))))
def test_cyc_ring_laws(zs):
    a, b, c = zs
    assert cyc_mul(a, b + c) == cyc_mul(a, b) + cyc_mul(a, c)
    assert cyc_mul(cyc_mul(a, b), c) == cyc_mul(a, cyc_mul(b, c))
    assert cyc_conj(cyc_conj(a)) == a
    w = complex(cyc_mul(a, cyc_conj(a)))
    assert abs(w.imag) < 1e-6 * (1 + abs(w))
    assert abs(complex(cyc_mul(a, b)) - complex(a) * complex(b)) < 1e-6 * (1 + abs(complex(a)) * abs(complex(b)))


@given(st.sampled_from([3, 5, 7]), st.integers(-50, 50), st.integers(0, 6))
def test_unit_multiple(p, m, j):
    z = CycInt.integer(p, m).rotate(j)
    got = z.as_unit_multiple()
    assert got is not None
    mm, jj = got
    if m:
        assert (mm, jj) == (m, j % p)


def test_inner_examples():
    K = field_new(3, 2, [1, 0, 1])
    V = VSpace([K])
    assert inner(V.point(0), V.point(5)) == 0
    assert inner(V.point(1), V.point(1)) == 2
    W = VSpace([K, K])
    a, b = W.point(17), W.point(40)
    parts_a, parts_b = W.split(17), W.split(40)
    want = (int(K.trace(1, K.mul(int(parts_a[0]), int(parts_b[0])))) +
            int(K.trace(1, K.mul(int(parts_a[1]), int(parts_b[1]))))) % 3
    assert inner(a, b) == want


def test_index_order_first_part_most_significant():
    V = VSpace.of(3, [1, 2])
    assert V.size == 27
    assert [int(c) for c in V.split(1 * 9 + 4)] == [1, 4]
    assert V.point(13).index == 13


@given(spaces, st.data())
def test_inner_matches_field_arithmetic(V, data):
    a = data.draw(st.integers(0, V.size - 1))
    b = data.draw(st.integers(0, V.size - 1))
    assert int(V.inner_idx(a, b)) == inner(V.point(a), V.point(b))
    assert int(V.inner_with(a)[b]) == inner(V.point(a), V.point(b))


@given(spaces, st.data())
def test_group_operations(V, data):
    a, b = data.draw(st.lists(st.integers(0, V.size - 1), min_size=2, max_size=2))
    assert V.sub(V.add(a, b), b) == a
    assert V.add(a, V.neg(a)) == 0
    assert V.scale(V.p, a) == 0


@given(spaces, st.data())
def test_fourier_matches_naive(V, data):
    A = data.draw(st.sets(st.integers(0, V.size - 1), max_size=V.size))
    fast = reduce_cyc(V.char_sums(sorted(A)))
    naive = np.array([c.coords for c in naive_char_sums(V, sorted(A))], dtype=np.int64).reshape(
        V.size, V.p - 1)
    assert np.array_equal(fast, naive)


def test_char_sum_examples(ex1):
    V = ex1.space
    D0 = np.nonzero(ex1.values == 0)[0]
    assert char_sum(V.point(0), D0) == CycInt.integer(3, 21)
    allpts = np.arange(V.size)
    for u in (1, 5, 80):
        assert not char_sum(V.point(u), allpts)
    with pytest.raises(SpaceMismatch):
        char_sum(V.point(1), [V.size])


def test_fourier_large_counts_stay_exact():
    # entries near 2^62 force the arbitrary-precision path
    V = VSpace.of(3, [1])
    arr = np.zeros((3, 3), dtype=object)
    arr[:, 0] = 1 << 80
    out = V.fourier(arr, sign=1)
    assert out[0, 0] == 3 * (1 << 80)
    red = reduce_cyc(out)
    assert all(int(v) == 0 for v in red[1:].ravel())


def test_json_round_trip():
    V = VSpace([GF(3, 2), field_new(3, 2, [1, 0, 1])])
    assert VSpace.from_json(V.to_json()) == V


def test_complex_embedding():
    z = CycInt.zeta(5, 2)
    assert abs(complex(z) - cmath.exp(4j * cmath.pi / 5)) < 1e-12
