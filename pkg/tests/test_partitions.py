from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bentforge.constructions import BUILDERS, GammaParams, build, gamma_partition
from bentforge.errors import InvalidPartition, NotDivisible
from bentforge.partitions import (
    NotFromNormal,
    Partition,
    PossiblyNormalDerived,
    balanced_assignments,
    count_balanced,
    function_from_partition,
    invariance_witness,
    is_bent_partition,
    is_normal_bent_partition,
    normal_size_obstruction,
    partition_from_function,
    satisfies_condition_C,
)
from bentforge.spaces import VSpace
from bentforge.vectorial import VectorialFunction, check_condition_A

# seeded random balanced 3-block partition of F_3^2, frozen; not bent
RANDOM_F3_2 = [0, 1, 0, 1, 0, 2, 1, 2, 2]


@pytest.fixture(scope="module")
def ex1_partition(ex1):
    return partition_from_function(VectorialFunction.from_pfunction(ex1))


@pytest.fixture(scope="module")
def gamma1():
    return gamma_partition("Gamma1", GammaParams(3, 2, 1, 5))


def test_count_balanced():
    assert count_balanced(3, 3) == 6
    assert count_balanced(4, 2) == 6
    assert count_balanced(9, 3) == 1680
    with pytest.raises(NotDivisible):
        count_balanced(4, 3)


def test_balanced_assignments_enumeration_and_sampling():
    full = list(balanced_assignments(6, 3))
    assert len(full) == 90 == len(set(full))
    assert full == sorted(full)
    s1 = list(balanced_assignments(9, 3, cap=50, seed=3))
    s2 = list(balanced_assignments(9, 3, cap=50, seed=3))
    assert s1 == s2 and len(s1) == 50
    assert all(sorted(a) == [0, 0, 0, 1, 1, 1, 2, 2, 2] for a in s1)


def test_partition_validation():
    V = VSpace.of(3, [1])
    with pytest.raises(InvalidPartition):
        Partition(V, [[0, 1], [1, 2]])
    with pytest.raises(InvalidPartition):
        Partition(V, [[0], [1]])
    with pytest.raises(InvalidPartition):
        Partition(V, [[0, 1, 2], []])
    assert Partition(V, [[0, 1, 2], []], allow_empty=True).K == 2


def test_example1_bent_partition(ex1_partition):
    assert ex1_partition.sizes == [21, 30, 30]
    rep = is_bent_partition(ex1_partition)
    assert rep.is_bent_partition and rep.functions_tested == 6
    assert dict(rep.eps_set) == {-1: 6}
    ok, eps = satisfies_condition_C(ex1_partition)
    assert ok and eps == -1


def test_gamma1_bent_partition(gamma1):
    rep = is_bent_partition(gamma1)
    assert rep.is_bent_partition and dict(rep.eps_set) == {1: 6}
    ok, eps = satisfies_condition_C(gamma1)
    assert ok and eps == 1


def test_random_partition_not_bent():
    G = Partition.from_assignment(VSpace.of(3, [1, 1]), RANDOM_F3_2)
    rep = is_bent_partition(G)
    assert not rep.is_bent_partition and rep.witness is not None
    cc = satisfies_condition_C(G)
    assert not cc.holds and cc.witness is not None


def test_condition_C_invariance_violation():
    V = VSpace.of(3, [1, 1])
    # move the point 1 = (0, 1) into another block than -1 = (0, 2)
    assign = np.zeros(9, dtype=np.int64)
    assign[[1, 3, 4]] = 1
    assign[[2, 5, 6]] = 2
    G = Partition.from_assignment(V, assign)
    assert invariance_witness(G) is not None
    assert not satisfies_condition_C(G).holds


def test_partition_from_identity():
    V = VSpace.of(3, [1])
    G = partition_from_function(VectorialFunction(V, V, np.arange(3)))
    assert [b.tolist() for b in G.blocks] == [[0], [1], [2]]


def test_round_trips(ex1, ex1_partition, gamma1):
    F = VectorialFunction.from_pfunction(ex1)
    assert function_from_partition(ex1_partition) == F
    G = function_from_partition(gamma1)
    assert check_condition_A(G).holds
    assert partition_from_function(G) == gamma1


def test_eq24_partition_is_gamma1(gamma1):
    assert partition_from_function(build("F", GammaParams(3, 2, 1, 5))) == gamma1


def test_normal_size_obstruction(ex1_partition, gamma1):
    assert isinstance(normal_size_obstruction(ex1_partition), NotFromNormal)
    res = normal_size_obstruction(gamma1)
    assert isinstance(res, PossiblyNormalDerived) and res.target == 24
    V = VSpace.of(3, [1, 1])
    # sizes (3 + 2, 2, 2) on 9 points: 9 - 3 = 6 = 3 * 2
    G = Partition(V, [[0, 1, 2, 3, 6], [4, 8], [5, 7]])
    assert isinstance(normal_size_obstruction(G), PossiblyNormalDerived)


def test_gamma1_normal_split(gamma1):
    K = GammaParams(3, 2, 1, 5).field
    U = np.arange(K.q)  # the fibre x = 0
    blocks = [np.setdiff1d(gamma1.block(0), U), gamma1.block(1), gamma1.block(2)]
    rep = is_normal_bent_partition(gamma1.space, U, blocks)
    assert rep.is_bent_partition and rep.functions_tested == 18


@pytest.mark.parametrize("kind", BUILDERS)
def test_condition_A_fixtures_give_condition_C(kind):
    F = build(kind, GammaParams(3, 2, 1, 5, alpha=3))
    rep = check_condition_A(F)
    cc = satisfies_condition_C(partition_from_function(F))
    assert rep.holds and cc.holds and cc.eps == rep.eps


@given(st.permutations(list(range(9))))
def test_json_round_trip(perm):
    V = VSpace.of(3, [1, 1])
    G = Partition.from_assignment(V, np.asarray(perm) % 3, codomain=VSpace.of(3, [1]))
    assert Partition.from_json(G.to_json()) == G
