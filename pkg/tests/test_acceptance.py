"""Acceptance criteria 1-9, each with its stated runtime bound.

Every criterion prints one ``PASS criterion N`` or ``FAIL criterion N`` line; the
lines are also collected into the pytest terminal summary. Run standalone with
``python tests/test_acceptance.py``."""

from __future__ import annotations

import functools
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bentforge.constructions import (
    BUILDERS,
    PARTITION_KINDS,
    GammaParams,
    build,
    gamma_partition,
    mm_bent,
    secondary_H,
    theorem5_H,
)
from bentforge.errors import GcdObstruction
from bentforge.galois import GF
from bentforge.partitions import (
    NotFromNormal,
    function_from_partition,
    is_bent_partition,
    normal_size_obstruction,
    partition_from_function,
    satisfies_condition_C,
)
from bentforge.pds import PdsParams, expected_params, is_pds, theorem6_check
from bentforge.semifield import (
    adjoint_identity_bruteforce,
    albert_twisted_field,
    dual_star,
    field_presemifield,
    frobenius_twist,
)
from bentforge.spaces import CycInt, VSpace
from bentforge.vectorial import VectorialFunction, check_condition_A
from bentforge.walsh import BentKind, PFunction, classify, dual, spectrum, walsh_at

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES, example1_function  # noqa: E402


def criterion(number: int, limit: float | None):
    """Time the body, enforce the bound and report one PASS/FAIL line."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            t0 = time.perf_counter()
            err = None
            try:
                fn(*a, **kw)
            except BaseException as e:  # noqa: BLE001 - reported then re-raised
                err = e
            dt = time.perf_counter() - t0
            if err is None and limit is not None and dt > limit:
                err = AssertionError(f"criterion {number} took {dt:.3f} s > {limit} s")
            bound = f" (limit {limit:g} s)" if limit is not None else ""
            line = f"{'PASS' if err is None else 'FAIL'} criterion {number}: {dt:.3f} s{bound}"
            ACCEPTANCE_LINES.append(line)
            print(line)
            if err is not None:
                raise err

        return run

    return wrap


def _g(K):
    return K.primitive_element


def _dense(F: VectorialFunction) -> VectorialFunction:
    return VectorialFunction(F.domain, F.codomain, F.values)


# --- 1 ---------------------------------------------------------------------------------------

@criterion(1, 1.0)
def test_criterion_1_example1():
    f = example1_function()
    c = classify(f)
    assert c.kind == BentKind.WEAKLY_REGULAR and c.eps == -1
    G = partition_from_function(VectorialFunction.from_pfunction(f))
    assert G.sizes == [21, 30, 30]
    rep = is_bent_partition(G, cap=None)
    assert rep.is_bent_partition and rep.functions_tested == 6 and not rep.sampled
    assert isinstance(normal_size_obstruction(G), NotFromNormal)


# --- 2 ---------------------------------------------------------------------------------------

@criterion(2, 10.0)
def test_criterion_2_builders_condition_A():
    K = GF(3, 2)
    for kind in BUILDERS:
        for alpha in (1, _g(K)):
            for i0 in (0, 1):
                rep = check_condition_A(build(kind, GammaParams(3, 2, 1, 5, d=5, alpha=alpha, i0=i0)))
                assert rep.holds and rep.eps == 1, (kind, alpha, i0, rep.reason)
    K2 = GF(2, 3)
    for kind in BUILDERS:
        for alpha in (1, _g(K2)):
            for i0 in (0, 1):
                rep = check_condition_A(build(kind, GammaParams(2, 3, 1, 3, d=5, alpha=alpha, i0=i0)))
                assert rep.holds and rep.eps == 1, (kind, alpha, i0, rep.reason)


# --- 3 ---------------------------------------------------------------------------------------

@criterion(3, None)
def test_criterion_3_remark1_pairings():
    K = GF(3, 2)
    for alpha in (1, _g(K)):
        params = GammaParams(3, 2, 1, 5, P=field_presemifield(K), alpha=alpha)
        fib = {k: partition_from_function(build(k, params)) for k in BUILDERS}
        assert fib["F"] == fib["Fbul"] == fib[PARTITION_KINDS["Theta2"]]
        assert fib["G"] == fib["Gbul"] == fib[PARTITION_KINDS["Theta1"]]
        for a, b in (("F", "Fbul"), ("G", "Gbul")):
            assert all(np.array_equal(fib[a].block(i), fib[b].block(i)) for i in range(3))


# --- 4 ---------------------------------------------------------------------------------------

@criterion(4, None)
def test_criterion_4_round_trip():
    K = GF(3, 2)
    A_fixtures = [VectorialFunction.from_pfunction(example1_function())]
    for alpha in (1, _g(K)):
        params = GammaParams(3, 2, 1, 5, alpha=alpha, i0=1)
        A_fixtures += [build(k, params) for k in BUILDERS]
    for F in A_fixtures:
        repA = check_condition_A(F)
        G = partition_from_function(F)
        repC = satisfies_condition_C(G, cap=None)
        assert repA.holds and repC.holds and repC.eps == repA.eps
        assert function_from_partition(G) == _dense(F)
    params = GammaParams(3, 2, 1, 5)
    C_fixtures = [gamma_partition(name, params) for name in PARTITION_KINDS]
    C_fixtures.append(partition_from_function(A_fixtures[0]))
    for G in C_fixtures:
        repC = satisfies_condition_C(G, cap=None)
        F = function_from_partition(G)
        repA = check_condition_A(F)
        assert repC.holds and repA.holds and repA.eps == repC.eps
        assert partition_from_function(F) == G


# --- 5 ---------------------------------------------------------------------------------------

@criterion(5, 120.0)
def test_criterion_5_pds_oracles():
    K = GF(3, 2)
    H = theorem5_H(GammaParams(3, 2, 1, 5), ["F", "M", "N"], 2, _g(K), 1, Km=K).function
    assert H.domain.size == 3**8
    fixtures = [VectorialFunction.from_pfunction(example1_function()),
                build("F", GammaParams(3, 2, 1, 5)), _dense(H)]
    for F in fixtures:
        rep = theorem6_check(F)
        assert rep.holds and rep.exhaustive
        assert len(rep.entries) == 2 ** F.codomain.size - 1
        for e in rep.entries:
            assert isinstance(e.brute, PdsParams) and isinstance(e.characters, PdsParams)
            assert e.brute.matches(e.characters) and e.brute.matches(e.expected)
            assert e.brute.counting_identity()


# --- 6 ---------------------------------------------------------------------------------------

@criterion(6, 1e-3)
def test_criterion_6_example3_arithmetic():
    assert expected_params(3, 32, 4, 1, 1, False).tuple() == (
        1853020188851841, 22876791923520, 282470988879, 282429005040)
    assert expected_params(3, 32, 4, 1, 1, True).k == 22876834970240
    pair = expected_params(3, 32, 4, 2, 1, True)
    assert (pair.k, pair.lam, pair.mu) == (45753626893760, 1129760129761, 1129719208806)


# --- 7 ---------------------------------------------------------------------------------------

@criterion(7, 30.0)
def test_criterion_7_secondary_construction():
    K = GF(3, 2)
    family = [build("F", GammaParams(3, 1, 1, 1)), build("M", GammaParams(3, 1, 1, 5)),
              build("G", GammaParams(3, 1, 1, 5))]
    S = secondary_H(family, 2, _g(K), 1, R=np.arange(K.q), T=np.zeros(3, dtype=np.int64), Km=K)
    H = _dense(S.function)
    assert H.domain.size == 3**6 and S.eps == 1
    rep = check_condition_A(H)
    assert rep.holds and rep.eps == 1
    cc = satisfies_condition_C(partition_from_function(H), cap=None)
    assert cc.holds and cc.eps == 1


# --- 8 ---------------------------------------------------------------------------------------

PROPERTY_SPACES = [(2, [1, 1, 1, 1]), (3, [1, 1]), (3, [2]), (5, [2]), (3, [1, 1, 1])]


def _random_functions():
    return st.sampled_from(PROPERTY_SPACES).flatmap(
        lambda t: st.lists(st.integers(0, t[0] - 1), min_size=t[0] ** sum(t[1]),
                           max_size=t[0] ** sum(t[1])).map(
            lambda v, t=t: PFunction(VSpace.of(t[0], t[1]), v)))


@given(_random_functions(), st.data())
def _parseval_and_naive(f, data):
    p, n = f.space.p, f.space.n
    sp = spectrum(f)
    total = CycInt.integer(p, 0)
    for a in range(f.space.size):
        total = total + sp[a] * sp[a].conj()
    assert total == CycInt.integer(p, p ** (2 * n))
    for a in data.draw(st.lists(st.integers(0, f.space.size - 1), min_size=1, max_size=4)):
        assert sp[a] == walsh_at(f, a)


@given(st.sampled_from([(3, 2), (3, 4), (5, 2)]), st.data())
def _dual_involution(pn, data):
    p, n = pn
    K = GF(p, n)
    a = data.draw(st.integers(1, K.q - 1))
    xs = np.arange(K.q)
    f = PFunction(VSpace([K]), K.trace(1, K.mul(a, K.mul(xs, xs))))
    assert classify(f).is_weakly_regular
    assert dual(dual(f)) == f.compose_neg()


@given(st.integers(0, 2**32 - 1))
def _pds_counting_identity(seed):
    V = VSpace.of(3, [1, 1, 1, 1])
    rng = np.random.default_rng(seed)
    idx = np.arange(1, V.size)
    reps = idx[idx < V.neg(idx)]
    pick = reps[rng.random(reps.size) < 0.5]
    res = is_pds(np.union1d(pick, V.neg(pick)), V)
    if isinstance(res, PdsParams):
        assert res.counting_identity()


def _presemifields_upto_81():
    out = []
    for p, n in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)]:
        K = GF(p, n)
        out.append(field_presemifield(K))
        out += [frobenius_twist(K, k) for k in range(1, n)]
    for p, n, k in [(3, 2, 1), (3, 4, 1), (3, 4, 2), (5, 2, 1), (7, 2, 1), (2, 4, 2), (2, 6, 2)]:
        out.append(albert_twisted_field(GF(p, n), k))
    return out


@criterion(8, None)
def test_criterion_8_property_suites():
    _parseval_and_naive()
    _dual_involution()
    for P in _presemifields_upto_81():
        assert adjoint_identity_bruteforce(P, dual_star(P)), P
    _pds_counting_identity()
    for F in (VectorialFunction.from_pfunction(example1_function()),
              build("F", GammaParams(3, 2, 1, 5)), build("M", GammaParams(3, 1, 1, 5))):
        for e in theorem6_check(F).entries:
            assert e.brute.counting_identity() and e.expected.counting_identity()
    K = GF(3, 2)
    rng = np.random.default_rng(2024)
    for _ in range(20):
        f, fd = mm_bent(K, int(rng.integers(1, K.q)), rng.permutation(K.q), rng.integers(0, 3, K.q))
        c = classify(f)
        assert c.kind == BentKind.REGULAR and c.dual == fd


# --- 9 ---------------------------------------------------------------------------------------

@given(st.sampled_from(["ex1", *BUILDERS, "bool-F", "bool-N"]), st.data())
def _perturbation_breaks_A(name, data):
    F = _NEGATIVE_FIXTURES[name]
    x = data.draw(st.integers(0, F.domain.size - 1))
    shift = data.draw(st.integers(1, F.codomain.size - 1))
    G = F.with_value(x, int(F.codomain.add(F.values[x], shift)))
    assert not check_condition_A(G).holds


_NEGATIVE_FIXTURES: dict = {}


@criterion(9, None)
def test_criterion_9_negative_controls():
    _NEGATIVE_FIXTURES["ex1"] = VectorialFunction.from_pfunction(example1_function())
    for k in BUILDERS:
        _NEGATIVE_FIXTURES[k] = _dense(build(k, GammaParams(3, 2, 1, 5)))
    for k in ("F", "N"):
        _NEGATIVE_FIXTURES["bool-" + k] = _dense(build(k, GammaParams(2, 3, 1, 3, d=5)))
    for F in _NEGATIVE_FIXTURES.values():
        assert check_condition_A(F).holds
    _perturbation_breaks_A()

    G = gamma_partition("Gamma1", GammaParams(3, 2, 1, 5))
    for label in (0, 1, 2):
        D = G.block(label)
        D = D[D != 0]
        assert isinstance(is_pds(D, G.space), PdsParams)
        for x in D[:5]:
            assert not isinstance(is_pds(np.setdiff1d(D, [x]), G.space), PdsParams)

    for u in (2, 4):  # gcd(u, 3^2 - 1) > 1
        with pytest.raises(GcdObstruction):
            gamma_partition("Gamma1", GammaParams(3, 2, 1, u))
    with pytest.raises(GcdObstruction):
        GammaParams(2, 4, 2, 3)  # gcd(3, 15) = 3


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
