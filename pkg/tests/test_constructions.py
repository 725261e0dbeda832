from __future__ import annotations

import numpy as np
import pytest

from bentforge.constructions import (
    BUILDERS,
    PARTITION_KINDS,
    GammaParams,
    build,
    dual_F,
    dual_M,
    example2_H,
    example2_parameters,
    gamma_partition,
    mm_bent,
    secondary_H,
    ternary_family,
    theorem5_H,
)
from bentforge.errors import (
    BadParameters,
    BadR,
    DependentAlphaBeta,
    FamilyEpsilonMismatch,
    GcdObstruction,
    InvalidParams,
    NotAPermutation,
)
from bentforge.galois import GF
from bentforge.partitions import partition_from_function
from bentforge.semifield import albert_twisted_field, dual_star, frobenius_twist, induced_semifield
from bentforge.vectorial import VectorialFunction, check_condition_A
from bentforge.walsh import BentKind, PFunction, classify


def test_mm_boolean_xy():
    K = GF(2, 1)
    f, fd = mm_bent(K, 1, [0, 1], [0, 0])
    assert f.values.tolist() == [0, 0, 0, 1]
    c = classify(f)
    assert c.kind == BentKind.REGULAR and c.dual == fd == f


def test_mm_ternary_xy_regular():
    K = GF(3, 1)
    f, fd = mm_bent(K, 1, [0, 1, 2], [0, 0, 0])
    c = classify(f)
    assert c.kind == BentKind.REGULAR and c.dual == fd


def test_mm_dual_closed_form_random():
    K = GF(3, 2)
    rng = np.random.default_rng(2024)
    for _ in range(20):
        pi = rng.permutation(K.q)
        g = rng.integers(0, 3, K.q)
        alpha = int(rng.integers(1, K.q))
        f, fd = mm_bent(K, alpha, pi, g)
        c = classify(f)
        assert c.kind == BentKind.REGULAR
        assert c.dual == fd


def test_mm_rejects_non_permutation():
    with pytest.raises(NotAPermutation):
        mm_bent(GF(3, 1), 1, [0, 0, 1], [0, 0, 0])


def test_eq20_examples(ex1):
    f = ternary_family(20, 2)
    c = classify(f)
    assert c.kind == BentKind.WEAKLY_REGULAR and c.eps == -1 and f == f.compose_neg()
    g = ternary_family(20, 4, alpha=1)
    assert g == ex1
    assert int(np.sum(g.values == 0)) == 21
    with pytest.raises(BadParameters):
        ternary_family(20, 2, alpha=1)


@pytest.mark.parametrize("variant,n", [(21, 2), (21, 6), (22, 4)])
def test_eq21_eq22_weakly_regular(variant, n):
    f = ternary_family(variant, n)
    c = classify(f)
    assert c.kind == BentKind.WEAKLY_REGULAR and c.eps == -1
    assert f == f.compose_neg()


def test_eq21_eq22_parameter_checks():
    with pytest.raises(BadParameters):
        ternary_family(21, 4)
    with pytest.raises(BadParameters):
        ternary_family(22, 2)


def test_eq23_from_eq20_pairs():
    K = GF(3, 2)
    g = ternary_family(20, 2, alpha=3, K=K)
    h = ternary_family(20, 2, alpha=4, K=K)
    f = ternary_family(23, g=g, h=h)
    assert f.space.size == 81
    c = classify(f)
    assert c.kind == BentKind.WEAKLY_REGULAR and c.eps == -1
    assert f == f.compose_neg()
    # the (g - h) z^2 reading has slices g and 2g - h and is not weakly regular
    lit = classify(ternary_family(23, g=g, h=h, literal_sign=True))
    assert lit.kind != BentKind.WEAKLY_REGULAR
    with pytest.raises(BadParameters):
        ternary_family(23, g=g, h=g)


def test_gamma_params_validation():
    assert GammaParams.classical(3, 2, 1).u == 5
    P = GammaParams(3, 2, 1, 5)
    assert P.d == 5 and P.j0 == 0
    with pytest.raises(GcdObstruction):
        GammaParams(2, 4, 2, 5)
    with pytest.raises(InvalidParams):
        GammaParams(3, 4, 2, 5)  # 5 is not 1 or 3 mod 8
    with pytest.raises(InvalidParams):
        GammaParams(3, 2, 1, 5, d=3)
    with pytest.raises(InvalidParams):
        GammaParams(3, 4, 2, 11, P=frobenius_twist(GF(3, 4), 1))


def test_special_row_is_i0():
    params = GammaParams(3, 2, 1, 5, i0=1)
    K = params.field
    F = build("F", params)
    assert np.all(F.values[np.arange(K.q)] == 1)  # x = 0 row
    G = build("G", params)
    assert np.all(G.values[np.arange(K.q) * K.q] == 1)  # y = 0 column


@pytest.mark.parametrize("kind", BUILDERS)
@pytest.mark.parametrize("alpha_i0", [(1, 0), ("g", 1), (2, 2)])
def test_builders_condition_A(kind, alpha_i0):
    K = GF(3, 2)
    a, i0 = alpha_i0
    alpha = K.primitive_element if a == "g" else a
    rep = check_condition_A(build(kind, GammaParams(3, 2, 1, 5, alpha=alpha, i0=i0)))
    assert rep.holds and rep.eps == 1


@pytest.mark.parametrize("alpha", [1, "g"])
def test_closed_form_duals(alpha):
    K = GF(3, 2)
    alpha = K.primitive_element if alpha == "g" else alpha
    for P in (None, frobenius_twist(K, 1)):
        params = GammaParams(3, 2, 1, 5, P=P, alpha=alpha, i0=1)
        for builder, closed in (("F", dual_F), ("M", dual_M)):
            rep = check_condition_A(build(builder, params))
            assert rep.holds
            assert rep.vectorial_dual == closed(params)


def test_albert_builders_s2():
    params = GammaParams(3, 4, 2, 11, P=albert_twisted_field(GF(3, 4), 2))
    for kind in BUILDERS:
        rep = check_condition_A(build(kind, params))
        assert rep.holds and rep.eps == 1


def test_twisted_and_induced_presemifields_s1():
    K = GF(3, 2)
    for P in (frobenius_twist(K, 1), induced_semifield(dual_star(frobenius_twist(K, 1)), 3)):
        params = GammaParams(3, 2, 1, 5, P=P, alpha=3, i0=2)
        for kind in BUILDERS:
            F = build(kind, params)
            assert check_condition_A(F).holds
            name = next(k for k, v in PARTITION_KINDS.items() if v == kind)
            assert gamma_partition(name, params, alpha=params.alpha) == partition_from_function(F)


def test_partitions_match_builders_field():
    params = GammaParams(3, 2, 1, 5)
    for name, kind in PARTITION_KINDS.items():
        assert gamma_partition(name, params) == partition_from_function(build(kind, params))
    assert gamma_partition("Γ1", params) == gamma_partition("Gamma1", params)


def test_remark1_field_pairings():
    params = GammaParams.classical(3, 2, 1)
    parts = {k: gamma_partition(k, params) for k in PARTITION_KINDS}
    assert parts["Gamma1"] == parts["Gamma1bul"] == parts["Theta2"]
    assert parts["Gamma2"] == parts["Gamma2bul"] == parts["Theta1"]


def test_gamma1_boolean_depth2():
    G = gamma_partition("Gamma1", GammaParams(2, 3, 1, 3))
    assert G.space.size == 64 and G.K == 2


def _h_family_p3():
    fam = [build("F", GammaParams(3, 1, 1, 1)), build("M", GammaParams(3, 1, 1, 5)),
           build("G", GammaParams(3, 1, 1, 5))]
    return fam


def test_secondary_H_p3():
    K = GF(3, 2)
    H = secondary_H(_h_family_p3(), 2, K.primitive_element, 1, Km=K)
    assert H.function.domain.size == 3**6
    rep = check_condition_A(VectorialFunction(H.function.domain, H.function.codomain,
                                              H.function.values))
    assert rep.holds and rep.eps == 1 == H.eps


def test_secondary_H_p2_constant_family():
    K = GF(2, 2)
    F = build("F", GammaParams(2, 1, 1, 1))
    H = secondary_H([F, F], 2, K.primitive_element, 1, Km=K)
    assert H.function.domain.size == 2**6
    rep = check_condition_A(H.function)
    assert rep.holds and rep.eps == 1


def test_theorem5_H_3_8():
    K = GF(3, 2)
    H = theorem5_H(GammaParams(3, 2, 1, 5), ["F", "M", "N"], 2, K.primitive_element, 1, Km=K)
    F = H.function
    assert F.domain.size == 3**8
    rep = check_condition_A(F)
    assert rep.holds and rep.eps == 1
    assert sorted(np.bincount(F.values).tolist()) == [2160, 2160, 2241]


def test_secondary_H_errors():
    K = GF(3, 2)
    fam = _h_family_p3()
    with pytest.raises(DependentAlphaBeta):
        secondary_H(fam, 2, 1, 2, Km=K)
    R = np.roll(np.arange(K.q), 1)
    with pytest.raises(BadR):
        secondary_H(fam, 2, K.primitive_element, 1, R=R, Km=K)
    with pytest.raises(BadParameters):
        secondary_H(fam[:2], 2, K.primitive_element, 1, Km=K)
    # a weakly regular (eps = -1) member on the same space
    V = fam[0].domain
    x, y = V.split(np.arange(V.size))
    neg = PFunction(V, (x * x + y * y) % 3)
    assert classify(neg).eps == -1
    bad = [VectorialFunction.from_pfunction(neg), fam[1], fam[2]]
    bad[0] = VectorialFunction(V, fam[1].codomain, bad[0].values)
    with pytest.raises(FamilyEpsilonMismatch):
        secondary_H(bad, 2, K.primitive_element, 1, Km=K)


def test_example2_parameters():
    chk = example2_parameters()
    assert chk["legal"]
    assert chk["u_N"] == 4347
    assert chk["u_M_power_of_p_mod"] == [2] and chk["u_N_power_of_p_mod"] == [3]
    assert chk["domain_size"] == 3**32


def test_example2_lazy_evaluation():
    H = example2_H()
    F = H.function
    assert F.is_lazy
    vals = F.evaluate(np.array([0, 1, 12345678901234, 3**32 - 1]))
    assert vals.shape == (4,) and np.all((0 <= vals) & (vals < 81))
