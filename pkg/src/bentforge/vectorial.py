"""Vectorial functions V_n -> V_s, component functions and Condition A."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._linalg import inv_mod
from .errors import (
    CapExceeded,
    ConditionAFailed,
    DimensionViolation,
    EmptyIndexSet,
    SpaceMismatch,
    ZeroComponent,
)
from .galois import TABLE_LIMIT
from .spaces import Point, VSpace, reduce_cyc
from .walsh import PFunction, classify, is_bent


class VectorialFunction:
    """F: domain -> codomain, a table of codomain point indices.

    Above ``TABLE_LIMIT`` points a function may be *lazy*: it keeps only an
    evaluator mapping domain index arrays to codomain index arrays, and every
    exhaustive operation refuses to run on it."""

    def __init__(self, domain: VSpace, codomain: VSpace, values=None,
                 evaluator: Callable[[np.ndarray], np.ndarray] | None = None):
        if domain.p != codomain.p:
            raise SpaceMismatch("domain and codomain must share the characteristic")
        self.domain = domain
        self.codomain = codomain
        self._evaluator = evaluator
        if values is None:
            if evaluator is None:
                raise ValueError("need a value table or an evaluator")
            if domain.size <= TABLE_LIMIT:
                values = evaluator(np.arange(domain.size, dtype=np.int64))
        if values is not None:
            values = np.asarray(values, dtype=np.int64)
            if values.shape != (domain.size,):
                raise SpaceMismatch(f"table has shape {values.shape}, domain has {domain.size} points")
            if values.size and (values.min() < 0 or values.max() >= codomain.size):
                raise ValueError("table entries must be codomain point indices")
            values.setflags(write=False)
        self._values = values

    @property
    def is_lazy(self) -> bool:
        return self._values is None

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            raise CapExceeded(f"domain of {self.domain.size} points exceeds the table limit "
                              f"{TABLE_LIMIT}; only pointwise evaluation is available")
        return self._values

    def evaluate(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if self._values is not None:
            return self._values[xs]
        return np.asarray(self._evaluator(xs), dtype=np.int64)

    def __call__(self, x) -> int:
        if isinstance(x, Point):
            x = x.index
        return int(self.evaluate(np.array([int(x)]))[0])

    def __eq__(self, other) -> bool:
        return (isinstance(other, VectorialFunction) and other.domain == self.domain
                and other.codomain == self.codomain and np.array_equal(other.values, self.values))

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"VectorialFunction({self.domain} -> {self.codomain})"

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def s(self) -> int:
        return self.codomain.n

    @classmethod
    def from_pfunction(cls, f: PFunction) -> VectorialFunction:
        return cls(f.space, VSpace.of(f.space.p, [1]), f.values)

    def as_pfunction(self) -> PFunction:
        if self.codomain.n != 1:
            raise DimensionViolation("only functions into F_p convert to PFunction")
        # one-dimensional codomain: the index is the prime-field value
        return PFunction(self.domain, self.values)

    def with_value(self, x: int, v: int) -> VectorialFunction:
        vals = self.values.copy()
        vals[int(x)] = int(v)
        return VectorialFunction(self.domain, self.codomain, vals)

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "codomain": self.codomain.to_json(),
                "values": self.values.tolist()}

    @staticmethod
    def from_json(obj: dict) -> VectorialFunction:
        return VectorialFunction(VSpace.from_json(obj["domain"]), VSpace.from_json(obj["codomain"]),
                                 obj["values"])


def _cidx(F: VectorialFunction, c) -> int:
    if isinstance(c, Point):
        if c.space != F.codomain:
            raise SpaceMismatch(f"{c.space} vs {F.codomain}")
        return c.index
    return int(c)


def component(F: VectorialFunction, c) -> PFunction:
    """F_c(x) = <c, F(x)>."""
    c = _cidx(F, c)
    if c == 0:
        raise ZeroComponent("component functions need c != 0")
    return PFunction(F.domain, F.codomain.inner_with(c)[F.values])


def is_vectorial_bent(F: VectorialFunction) -> bool:
    p, n, s = F.domain.p, F.n, F.s
    if p == 2 and 2 * s > n:
        return False
    return all(is_bent(component(F, c)) for c in range(1, F.codomain.size))


def preimage(F: VectorialFunction, I) -> np.ndarray:
    """D_{F,I}: sorted indices x with F(x) in I."""
    I = np.unique(np.asarray(list(I), dtype=np.int64))
    if I.size == 0:
        raise EmptyIndexSet("index set must be nonempty")
    return np.nonzero(np.isin(F.values, I))[0].astype(np.int64)


def nonzero_subsets(size: int, cap_exhaustive: int = 16, samples: int = 100, seed: int = 0):
    """All nonempty subsets of range(size) when size <= cap_exhaustive (as boolean
    rows), else all singletons, their complements and ``samples`` random subsets."""
    if size <= cap_exhaustive:
        bits = (np.arange(1, 1 << size)[:, None] >> np.arange(size)) & 1
        return bits.astype(bool)
    rng = np.random.default_rng(seed)
    rows = [np.eye(size, dtype=bool)[i] for i in range(size)]
    rows += [~r for r in rows]
    for _ in range(samples):
        r = rng.random(size) < 0.5
        if r.any():
            rows.append(r)
    return np.array(rows)


# --- Condition A ---------------------------------------------------------------------

@dataclass
class ConditionAReport:
    holds: bool
    eps: int | None = None
    vectorial_dual: VectorialFunction | None = None
    failure_witness: dict | None = None
    reason: str = ""
    sigma_nontrivial: bool = False
    component_kinds: dict = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        out = {"holds": self.holds, "eps": self.eps, "reason": self.reason,
               "sigma_nontrivial": self.sigma_nontrivial}
        if self.failure_witness is not None:
            out["failure_witness"] = self.failure_witness
        if self.vectorial_dual is not None:
            out["vectorial_dual"] = self.vectorial_dual.values.tolist()
        return out


def _closed_under_addition(tables: list[np.ndarray], p: int) -> bool:
    keys = {t.tobytes() for t in tables}
    keys.add(np.zeros_like(tables[0]).tobytes())
    for a, b in itertools.combinations_with_replacement(tables, 2):
        if ((a + b) % p).tobytes() not in keys:
            return False
    return True


def check_condition_A(F: VectorialFunction, check_dual_bent: bool = True) -> ConditionAReport:
    dom, cod = F.domain, F.codomain
    p, n, s = dom.p, F.n, F.s
    if n % 2 or 2 * s > n:
        raise DimensionViolation(f"Condition A needs n even and s <= n/2 (n={n}, s={s})")
    duals = {}
    eps = None
    kinds = {}
    for c in range(1, cod.size):
        cl = classify(component(F, c))
        kinds[c] = cl.kind.value
        if not cl.is_bent:
            return ConditionAReport(False, reason="component not bent",
                                    failure_witness={"c": c, "a": cl.witness},
                                    component_kinds=kinds)
        if not cl.is_weakly_regular:
            return ConditionAReport(False, reason="component not weakly regular",
                                    failure_witness={"c": c, "a": cl.witness},
                                    component_kinds=kinds)
        if eps is None:
            eps = cl.eps
        elif cl.eps != eps:
            return ConditionAReport(False, reason="components have different eps",
                                    failure_witness={"c": c, "eps": cl.eps, "expected": eps},
                                    component_kinds=kinds)
        duals[c] = cl.dual.values
    # <c, G(x)> = coords(c) . Gram . coords(G(x)); on unit vectors c = e_k this
    # gives Gram @ coords(G(x)) = (dual_{e_k}(x))_k
    gram_inv = inv_mod(cod.gram, p)
    rhs = np.stack([duals[int(w)] for w in cod.weights], axis=1)
    g_coords = (rhs @ gram_inv.T) % p
    G = VectorialFunction(dom, cod, cod.from_coords(g_coords))
    for c in range(1, cod.size):
        got = cod.inner_with(c)[G.values]
        bad = np.nonzero(got != duals[c])[0]
        if bad.size:
            sigma = _closed_under_addition(list(duals.values()), p)
            return ConditionAReport(
                False, eps=eps, reason="component duals are not the components of one function",
                failure_witness={"c": c, "x": int(bad[0])}, sigma_nontrivial=sigma,
                component_kinds=kinds)
    if check_dual_bent and not is_vectorial_bent(G):
        return ConditionAReport(False, eps=eps, reason="vectorial dual is not vectorial bent",
                                component_kinds=kinds)
    return ConditionAReport(True, eps=eps, vectorial_dual=G, component_kinds=kinds)


def _require_A(F: VectorialFunction) -> ConditionAReport:
    rep = check_condition_A(F)
    if not rep.holds:
        raise ConditionAFailed(rep.reason, witness=rep.failure_witness)
    return rep


# --- fibre character sums ---------------------------------------------------------------------

def fiber_char_sums(F: VectorialFunction) -> np.ndarray:
    """(p^s, p^n, p-1) array of reduced chi_u(D_{F,i})."""
    dom = F.domain
    out = np.empty((F.codomain.size, dom.size, dom.p - 1), dtype=np.int64)
    for i in range(F.codomain.size):
        out[i] = reduce_cyc(dom.char_sums(np.nonzero(F.values == i)[0]))
    return out


def lemma1_forward_check(F: VectorialFunction, seed: int = 0) -> bool:
    """Character sums of every D_{F,I} against the two-valued closed form."""
    rep = _require_A(F)
    dom, cod = F.domain, F.codomain
    p, n, s, eps = dom.p, F.n, F.s, rep.eps
    # W_i = {x : F*(-x) = i}
    w_label = rep.vectorial_dual.values[dom.neg(np.arange(dom.size))]
    chis = fiber_char_sums(F)
    # all chi values must be rational; keep the integer coordinate
    if np.any(chis[:, :, 1:] != 0):
        return False
    chi = chis[:, :, 0]
    delta0 = (np.arange(dom.size) == 0).astype(np.int64)
    big, small = p ** (n - s), p ** (n // 2 - s)
    for mask in nonzero_subsets(cod.size, seed=seed):
        I = np.nonzero(mask)[0]
        lhs = chi[I].sum(axis=0)
        in_w = np.isin(w_label, I).astype(np.int64)
        rhs = big * delta0 * len(I) + eps * small * (p**s * in_w - len(I))
        if not np.array_equal(lhs, rhs):
            return False
    return True


def lemma1_reverse(F: VectorialFunction, W_labels: np.ndarray, eps: int) -> VectorialFunction:
    """From a labelling u -> i (u in W_i) satisfying the closed form, rebuild G with
    G(x) = i iff -x in W_i, and check W_{F_c}(-u) = eps p^(n/2) zeta^(G_c(-u)) for
    every c != 0, with the Walsh values assembled from fibre character sums."""
    dom, cod = F.domain, F.codomain
    p, n = dom.p, F.n
    W_labels = np.asarray(W_labels, dtype=np.int64)
    xs = np.arange(dom.size)
    G = VectorialFunction(dom, cod, W_labels[dom.neg(xs)])
    chis = fiber_char_sums(F)
    half = p ** (n // 2)
    for c in range(1, cod.size):
        ci = cod.inner_with(c)  # <c, i> for every i
        # W_{F_c}(-u) = sum_i zeta^<c,i> chi_u(D_{F,i}); multiply by zeta^k = rotate
        acc = np.zeros((dom.size, p), dtype=np.int64)
        for i in range(cod.size):
            unred = np.concatenate([chis[i], np.zeros((dom.size, 1), dtype=np.int64)], axis=1)
            acc += np.roll(unred, int(ci[i]), axis=1)
        got = reduce_cyc(acc)
        gc = cod.inner_with(c)[G.values][dom.neg(xs)]
        want = np.zeros((dom.size, p), dtype=np.int64)
        want[xs, gc] = eps * half
        if not np.array_equal(got, reduce_cyc(want)):
            raise ConditionAFailed("labelling does not reproduce the Walsh spectrum",
                                   witness={"c": c})
    return G


# --- value distribution ------------------------------------------------------------------

def value_distribution(F: VectorialFunction) -> dict[int, int]:
    p, s = F.domain.p, F.s
    if p == 2 and s == 1:
        raise ConditionAFailed("value distribution is stated for p odd or s >= 2")
    rep = _require_A(F)
    n, eps = F.n, rep.eps
    sizes = np.bincount(F.values, minlength=F.codomain.size)
    f0 = int(F.values[0])
    big, small = p ** (n - s), p ** (n // 2 - s)
    for i, k in enumerate(sizes):
        want = big + eps * small * (p**s - 1) if i == f0 else big - eps * small
        if k != want:
            raise ConditionAFailed(f"|D_F,{i}| = {k}, expected {want}", witness=i)
    return {i: int(k) for i, k in enumerate(sizes)}


def is_fp_invariant(F: VectorialFunction) -> bool:
    """F(ax) = F(x) for every a in F_p^*."""
    xs = np.arange(F.domain.size)
    return all(np.array_equal(F.values[F.domain.scale(a, xs)], F.values)
               for a in range(2, F.domain.p))


__all__ = [
    "ConditionAReport", "VectorialFunction", "check_condition_A", "component",
    "fiber_char_sums", "is_fp_invariant", "is_vectorial_bent", "lemma1_forward_check",
    "lemma1_reverse", "nonzero_subsets", "preimage", "value_distribution",
]
