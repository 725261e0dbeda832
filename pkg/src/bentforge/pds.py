"""Partial difference sets in V_n^(p): brute-force difference counts, character
certification, the closed-form parameters of unions of fibres, and the checks
tying them to Condition A and Condition C."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    BadRegime,
    ConditionAFailed,
    IrrationalCharacterValue,
    PartitionFunctionMismatch,
)
from .partitions import Partition, partition_from_function, satisfies_condition_C
from .spaces import VSpace, cyc_array_abs_sq, reduce_cyc
from .vectorial import VectorialFunction, check_condition_A, fiber_char_sums

DIRECT_LIMIT = 1 << 14
_PAIR_BUDGET = 1 << 22


@dataclass(frozen=True)
class PdsParams:
    v: int
    k: int
    lam: int
    mu: int
    mu_vacuous: bool = False

    @property
    def is_difference_set(self) -> bool:
        return self.lam == self.mu and not self.mu_vacuous

    def counting_identity(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu

    def tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def matches(self, other: PdsParams) -> bool:
        """Equal parameters; mu is ignored when either side has no non-members to count."""
        if (self.v, self.k, self.lam) != (other.v, other.k, other.lam):
            return False
        return self.mu_vacuous or other.mu_vacuous or self.mu == other.mu

    def to_json(self) -> dict:
        return {"v": self.v, "k": self.k, "lambda": self.lam, "mu": self.mu,
                "mu_vacuous": self.mu_vacuous, "difference_set": self.is_difference_set}


@dataclass
class NotPds:
    reason: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"not_pds": self.reason, "witness": self.witness}


def _as_set(D) -> np.ndarray:
    return np.unique(np.asarray(D if isinstance(D, np.ndarray) else list(D), dtype=np.int64))


# --- difference counts ---------------------------------------------------------------------

def diff_count_direct(D, G: VSpace) -> np.ndarray:
    """counts[g] = #{(d1, d2) in D^2 : d1 != d2, d1 - d2 = g} by enumerating pairs."""
    D = _as_set(D)
    counts = np.zeros(G.size, dtype=np.int64)
    if D.size == 0:
        return counts
    cd = G.coords_of(D)
    w = G.weights
    step = max(1, _PAIR_BUDGET // max(1, D.size))
    for lo in range(0, D.size, step):
        diff = (cd[lo:lo + step, None, :] - cd[None, :, :]) % G.p
        counts += np.bincount((diff @ w).ravel(), minlength=G.size)
    counts[0] = 0
    return counts


def diff_count_characters(D, G: VSpace) -> np.ndarray:
    """Same counts through the group algebra: 1_D * 1_{-D} = p^-n sum_u |chi_u(D)|^2 chi_u^{-1}."""
    D = _as_set(D)
    chi = G.char_sums(D)
    sq = cyc_array_abs_sq(chi)
    back = reduce_cyc(G.fourier(sq, sign=-1))
    if np.any(back[:, 1:] != 0):
        raise AssertionError("autocorrelation is not rational")
    total = back[:, 0]
    if np.any(total % G.size):
        raise AssertionError("autocorrelation is not divisible by |G|")
    counts = (total // G.size).astype(np.int64)
    counts[0] = 0
    return counts


def diff_count(D, G: VSpace, method: str = "auto") -> np.ndarray:
    if method == "auto":
        method = "direct" if G.size <= DIRECT_LIMIT else "characters"
    if method == "direct":
        return diff_count_direct(D, G)
    if method == "characters":
        return diff_count_characters(D, G)
    raise ValueError(f"unknown method {method!r}")


def symmetric_witness(D, G: VSpace):
    D = _as_set(D)
    neg = G.neg(D)
    bad = neg[~np.isin(neg, D)]
    return None if bad.size == 0 else int(G.neg(bad[:1])[0])


def is_pds(D, G: VSpace, method: str = "auto"):
    """PdsParams when difference counts are constant on D\\{0} and on G\\(D u {0})."""
    D = _as_set(D)
    w = symmetric_witness(D, G)
    if w is not None:
        return NotPds("-D != D", {"x": w})
    counts = diff_count(D, G, method)
    inD = np.zeros(G.size, dtype=bool)
    inD[D] = True
    inD[0] = False
    outD = ~inD
    outD[0] = False
    lam_vals = np.unique(counts[inD])
    mu_vals = np.unique(counts[outD])
    if lam_vals.size > 1:
        g = int(np.nonzero(inD & (counts != lam_vals[0]))[0][0])
        return NotPds("difference count not constant on D", {"g": g, "counts": lam_vals[:2].tolist()})
    if mu_vals.size > 1:
        g = int(np.nonzero(outD & (counts != mu_vals[0]))[0][0])
        return NotPds("difference count not constant off D", {"g": g, "counts": mu_vals[:2].tolist()})
    lam = int(lam_vals[0]) if lam_vals.size else 0
    vacuous = mu_vals.size == 0
    mu = 0 if vacuous else int(mu_vals[0])
    return PdsParams(G.size, int(D.size), lam, mu, vacuous)


def pds_via_characters(D, G: VSpace, chi: np.ndarray | None = None):
    """Certify through character values (requires -D = D and 0 not in D).

    ``chi`` may pass precomputed reduced character sums of D."""
    D = _as_set(D)
    if D.size and D[0] == 0:
        return NotPds("0 in D", {"x": 0})
    w = symmetric_witness(D, G)
    if w is not None:
        return NotPds("-D != D", {"x": w})
    if chi is None:
        chi = reduce_cyc(G.char_sums(D))
    if np.any(chi[1:, 1:] != 0):
        u = int(np.nonzero(np.any(chi[:, 1:] != 0, axis=1))[0][0])
        raise IrrationalCharacterValue(f"chi_{u}(D) is not rational", witness=u)
    vals = chi[1:, 0]
    distinct = sorted({int(v) for v in np.unique(vals)}, reverse=True)
    v, k = G.size, int(D.size)
    if len(distinct) > 2:
        return NotPds("more than two nonprincipal character values", {"values": distinct[:3]})
    if len(distinct) == 2:
        r1, r2 = distinct
        beta = r1 + r2
        mu = k + r1 * r2
        lam = beta + mu
        out = PdsParams(v, k, lam, mu, v - k - 1 == 0)
    else:
        (r,) = distinct
        if v - k - 1 == 0:
            # D = G \ {0}: every difference lies in D
            out = PdsParams(v, k, k - 1, 0, True)
        else:
            # r^2 = (lam - mu) r + k - mu  and  k^2 - k = lam k + mu (v - k - 1)
            a = [[Fraction(r), Fraction(-(r + 1))], [Fraction(k), Fraction(v - k - 1)]]
            b = [Fraction(r * r - k), Fraction(k * k - k)]
            det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
            if det == 0:
                return NotPds("one character value does not determine (lambda, mu)", {"value": r})
            lam = (b[0] * a[1][1] - a[0][1] * b[1]) / det
            mu = (a[0][0] * b[1] - b[0] * a[1][0]) / det
            if lam.denominator != 1 or mu.denominator != 1 or lam < 0 or mu < 0:
                return NotPds("character value admits no integral parameters", {"value": r})
            out = PdsParams(v, k, int(lam), int(mu))
    if out.lam < 0 or out.mu < 0 or not out.counting_identity():
        return NotPds("derived parameters are inconsistent", {"params": out.tuple()})
    return out


# --- closed forms ---------------------------------------------------------------------------

def expected_params(p: int, n: int, s: int, sizeI: int, eps: int, contains_zero: bool) -> PdsParams:
    """Parameters of D_{F,I} \\ {0} for Condition-A functions (p odd or s >= 2)."""
    if n % 2 or s < 1 or 2 * s > n:
        raise BadRegime("need n even and 1 <= s <= n/2")
    if p == 2 and s == 1:
        raise BadRegime("p = 2, s = 1 gives difference sets, not this family")
    if eps not in (1, -1) or (p == 2 and eps != 1):
        raise BadRegime("eps must be +-1 (and +1 when p = 2)")
    if not 1 <= sizeI <= p**s:
        raise BadRegime(f"|I| must lie in 1..{p**s}")
    I = sizeI
    a, b, c = p ** (n - s), p ** (n - 2 * s), p ** (n // 2 - s)
    if contains_zero:
        k = a * I + eps * c * (p**s - I) - 1
        lam = b * I * I + eps * c * (p**s - I) - 2
        mu = b * I * I + eps * c * I
    else:
        k = a * I - eps * c * I
        lam = b * I * I + eps * c * (p**s - 3 * I)
        mu = b * I * I - eps * c * I
    return PdsParams(p**n, k, lam, mu, p**n - k - 1 == 0)


def boolean_difference_set_params(n: int, sign: int) -> PdsParams:
    """(2^n, 2^(n-1) + sign 2^(n/2-1), 2^(n-2) + sign 2^(n/2-1))."""
    k = 2 ** (n - 1) + sign * 2 ** (n // 2 - 1)
    lam = 2 ** (n - 2) + sign * 2 ** (n // 2 - 1)
    return PdsParams(2**n, k, lam, lam)


def index_sets(size: int, exhaustive_upto: int = 8, samples: int = 64, seed: int = 0) -> list[tuple]:
    """Nonempty subsets of range(size): all of them when size <= exhaustive_upto,
    else singletons, pairs, their complements and seeded random subsets."""
    if size <= exhaustive_upto:
        return [tuple(i for i in range(size) if m >> i & 1) for m in range(1, 1 << size)]
    out = [(i,) for i in range(size)]
    out += [(i, j) for i in range(size) for j in range(i + 1, size)]
    full = set(range(size))
    out += [tuple(sorted(full - set(I))) for I in list(out)]
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        m = rng.random(size) < 0.5
        if m.any():
            out.append(tuple(int(i) for i in np.nonzero(m)[0]))
    seen, uniq = set(), []
    for I in out:
        if I and I not in seen:
            seen.add(I)
            uniq.append(I)
    return uniq


# --- theorem checks -------------------------------------------------------------------------

@dataclass
class PdsCheckEntry:
    I: tuple
    contains_zero: bool
    expected: PdsParams
    brute: object
    characters: object

    @property
    def ok(self) -> bool:
        return (isinstance(self.brute, PdsParams) and isinstance(self.characters, PdsParams)
                and self.brute.matches(self.expected) and self.characters.matches(self.expected)
                and self.brute.counting_identity())

    def to_json(self) -> dict:
        return {"I": list(self.I), "contains_zero": self.contains_zero,
                "expected": self.expected.to_json(), "brute": self.brute.to_json(),
                "characters": self.characters.to_json(), "ok": self.ok}


@dataclass
class PdsReport:
    holds: bool
    eps: int | None
    branch: str
    entries: list = field(default_factory=list)
    method: str = "direct+characters"
    exhaustive: bool = True

    def to_json(self) -> dict:
        return {"holds": self.holds, "eps": self.eps, "branch": self.branch, "method": self.method,
                "exhaustive": self.exhaustive, "entries": [e.to_json() for e in self.entries]}


def _boolean_branch(G: VSpace, sets: dict) -> PdsReport:
    n = G.n
    entries = []
    ok = True
    for name, D in sets.items():
        got = is_pds(D, G)
        want = None
        if isinstance(got, PdsParams):
            for sign in (1, -1):
                cand = boolean_difference_set_params(n, sign)
                if got.tuple() == cand.tuple():
                    want = cand
        good = want is not None
        ok &= good
        entries.append({"set": name, "params": got.to_json(), "ok": good})
    rep = PdsReport(ok, 1, "boolean-difference-set")
    rep.entries = entries
    return rep


def _union_checks(G: VSpace, labels_of_zero: int, fibers: list[np.ndarray], chis: np.ndarray,
                  p: int, n: int, s: int, eps: int, seed: int) -> tuple[list, bool]:
    entries = []
    sets = index_sets(len(fibers), seed=seed)
    for I in sets:
        D = np.sort(np.concatenate([fibers[i] for i in I]))
        contains_zero = labels_of_zero in I
        want = expected_params(p, n, s, len(I), eps, contains_zero)
        Dm = D[D != 0]
        brute = is_pds(Dm, G)
        chi = chis[list(I)].sum(axis=0)
        if contains_zero:
            chi = chi.copy()
            chi[:, 0] -= 1
        try:
            char = pds_via_characters(Dm, G, chi=chi)
        except IrrationalCharacterValue as e:
            char = NotPds(str(e), {"u": e.witness})
        entries.append(PdsCheckEntry(I, contains_zero, want, brute, char))
    return entries, len(fibers) <= 8


def theorem6_check(F: VectorialFunction, seed: int = 0) -> PdsReport:
    rep = check_condition_A(F)
    if not rep.holds:
        raise ConditionAFailed(rep.reason, witness=rep.failure_witness)
    G = F.domain
    p, n, s = G.p, F.n, F.s
    if p == 2 and s == 1:
        return _boolean_branch(G, {"supp": np.nonzero(F.values == 1)[0]})
    fibers = [np.nonzero(F.values == i)[0] for i in range(F.codomain.size)]
    chis = fiber_char_sums(F)
    entries, exhaustive = _union_checks(G, int(F.values[0]), fibers, chis, p, n, s, rep.eps, seed)
    return PdsReport(all(e.ok for e in entries), rep.eps, "partial-difference-sets", entries,
                     exhaustive=exhaustive)


def theorem7_check(Gamma: Partition, F: VectorialFunction, seed: int = 0) -> PdsReport:
    if Gamma != partition_from_function(F):
        raise PartitionFunctionMismatch("partition is not the fibre partition of the function")
    rep = check_condition_A(F)
    if not rep.holds:
        raise ConditionAFailed(rep.reason, witness=rep.failure_witness)
    G = Gamma.space
    p, n, s = G.p, G.n, F.s
    if p == 2 and s == 1:
        out = _boolean_branch(G, {"A_0": Gamma.block(0), "A_1": Gamma.block(1)})
        signs = [e["params"]["k"] > 2 ** (n - 1) for e in out.entries]
        out.holds = out.holds and signs[0] != signs[1]
        return out
    fibers = [Gamma.block(i) for i in range(Gamma.codomain.size)]
    chis = np.stack([reduce_cyc(G.char_sums(b)) for b in fibers])
    zero_label = Gamma.labels[int(Gamma.assignment[0])]
    entries, exhaustive = _union_checks(G, zero_label, fibers, chis, p, n, s, rep.eps, seed)
    return PdsReport(all(e.ok for e in entries), rep.eps, "partial-difference-sets", entries,
                     exhaustive=exhaustive)


@dataclass
class Theorem8Report:
    condition_C: bool
    pds_side: bool
    eps_C: int | None
    eps_pds: int | None

    @property
    def agree(self) -> bool:
        return self.condition_C == self.pds_side and (not self.condition_C or self.eps_C == self.eps_pds)

    def to_json(self) -> dict:
        return {"condition_C": self.condition_C, "pds_side": self.pds_side, "eps_C": self.eps_C,
                "eps_pds": self.eps_pds, "agree": self.agree}


def pds_characterization(Gamma: Partition, seed: int = 0) -> tuple[bool, int | None]:
    """Every union A_I is symmetric and A_I \\ {0} is a PDS with the closed-form
    parameters for one eps in {+1, -1}."""
    G = Gamma.space
    p, n = G.p, G.n
    if Gamma.codomain is not None:
        s = Gamma.codomain.n
    else:
        s = round(math.log(Gamma.K, p)) if Gamma.K > 1 else 0
        if p**s != Gamma.K:
            return False, None
    if n % 2 or s < 1 or 2 * s > n:
        return False, None
    fibers = list(Gamma.blocks)
    zero_label = int(Gamma.assignment[0])
    sets = index_sets(len(fibers), seed=seed)
    results = []
    for I in sets:
        D = np.sort(np.concatenate([fibers[i] for i in I]))
        if symmetric_witness(D, G) is not None:
            return False, None
        results.append((I, is_pds(D[D != 0], G)))
    for eps in (1, -1):
        if p == 2 and eps == -1:
            continue
        if all(isinstance(r, PdsParams)
               and r.matches(expected_params(p, n, s, len(I), eps, zero_label in I))
               for I, r in results):
            return True, eps
    return False, None


def theorem8_check(Gamma: Partition, cap: int | None = 2000, seed: int = 0) -> Theorem8Report:
    if Gamma.space.p == 2:
        raise BadRegime("the characterization is stated for odd p")
    cc = satisfies_condition_C(Gamma, cap=cap, seed=seed)
    ok, eps = pds_characterization(Gamma, seed=seed)
    return Theorem8Report(cc.holds, ok, cc.eps, eps)


def closure_variants(D, G: VSpace) -> dict:
    """PDS status of D u {0}, D \\ {0} and G \\ D."""
    D = _as_set(D)
    everything = np.arange(G.size)
    return {
        "with_zero": is_pds(np.union1d(D, [0]), G),
        "without_zero": is_pds(D[D != 0], G),
        "complement": is_pds(np.setdiff1d(everything, D), G),
    }


__all__ = [
    "NotPds", "PdsParams", "PdsReport", "Theorem8Report", "boolean_difference_set_params",
    "closure_variants", "diff_count", "diff_count_characters", "diff_count_direct",
    "expected_params", "index_sets", "is_pds", "pds_characterization", "pds_via_characters",
    "symmetric_witness", "theorem6_check", "theorem7_check", "theorem8_check",
]
