"""Partitions of V_n^(p): bent partitions, Condition C, normal-partition size
obstruction, and the correspondence with vectorial functions."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPartition, NotDivisible, SpaceMismatch
from .spaces import VSpace
from .vectorial import VectorialFunction
from .walsh import PFunction, WalshSpectrum

DEFAULT_ASSIGNMENT_CAP = 2000


class Partition:
    """Indexed family of disjoint point sets covering ``space``.

    Blocks are labelled either by codomain points (``codomain`` given, labels are
    indices of V_s) or by arbitrary hashable labels."""

    def __init__(self, space: VSpace, blocks, codomain: VSpace | None = None,
                 allow_empty: bool = False):
        if isinstance(blocks, dict):
            items = list(blocks.items())
        else:
            items = list(enumerate(blocks))
        labels = [k for k, _ in items]
        arrays = [np.unique(np.asarray(list(b) if not isinstance(b, np.ndarray) else b,
                                       dtype=np.int64)) for _, b in items]
        if len(set(labels)) != len(labels):
            raise InvalidPartition("duplicate block labels")
        assign = np.full(space.size, -1, dtype=np.int64)
        for j, b in enumerate(arrays):
            if b.size == 0 and not allow_empty:
                raise InvalidPartition(f"block {labels[j]!r} is empty", witness=labels[j])
            if b.size and (b[0] < 0 or b[-1] >= space.size):
                raise SpaceMismatch(f"block {labels[j]!r} leaves the space")
            clash = b[assign[b] >= 0]
            if clash.size:
                raise InvalidPartition(f"point {int(clash[0])} lies in two blocks",
                                       witness=int(clash[0]))
            assign[b] = j
        missing = np.nonzero(assign < 0)[0]
        if missing.size:
            raise InvalidPartition(f"point {int(missing[0])} is not covered", witness=int(missing[0]))
        if codomain is not None:
            if codomain.p != space.p:
                raise SpaceMismatch("codomain characteristic differs")
            if sorted(labels) != list(range(codomain.size)):
                raise InvalidPartition("V_s-indexed partitions need one block per codomain point")
        self.space = space
        self.codomain = codomain
        self.labels = labels
        self.blocks = arrays
        self.assignment = assign

    @classmethod
    def from_assignment(cls, space: VSpace, assignment, labels=None, codomain=None,
                        allow_empty=False) -> Partition:
        assignment = np.asarray(assignment, dtype=np.int64)
        if labels is None:
            labels = list(range(int(assignment.max()) + 1)) if codomain is None else list(
                range(codomain.size))
        order = np.argsort(assignment, kind="stable")
        bounds = np.searchsorted(assignment[order], np.arange(len(labels) + 1))
        blocks = {lab: order[bounds[j]:bounds[j + 1]] for j, lab in enumerate(labels)}
        return cls(space, blocks, codomain=codomain, allow_empty=allow_empty)

    @property
    def K(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [int(b.size) for b in self.blocks]

    def block(self, label) -> np.ndarray:
        return self.blocks[self.labels.index(label)]

    def union(self, labels) -> np.ndarray:
        return np.sort(np.concatenate([self.block(l) for l in labels]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition) or other.space != self.space:
            return False
        mine = {lab: b.tobytes() for lab, b in zip(self.labels, self.blocks)}
        theirs = {lab: b.tobytes() for lab, b in zip(other.labels, other.blocks)}
        return mine == theirs

    def same_blocks(self, other: Partition) -> bool:
        """Equal as unlabelled set families."""
        return (other.space == self.space
                and sorted(b.tobytes() for b in self.blocks) == sorted(b.tobytes() for b in other.blocks))

    def __repr__(self) -> str:
        return f"Partition({self.space}, K={self.K}, sizes={self.sizes})"

    def to_json(self) -> dict:
        out = {"space": self.space.to_json(),
               "index": "V_s" if self.codomain is not None else "labels",
               "blocks": {str(lab): b.tolist() for lab, b in zip(self.labels, self.blocks)}}
        if self.codomain is not None:
            out["codomain"] = self.codomain.to_json()
        return out

    @staticmethod
    def from_json(obj: dict) -> Partition:
        space = VSpace.from_json(obj["space"])
        codomain = VSpace.from_json(obj["codomain"]) if obj.get("index") == "V_s" else None
        blocks = {(int(k) if codomain is not None else k): v for k, v in obj["blocks"].items()}
        return Partition(space, blocks, codomain=codomain, allow_empty=True)


# --- balanced assignments ---------------------------------------------------------------

def count_balanced(K: int, p: int) -> int:
    if K % p:
        raise NotDivisible(f"{p} does not divide {K}")
    return math.factorial(K) // math.factorial(K // p) ** p


def _multiset_perms(counts: list[int], K: int):
    """Distinct arrangements of a multiset in lexicographic order."""
    out = [0] * K

    def rec(pos):
        if pos == K:
            yield tuple(out)
            return
        for v, c in enumerate(counts):
            if c:
                counts[v] -= 1
                out[pos] = v
                yield from rec(pos + 1)
                counts[v] += 1

    yield from rec(0)


def balanced_assignments(K: int, p: int, cap: int | None = None, seed: int = 0):
    """Surjections blocks -> F_p with K/p blocks per value.

    All of them in lexicographic order when their number is at most ``cap``
    (default: unlimited); otherwise ``cap`` seeded uniform samples."""
    total = count_balanced(K, p)
    if cap is None or total <= cap:
        yield from _multiset_perms([K // p] * p, K)
        return
    rng = np.random.default_rng(seed)
    base = np.repeat(np.arange(p), K // p)
    for _ in range(cap):
        yield tuple(int(v) for v in rng.permutation(base))


# --- bent partitions ----------------------------------------------------------------------

@dataclass
class BentPartitionReport:
    is_bent_partition: bool
    eps_set: Counter = field(default_factory=Counter)
    functions_tested: int = 0
    total_assignments: int = 0
    sampled: bool = False
    cap: int | None = None
    seed: int = 0
    witness: dict | None = None

    @property
    def uniform_eps(self) -> int | None:
        keys = [k for k in self.eps_set if self.eps_set[k]]
        return keys[0] if len(keys) == 1 and keys[0] in (1, -1) else None

    def to_json(self) -> dict:
        return {"is_bent_partition": self.is_bent_partition,
                "eps_set": {str(k): v for k, v in sorted(self.eps_set.items(), key=str)},
                "functions_tested": self.functions_tested,
                "total_assignments": self.total_assignments, "sampled": self.sampled,
                "cap": self.cap, "seed": self.seed, "witness": self.witness}


def _block_transforms(space: VSpace, blocks) -> list[np.ndarray]:
    """B_j(a) = sum_{x in A_j} zeta^(-<a, x>) as (N, p) unreduced tables."""
    return [space.fourier(space.indicator(b), sign=-1) for b in blocks]


def _spectrum_from_blocks(trans, values, p) -> np.ndarray:
    acc = np.zeros_like(trans[0])
    for B, v in zip(trans, values):
        acc += np.roll(B, int(v), axis=1) if v else B
    return acc


def is_bent_partition(G: Partition, cap: int | None = DEFAULT_ASSIGNMENT_CAP,
                      seed: int = 0) -> BentPartitionReport:
    """Every balanced assignment of blocks to F_p gives a bent function."""
    space = G.space
    p, K = space.p, G.K
    total = count_balanced(K, p)
    sampled = cap is not None and total > cap
    trans = _block_transforms(space, G.blocks)
    eps = Counter()
    tested = 0
    for a in balanced_assignments(K, p, cap=cap, seed=seed):
        values = np.asarray(a, dtype=np.int64)
        f = PFunction(space, values[G.assignment])
        spec = WalshSpectrum(f, _spectrum_from_blocks(trans, values, p))
        tested += 1
        if p != 2 and space.n % 2:
            ok = bool(np.all(spec.abs_sq == p**space.n))
            if not ok:
                return BentPartitionReport(False, eps, tested, total, sampled, cap, seed,
                                           witness={"assignment": list(a)})
            eps[None] += 1
            continue
        cl = spec.classification
        if not cl.is_bent:
            return BentPartitionReport(False, eps, tested, total, sampled, cap, seed,
                                       witness={"assignment": list(a), "point": cl.witness})
        eps[cl.eps] += 1
    return BentPartitionReport(True, eps, tested, total, sampled, cap, seed)


def is_normal_bent_partition(space: VSpace, U, blocks, cap: int | None = DEFAULT_ASSIGNMENT_CAP,
                             seed: int = 0) -> BentPartitionReport:
    """Direct check of a user-supplied split {U, A_1, ..., A_K}: every balanced
    assignment of the A_j together with every constant on U gives a bent function."""
    G = Partition(space, [U] + list(blocks))
    p, K = space.p, len(blocks)
    total = count_balanced(K, p) * p
    sampled = cap is not None and total // p > cap
    trans = _block_transforms(space, G.blocks)
    eps = Counter()
    tested = 0
    for a in balanced_assignments(K, p, cap=cap, seed=seed):
        for c0 in range(p):
            values = np.asarray((c0,) + a, dtype=np.int64)
            f = PFunction(space, values[G.assignment])
            cl = WalshSpectrum(f, _spectrum_from_blocks(trans, values, p)).classification
            tested += 1
            if not cl.is_bent:
                return BentPartitionReport(False, eps, tested, total, sampled, cap, seed,
                                           witness={"assignment": list(a), "c0": c0})
            eps[cl.eps] += 1
    return BentPartitionReport(True, eps, tested, total, sampled, cap, seed)


# --- Condition C -------------------------------------------------------------------------------

@dataclass
class ConditionCReport:
    holds: bool
    eps: int | None
    reason: str = ""
    witness: dict | None = None
    bent_report: BentPartitionReport | None = None

    def __iter__(self):
        # allows ``ok, eps = satisfies_condition_C(G)``
        return iter((self.holds, self.eps))

    def to_json(self) -> dict:
        return {"holds": self.holds, "eps": self.eps, "reason": self.reason,
                "witness": self.witness,
                "bent_report": self.bent_report.to_json() if self.bent_report else None}


def invariance_witness(G: Partition):
    """(label, a) with a*A != A for some block, else None."""
    space = G.space
    for lab, b in zip(G.labels, G.blocks):
        for a in range(2, space.p):
            if not np.array_equal(np.sort(space.scale(a, b)), b):
                return lab, a
    return None


def satisfies_condition_C(G: Partition, cap: int | None = DEFAULT_ASSIGNMENT_CAP,
                          seed: int = 0) -> ConditionCReport:
    w = invariance_witness(G)
    if w is not None:
        return ConditionCReport(False, None, "block not invariant under F_p^*",
                                {"block": w[0], "scalar": w[1]})
    rep = is_bent_partition(G, cap=cap, seed=seed)
    if not rep.is_bent_partition:
        return ConditionCReport(False, None, "not a bent partition", rep.witness, rep)
    eps = rep.uniform_eps
    if eps is None:
        return ConditionCReport(False, None, "constructed bent functions do not share one eps",
                                {"eps_set": dict(rep.eps_set)}, rep)
    return ConditionCReport(True, eps, bent_report=rep)


# --- partitions <-> functions ------------------------------------------------------------------

def partition_from_function(F: VectorialFunction) -> Partition:
    return Partition.from_assignment(F.domain, F.values, codomain=F.codomain, allow_empty=True)


def function_from_partition(G: Partition) -> VectorialFunction:
    if G.codomain is None:
        raise InvalidPartition("blocks must be indexed by a space V_s")
    labels = np.asarray(G.labels, dtype=np.int64)
    return VectorialFunction(G.space, G.codomain, labels[G.assignment])


# --- normal bent partitions ------------------------------------------------------------------

@dataclass
class PossiblyNormalDerived:
    block: object
    target: int

    def to_json(self) -> dict:
        return {"result": "PossiblyNormalDerived", "block": self.block, "target": self.target}


@dataclass
class NotFromNormal:
    witness: dict

    def to_json(self) -> dict:
        return {"result": "NotFromNormal", "witness": self.witness}


def normal_size_obstruction(G: Partition):
    """Can the block sizes come from a normal bent partition {U, A_1, ..., A_K}?

    That needs |U| = p^(n/2), K blocks of size (p^n - p^(n/2))/K, and U carved
    out of exactly one block."""
    space = G.space
    p, n, K = space.p, space.n, G.K
    sizes = G.sizes
    if n % 2:
        return NotFromNormal({"reason": "odd dimension", "sizes": sizes})
    h = p ** (n // 2)
    if (p**n - h) % K:
        return NotFromNormal({"reason": "(p^n - p^(n/2)) not divisible by K", "sizes": sizes})
    target = (p**n - h) // K
    for j, sz in enumerate(sizes):
        others = sizes[:j] + sizes[j + 1:]
        if sz == target + h and all(o == target for o in others):
            return PossiblyNormalDerived(G.labels[j], target)
    return NotFromNormal({"sizes": sizes, "target": target, "U_size": h})


__all__ = [
    "BentPartitionReport", "ConditionCReport", "NotFromNormal", "Partition", "PossiblyNormalDerived",
    "balanced_assignments", "count_balanced", "function_from_partition", "invariance_witness",
    "is_bent_partition", "is_normal_bent_partition", "normal_size_obstruction",
    "partition_from_function", "satisfies_condition_C",
]
