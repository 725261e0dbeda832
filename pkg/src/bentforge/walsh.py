"""Walsh transforms of p-ary functions, bentness and (weak) regularity."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import MalformedSpectrum, NotWeaklyRegular, OddDimensionOddPrime, SpaceMismatch
from .spaces import CycInt, Point, VSpace, cyc_array_abs_sq, reduce_cyc


class PFunction:
    """A total function V -> F_p stored as a value table in point-index order."""

    def __init__(self, space: VSpace, values):
        values = np.asarray(values, dtype=np.int64)
        if values.shape != (space.size,):
            raise SpaceMismatch(f"table has shape {values.shape}, space has {space.size} points")
        if values.size and (values.min() < 0 or values.max() >= space.p):
            raise ValueError("function values must lie in {0, ..., p-1}")
        values.setflags(write=False)
        self.space = space
        self.values = values

    @classmethod
    def from_callable(cls, space: VSpace, fn) -> PFunction:
        return cls(space, [int(fn(pt)) % space.p for pt in space.points()])

    def __call__(self, x) -> int:
        if isinstance(x, Point):
            x = x.index
        return int(self.values[int(x)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, PFunction) and other.space == self.space
                and np.array_equal(other.values, self.values))

    def __hash__(self) -> int:
        return hash((self.space, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"PFunction({self.space}, values[:8]={self.values[:8].tolist()})"

    def compose_neg(self) -> PFunction:
        """x -> f(-x)."""
        return PFunction(self.space, self.values[self.space.neg(np.arange(self.space.size))])

    def __add__(self, other: PFunction) -> PFunction:
        if other.space != self.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")
        return PFunction(self.space, (self.values + other.values) % self.space.p)

    def to_json(self) -> dict:
        return {"space": self.space.to_json(), "values": self.values.tolist()}

    @staticmethod
    def from_json(obj: dict) -> PFunction:
        return PFunction(VSpace.from_json(obj["space"]), obj["values"])


class BentKind(str, enum.Enum):
    NOT_BENT = "NotBent"
    REGULAR = "RegularBent"
    WEAKLY_REGULAR = "WeaklyRegularNotRegular"
    NON_WEAKLY_REGULAR = "NonWeaklyRegularBent"


@dataclass
class BentClassification:
    kind: BentKind
    eps: int | None = None
    dual: PFunction | None = None
    # per-point sign u(a) of W_f(a) = u(a) p^(n/2) zeta^(f*(a)), when bent
    signs: np.ndarray | None = field(default=None, repr=False)
    witness: int | None = None

    @property
    def is_bent(self) -> bool:
        return self.kind != BentKind.NOT_BENT

    @property
    def is_weakly_regular(self) -> bool:
        return self.kind in (BentKind.REGULAR, BentKind.WEAKLY_REGULAR)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "eps": self.eps}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.dual is not None:
            out["dual"] = self.dual.values.tolist()
        return out


def _unit_table(f: PFunction) -> np.ndarray:
    """(N, p) unreduced table of zeta^f(x)."""
    p = f.space.p
    arr = np.zeros((f.space.size, p), dtype=np.int64)
    arr[np.arange(f.space.size), f.values] = 1
    return arr


class WalshSpectrum:
    """All values W_f(a), kept as an (N, p) array of unreduced Z[zeta_p] coefficients."""

    def __init__(self, f: PFunction, table: np.ndarray):
        self.function = f
        self.space = f.space
        self.table = table

    def __len__(self) -> int:
        return self.space.size

    def __getitem__(self, a) -> CycInt:
        if isinstance(a, Point):
            a = a.index
        return CycInt.from_unreduced(self.space.p, self.table[int(a)].tolist())

    @cached_property
    def reduced(self) -> np.ndarray:
        return reduce_cyc(self.table)

    @cached_property
    def abs_sq(self) -> np.ndarray:
        """|W_f(a)|^2 per point; entries where it is not rational are set to -1."""
        auto = cyc_array_abs_sq(self.table)
        red = reduce_cyc(auto)
        rational = np.all(red[:, 1:] == 0, axis=1)
        return np.where(rational, red[:, 0], -1)

    def parseval(self) -> int:
        return int(np.sum(self.abs_sq.astype(object)))

    @cached_property
    def classification(self) -> BentClassification:
        return _classify_spectrum(self)

    def to_json(self) -> dict:
        return {"values": self.reduced.tolist(), "abs_sq": self.abs_sq.tolist(),
                "classification": self.classification.to_json()}


def walsh_at(f: PFunction, a) -> CycInt:
    """W_f(a) = sum_x zeta^(f(x) - <a, x>), by direct summation."""
    space = f.space
    if isinstance(a, Point):
        if a.space != space:
            raise SpaceMismatch(f"{a.space} vs {space}")
        a = a.index
    ip = space.inner_with(int(a))
    counts = np.bincount((f.values - ip) % space.p, minlength=space.p)
    return CycInt.from_unreduced(space.p, counts.tolist())


def spectrum(f: PFunction) -> WalshSpectrum:
    return WalshSpectrum(f, f.space.fourier(_unit_table(f), sign=-1))


def _classify_spectrum(spec: WalshSpectrum) -> BentClassification:
    space = spec.space
    p, n = space.p, space.n
    if p != 2 and n % 2:
        raise OddDimensionOddPrime(f"classification needs even n for odd p (p={p}, n={n})")
    target = p**n
    bad = np.nonzero(spec.abs_sq != target)[0]
    if bad.size:
        return BentClassification(BentKind.NOT_BENT, witness=int(bad[0]))
    r = spec.reduced
    if p == 2:
        # n is even here since 2^n is a square; every Boolean bent function is regular
        dual_vals = (r[:, 0] < 0).astype(np.int64)
        signs = np.ones(space.size, dtype=np.int64)
    else:
        m = p ** (n // 2)
        nz = r != 0
        cnt = nz.sum(axis=1)
        single = cnt == 1
        j_single = np.argmax(nz, axis=1)
        v_single = r[np.arange(space.size), j_single]
        # u * m * zeta^(p-1) = -u*m*(1 + ... + zeta^(p-2))
        all_eq = (cnt == p - 1) & np.all(r == r[:, :1], axis=1)
        ok = (single & (np.abs(v_single) == m)) | (all_eq & (np.abs(r[:, 0]) == m))
        if not ok.all():
            a = int(np.nonzero(~ok)[0][0])
            raise MalformedSpectrum(f"W_f({a}) is not +-p^(n/2) times a root of unity",
                                    witness=a)
        dual_vals = np.where(single, j_single, p - 1).astype(np.int64)
        signs = np.where(single, np.sign(v_single), -np.sign(r[:, 0])).astype(np.int64)
    dual = PFunction(space, dual_vals)
    if np.all(signs == 1):
        return BentClassification(BentKind.REGULAR, 1, dual, signs)
    if np.all(signs == -1):
        return BentClassification(BentKind.WEAKLY_REGULAR, -1, dual, signs)
    return BentClassification(BentKind.NON_WEAKLY_REGULAR, None, dual, signs,
                              witness=int(np.nonzero(signs != signs[0])[0][0]))


def classify(f: PFunction) -> BentClassification:
    return spectrum(f).classification


def is_bent(f: PFunction) -> bool:
    space = f.space
    if space.p != 2 and space.n % 2:
        return bool(np.all(spectrum(f).abs_sq == space.p**space.n))
    return classify(f).is_bent


def dual(f: PFunction) -> PFunction:
    c = classify(f)
    if not c.is_weakly_regular:
        raise NotWeaklyRegular(f"function is {c.kind.value}", witness=c.witness)
    return c.dual


def is_l_form(f: PFunction, l: int) -> bool:
    space = f.space
    p = space.p
    if not 1 <= l <= p - 1:
        raise ValueError(f"l must lie in 1..{p - 1}")
    xs = np.arange(space.size)
    for a in range(2, p):
        if not np.array_equal(f.values[space.scale(a, xs)], (pow(a, l, p) * f.values) % p):
            return False
    return True
