"""Vector spaces V_n^(p) built from field components, and exact arithmetic in Z[zeta_p].

A :class:`VSpace` is a product of fields GF(p^{n_1}) x ... x GF(p^{n_m}); an F_p^k
factor is k parts of degree 1. The inner product is the sum over parts of
Tr_1^{n_i}(a_i b_i). Points are integers: part indices combined in mixed radix
with the first part most significant.

Cyclotomic integers come in two shapes. :class:`CycInt` is a scalar in the
reduced basis 1, zeta, ..., zeta^(p-2). Bulk computations use numpy arrays of
shape (N, p) holding *unreduced* coefficients of zeta^0..zeta^(p-1); the
functions ``reduce_cyc``/``cyc_array_*`` convert and compare them.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import PrimeMismatch, SpaceMismatch
from .galois import GF, Field, FieldElement

# int64 is used while every intermediate provably stays below this bound
_INT64_SAFE = 1 << 62


# --- cyclotomic integers -----------------------------------------------------

@dataclass(frozen=True)
class CycInt:
    """sum_{i<p-1} coords[i] * zeta_p^i."""

    p: int
    coords: tuple[int, ...]

    @classmethod
    def from_unreduced(cls, p: int, coeffs: Sequence[int]) -> CycInt:
        c = [int(x) for x in coeffs]
        c += [0] * (p - len(c))
        # fold exponents >= p, then eliminate zeta^(p-1)
        full = [0] * p
        for i, v in enumerate(c):
            full[i % p] += v
        last = full[p - 1]
        return cls(p, tuple(full[i] - last for i in range(p - 1)))

    @classmethod
    def integer(cls, p: int, k: int) -> CycInt:
        return cls(p, (int(k),) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CycInt:
        c = [0] * p
        c[k % p] = 1
        return cls.from_unreduced(p, c)

    def unreduced(self) -> list[int]:
        return list(self.coords) + [0]

    def _same(self, other: CycInt):
        if not isinstance(other, CycInt):
            raise TypeError(f"expected CycInt, got {type(other).__name__}")
        if other.p != self.p:
            raise PrimeMismatch(f"Z[zeta_{self.p}] vs Z[zeta_{other.p}]")

    def __add__(self, other) -> CycInt:
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        self._same(other)
        return CycInt(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other) -> CycInt:
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        return self + (-other)

    def __mul__(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt(self.p, tuple(a * other for a in self.coords))
        self._same(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    out[(i + j) % p] += a * b
        return CycInt.from_unreduced(p, out)

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        """zeta -> zeta^(p-1)."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coords):
            out[(-i) % p] += a
        return CycInt.from_unreduced(p, out)

    def rotate(self, k: int) -> CycInt:
        """self * zeta^k."""
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coords):
            out[(i + k) % p] += a
        return CycInt.from_unreduced(p, out)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coords[0]

    def as_unit_multiple(self) -> tuple[int, int] | None:
        """(m, j) with self == m * zeta^j and m a rational integer, else None.

        j is the least such exponent; only 0 has more than one representation
        (and for p = 2, where m * zeta = -m)."""
        for j in range(self.p):
            r = self.rotate(-j)
            if r.is_rational():
                return r.coords[0], j
        return None

    def __complex__(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(a * w**i for i, a in enumerate(self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def to_json(self) -> list[int]:
        return list(self.coords)


class NotRational:
    """Returned by :func:`abs_sq` when |z|^2 is not a rational integer."""

    def __init__(self, value: CycInt):
        self.value = value

    def __repr__(self) -> str:
        return f"NotRational({self.value.coords})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NotRational) and other.value == self.value


def cyc_add(z: CycInt, w: CycInt) -> CycInt:
    return z + w


def cyc_mul(z: CycInt, w: CycInt) -> CycInt:
    return z * w


def cyc_conj(z: CycInt) -> CycInt:
    return z.conj()


def abs_sq(z: CycInt) -> int | NotRational:
    prod = z * z.conj()
    if prod.is_rational():
        return prod.coords[0]
    return NotRational(prod)


# --- bulk cyclotomic arrays ----------------------------------------------------

def reduce_cyc(arr: np.ndarray) -> np.ndarray:
    """(N, p) unreduced -> (N, p-1) reduced coordinates."""
    return arr[..., :-1] - arr[..., -1:]


def cyc_array_abs_sq(arr: np.ndarray) -> np.ndarray:
    """|z|^2 for every row of an (N, p) unreduced array, as (N, p) unreduced.

    Row k of the result holds the cyclic autocorrelation sum_i c_i c_{i+k}."""
    p = arr.shape[-1]
    out = np.empty_like(arr)
    for k in range(p):
        out[..., k] = np.sum(arr * np.roll(arr, -k, axis=-1), axis=-1)
    return out


def cyc_array_rational(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rationality mask and integer values of an unreduced (N, p) array."""
    red = reduce_cyc(arr)
    mask = np.all(red[..., 1:] == 0, axis=-1)
    return mask, red[..., 0]


def cyc_array_to_list(arr: np.ndarray) -> list[CycInt]:
    p = arr.shape[-1]
    red = reduce_cyc(arr)
    return [CycInt(p, tuple(int(v) for v in row)) for row in red]


# --- spaces ------------------------------------------------------------------------

class VSpace:
    """Product of finite fields over a common prime, with the trace inner product."""

    def __init__(self, fields: Sequence[Field]):
        fields = tuple(fields)
        if not fields:
            raise ValueError("a space needs at least one part")
        p = fields[0].p
        if any(f.p != p for f in fields):
            raise PrimeMismatch("all parts must share the characteristic")
        self.fields = fields
        self.p = p
        self.parts = tuple(f.n for f in fields)
        self.n = sum(self.parts)
        self.size = p**self.n

    @classmethod
    def of(cls, p: int, parts: Iterable[int]) -> VSpace:
        """Space with default-modulus fields of the given degrees."""
        return cls([GF(p, k) for k in parts])

    @classmethod
    def prime_tuples(cls, p: int, n: int) -> VSpace:
        return cls.of(p, [1] * n)

    def __repr__(self) -> str:
        return f"VSpace(p={self.p}, parts={list(self.parts)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, VSpace) and self.fields == other.fields

    def __hash__(self) -> int:
        return hash(self.fields)

    def __len__(self) -> int:
        return self.size

    def __mul__(self, other: VSpace) -> VSpace:
        if other.p != self.p:
            raise PrimeMismatch("cannot multiply spaces of different characteristic")
        return VSpace(self.fields + other.fields)

    def to_json(self) -> dict:
        return {"p": self.p, "parts": list(self.parts),
                "moduli": [list(f.modulus) for f in self.fields]}

    @staticmethod
    def from_json(obj: dict) -> VSpace:
        from .galois import field_new

        moduli = obj.get("moduli") or [None] * len(obj["parts"])
        return VSpace([field_new(obj["p"], k, m) for k, m in zip(obj["parts"], moduli)])

    # -- indexing -------------------------------------------------------------------
    @cached_property
    def _radix(self) -> tuple[int, ...]:
        """Multiplier of each part's index inside the global index."""
        out = []
        acc = 1
        for f in reversed(self.fields):
            out.append(acc)
            acc *= f.q
        return tuple(reversed(out))

    def split(self, idx) -> list[np.ndarray]:
        """Global indices -> one index array per part."""
        idx = np.asarray(idx, dtype=np.int64)
        return [(idx // r) % f.q for f, r in zip(self.fields, self._radix)]

    def join(self, comps: Sequence) -> np.ndarray:
        out = 0
        for c, r in zip(comps, self._radix):
            out = out + np.asarray(c, dtype=np.int64) * r
        return np.asarray(out, dtype=np.int64)

    @cached_property
    def weights(self) -> np.ndarray:
        """Index weight of each coordinate (coordinates: parts' coefficients, ascending)."""
        w = []
        for f, r in zip(self.fields, self._radix):
            w.extend(int(x) * r for x in f.weights)
        return np.array(w, dtype=np.int64)

    @cached_property
    def coords(self) -> np.ndarray:
        """(size, n) coordinate matrix of all points."""
        idx = np.arange(self.size, dtype=np.int64)
        return ((idx[:, None] // self.weights[None, :]) % self.p).astype(np.int64)

    def coords_of(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self.weights) % self.p

    def from_coords(self, c) -> np.ndarray:
        return (np.asarray(c, dtype=np.int64) % self.p) @ self.weights

    # -- group structure on index arrays --------------------------------------------
    def add(self, a, b) -> np.ndarray:
        return self.from_coords(self.coords_of(a) + self.coords_of(b))

    def sub(self, a, b) -> np.ndarray:
        return self.from_coords(self.coords_of(a) - self.coords_of(b))

    def neg(self, a) -> np.ndarray:
        return self.from_coords(-self.coords_of(a))

    def scale(self, c: int, a) -> np.ndarray:
        return self.from_coords(c * self.coords_of(a))

    # -- points ---------------------------------------------------------------------------
    def point(self, idx: int) -> Point:
        comps = [int(c) for c in self.split(idx)]
        return Point(self, tuple(f.element(c) for f, c in zip(self.fields, comps)))

    def points(self):
        for i in range(self.size):
            yield self.point(i)

    def index(self, pt: Point) -> int:
        if pt.space != self:
            raise SpaceMismatch(f"{pt.space} vs {self}")
        return int(self.join([c.index for c in pt.components]))

    def zero(self) -> Point:
        return self.point(0)

    # -- inner product ---------------------------------------------------------------------
    @cached_property
    def gram(self) -> np.ndarray:
        """Block-diagonal Gram matrix of <.,.> in coordinates."""
        g = np.zeros((self.n, self.n), dtype=np.int64)
        off = 0
        for f in self.fields:
            g[off:off + f.n, off:off + f.n] = f.trace_form
            off += f.n
        return g

    def inner_with(self, u) -> np.ndarray:
        """<u, x> for every point x (u a single index)."""
        cu = self.coords_of(int(u))
        return (self.coords @ ((self.gram @ cu) % self.p)) % self.p

    def inner_idx(self, a, b) -> np.ndarray:
        """Elementwise <a_i, b_i> on index arrays."""
        ca = self.coords_of(a)
        cb = self.coords_of(b)
        return np.einsum("...i,ij,...j->...", ca, self.gram, cb) % self.p

    @cached_property
    def dual_perm(self) -> np.ndarray:
        """perm[u] = index of the coordinate vector G u, so <u,x> = coords(perm[u]) . coords(x)."""
        return self.from_coords(self.coords @ self.gram.T)

    # -- Fourier transform over Z[zeta_p] --------------------------------------------------
    def fourier(self, arr: np.ndarray, sign: int = 1) -> np.ndarray:
        """out[u] = sum_x arr[x] * zeta^(sign * <u, x>) on (size, p) unreduced arrays.

        Separable p-point DFT along each coordinate axis (O(n p^(n+2)) integer
        additions); every twiddle factor is a power of zeta, i.e. a cyclic shift
        of the coefficient axis, so the result is exact."""
        p, n = self.p, self.n
        arr = np.asarray(arr)
        if arr.shape != (self.size, p):
            raise SpaceMismatch(f"expected shape {(self.size, p)}, got {arr.shape}")
        total = int(np.abs(arr).sum())
        dtype = np.int64 if total < _INT64_SAFE else object
        a = arr.astype(dtype)
        a = a.reshape((p,) * n + (p,))
        for ax in range(n):
            out = np.zeros_like(a)
            for j in range(p):
                src = np.take(a, j, axis=ax)
                for t in range(p):
                    shift = (sign * t * j) % p
                    idx = [slice(None)] * (n + 1)
                    idx[ax] = t
                    out[tuple(idx)] += np.roll(src, shift, axis=-1)
            a = out
        # C-order flattening of the digit axes reproduces the point index, so
        # flat[v] = sum_x arr[x] zeta^(sign * coords(v).coords(x))
        flat = a.reshape(self.size, p)
        return flat[self.dual_perm]

    def indicator(self, A) -> np.ndarray:
        arr = np.zeros((self.size, self.p), dtype=np.int64)
        arr[np.asarray(A, dtype=np.int64), 0] = 1
        return arr

    def char_sums(self, A) -> np.ndarray:
        """chi_u(A) for every u as an (size, p) unreduced array."""
        return self.fourier(self.indicator(A), sign=1)


@dataclass(frozen=True)
class Point:
    space: VSpace
    components: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.components) != len(self.space.fields) or any(
                c.field != f for c, f in zip(self.components, self.space.fields)):
            raise SpaceMismatch("point components do not match the space's parts")

    @property
    def index(self) -> int:
        return self.space.index(self)

    def to_json(self) -> list[list[int]]:
        return [list(c.coeffs) for c in self.components]


def inner(a: Point, b: Point) -> int:
    """sum_i Tr_1^{n_i}(a_i b_i), computed by field arithmetic."""
    if a.space != b.space:
        raise SpaceMismatch(f"{a.space} vs {b.space}")
    total = 0
    for x, y in zip(a.components, b.components):
        total += (x * y).trace(1).coeffs[0]
    return total % a.space.p


def char_sum(u: Point, A) -> CycInt:
    """chi_u(A) = sum_{x in A} zeta^<u, x>, with A a collection of point indices."""
    space = u.space
    A = np.asarray(sorted(set(int(a) for a in A)), dtype=np.int64)
    if A.size and (A.min() < 0 or A.max() >= space.size):
        raise SpaceMismatch("point set is not contained in the space")
    vals = space.inner_with(space.index(u))[A]
    counts = np.bincount(vals, minlength=space.p)
    return CycInt.from_unreduced(space.p, counts.tolist())


def as_point_set(A) -> np.ndarray:
    """Canonical point-set form: sorted unique int64 index array."""
    return np.unique(np.asarray(list(A) if not isinstance(A, np.ndarray) else A, dtype=np.int64))
