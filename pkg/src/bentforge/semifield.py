"""Presemifields on GF(p^n): axiom checks, the dual and transposed operations,
induced semifields, right linearity and the eta map.

Every presemifield is stored through its multiplier matrices over F_p:
``coords(x o y) = R[y] @ coords(x)`` and ``coords(x o y) = L[x] @ coords(y)``.
Multiplication in the field itself (optionally scaled by a constant) is a
separate closed-form kind that never builds tables, so it works on fields far
too large to tabulate.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ._linalg import batch_inv_mod, inv_mod
from .errors import (
    NoSolution,
    NotADivisor,
    NotLeftDistributive,
    NotRightDistributive,
    ZeroAlpha,
    ZeroDivisor,
)
from .galois import Field, field_new


class Presemifield:
    """(GF(p^n), +, o). Build with :func:`presemifield_from_table`,
    :func:`presemifield_from_callable` or :func:`field_presemifield`."""

    def __init__(self, field: Field, kind: str, *, scale: int = 1, R=None, L=None,
                 identity: int | None = None, name: str = ""):
        self.field = field
        self.kind = kind
        self.scale = int(scale)
        self._R = R
        self._L = L
        self.identity = identity
        self.name = name

    def __repr__(self) -> str:
        extra = f", scale={self.scale}" if self.kind == "field_mul" and self.scale != 1 else ""
        return f"Presemifield({self.field}, {self.kind}{extra}{', ' + self.name if self.name else ''})"

    # -- matrices -----------------------------------------------------------------------
    @property
    def R(self) -> np.ndarray:
        if self._R is None:
            K = self.field
            self._R = np.stack([K.mult_matrix(int(K.mul(self.scale, y))) for y in range(K.q)])
        return self._R

    @property
    def L(self) -> np.ndarray:
        if self._L is None:
            self._L = self.R if self.kind == "field_mul" else _transpose_matrices(self.field, self.R)
        return self._L

    @cached_property
    def _R_inv(self) -> tuple[np.ndarray, np.ndarray]:
        return batch_inv_mod(self.R, self.field.p)

    @cached_property
    def _L_inv(self) -> tuple[np.ndarray, np.ndarray]:
        return batch_inv_mod(self.L, self.field.p)

    # -- evaluation ---------------------------------------------------------------------
    def op(self, x, y) -> np.ndarray:
        """x o y on broadcastable index arrays."""
        K = self.field
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.kind == "field_mul":
            return K.mul(K.mul(x, y), self.scale)
        x, y = np.broadcast_arrays(x, y)
        cx = K.digits[x]
        out = np.einsum("...ij,...j->...i", self.R[y], cx) % K.p
        return K.from_digits(out)

    __call__ = op

    @cached_property
    def table(self) -> np.ndarray:
        q = self.field.q
        xs = np.arange(q)
        return self.op(xs[:, None], xs[None, :])

    def solve_left_factor(self, y, b) -> np.ndarray:
        """a with a o b = y (b != 0)."""
        K = self.field
        y = np.asarray(y, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if np.any(b == 0):
            raise NoSolution("a o 0 = y has no unique solution")
        if self.kind == "field_mul":
            return K.div(y, K.mul(b, self.scale))
        y, b = np.broadcast_arrays(y, b)
        inv, ok = self._R_inv
        out = np.einsum("...ij,...j->...i", inv[b], K.digits[y]) % K.p
        return K.from_digits(out)

    def solve_right_factor(self, a, y) -> np.ndarray:
        """w with a o w = y (a != 0)."""
        K = self.field
        a = np.asarray(a, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if np.any(a == 0):
            raise NoSolution("0 o w = y has no unique solution")
        if self.kind == "field_mul":
            return K.div(y, K.mul(a, self.scale))
        a, y = np.broadcast_arrays(a, y)
        inv, ok = self._L_inv
        out = np.einsum("...ij,...j->...i", inv[a], K.digits[y]) % K.p
        return K.from_digits(out)

    def to_json(self) -> dict:
        out = {"field": self.field.to_json(), "kind": self.kind}
        if self.kind == "field_mul":
            out["scale"] = self.scale
        else:
            out["table"] = self.table.tolist()
        return out

    @staticmethod
    def from_json(obj: dict) -> Presemifield:
        K = Field.from_json(obj["field"])
        if obj["kind"] == "field_mul":
            return field_presemifield(K, obj.get("scale", 1))
        return presemifield_from_table(K, obj["table"])


def _transpose_matrices(K: Field, R: np.ndarray) -> np.ndarray:
    """Left multiplier matrices from right ones: L[x][:, j] = coords(x o e_j)."""
    basis = K.weights  # indices of the basis elements e_j
    # coords(x o e_j) = R[e_j] @ coords(x)
    cols = np.einsum("jab,xb->xaj", R[basis], K.digits) % K.p
    return cols


def field_presemifield(K: Field, scale=1) -> Presemifield:
    """x o y = scale * x * y (scale = 1: the field itself, a semifield with identity 1)."""
    scale = int(K.element(scale).index) if not isinstance(scale, (int, np.integer)) else int(scale)
    if scale == 0:
        raise ZeroDivisor("scale 0 makes every product vanish", witness=(1, 1))
    ident = int(K.inv(scale)) if K.q <= 1 << 24 else None
    return Presemifield(K, "field_mul", scale=scale, identity=ident,
                        name="field" if scale == 1 else f"{scale}*field")


def _linear_witness(K: Field, vals: np.ndarray):
    """For a map given on all of K by vals, find (a, b) with vals[a+b] != vals[a]+vals[b]."""
    xs = np.arange(K.q)
    for a in range(1, K.q):
        s = K.add(a, xs)
        bad = np.nonzero(vals[s] != K.add(vals[a], vals[xs]))[0]
        if bad.size:
            return a, int(bad[0])
    return None


def presemifield_from_table(K: Field, table, name: str = "table") -> Presemifield:
    """Validate a full operation table (table[x][y] = index of x o y)."""
    t = np.asarray(table, dtype=np.int64)
    q, p = K.q, K.p
    if t.shape != (q, q) or t.min() < 0 or t.max() >= q:
        raise ValueError(f"table must be a {q} x {q} array of element indices")
    basis = K.weights
    # x -> x o y linear for every y  <=>  (x + x') o y = x o y + x' o y
    R = np.transpose(K.digits[t[basis, :]], (1, 2, 0)) % p  # R[y][:, j] = coords(e_j o y)
    rebuilt = K.from_digits(np.einsum("yij,xj->xyi", R, K.digits) % p)
    bad = np.argwhere(rebuilt != t)
    if bad.size:
        y = int(bad[0][1])
        a, b = _linear_witness(K, t[:, y])
        raise NotRightDistributive(f"({a} + {b}) o {y} != {a} o {y} + {b} o {y}", witness=(a, b, y))
    L = np.transpose(K.digits[t[:, basis]], (0, 2, 1)) % p  # L[x][:, j] = coords(x o e_j)
    rebuilt = K.from_digits(np.einsum("xij,yj->xyi", L, K.digits) % p)
    bad = np.argwhere(rebuilt != t)
    if bad.size:
        x = int(bad[0][0])
        a, b = _linear_witness(K, t[x, :])
        raise NotLeftDistributive(f"{x} o ({a} + {b}) != {x} o {a} + {x} o {b}", witness=(x, a, b))
    zd = np.argwhere(t[1:, 1:] == 0)
    if zd.size:
        x, y = (int(v) + 1 for v in zd[0])
        raise ZeroDivisor(f"{x} o {y} = 0", witness=(x, y))
    P = Presemifield(K, "table", R=R, L=L, name=name)
    P.identity = _find_identity(P, t)
    P.__dict__["table"] = t
    return P


def _find_identity(P: Presemifield, t: np.ndarray) -> int | None:
    xs = np.arange(P.field.q)
    for e in range(1, P.field.q):
        if np.array_equal(t[e], xs) and np.array_equal(t[:, e], xs):
            return e
    return None


def presemifield_from_callable(K: Field, fn, name: str = "callable") -> Presemifield:
    """Tabulate fn(x_idx_array, y_idx_array) -> index array and validate."""
    xs = np.arange(K.q)
    return presemifield_from_table(K, fn(xs[:, None] + 0 * xs[None, :], 0 * xs[:, None] + xs[None, :]),
                                   name=name)


def _from_matrices(K: Field, R: np.ndarray, name: str) -> Presemifield:
    P = Presemifield(K, "table", R=R % K.p, name=name)
    P.identity = _find_identity(P, P.table) if K.q <= 6561 else None
    return P


def dual_star(P: Presemifield) -> Presemifield:
    """z * y adjoint to x o y under Tr(xz): Tr(z (x o y)) = Tr(x (z * y)).

    With T the Gram matrix of the trace form, Tr(u v) = coords(u)^T T coords(v),
    so the multiplier of the dual is T^{-1} R[y]^T T."""
    if P.kind == "field_mul":
        return field_presemifield(P.field, P.scale)
    K = P.field
    T, Ti = K.trace_form, K.trace_form_inverse
    N = np.einsum("ab,ycb,cd->yad", Ti, P.R, T) % K.p
    return _from_matrices(K, N, name=f"{P.name}*")


def transpose_bullet(P: Presemifield) -> Presemifield:
    """x . y = y o x."""
    if P.kind == "field_mul":
        return field_presemifield(P.field, P.scale)
    return _from_matrices(P.field, P.L.copy(), name=f"{P.name}.")


def induced_semifield(P: Presemifield, alpha) -> Presemifield:
    """The semifield with (x o alpha) * (alpha o y) = x o y, identity alpha o alpha."""
    K = P.field
    alpha = int(K.element(alpha).index) if not isinstance(alpha, (int, np.integer)) else int(alpha)
    if alpha == 0:
        raise ZeroAlpha("alpha must be nonzero")
    if P.kind == "field_mul":
        # a * b = (a / (c alpha)) * (b / (c alpha)) * c = a b / (c alpha^2)
        c = int(K.inv(K.mul(P.scale, K.mul(alpha, alpha))))
        S = field_presemifield(K, c)
        S.name = f"induced({P.name}, {alpha})"
        return S
    p = K.p
    Ra_inv = inv_mod(P.R[alpha], p)
    # a * b = R_alpha^{-1}(a) o L_alpha^{-1}(b): multiplier of b is R[w] @ Ra_inv, w = L_alpha^{-1}(b)
    w = P.solve_right_factor(np.full(K.q, alpha), np.arange(K.q))
    R = np.einsum("yab,bc->yac", P.R[w], Ra_inv) % p
    S = _from_matrices(K, R, name=f"induced({P.name}, {alpha})")
    S.identity = int(P.op(alpha, alpha))
    return S


def is_right_linear(P: Presemifield, s: int) -> bool:
    return right_linearity_witness(P, s) is None


def right_linearity_witness(P: Presemifield, s: int):
    """None if x o (c y) = c (x o y) for all x, y and c in GF(p^s), else (x, y, c).

    F_p-bilinearity reduces the check to c = the designated generator h of the
    subfield, since every subfield element is an F_p-combination of powers of h."""
    K = P.field
    if K.n % s:
        raise NotADivisor(f"{s} does not divide {K.n}")
    if P.kind == "field_mul":
        return None
    h = K.subfield_generator(s)
    ys = np.arange(K.q)
    hy = K.mul(h, ys)
    Mh = K.mult_matrix(h)
    lhs = P.R[hy]
    rhs = np.einsum("ab,ybc->yac", Mh, P.R) % K.p
    bad = np.nonzero(np.any(lhs != rhs, axis=(1, 2)))[0]
    if not bad.size:
        return None
    y = int(bad[0])
    xs = np.arange(K.q)
    diff = np.nonzero(P.op(xs, hy[y]) != K.mul(h, P.op(xs, y)))[0]
    return int(diff[0]), y, int(h)


def eta(Pstar: Presemifield, x) -> int:
    """eta_x with x * eta_x^{-1} = 1 in the given (dual) presemifield; eta_0 = 0."""
    return int(eta_table(Pstar, np.array([int(x)]))[0])


def eta_table(Pstar: Presemifield, xs=None) -> np.ndarray:
    K = Pstar.field
    xs = np.arange(K.q) if xs is None else np.asarray(xs, dtype=np.int64)
    out = np.zeros(xs.shape, dtype=np.int64)
    nz = xs != 0
    if Pstar.kind == "field_mul":
        # x c w = 1  =>  w^{-1} = c x
        out[nz] = K.mul(xs[nz], Pstar.scale)
        return out
    w = Pstar.solve_right_factor(xs[nz], np.ones(int(nz.sum()), dtype=np.int64))
    if np.any(Pstar.op(xs[nz], w) != 1):
        raise NoSolution("x * w = 1 has no solution for some x")
    out[nz] = K.inv(w)
    return out


def axiom_report(P: Presemifield) -> dict:
    """Re-run the axiom checks on the tabulated operation."""
    try:
        presemifield_from_table(P.field, P.table)
    except (ZeroDivisor, NotLeftDistributive, NotRightDistributive) as e:
        return {"valid": False, "error": type(e).__name__, "witness": e.witness}
    return {"valid": True}


def adjoint_identity_holds(P: Presemifield, Pstar: Presemifield) -> bool:
    """Tr(z (x o y)) = Tr(x (z * y)) for all x, y, z, checked per y on multiplier
    matrices: T R[y] == (T N[y])^T."""
    K = P.field
    T = K.trace_form
    lhs = np.einsum("ab,ybc->yac", T, P.R) % K.p
    rhs = np.transpose(np.einsum("ab,ybc->yac", T, Pstar.R) % K.p, (0, 2, 1))
    return bool(np.array_equal(lhs, rhs))


def adjoint_identity_bruteforce(P: Presemifield, Pstar: Presemifield) -> bool:
    """Same identity by a full triple loop over element indices."""
    K = P.field
    q = K.q
    xs = np.arange(q)
    tr = K.trace(1, xs)
    for y in range(q):
        xo = P.op(xs, y)  # x o y
        zs = Pstar.op(xs, y)  # z * y
        lhs = tr[K.mul(xs[:, None], xo[None, :])]  # [z, x]
        rhs = tr[K.mul(xs[None, :], zs[:, None])]  # [z, x]
        if not np.array_equal(lhs, rhs):
            return False
    return True


# --- fixtures -------------------------------------------------------------------------

def frobenius_twist(K: Field, k: int = 1) -> Presemifield:
    """x o y = x * y^(p^k): not commutative for 0 < k < n."""
    return presemifield_from_callable(K, lambda x, y: K.mul(x, K.pow(y, K.p**k)),
                                      name=f"x*y^(p^{k})")


def albert_twisted_field(K: Field, k: int, a: int | None = None) -> Presemifield:
    """x o y = x^(p^k) y - a x y^(p^k) with a not a (p^k - 1)-th power."""
    pk = K.p**k
    if a is None:
        xs = np.arange(1, K.q)
        powers = set(K.pow(xs, pk - 1).tolist())
        a = next(int(v) for v in xs if int(v) not in powers)
    return presemifield_from_callable(
        K, lambda x, y: K.sub(K.mul(K.pow(x, pk), y), K.mul(a, K.mul(x, K.pow(y, pk)))),
        name=f"albert(k={k}, a={a})")


__all__ = [
    "Presemifield", "adjoint_identity_bruteforce", "adjoint_identity_holds", "albert_twisted_field",
    "axiom_report", "dual_star", "eta", "eta_table", "field_new", "field_presemifield",
    "frobenius_twist", "induced_semifield", "is_right_linear", "presemifield_from_callable",
    "presemifield_from_table", "right_linearity_witness", "transpose_bullet",
]
