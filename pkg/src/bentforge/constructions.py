"""Explicit constructions: Maiorana-McFarland functions, ternary weakly regular
families, the six presemifield vectorial functions F, F., G, G., M, N with their
partitions, and the secondary construction H."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadParameters,
    BadR,
    DependentAlphaBeta,
    FamilyEpsilonMismatch,
    GcdObstruction,
    InvalidParams,
    NotADivisor,
    NotAPermutation,
)
from .galois import TABLE_LIMIT, GF, Field
from .partitions import Partition
from .semifield import Presemifield, dual_star, eta_table, field_presemifield, is_right_linear
from .spaces import VSpace
from .vectorial import VectorialFunction, check_condition_A
from .walsh import PFunction


# --- Maiorana-McFarland ---------------------------------------------------------------

def _check_perm(arr, q: int, what="pi") -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    if arr.shape != (q,) or not np.array_equal(np.sort(arr), np.arange(q)):
        raise NotAPermutation(f"{what} is not a permutation of the field")
    return arr


def mm_bent(K: Field, alpha, pi, g) -> tuple[PFunction, PFunction]:
    """f(x, y) = Tr(alpha x pi(y)) + g(y) on K x K and its dual
    f*(x, y) = Tr(-pi^{-1}(alpha^{-1} x) y) + g(pi^{-1}(alpha^{-1} x))."""
    q = K.q
    alpha = int(alpha)
    if alpha == 0:
        raise BadParameters("alpha must be nonzero")
    pi = _check_perm(pi, q)
    g = np.asarray(g.values if isinstance(g, PFunction) else g, dtype=np.int64) % K.p
    space = VSpace([K, K])
    x, y = space.split(np.arange(space.size))
    f = K.trace(1, K.mul(alpha, K.mul(x, pi[y]))) + g[y]
    pinv = np.empty(q, dtype=np.int64)
    pinv[pi] = np.arange(q)
    z = pinv[K.mul(K.inv(alpha), x)]
    fd = K.trace(1, K.neg(K.mul(z, y))) + g[z]
    return PFunction(space, f % K.p), PFunction(space, fd % K.p)


# --- ternary families ---------------------------------------------------------------------

def _is_square(K: Field, a: int) -> bool:
    return a != 0 and int(K.log_table[a]) % 2 == 0


def ternary_family(variant: int, n: int | None = None, alpha=None, g: PFunction | None = None,
                   h: PFunction | None = None, K: Field | None = None,
                   literal_sign: bool = False) -> PFunction:
    """Ternary weakly regular (eps = -1) bent 2-forms.

    20: Tr(alpha x^2), alpha square iff 4 | n
    21: Tr(a x^((3^n-1)/4 + 3^m + 1)), n = 2m, m odd, a = alpha^((3^m+1)/4), alpha primitive
    22: Tr(alpha (x^(3^(3k)+3^(2k)-3^k+1) + x^2)), n = 4k, alpha in GF(3^(2k))^*
    23: (h(x) - g(x)) z^2 + y z + g(x) on GF(3^n) x F_3 x F_3 for two such g != h,
        so that the slices z = 0 and z = +-1 are g and h; ``literal_sign`` uses
        (g - h) z^2 instead, whose z = +-1 slice is 2g - h and which is not weakly
        regular for any pair from variants 20 and 21 at n = 2
    """
    if variant == 23:
        if g is None or h is None:
            raise BadParameters("variant 23 needs the two functions g and h")
        if g.space != h.space or g.space.p != 3:
            raise BadParameters("g and h must be ternary functions on one space")
        if g == h:
            raise BadParameters("g and h must be distinct")
        F3 = GF(3, 1)
        space = VSpace(list(g.space.fields) + [F3, F3])
        parts = space.split(np.arange(space.size))
        # the first len(g.space.fields) parts make up x
        xi = g.space.join(parts[:-2])
        y, z = parts[-2], parts[-1]
        diff = g.values[xi] - h.values[xi] if literal_sign else h.values[xi] - g.values[xi]
        vals = (diff * z * z + y * z + g.values[xi]) % 3
        return PFunction(space, vals)
    if n is None:
        raise BadParameters("n is required")
    K = K or GF(3, n)
    if K.p != 3 or K.n != n:
        raise BadParameters("field must be GF(3^n)")
    xs = np.arange(K.q)
    if variant == 20:
        if n % 2:
            raise BadParameters("n must be even")
        if alpha is None:
            alpha = 1 if n % 4 == 0 else K.primitive_element
        alpha = int(alpha)
        if alpha == 0 or _is_square(K, alpha) != (n % 4 == 0):
            raise BadParameters("alpha must be a square iff 4 | n")
        return PFunction(VSpace([K]), K.trace(1, K.mul(alpha, K.mul(xs, xs))))
    if variant == 21:
        if n % 2 or (n // 2) % 2 == 0:
            raise BadParameters("n = 2m with m odd is required")
        m = n // 2
        prim = K.primitive_element if alpha is None else int(alpha)
        if not _is_primitive(K, prim):
            raise BadParameters("alpha must be primitive")
        a = int(K.pow(prim, (3**m + 1) // 4))
        e = (3**n - 1) // 4 + 3**m + 1
        return PFunction(VSpace([K]), K.trace(1, K.mul(a, K.pow(xs, e))))
    if variant == 22:
        if n % 4:
            raise BadParameters("n must be a multiple of 4")
        k = n // 4
        alpha = 1 if alpha is None else int(alpha)
        if alpha == 0 or not K.in_subfield(2 * k, alpha):
            raise BadParameters("alpha must lie in GF(3^(2k))^*")
        e = 3 ** (3 * k) + 3 ** (2 * k) - 3**k + 1
        return PFunction(VSpace([K]), K.trace(1, K.mul(alpha, K.add(K.pow(xs, e), K.mul(xs, xs)))))
    raise BadParameters(f"unknown variant {variant}")


def _is_primitive(K: Field, a: int) -> bool:
    return a != 0 and math.gcd(int(K.log_table[a]), K.q - 1) == 1


# --- presemifield vectorial functions ---------------------------------------------------------

@dataclass
class GammaParams:
    """Parameters shared by the F, F., G, G., M, N builders and the Gamma/Theta partitions."""

    p: int
    n: int
    s: int
    u: int
    d: int | None = None
    P: Presemifield | None = None
    alpha: int = 1
    i0: int = 0
    j0: int = field(init=False, default=0)

    def __post_init__(self):
        p, n, s = self.p, self.n, self.s
        if n % s:
            raise NotADivisor(f"{s} does not divide {n}")
        K = self.P.field if self.P is not None else GF(p, n)
        if (K.p, K.n) != (p, n):
            raise InvalidParams("presemifield lives on the wrong field")
        if self.P is None:
            self.P = field_presemifield(K)
        q = p**n
        if math.gcd(self.u, q - 1) != 1:
            raise GcdObstruction(f"gcd({self.u}, {q - 1}) = {math.gcd(self.u, q - 1)}",
                                 witness=math.gcd(self.u, q - 1))
        ps1 = p**s - 1
        js = [j for j in range(s) if (self.u - p**j) % ps1 == 0]
        if not js:
            raise InvalidParams(f"u = {self.u} is not congruent to a power of p mod {ps1}")
        self.j0 = js[0]
        if self.d is None:
            self.d = pow(self.u, -1, q - 1)
        if (self.d * self.u - 1) % (q - 1):
            raise InvalidParams(f"d*u = {self.d * self.u} is not 1 mod {q - 1}")
        self.alpha = int(self.alpha)
        if not 0 < self.alpha < q:
            raise InvalidParams("alpha must be a nonzero field element")
        if not 0 <= int(self.i0) < p**s:
            raise InvalidParams("i0 must be an element of GF(p^s)")
        self.i0 = int(self.i0)
        if self.P.kind != "field_mul" and not is_right_linear(dual_star(self.P), s):
            raise InvalidParams(f"the dual presemifield is not right GF({p}^{s})-linear")

    @classmethod
    def classical(cls, p: int, n: int, s: int, **kw) -> GammaParams:
        """u = p^s + p - 1."""
        return cls(p, n, s, p**s + p - 1, **kw)

    @property
    def field(self) -> Field:
        return self.P.field

    @property
    def sub(self) -> Field:
        return self.field.subfield(self.s)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "s": self.s, "u": self.u, "d": self.d,
                "alpha": self.alpha, "i0": self.i0, "j0": self.j0,
                "presemifield": self.P.name or self.P.kind}


def _domain(params: GammaParams) -> VSpace:
    return VSpace([params.field, params.field])


def _codomain(params: GammaParams) -> VSpace:
    return VSpace([params.sub])


def _finish(params: GammaParams, inner: np.ndarray, special: np.ndarray) -> np.ndarray:
    """Tr_s^n(alpha * inner) + i0 on the special fibre."""
    K, S = params.field, params.sub
    val = K.trace(params.s, K.mul(params.alpha, inner))
    return np.where(special, S.add(val, params.i0), val)


def _builder(kind: str):
    def ev(params: GammaParams, idx: np.ndarray) -> np.ndarray:
        K, P = params.field, params.P
        x, y = idx // K.q, idx % K.q
        u, d = params.u, params.d
        if kind in ("F", "Fbul", "M"):
            special = x == 0
        else:
            special = y == 0
        inner = np.zeros(idx.shape, dtype=np.int64)
        nz = ~special
        xs, ys = x[nz], y[nz]
        if kind == "F":  # a o x^u = y
            inner[nz] = P.solve_left_factor(ys, K.pow(xs, u))
        elif kind == "Fbul":  # x^u o a = y
            inner[nz] = P.solve_right_factor(K.pow(xs, u), ys)
        elif kind == "G":  # b o y^d = x
            inner[nz] = P.solve_left_factor(xs, K.pow(ys, d))
        elif kind == "Gbul":  # y^d o b = x
            inner[nz] = P.solve_right_factor(K.pow(ys, d), xs)
        elif kind == "M":  # eta_x^{-u} y
            et = _eta(params, xs)
            inner[nz] = K.mul(K.pow(et, -u), ys)
        elif kind == "N":  # x eta_y^{-d}
            et = _eta(params, ys)
            inner[nz] = K.mul(xs, K.pow(et, -d))
        return _finish(params, inner, special)

    return ev


def _eta(params: GammaParams, xs: np.ndarray) -> np.ndarray:
    return eta_table(dual_star(params.P), xs)


BUILDERS = ("F", "Fbul", "G", "Gbul", "M", "N")


def build(kind: str, params: GammaParams) -> VectorialFunction:
    if kind not in BUILDERS:
        raise BadParameters(f"unknown builder {kind!r}; choose from {BUILDERS}")
    ev = _builder(kind)
    dom = _domain(params)
    return VectorialFunction(dom, _codomain(params), evaluator=lambda idx: ev(params, idx))


def build_F(params: GammaParams) -> VectorialFunction:
    return build("F", params)


def build_Fbul(params: GammaParams) -> VectorialFunction:
    return build("Fbul", params)


def build_G(params: GammaParams) -> VectorialFunction:
    return build("G", params)


def build_Gbul(params: GammaParams) -> VectorialFunction:
    return build("Gbul", params)


def build_M(params: GammaParams) -> VectorialFunction:
    return build("M", params)


def build_N(params: GammaParams) -> VectorialFunction:
    return build("N", params)


def dual_F(params: GammaParams) -> VectorialFunction:
    """Closed-form vectorial dual of F:
    -Tr_s^n(x rho(y))^(p^j0) + i0 (1 - y^(p^n-1)), rho(y) = lambda_y^{-d},
    y * lambda_y^{-1} = alpha in the dual presemifield."""
    K, S = params.field, params.sub
    Pstar = dual_star(params.P)
    ys = np.arange(K.q)
    lam_inv = np.zeros(K.q, dtype=np.int64)
    lam_inv[1:] = Pstar.solve_right_factor(ys[1:], np.full(K.q - 1, params.alpha))
    rho = K.pow(K.inv(lam_inv), -params.d)  # lambda^{-d}, zero stays zero

    def ev(idx):
        x, y = idx // K.q, idx % K.q
        t = K.trace(params.s, K.mul(x, rho[y]))
        t = S.neg(S.pow(t, params.p**params.j0))
        return np.where(y == 0, S.add(t, params.i0), t)

    return VectorialFunction(_domain(params), _codomain(params), evaluator=ev)


def dual_M(params: GammaParams) -> VectorialFunction:
    """Closed-form vectorial dual of M:
    -Tr_s^n(r(x, y))^(p^j0) + i0 (1 - y^(p^n-1)), r o (alpha^{-d} y^d) = x."""
    K, S, P = params.field, params.sub, params.P

    def ev(idx):
        x, y = idx // K.q, idx % K.q
        r = np.zeros(idx.shape, dtype=np.int64)
        nz = y != 0
        r[nz] = P.solve_left_factor(x[nz], K.mul(K.pow(params.alpha, -params.d), K.pow(y[nz], params.d)))
        t = S.neg(S.pow(K.trace(params.s, r), params.p**params.j0))
        return np.where(y == 0, S.add(t, params.i0), t)

    return VectorialFunction(_domain(params), _codomain(params), evaluator=ev)


# --- the six partitions -----------------------------------------------------------------------

PARTITION_KINDS = {
    # name: (builder whose fibres it equals, special fibre on x = 0 or on y = 0)
    "Gamma1": "F", "Gamma1bul": "Fbul", "Gamma2": "G", "Gamma2bul": "Gbul",
    "Theta1": "N", "Theta2": "M",
}
_ALIASES = {"Γ1": "Gamma1", "Γ1•": "Gamma1bul", "Γ2": "Gamma2", "Γ2•": "Gamma2bul",
            "Θ1": "Theta1", "Θ2": "Theta2"}


def gamma_partition(kind: str, params: GammaParams, alpha: int = 1) -> Partition:
    """Blocks A_i = union of the t-sets with Tr_s^n(alpha t) = i, plus the special
    fibre in A_{i0}. The t-sets are

      Gamma1:   U_t = {(x, t o x^u)}          Gamma1bul: {(x, x^u o t)}
      Gamma2:   V_t = {(t o x^d, x)}          Gamma2bul: {(x^d o t, x)}
      Theta1:   X_t = {(t eta_x^d, x)}        Theta2:    Y_t = {(x, t eta_x^u)}

    over x != 0, with special fibre {(0, y)} for Gamma1, Gamma1bul, Theta2 and
    {(x, 0)} for the others."""
    kind = _ALIASES.get(kind, kind)
    if kind not in PARTITION_KINDS:
        raise BadParameters(f"unknown partition {kind!r}")
    K, S, P = params.field, params.sub, params.P
    q, u, d = K.q, params.u, params.d
    dom = _domain(params)
    xs = np.arange(1, q)
    t = np.repeat(np.arange(q), q - 1)
    x = np.tile(xs, q)
    if kind == "Gamma1":
        pts = (x, P.op(t, K.pow(x, u)))
    elif kind == "Gamma1bul":
        pts = (x, P.op(K.pow(x, u), t))
    elif kind == "Gamma2":
        pts = (P.op(t, K.pow(x, d)), x)
    elif kind == "Gamma2bul":
        pts = (P.op(K.pow(x, d), t), x)
    elif kind == "Theta1":
        pts = (K.mul(t, K.pow(_eta(params, x), d)), x)
    else:  # Theta2
        pts = (x, K.mul(t, K.pow(_eta(params, x), u)))
    label = K.trace(params.s, K.mul(int(alpha), t))
    idx = dom.join(pts)
    assign = np.full(dom.size, -1, dtype=np.int64)
    assign[idx] = label
    if kind in ("Gamma1", "Gamma1bul", "Theta2"):
        special = dom.join((np.zeros(q, dtype=np.int64), np.arange(q)))
    else:
        special = dom.join((np.arange(q), np.zeros(q, dtype=np.int64)))
    covered = np.zeros(dom.size, dtype=np.int64)
    np.add.at(covered, idx, 1)
    np.add.at(covered, special, 1)
    if not np.all(covered == 1):
        bad = int(np.nonzero(covered != 1)[0][0])
        raise BadParameters(f"the t-sets do not partition the space (point {bad})", witness=bad)
    assign[special] = params.i0
    return Partition.from_assignment(dom, assign, codomain=VSpace([S]))


# --- secondary construction ---------------------------------------------------------------

@dataclass
class SecondaryH:
    function: VectorialFunction
    eps: int | None
    family_verified: bool
    sub_iso: np.ndarray  # GF(p^s) inside GF(p^m) -> the family's codomain field


def secondary_H(family, m: int, alpha, beta, R=None, T=None, Km: Field | None = None,
                verify_family: bool = True) -> SecondaryH:
    """H(x, y1, y2) = F(i(y); x) + Tr_s^m(beta R(y1 y2^(p^m-2))) + T(i(y)),
    i(y) = Tr_s^m(alpha R(y1 y2^(p^m-2))), on V_n x GF(p^m) x GF(p^m).

    ``family`` lists F(i; .) for every i in GF(p^s) in index order (or a dict)."""
    if isinstance(family, dict):
        family = [family[i] for i in range(len(family))]
    family = list(family)
    F0 = family[0]
    cod = F0.codomain
    if len(cod.fields) != 1:
        raise BadParameters("family codomain must be a single field GF(p^s)")
    S = cod.fields[0]
    p, s = S.p, S.n
    if len(family) != S.q:
        raise BadParameters(f"family needs one function per element of GF({p}^{s})")
    dom = F0.domain
    for Fi in family:
        if Fi.domain != dom or Fi.codomain != cod:
            raise BadParameters("family members must share domain and codomain")
    n = dom.n
    if n % 2 or 2 * s > n:
        raise BadParameters("need n even and s <= n/2")
    if m % s or m == s:
        raise BadParameters("need s | m and s != m")
    Km = Km or GF(p, m)
    qm = Km.q
    alpha, beta = int(alpha), int(beta)
    if alpha == 0 or beta == 0 or Km.in_subfield(s, Km.div(beta, alpha)):
        raise DependentAlphaBeta("alpha and beta are linearly dependent over GF(p^s)")
    R = np.arange(qm, dtype=np.int64) if R is None else _check_perm(R, qm, "R")
    if R[0] != 0:
        raise BadR("R must fix 0")
    T = np.zeros(S.q, dtype=np.int64) if T is None else np.asarray(T, dtype=np.int64)
    if T.shape != (S.q,):
        raise BadParameters("T must be a table on GF(p^s)")
    iso = Km.subfield(s).isomorphism_to(S)
    eps = None
    if verify_family:
        seen = {}
        for i, Fi in enumerate(family):
            key = id(Fi)
            if key not in seen:
                if Fi.is_lazy:
                    seen[key] = None
                    continue
                rep = check_condition_A(Fi)
                if not rep.holds:
                    raise FamilyEpsilonMismatch(f"family member {i} fails Condition A: {rep.reason}",
                                                witness=i)
                seen[key] = rep.eps
        eps_vals = {e for e in seen.values() if e is not None}
        if len(eps_vals) > 1:
            raise FamilyEpsilonMismatch(f"family members have eps values {sorted(eps_vals)}")
        eps = eps_vals.pop() if eps_vals else None
    space = VSpace(list(dom.fields) + [Km, Km])
    nparts = len(dom.fields)

    def ev(idx):
        parts = space.split(idx)
        x = dom.join(parts[:nparts])
        y1, y2 = parts[nparts], parts[nparts + 1]
        z = R[Km.mul(y1, Km.pow(y2, qm - 2))]
        i = iso[Km.trace(s, Km.mul(alpha, z))]
        shift = S.add(iso[Km.trace(s, Km.mul(beta, z))], T[i])
        out = np.empty(idx.shape, dtype=np.int64)
        for k in np.unique(i):
            sel = i == k
            out[sel] = family[int(k)].evaluate(x[sel])
        return S.add(out, shift)

    H = VectorialFunction(space, cod, evaluator=ev)
    return SecondaryH(H, eps, verify_family, iso)


def theorem5_H(params_by_i, builder_by_i, m: int, alpha, beta, R=None, T=None,
               Km: Field | None = None, verify_family: bool = True) -> SecondaryH:
    """H with the family F(i; .) = build(builder_by_i[i], params_by_i[i])."""
    if not isinstance(params_by_i, (list, tuple)):
        params_by_i = [params_by_i] * len(builder_by_i)
    cache = {}
    family = []
    for prm, kind in zip(params_by_i, builder_by_i):
        key = (id(prm), kind)
        if key not in cache:
            cache[key] = build(kind, prm)
        family.append(cache[key])
    return secondary_H(family, m, alpha, beta, R=R, T=T, Km=Km, verify_family=verify_family)


# --- large worked instance (p=3, s=4, n=m=8) --------------------------------------------------

def example2_parameters() -> dict:
    """Legality of p=3, s=4, n=m=8: F(i) = Tr_4^8(x1^{-89} x2) for i != 0 and
    Tr_4^8(x1 x2^{-83}) for i = 0, alpha primitive in GF(3^8), beta = 1."""
    p, s, n, m = 3, 4, 8, 8
    q = p**n
    ps1 = p**s - 1
    K = GF(p, n)
    u_m = 89
    d_n = 83
    u_n = pow(d_n, -1, q - 1)
    g = K.primitive_element
    checks = {
        "s_divides_n": n % s == 0,
        "s_divides_m": m % s == 0,
        "s_ne_m": s != m,
        "s_le_half_of_2n": 2 * s <= 2 * n,
        "gcd_u_M": math.gcd(u_m, q - 1) == 1,
        "u_M_power_of_p_mod": [j for j in range(s) if (u_m - p**j) % ps1 == 0],
        "gcd_d_N": math.gcd(d_n, q - 1) == 1,
        "u_N": u_n,
        "u_N_power_of_p_mod": [j for j in range(s) if (u_n - p**j) % ps1 == 0],
        "alpha_beta_independent": not bool(K.in_subfield(s, K.div(1, g))),
        "domain_size": p ** (2 * n + 2 * m),
        "lazy": p ** (2 * n + 2 * m) > TABLE_LIMIT,
    }
    checks["legal"] = bool(checks["gcd_u_M"] and checks["u_M_power_of_p_mod"] and checks["gcd_d_N"]
                           and checks["u_N_power_of_p_mod"] and checks["alpha_beta_independent"]
                           and checks["s_divides_n"] and checks["s_ne_m"])
    return checks


def example2_H(verify_family: bool = False) -> SecondaryH:
    """The Example-2 function, lazily evaluated (3^32 points)."""
    K = GF(3, 8)
    pm = GammaParams(3, 8, 4, 89)
    pn = GammaParams(3, 8, 4, pow(83, -1, K.q - 1), d=83)
    kinds = ["N"] + ["M"] * 80
    return theorem5_H([pn] + [pm] * 80, kinds, 8, K.primitive_element, 1, Km=K,
                      verify_family=verify_family)


__all__ = [
    "BUILDERS", "GammaParams", "PARTITION_KINDS", "SecondaryH", "build", "build_F", "build_Fbul",
    "build_G", "build_Gbul", "build_M", "build_N", "dual_F", "dual_M", "example2_H",
    "example2_parameters", "gamma_partition", "mm_bent", "secondary_H", "ternary_family",
    "theorem5_H",
]
