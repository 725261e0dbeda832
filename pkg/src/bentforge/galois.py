"""Exact arithmetic in GF(p^n) with an explicit polynomial basis.

Elements are identified with integers: the element with coefficient list
``(c_0, ..., c_{n-1})`` (ascending powers of the basis root) has index
``sum(c_i * p**i)``. Enumeration order, JSON export and every table in the
package use this index.

Two arithmetic routes exist on purpose. :class:`FieldElement` does schoolbook
polynomial arithmetic reduced modulo the defining polynomial; the ``Field``
array methods (``add``, ``mul``, ``pow`` ...) act on numpy index arrays through
log/antilog tables. Tests cross-check one against the other.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from ._linalg import inv_mod, solve_mod
from ._moduli import DEFAULT_MODULI
from .errors import (
    CapExceeded,
    DegreeMismatch,
    FieldMismatch,
    NotADivisor,
    NotIrreducible,
    NotPrime,
)

# log/antilog tables are only built below this order
TABLE_LIMIT = 1 << 24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p: ascending coefficient lists -------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = (a[-1] * inv_lead) % p
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        _trim(a)
    return _trim(q), a


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    return poly_divmod(a, m, p)[1]


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def poly_powmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = poly_mod(base, m, p)
    while e > 0:
        if e & 1:
            result = poly_mod(poly_mul(result, b, p), m, p)
        b = poly_mod(poly_mul(b, b, p), m, p)
        e >>= 1
    return result


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    f = _trim([c % p for c in modulus])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n <= 3:
        # a reducible cubic or quadratic has a linear factor
        return all(sum(c * pow(r, i, p) for i, c in enumerate(f)) % p for r in range(p))
    x = [0, 1]
    xp = x
    for _ in range(1, n // 2 + 1):
        xp = poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(poly_gcd(f, diff, p)) > 1:
            return False
    return True


def is_primitive_poly(p: int, modulus: Sequence[int]) -> bool:
    if not is_irreducible(p, modulus):
        return False
    n = len(modulus) - 1
    order = p**n - 1
    for r in prime_factors(order):
        if poly_powmod([0, 1], order // r, modulus, p) == [1]:
            return False
    return n > 1 or poly_powmod([0, 1], order, modulus, p) == [1]


def least_primitive_modulus(p: int, n: int) -> tuple[int, ...]:
    """Monic primitive polynomial with the smallest index sum(c_i p^i) over i < n."""
    if n == 1:
        return (0, 1)
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        cand = low + [1]
        if cand[0] == 0:
            continue
        if is_primitive_poly(p, cand):
            return tuple(cand)
    raise NotIrreducible(f"no primitive polynomial found for p={p}, n={n}")


# --- fields ------------------------------------------------------------------

class Field:
    """GF(p^n) with a fixed monic irreducible modulus (ascending coefficients)."""

    def __init__(self, p: int, n: int, modulus: Sequence[int]):
        self.p = p
        self.n = n
        self.modulus = tuple(int(c) for c in modulus)
        self.q = p**n

    def __repr__(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.modulus))):
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else f"{c}{'' if i == 0 else '*'}{'' if i == 0 else mono}")
        return f"GF({self.p}^{self.n}, {' + '.join(terms)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.n, self.modulus) == (
            other.p, other.n, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __reduce__(self):
        return (field_new, (self.p, self.n, list(self.modulus)))

    # -- elements -----------------------------------------------------------
    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        if isinstance(value, (int, np.integer)):
            v = int(value)
            if not 0 <= v < self.q:
                raise ValueError(f"index {v} out of range for {self}")
            return FieldElement(self, tuple((v // self.p**i) % self.p for i in range(self.n)))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            coeffs = poly_mod(coeffs, self.modulus, self.p)
        coeffs += [0] * (self.n - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    __call__ = element

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.q):
            yield self.element(i)

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def _check(self, e: FieldElement):
        if e.field is not self and e.field != self:
            raise FieldMismatch(f"{e.field} vs {self}")

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(obj: dict) -> Field:
        return field_new(obj["p"], obj["n"], obj.get("modulus"))

    # -- coordinates ------------------------------------------------------------
    @cached_property
    def weights(self) -> np.ndarray:
        return self.p ** np.arange(self.n, dtype=np.int64)

    @cached_property
    def digits(self) -> np.ndarray:
        """(q, n) coefficient matrix, row i = coefficients of element i."""
        self._require_tables()
        idx = np.arange(self.q, dtype=np.int64)
        return ((idx[:, None] // self.weights[None, :]) % self.p).astype(np.int64)

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        return (np.asarray(d) % self.p) @ self.weights

    def _require_tables(self):
        if self.q > TABLE_LIMIT:
            raise CapExceeded(f"{self} too large for tabulated arithmetic (limit {TABLE_LIMIT})")

    # -- scalar polynomial arithmetic (independent route) ----------------------
    def _mulc(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        r = poly_mod(poly_mul(a, b, self.p), self.modulus, self.p)
        return tuple(r + [0] * (self.n - len(r)))

    # -- multiplicative structure -----------------------------------------------
    @cached_property
    def primitive_element(self) -> int:
        """Index of the least (in enumeration order) primitive element."""
        if self.q == 2:
            return 1
        order = self.q - 1
        factors = prime_factors(order)
        for cand in range(1, self.q):
            e = self.element(cand)
            if all(e ** (order // r) != self.one for r in factors):
                return cand
        raise AssertionError("field has no primitive element")

    @property
    def g(self) -> FieldElement:
        return self.element(self.primitive_element)

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        self._require_tables()
        q, p = self.q, self.p
        order = q - 1
        g = self.g
        block = max(1, int(order**0.5))
        exp = np.zeros(order, dtype=np.int64)
        # first block by repeated multiplication, then extend by multiplying
        # whole blocks with the matrix of g^block
        cur = self.one
        for k in range(min(block, order)):
            exp[k] = cur.index
            cur = cur * g
        step = self.mult_matrix(cur.index)  # multiplication by g^block
        k = block
        while k < order:
            m = min(block, order - k)
            prev = self.digits[exp[k - block:k - block + m]]
            exp[k:k + m] = self.from_digits((prev @ step.T) % p)
            k += m
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        if len(np.unique(exp)) != order:
            raise AssertionError("antilog table is not a bijection")
        return exp, log

    @property
    def exp_table(self) -> np.ndarray:
        return self._exp_log[0]

    @property
    def log_table(self) -> np.ndarray:
        return self._exp_log[1]

    def mult_matrix(self, a: int) -> np.ndarray:
        """n x n matrix M over F_p with coords(a*x) = M @ coords(x)."""
        ca = self.element(int(a)).coeffs
        cols = []
        for j in range(self.n):
            basis = [0] * j + [1]
            cols.append(self._mulc(ca, basis))
        return np.array(cols, dtype=np.int64).T

    # -- vectorised arithmetic on index arrays ---------------------------------------
    def add(self, a, b) -> np.ndarray:
        d = self.digits
        return self.from_digits(d[np.asarray(a)] + d[np.asarray(b)])

    def sub(self, a, b) -> np.ndarray:
        d = self.digits
        return self.from_digits(d[np.asarray(a)] - d[np.asarray(b)])

    def neg(self, a) -> np.ndarray:
        return self.from_digits(-self.digits[np.asarray(a)])

    def scale(self, c: int, a) -> np.ndarray:
        """Multiply by the prime-field scalar c."""
        return self.from_digits(c * self.digits[np.asarray(a)])

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        exp, log = self._exp_log
        r = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, r)

    def pow(self, a, e: int) -> np.ndarray:
        """a^e with 0^0 = 1 and 0^e = 0 otherwise (also for negative e)."""
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        exp, log = self._exp_log
        r = exp[(log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def inv(self, a) -> np.ndarray:
        """Inverse with the convention 0^{-1} = 0."""
        return self.pow(a, -1)

    def div(self, a, b) -> np.ndarray:
        return self.mul(a, self.inv(b))

    # -- subfields and traces ---------------------------------------------------------
    def subfield_generator(self, k: int) -> int:
        if self.n % k:
            raise NotADivisor(f"{k} does not divide {self.n}")
        return (self.g ** ((self.q - 1) // (self.p**k - 1))).index

    @lru_cache(maxsize=None)
    def subfield(self, k: int) -> Field:
        """GF(p^k) as a standalone field, defined by the minimal polynomial of the
        designated subfield generator g^((p^n-1)/(p^k-1))."""
        if self.n % k:
            raise NotADivisor(f"{k} does not divide {self.n}")
        if k == self.n:
            return self
        if k == 1:
            return field_new(self.p, 1, [0, 1])
        h = self.element(self.subfield_generator(k))
        powers = [self.one]
        for _ in range(k):
            powers.append(powers[-1] * h)
        a = np.array([pw.coeffs for pw in powers[:k]], dtype=np.int64).T
        c = solve_mod(a, powers[k].coeffs, self.p)
        modulus = [(-int(x)) % self.p for x in c] + [1]
        return field_new(self.p, k, modulus)

    @lru_cache(maxsize=None)
    def _embedding(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        sub = self.subfield(k)
        if sub is self:
            ident = np.arange(self.q, dtype=np.int64)
            return ident, ident
        if k == 1:
            basis = [self.one]
        else:
            h = self.element(self.subfield_generator(k))
            basis = [self.one]
            for _ in range(k - 1):
                basis.append(basis[-1] * h)
        hm = np.array([b.coeffs for b in basis], dtype=np.int64)  # (k, n)
        emb = self.from_digits(sub.digits @ hm)
        res = np.full(self.q, -1, dtype=np.int64)
        res[emb] = np.arange(sub.q, dtype=np.int64)
        return emb, res

    def embed(self, k: int, sub_idx) -> np.ndarray:
        """Image in this field of elements of ``subfield(k)``."""
        return self._embedding(k)[0][np.asarray(sub_idx)]

    def restrict(self, k: int, idx) -> np.ndarray:
        """Inverse of :meth:`embed`; raises if an element lies outside the subfield."""
        r = self._embedding(k)[1][np.asarray(idx)]
        if np.any(r < 0):
            raise ValueError(f"element not in the subfield GF({self.p}^{k})")
        return r

    def in_subfield(self, k: int, idx) -> np.ndarray:
        return self._embedding(k)[1][np.asarray(idx)] >= 0

    def trace(self, k: int, a) -> np.ndarray:
        """Tr_k^n on index arrays, returned as indices of ``subfield(k)``."""
        if self.n % k:
            raise NotADivisor(f"{k} does not divide {self.n}")
        a = np.asarray(a, dtype=np.int64)
        acc = a
        cur = a
        for _ in range(self.n // k - 1):
            cur = self.pow(cur, self.p**k)
            acc = self.add(acc, cur)
        return self.restrict(k, acc)

    @cached_property
    def trace_form(self) -> np.ndarray:
        """Gram matrix T[i, j] = Tr_1^n(x^i x^j) of the trace bilinear form."""
        basis = [self.element([0] * i + [1]) for i in range(self.n)]
        return np.array([[(bi * bj).trace(1).coeffs[0] for bj in basis] for bi in basis],
                        dtype=np.int64)

    @cached_property
    def trace_form_inverse(self) -> np.ndarray:
        inv = inv_mod(self.trace_form, self.p)
        if inv is None:
            raise AssertionError("trace form is degenerate")
        return inv

    def isomorphism_to(self, other: Field) -> np.ndarray:
        """Index map self -> other sending the basis root to the least root of
        self.modulus in ``other``."""
        if (self.p, self.n) != (other.p, other.n):
            raise FieldMismatch(f"{self} and {other} are not isomorphic")
        if self == other:
            return np.arange(self.q, dtype=np.int64)
        xs = np.arange(other.q, dtype=np.int64)
        val = np.zeros(other.q, dtype=np.int64)
        for c in reversed(self.modulus):
            val = other.add(other.mul(val, xs), np.full(other.q, c % self.p))
        root = int(np.nonzero(val == 0)[0][0])
        powers = [other.one]
        r = other.element(root)
        for _ in range(self.n - 1):
            powers.append(powers[-1] * r)
        hm = np.array([pw.coeffs for pw in powers], dtype=np.int64)
        return other.from_digits(self.digits @ hm)


class FieldElement:
    """Immutable element of a :class:`Field`, arithmetic by polynomial reduction."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    @property
    def index(self) -> int:
        return sum(c * self.field.p**i for i, c in enumerate(self.coeffs))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"{self.field.p}^{self.field.n}[{','.join(map(str, self.coeffs))}]"

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.field.element(other % self.field.p).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other
        if isinstance(other, int):
            return self.field.element(other % self.field.p)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field._mulc(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __pow__(self, e: int):
        """Square-and-multiply; exponent reduced mod p^n - 1 for nonzero bases,
        negative powers of 0 are 0 by convention."""
        f = self.field
        if e == 0:
            return f.one
        if not self:
            return f.zero
        e %= f.q - 1
        result = f.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def trace(self, k: int) -> FieldElement:
        """Tr_k^n(self) as an element of ``field.subfield(k)``."""
        f = self.field
        if f.n % k:
            raise NotADivisor(f"{k} does not divide {f.n}")
        acc = self
        cur = self
        for _ in range(f.n // k - 1):
            cur = cur ** (f.p**k)
            acc = acc + cur
        sub = f.subfield(k)
        if sub is f:
            return acc
        if k == 1:
            if any(acc.coeffs[1:]):
                raise AssertionError("trace left the prime field")
            return sub.element(acc.coeffs[0])
        return sub.element(int(f.restrict(k, acc.index)))


def _validate(p: int, n: int, modulus: Sequence[int]) -> tuple[int, ...]:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise DegreeMismatch("extension degree must be >= 1")
    m = [int(c) % p for c in modulus]
    _trim(m)
    if len(m) - 1 != n:
        raise DegreeMismatch(f"modulus has degree {len(m) - 1}, expected {n}")
    if m[-1] != 1:
        raise DegreeMismatch("modulus must be monic")
    if not is_irreducible(p, m):
        raise NotIrreducible(f"modulus {m} is reducible over F_{p}")
    return tuple(m)


@lru_cache(maxsize=None)
def _field_cached(p: int, n: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, n, modulus)


def field_new(p: int, n: int, modulus: Iterable[int] | None = None) -> Field:
    """Validated field; identical parameters give the identical object."""
    if modulus is None:
        return GF(p, n)
    return _field_cached(p, n, _validate(p, n, list(modulus)))


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    try:
        return DEFAULT_MODULI[(p, n)]
    except KeyError:
        if n == 1:
            return (0, 1)
        return least_primitive_modulus(p, n)


def GF(p: int, n: int = 1) -> Field:
    """Field with the default modulus (prime fields always use x)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return _field_cached(p, n, _validate(p, n, default_modulus(p, n)))
