"""Arithmetic in GF(p^r).

Elements are plain integers in ``range(q)``: the element ``sum c_i x^i`` of the
polynomial basis is stored as ``sum c_i p^i``.  So ``0`` and ``1`` are the
identities and ``0..p-1`` is the prime subfield.  Multiplication goes through
discrete log / antilog tables built once per field.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    FieldDivisionByZero,
    FieldMismatch,
    NotAdditive,
    NotHomogeneous,
    NotPrime,
    Reducible,
    TooLarge,
)

MAX_ORDER = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomials over F_p as coefficient lists, lowest degree first ----------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a modulo b over F_p (b nonzero, lists low-first)."""
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p) if p > 2 else 1
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..r//2."""
    r = len(modulus) - 1
    for d in range(1, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(modulus, divisor, p):
                return False
    return True


def default_modulus(p: int, r: int) -> tuple[int, ...]:
    """Least monic irreducible of degree r, ordered by (c_{r-1}, ..., c_0)."""
    for high_first in itertools.product(range(p), repeat=r):
        modulus = tuple(reversed(high_first)) + (1,)
        if is_irreducible(modulus, p):
            return modulus
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """The finite field F_q, q = p^r, defined by a monic irreducible modulus.

    ``modulus`` lists coefficients ``c_0..c_r`` (lowest first, ``c_r == 1``).
    Instances are immutable and compare equal when p, r and modulus agree.
    """

    p: int
    r: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.r)
        self._build_tables()

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, r={self.r}, modulus={list(self.modulus)})"

    # -- table construction -------------------------------------------------

    def _digits(self, a):
        p = self.p
        return [(a // p**i) % p for i in range(self.r)]

    def _from_digits(self, d):
        return sum(c * self.p**i for i, c in enumerate(d))

    def _mul_slow(self, a, b):
        p, r = self.p, self.r
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(self.modulus), p)
        return self._from_digits(rem + [0] * (r - len(rem)))

    def _build_tables(self):
        q, p, r = self.q, self.p, self.r
        digits = np.array([self._digits(a) for a in range(q)], dtype=np.int64).reshape(q, r)
        object.__setattr__(self, "_digit_table", digits)
        object.__setattr__(self, "_place", np.array([p**i for i in range(r)], dtype=np.int64))
        # multiplication by x is cheap; find a generator of F_q^x by order check
        order = q - 1
        factors = [f for f in range(2, order + 1) if order % f == 0 and is_prime(f)]
        gen = None
        for g in range(1, q):
            if order == 1 or all(self._pow_slow(g, order // f) != 1 for f in factors):
                gen = g
                break
        exp = [0] * (2 * order if order else 1)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, gen)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        neg = [self._from_digits([(-c) % p for c in self._digits(a)]) for a in range(q)]
        object.__setattr__(self, "generator", gen)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)
        object.__setattr__(self, "_neg", neg)
        object.__setattr__(self, "_exp_arr", np.array(exp, dtype=np.int64))
        object.__setattr__(self, "_log_arr", np.array(log, dtype=np.int64))
        object.__setattr__(self, "_neg_arr", np.array(neg, dtype=np.int64))

    def _pow_slow(self, a, e):
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    # -- scalar arithmetic ----------------------------------------------------

    def elements(self):
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.q <= 4096:
            return self._add_table[a][b]
        return int(self.add_arr(a, b))

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldDivisionByZero("inverse of zero")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise FieldDivisionByZero("negative power of zero")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def smul(self, c: int, a: int) -> int:
        """Integer multiple c*a (c reduced mod p)."""
        return self.mul(c % self.p, a)

    def trace(self, x: int) -> int:
        total = 0
        y = x
        for _ in range(self.r):
            total = self.add(total, y)
            y = self.pow(y, self.p)
        return total

    @functools.cached_property
    def _add_table(self):
        return self.add_arr(
            np.arange(self.q)[:, None], np.arange(self.q)[None, :]
        ).tolist()

    # -- vectorised arithmetic on integer arrays ------------------------------

    def add_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.r == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for place in self._place:
            out += (((a // place) + (b // place)) % self.p) * place
        return out

    def mul_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp_arr[self._log_arr[a] + self._log_arr[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_arr(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        out = self._exp_arr[(self._log_arr[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    # -- presentation ----------------------------------------------------------

    def format(self, a: int, var: str = "a") -> str:
        """Human-readable form, e.g. ``a+1`` or ``2*a^2+a``."""
        if self.r == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self._digits(a)))):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldCtx":
        return make_field(data["p"], data["r"], data.get("modulus"))


@functools.lru_cache(maxsize=None)
def _cached_field(p, r, modulus):
    return FieldCtx(p, r, modulus)


def make_field(p: int, r: int = 1, modulus=None) -> FieldCtx:
    """Build GF(p^r).  Without a modulus the least monic irreducible is used."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if p**r > MAX_ORDER:
        raise TooLarge(f"q = {p}^{r} exceeds {MAX_ORDER}")
    if modulus is None:
        modulus = default_modulus(p, r)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {r}")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(modulus, p):
            raise Reducible(f"{list(modulus)} factors over F_{p}")
    return _cached_field(p, r, modulus)


class LinearMap:
    """An F_p-linear map F_q -> F_q stored as its full value table."""

    def __init__(self, ctx: FieldCtx, table, name: str | None = None):
        table = [int(t) for t in table]
        if len(table) != ctx.q:
            raise ValueError(f"table must have {ctx.q} entries")
        if any(not 0 <= t < ctx.q for t in table):
            raise ValueError("table entries must be field elements")
        self.ctx = ctx
        self.table = tuple(table)
        self.name = name
        self._check()
        self.array = np.array(self.table, dtype=np.int64)

    def _check(self):
        ctx, L = self.ctx, self.table
        if L[0] != 0:
            raise NotAdditive("L(0) must be 0")
        if ctx.q <= 256:
            pairs = itertools.product(range(ctx.q), repeat=2)
        else:
            # additivity on all of F_q follows from additivity against a basis
            basis = [ctx.p**i for i in range(ctx.r)]
            pairs = ((a, b) for a in range(ctx.q) for b in basis)
        for a, b in pairs:
            if L[ctx.add(a, b)] != ctx.add(L[a], L[b]):
                raise NotAdditive(f"L({a}+{b}) != L({a})+L({b})")
        for c in range(ctx.p):
            for a in range(ctx.q):
                if L[ctx.smul(c, a)] != ctx.smul(c, L[a]):
                    raise NotHomogeneous(f"L({c}*{a}) != {c}*L({a})")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.ctx == other.ctx and self.table == other.table

    def __hash__(self):
        return hash((self.ctx, self.table))

    def __repr__(self):
        return f"LinearMap({self.name or list(self.table)})"

    @property
    def is_identity(self) -> bool:
        return self.table == tuple(range(self.ctx.q))

    def label(self):
        """JSON-friendly description: a built-in name or the raw table."""
        return self.name if self.name else list(self.table)


def make_linear_map(ctx: FieldCtx, table) -> LinearMap:
    return LinearMap(ctx, table)


def identity_map(ctx: FieldCtx) -> LinearMap:
    return LinearMap(ctx, range(ctx.q), name="id")


def trace_map(ctx: FieldCtx) -> LinearMap:
    return LinearMap(ctx, [ctx.trace(x) for x in range(ctx.q)], name="trace")


def resolve_map(ctx: FieldCtx, L) -> LinearMap:
    """Accept None / "id" / "trace" / a table / a LinearMap."""
    if L is None or L == "id":
        return identity_map(ctx)
    if L == "trace":
        return trace_map(ctx)
    if isinstance(L, LinearMap):
        if L.ctx != ctx:
            raise FieldMismatch("linear map belongs to another field")
        return L
    return LinearMap(ctx, L)
