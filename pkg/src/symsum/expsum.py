"""Value counts and exponential sums of functions over F_q.

``S_L(F; X) = sum_y X^{L(F(y))}`` is returned as an integer-valued
:class:`~symsum.qalgebra.GroupAlgebraElement` whose coefficient at ``X^beta``
is the number of inputs with ``L(F(y)) = beta``.

Three targets are understood:

* :class:`SymmetricSpec` -- ``sum_t beta_t e_{n,k_t}``; summed over
  multiplicity compositions of n with multinomial weights by default.
* :class:`PolyFunction` -- an arbitrary function F_q^j -> F_q.
* :class:`Perturbation` -- a symmetric target plus a PolyFunction on the first
  j variables; always enumerated point by point.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, NonRationalResult, ParseError
from .field import FieldCtx, LinearMap, resolve_map
from .lambdas import MultiplicityVector, elementary_symmetric, lambda_series, period_D
from .qalgebra import CyclotomicNumber, GroupAlgebraElement

DEFAULT_SUM_BUDGET = 2**24
DEFAULT_TERM_BUDGET = 2**24


# -- polynomial functions -----------------------------------------------------

def reduce_exponent(e: int, q: int) -> int:
    """Exponent of the reduced monomial equal to x^e as a function on F_q."""
    if e == 0:
        return 0
    return (e - 1) % (q - 1) + 1


def _input_grid(ctx: FieldCtx, j: int, start: int = 0, stop: int | None = None):
    """Per-variable coordinate arrays for inputs start..stop-1 (x_1 least significant)."""
    stop = ctx.q**j if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    return [(idx // ctx.q**i) % ctx.q for i in range(j)]


def _interpolation_matrix(ctx: FieldCtx):
    """Row e gives the coefficient of x^e of the univariate interpolant."""
    q = ctx.q
    M = [[0] * q for _ in range(q)]
    M[0][0] = 1
    for e in range(1, q - 1):
        for a in range(1, q):
            M[e][a] = ctx.neg(ctx.pow(a, q - 1 - e))
    minus_one = ctx.neg(1)
    M[q - 1] = [minus_one] * q
    return M


def interpolate_anf(ctx: FieldCtx, j: int, table) -> list[tuple[tuple[int, ...], int]]:
    """Reduced polynomial (exponents < q) agreeing with ``table`` on F_q^j.

    Equivalent to expanding sum_a f(a) prod_i (1 - (X_i - a_i)^(q-1)); done one
    variable at a time with the univariate interpolation matrix.
    """
    q = ctx.q
    if j == 0:
        c = int(table[0])
        return [((), c)] if c else []
    arr = np.asarray(table, dtype=np.int64).reshape([q] * j)
    # C-order reshape puts x_1 on the last axis; flip so arr[x_1, ..., x_j]
    arr = arr.transpose(list(range(j - 1, -1, -1)))
    M = _interpolation_matrix(ctx)
    for axis in range(j):
        moved = np.moveaxis(arr, axis, 0)
        out = np.zeros_like(moved)
        for e in range(q):
            acc = np.zeros(moved.shape[1:], dtype=np.int64)
            for a in range(q):
                if M[e][a]:
                    acc = ctx.add_arr(acc, ctx.mul_arr(moved[a], M[e][a]))
            out[e] = acc
        arr = np.moveaxis(out, 0, axis)
    terms = []
    for exps in itertools.product(range(q), repeat=j):
        c = int(arr[exps])
        if c:
            terms.append((tuple(exps), c))
    terms.sort(key=lambda t: (sum(t[0]), t[0][::-1]))
    return terms


def evaluate_anf(ctx: FieldCtx, j: int, terms) -> list[int]:
    """Value table of a polynomial, inputs in mixed-radix order."""
    xs = _input_grid(ctx, j)
    n = ctx.q**j
    out = np.zeros(n, dtype=np.int64)
    for exps, c in terms:
        mono = np.full(n, c, dtype=np.int64)
        for x, e in zip(xs, exps):
            if e:
                mono = ctx.mul_arr(mono, ctx.pow_arr(x, e))
        out = ctx.add_arr(out, mono)
    return out.tolist()


_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$", re.IGNORECASE)


def parse_anf(text: str):
    """Parse ``"3*x1^2*x2 + x3 + 1"`` into (terms, arity).

    Coefficients are element indices; monomials may repeat and are summed later.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    raw = []
    arity = 0
    for chunk in text.split("+"):
        chunk = chunk.strip().replace(" ", "")
        if not chunk:
            raise ParseError(f"empty term in {text!r}")
        coeff = 1
        exps: dict[int, int] = {}
        for factor in chunk.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _VAR.match(factor)
            if not m:
                raise ParseError(f"cannot parse factor {factor!r}")
            var = int(m.group(1))
            if var < 1:
                raise ParseError("variables are numbered from x1")
            exps[var] = exps.get(var, 0) + int(m.group(2) or 1)
            arity = max(arity, var)
        raw.append((exps, coeff))
    return raw, arity


@dataclass(frozen=True, eq=False)
class PolyFunction:
    """A function F_q^j -> F_q: full value table plus (optionally) its ANF.

    Input ``(x_1, ..., x_j)`` sits at table position ``sum_i x_i q^(i-1)``.
    """

    ctx: FieldCtx
    j: int
    table: tuple[int, ...]
    anf: tuple[tuple[tuple[int, ...], int], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if len(self.table) != self.ctx.q**self.j:
            raise ValueError(f"table must have q^j = {self.ctx.q**self.j} entries")
        if self.anf is not None:
            object.__setattr__(self, "anf", tuple((tuple(e), int(c)) for e, c in self.anf))

    @classmethod
    def from_table(cls, ctx: FieldCtx, j: int, table, with_anf: bool = True) -> "PolyFunction":
        table = tuple(int(v) for v in table)
        anf = interpolate_anf(ctx, j, table) if with_anf else None
        return cls(ctx, j, table, anf)

    @classmethod
    def from_anf(cls, ctx: FieldCtx, j: int, terms) -> "PolyFunction":
        """Build from (exponent-vector, coefficient) pairs; exponents are reduced."""
        combined: dict[tuple[int, ...], int] = {}
        for exps, c in terms:
            exps = tuple(exps) + (0,) * (j - len(exps))
            if len(exps) != j:
                raise ValueError("exponent vector longer than the arity")
            key = tuple(reduce_exponent(e, ctx.q) for e in exps)
            combined[key] = ctx.add(combined.get(key, 0), c)
        anf = sorted(((e, c) for e, c in combined.items() if c),
                     key=lambda t: (sum(t[0]), t[0][::-1]))
        return cls(ctx, j, evaluate_anf(ctx, j, anf), anf)

    @classmethod
    def parse(cls, ctx: FieldCtx, text: str, j: int | None = None) -> "PolyFunction":
        raw, arity = parse_anf(text)
        j = arity if j is None else j
        if arity > j:
            raise ParseError(f"polynomial uses x{arity} but arity is {j}")
        terms = []
        for exps, coeff in raw:
            if not 0 <= coeff < ctx.q:
                raise ParseError(f"coefficient {coeff} is not an element index of F_{ctx.q}")
            vec = [0] * j
            for var, e in exps.items():
                vec[var - 1] = e
            terms.append((tuple(vec), coeff))
        return cls.from_anf(ctx, j, terms)

    @classmethod
    def zero(cls, ctx: FieldCtx, j: int = 0) -> "PolyFunction":
        return cls(ctx, j, (0,) * ctx.q**j, ())

    def format_anf(self) -> str:
        anf = self.anf if self.anf is not None else interpolate_anf(self.ctx, self.j, self.table)
        if not anf:
            return "0"
        out = []
        for exps, c in anf:
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            out.append("*".join(factors))
        return " + ".join(out)

    def __call__(self, *xs: int) -> int:
        idx = 0
        for i, x in enumerate(xs):
            idx += x * self.ctx.q**i
        return self.table[idx]

    def __eq__(self, other):
        return (isinstance(other, PolyFunction) and self.ctx == other.ctx
                and self.j == other.j and self.table == other.table)

    def __hash__(self):
        return hash((self.ctx, self.j, self.table))

    def value_counts(self, L=None) -> dict[int, int]:
        L = resolve_map(self.ctx, L)
        counts = dict.fromkeys(range(self.ctx.q), 0)
        for v in self.table:
            counts[L(v)] += 1
        return counts

    def is_balanced(self) -> bool:
        if self.j == 0:
            return False
        target = self.ctx.q ** (self.j - 1)
        return all(c == target for c in self.value_counts().values())


@dataclass(frozen=True)
class SymmetricSpec:
    """sum_t betas[t] * e_{n, ks[t]}; ``n`` is optional and checked if given."""

    ks: tuple[int, ...]
    betas: tuple[int, ...]
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        object.__setattr__(self, "betas", tuple(int(b) for b in self.betas))
        if len(self.ks) != len(self.betas):
            raise ValueError("ks and betas differ in length")
        if any(k < 1 for k in self.ks):
            raise ValueError("degrees must be >= 1")
        if any(a >= b for a, b in zip(self.ks, self.ks[1:])):
            raise ValueError("degrees must be strictly increasing")

    @classmethod
    def single(cls, k: int, n: int | None = None) -> "SymmetricSpec":
        return cls((k,), (1,), n)


@dataclass(frozen=True)
class Perturbation:
    """e_{n,k}-style symmetric part plus F on the first F.j variables."""

    sym: SymmetricSpec
    F: PolyFunction


# -- symmetric sums by compositions ------------------------------------------

def compositions(n: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to n."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def multinomial(parts) -> int:
    out = 1
    total = 0
    for m in parts:
        total += m
        out *= math.comb(total, m)
    return out


def _symmetric_value_fn(ctx: FieldCtx, ks: Sequence[int], betas: Sequence[int]):
    """Value of sum_t beta_t Lambda(k_t, m) as a cached function of m (mod period)."""
    ks = tuple(ks)
    betas = tuple(betas)
    positive = [k for k in ks if k > 0]
    k_max = max(positive) if positive else 0
    D = period_D(ctx.p, k_max) if k_max else 1
    elements = tuple(range(1, ctx.q))

    @functools.lru_cache(maxsize=None)
    def value(residues):
        series = lambda_series(ctx, k_max, MultiplicityVector(elements, residues))
        total = 0
        for k, b in zip(ks, betas):
            if b and k >= 0:
                total = ctx.add(total, ctx.mul(b, series[k]))
        return total

    def at(mults):
        return value(tuple(m % D for m in mults))

    return at


def _symmetric_sum(ctx, n, ks, betas, L, budget):
    count = math.comb(n + ctx.q - 1, ctx.q - 1)
    if budget is not None and count > budget:
        raise BudgetExceeded(count, budget, "compositions")
    value = _symmetric_value_fn(ctx, ks, betas)
    out = [0] * ctx.q
    for comp in compositions(n, ctx.q):
        out[L(value(comp[1:]))] += multinomial(comp)
    return out


def _naive_sum(ctx, n, ks, betas, F, L, budget):
    """Point-by-point enumeration of F_q^n, vectorised in chunks."""
    total = ctx.q**n
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget, "evaluations")
    ks = tuple(ks)
    k_max = max(ks) if ks else 0
    out = np.zeros(ctx.q, dtype=np.int64)
    chunk = 2**16
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        xs = _input_grid(ctx, n, start, stop)
        size = stop - start
        e = [np.ones(size, dtype=np.int64)] + [np.zeros(size, dtype=np.int64) for _ in range(k_max)]
        for x in xs:
            for i in range(k_max, 0, -1):
                e[i] = ctx.add_arr(e[i], ctx.mul_arr(x, e[i - 1]))
        value = np.zeros(size, dtype=np.int64)
        for k, b in zip(ks, betas):
            if b:
                value = ctx.add_arr(value, ctx.mul_arr(e[k], b))
        if F is not None and F.j:
            idx = np.arange(start, stop, dtype=np.int64) % ctx.q**F.j
            value = ctx.add_arr(value, np.asarray(F.table, dtype=np.int64)[idx])
        elif F is not None:
            value = ctx.add_arr(value, F.table[0])
        mapped = np.asarray(L.array)[value]
        out += np.bincount(mapped, minlength=ctx.q)
    return [int(c) for c in out]


def brute_sum(
    ctx: FieldCtx,
    n: int,
    target,
    L=None,
    *,
    budget: int | None = DEFAULT_SUM_BUDGET,
    naive: bool = False,
) -> GroupAlgebraElement:
    """S_L(target; X) as integer value counts over F_q^n."""
    L = resolve_map(ctx, L)
    if isinstance(target, SymmetricSpec):
        if target.n is not None and target.n != n:
            raise ValueError(f"target is for n={target.n}, not {n}")
        if naive:
            counts = _naive_sum(ctx, n, target.ks, target.betas, None, L, budget)
        else:
            counts = _symmetric_sum(ctx, n, target.ks, target.betas, L, budget)
    elif isinstance(target, PolyFunction):
        if target.ctx != ctx:
            raise ValueError("function is defined over another field")
        if n < target.j:
            raise ValueError(f"n={n} is smaller than the arity {target.j}")
        extra = ctx.q ** (n - target.j)
        if budget is not None and ctx.q**target.j > budget:
            raise BudgetExceeded(ctx.q**target.j, budget, "evaluations")
        base = target.value_counts(L)
        counts = [base[b] * extra for b in range(ctx.q)]
    elif isinstance(target, Perturbation):
        if n < target.F.j:
            raise ValueError(f"n={n} is smaller than the arity {target.F.j}")
        counts = _naive_sum(ctx, n, target.sym.ks, target.sym.betas, target.F, L, budget)
    else:
        raise TypeError(f"unsupported target {type(target).__name__}")
    return GroupAlgebraElement(ctx, counts)


def value_counts(ctx: FieldCtx, n: int, target, L=None, **kw) -> dict[int, int]:
    s = brute_sum(ctx, n, target, L, **kw)
    return {b: int(c) for b, c in enumerate(s.coeffs)}


def is_balanced(ctx: FieldCtx, n: int, target, L=None, **kw) -> bool:
    counts = value_counts(ctx, n, target, L, **kw)
    if n == 0:
        return False
    return all(c == ctx.q ** (n - 1) for c in counts.values())


# -- closed formula -------------------------------------------------------------

def _descending_tuples(D: int, length: int):
    """j_1 >= j_2 >= ... >= j_length, each in [0, D)."""
    for combo in itertools.combinations_with_replacement(range(D - 1, -1, -1), length):
        yield combo


def closed_formula_term_count(q: int, D: int) -> int:
    return math.comb(D + q - 2, q - 1) * D ** (q - 1)


@functools.lru_cache(maxsize=64)
def _closed_formula_terms(ctx: FieldCtx, k: int, L: LinearMap):
    """[(j, c_j)] with c_j as q cyclotomic integers (numerators over D^(q-1))."""
    q = ctx.q
    D = period_D(ctx.p, k)
    dims = q - 1
    elements = tuple(range(1, q))
    grid = np.array(list(itertools.product(range(D), repeat=dims)), dtype=np.int64).reshape(-1, dims)
    lam = np.array(
        [L(lambda_series(ctx, k, MultiplicityVector(elements, b))[k]) for b in grid],
        dtype=np.int64,
    )
    # the inner sum pairs j'_1 with b_{q-1}, ..., j'_{q-1} with b_1
    reversed_grid = grid[:, ::-1]
    terms = []
    for js in _descending_tuples(D, dims):
        hist = np.zeros(q * D, dtype=np.int64)
        for perm in set(itertools.permutations(js)):
            expo = (reversed_grid @ np.array(perm, dtype=np.int64)) % D
            hist += np.bincount(lam * D + expo, minlength=q * D)
        hist = hist.reshape(q, D)
        coeffs = [CyclotomicNumber.from_cyclic(D, [int(v) for v in hist[beta]]) for beta in range(q)]
        terms.append((js, coeffs))
    return D, terms


def root_sum(D: int, js: Sequence[int]) -> CyclotomicNumber:
    """1 + xi_D^(-j_1) + ... + xi_D^(-j_s)."""
    vals = [0] * D
    vals[0] += 1
    for j in js:
        vals[(-j) % D] += 1
    return CyclotomicNumber.from_cyclic(D, vals)


def closed_formula_sum(
    ctx: FieldCtx,
    n: int,
    k: int,
    L=None,
    *,
    budget: int | None = DEFAULT_TERM_BUDGET,
) -> GroupAlgebraElement:
    """S_L(e_{n,k}; X) from the cyclotomic closed formula, certified rational."""
    if k < 2:
        raise ValueError("the closed formula needs k > 1; use brute_sum for k = 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    L = resolve_map(ctx, L)
    D = period_D(ctx.p, k)
    needed = closed_formula_term_count(ctx.q, D)
    if budget is not None and needed > budget:
        raise BudgetExceeded(needed, budget, "closed-formula terms")
    D, terms = _closed_formula_terms(ctx, k, L)
    zero = CyclotomicNumber.rational(D, 0)
    acc = [zero] * ctx.q
    for js, coeffs in terms:
        w = root_sum(D, js) ** n
        for beta in range(ctx.q):
            if not coeffs[beta].is_zero():
                acc[beta] = acc[beta] + coeffs[beta] * w
    scale = Fraction(1, D ** (ctx.q - 1))
    out = []
    for beta, value in enumerate(acc):
        if not value.is_rational():
            raise NonRationalResult(f"coefficient of X^{beta} is not rational: {value}")
        out.append(value.to_rational() * scale)
    return GroupAlgebraElement(ctx, out)


# -- perturbations -------------------------------------------------------------

def perturbation_decompose(
    ctx: FieldCtx,
    n: int,
    k: int,
    F: PolyFunction,
    L=None,
    *,
    budget: int | None = DEFAULT_SUM_BUDGET,
) -> GroupAlgebraElement:
    """S_L(e_{n,k} + F; X) by splitting off the first j variables.

    Uses e_k(y) = sum_m e_m(y_1..y_j) e_{k-m}(y_{j+1}..y_n): for every prefix the
    tail is a linear combination of elementary symmetric polynomials in n-j
    variables, summed by compositions.
    """
    L = resolve_map(ctx, L)
    j = F.j
    if n <= j and j:
        raise ValueError("need n > j")

    tail = n - j
    cache: dict[tuple, GroupAlgebraElement] = {}
    total = GroupAlgebraElement(ctx)
    for idx, f_value in enumerate(F.table):
        prefix = [(idx // ctx.q**i) % ctx.q for i in range(j)]
        e_prefix = elementary_symmetric(ctx, prefix, j)
        ks, betas = [], []
        for m in range(min(j, k) + 1):
            if e_prefix[m]:
                ks.append(k - m)
                betas.append(e_prefix[m])
        key = (tuple(ks), tuple(betas))
        if key not in cache:
            cache[key] = GroupAlgebraElement(
                ctx, _tail_sum(ctx, tail, ks, betas, L, budget)
            )
        total = total + cache[key].shift(L(f_value))
    return total


def _tail_sum(ctx, n, ks, betas, L, budget):
    """Composition sum allowing a degree-0 (constant) term."""
    const = 0
    pos_ks, pos_betas = [], []
    for k, b in zip(ks, betas):
        if k == 0:
            const = ctx.add(const, b)
        else:
            pos_ks.append(k)
            pos_betas.append(b)
    order = sorted(range(len(pos_ks)), key=lambda i: pos_ks[i])
    pos_ks = [pos_ks[i] for i in order]
    pos_betas = [pos_betas[i] for i in order]
    if pos_ks:
        counts = _symmetric_sum(ctx, n, pos_ks, pos_betas, L, budget)
    else:
        counts = [0] * ctx.q
        counts[0] = ctx.q**n
    shift = L(const)
    out = [0] * ctx.q
    for beta, c in enumerate(counts):
        out[ctx.add(beta, shift)] += c
    return out
