"""Lambda values: e_k evaluated on vectors with prescribed multiplicities.

If the nonzero element ``a_i`` occurs ``m_i`` times in a vector, then ``e_k``
of that vector is the ``z^k`` coefficient of ``prod_i (1 + a_i z)^{m_i}``.
Everything here is built on that truncated product.

The hypercube counter exploits ``(1 + a z)^{p^l} = 1 + a^{p^l} z^{p^l}``: writing
every multiplicity ``b in [0, D)`` (``D = p^m``) in base p splits the product into
``m`` independent factors ``g_l(z^{p^l})`` whose digits range over ``[0, p)``.
Each factor's distribution is found by a dimension-by-dimension DP with state
deduplication, and the factors are then combined level by level.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded
from .field import FieldCtx, LinearMap, resolve_map

DEFAULT_HYPERCUBE_BUDGET = 2**28


def period_D(p: int, k: int) -> int:
    """p^(floor(log_p k) + 1), the period of Lambda in every multiplicity."""
    if k < 1:
        raise ValueError("k must be >= 1")
    D = p
    while D <= k:
        D *= p
    return D


def binom_mod_p(m: int, k: int, p: int) -> int:
    """C(m, k) mod p by Lucas' theorem."""
    if k < 0 or m < 0:
        return 0
    result = 1
    while m or k:
        mi, ki = m % p, k % p
        if ki > mi:
            return 0
        # small digits: the exact binomial is tiny
        result = result * _small_binom(mi, ki) % p
        m //= p
        k //= p
    return result


def _small_binom(n, k):
    num = 1
    for i in range(k):
        num = num * (n - i) // (i + 1)
    return num


@dataclass(frozen=True)
class MultiplicityVector:
    """Distinct nonzero elements paired with non-negative multiplicities."""

    elements: tuple[int, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(a) for a in self.elements))
        object.__setattr__(self, "counts", tuple(int(m) for m in self.counts))
        if len(self.elements) != len(self.counts):
            raise ValueError("elements and counts differ in length")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("elements must be distinct")
        if any(a == 0 for a in self.elements):
            raise ValueError("elements must be nonzero")
        if any(m < 0 for m in self.counts):
            raise ValueError("multiplicities must be non-negative")

    @classmethod
    def full_field(cls, ctx: FieldCtx, counts: Sequence[int]) -> "MultiplicityVector":
        """Multiplicities of 1, 2, ..., q-1 in index order."""
        if len(counts) != ctx.q - 1:
            raise ValueError(f"expected {ctx.q - 1} multiplicities")
        return cls(tuple(range(1, ctx.q)), tuple(counts))

    @property
    def size(self) -> int:
        return sum(self.counts)

    def explicit(self) -> list[int]:
        """An explicit vector realising the multiplicities."""
        out = []
        for a, m in zip(self.elements, self.counts):
            out.extend([a] * m)
        return out


def binomial_power(ctx: FieldCtx, a: int, m: int, k_max: int) -> list[int]:
    """Coefficients of (1 + a z)^m up to z^k_max: C(m, j) a^j."""
    return [ctx.smul(binom_mod_p(m, j, ctx.p), ctx.pow(a, j)) for j in range(k_max + 1)]


def series_mul(ctx: FieldCtx, f, g, k_max: int) -> list[int]:
    """Product of two truncated series modulo z^(k_max+1)."""
    out = [0] * (k_max + 1)
    add, mul = ctx.add, ctx.mul
    for i, fi in enumerate(f):
        if not fi or i > k_max:
            continue
        for j in range(min(len(g), k_max + 1 - i)):
            if g[j]:
                out[i + j] = add(out[i + j], mul(fi, g[j]))
    return out


def lambda_series(ctx: FieldCtx, k_max: int, mv: MultiplicityVector) -> list[int]:
    """[Lambda(0, m), ..., Lambda(k_max, m)] for the multiplicity vector ``mv``.

    Each factor ``(1 + a z)^m`` is convolved in turn, which is exactly the
    one-factor-at-a-time recursion ``Lambda_{a_1..a_{l+1}}`` in terms of
    ``Lambda_{a_1..a_l}``.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    series = [1] + [0] * k_max
    for a, m in zip(mv.elements, mv.counts):
        if m:
            series = series_mul(ctx, series, binomial_power(ctx, a, m, k_max), k_max)
    return series


def lambda_value(ctx: FieldCtx, k: int, mv: MultiplicityVector) -> int:
    if k < 0:
        return 0
    return lambda_series(ctx, k, mv)[k]


def elementary_symmetric(ctx: FieldCtx, xs: Sequence[int], k_max: int) -> list[int]:
    """[e_0(xs), ..., e_k_max(xs)] by the usual one-variable-at-a-time update."""
    e = [1] + [0] * k_max
    for x in xs:
        if not x:
            continue
        for i in range(k_max, 0, -1):
            e[i] = ctx.add(e[i], ctx.mul(x, e[i - 1]))
    return e


@dataclass
class ValueHistogram:
    """Counts of hypercube points by (mapped) Lambda value."""

    ctx: FieldCtx
    counts: dict[int, int]
    k: object = None
    D: int | None = None
    L: LinearMap | None = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def dense(self) -> list[int]:
        return [self.counts.get(b, 0) for b in range(self.ctx.q)]

    def to_json(self) -> dict:
        return {
            "field": self.ctx.to_json(),
            "k": self.k,
            "D": self.D,
            "L": self.L.label() if self.L is not None else "id",
            "counts": [{"beta": b, "count": c} for b, c in enumerate(self.dense())],
        }


# -- hypercube counting -------------------------------------------------------

def _digit_distribution(ctx: FieldCtx, deg: int) -> Counter:
    """Distribution of prod_a (1 + a w)^{d_a} mod w^(deg+1) over d in [0,p)^(q-1).

    Dimension-by-dimension DP; states are coefficient tuples without the
    leading 1, identical states are merged after every dimension.
    """
    p = ctx.p
    states = Counter({(0,) * deg: 1})
    for a in range(1, ctx.q):
        factors = [binomial_power(ctx, a, d, deg) for d in range(p)]
        nxt = Counter()
        for state, count in states.items():
            series = (1,) + state
            for f in factors:
                nxt[tuple(series_mul(ctx, series, f, deg)[1:])] += count
        states = nxt
    return states


def _truncate(dist: Counter, deg: int) -> Counter:
    out = Counter()
    for state, count in dist.items():
        out[state[:deg]] += count
    return out


def _spread(state, step, k_max):
    """Series g(w) with w = z^step as a length k_max+1 coefficient list."""
    out = [0] * (k_max + 1)
    out[0] = 1
    for i, c in enumerate(state, start=1):
        if i * step > k_max:
            break
        out[i * step] = c
    return out


def _combine_levels(ctx: FieldCtx, base: Counter, levels: int, k_max: int) -> Counter:
    """Distribution of prod_{l=1}^{levels-1} g_l(z^{p^l}) mod z^(k_max+1)."""
    p = ctx.p
    H = Counter({(1,) + (0,) * k_max: 1})
    for level in range(levels - 1, 0, -1):
        step = p**level
        deg = k_max // step
        if deg == 0:
            # the level cannot reach z^k_max; it only multiplies the counts
            H = Counter({h: c * p ** (ctx.q - 1) for h, c in H.items()})
            continue
        factor = _truncate(base, deg)
        nxt = Counter()
        for h, hc in H.items():
            for g, gc in factor.items():
                nxt[tuple(series_mul(ctx, h, _spread(g, step, k_max), k_max))] += hc * gc
        H = nxt
    return H


def lambda_combo_counts(
    ctx: FieldCtx,
    ks: Sequence[int],
    betas: Sequence[int],
    D: int,
    L=None,
) -> dict[int, int]:
    """Histogram of L(sum_t beta_t Lambda(k_t, b)) over b in [0, D)^(q-1).

    ``D`` must be a power of p that is a period for every ``k_t`` (any
    ``D > max(ks)`` works).  Degrees ``k_t = 0`` contribute the constant 1.
    """
    L = resolve_map(ctx, L)
    p = ctx.p
    levels = 0
    d = 1
    while d < D:
        d *= p
        levels += 1
    if d != D:
        raise ValueError("D must be a power of p")
    k_max = max(ks) if ks else 0
    if D <= k_max:
        raise ValueError("D must exceed every degree")

    base = _digit_distribution(ctx, k_max)
    H = _combine_levels(ctx, base, levels, k_max)
    G = _truncate(base, k_max)

    h_states = np.array(list(H.keys()), dtype=np.int64).reshape(len(H), k_max + 1)
    h_counts = np.array(list(H.values()), dtype=np.int64)
    g_states = np.array([(1,) + s for s in G.keys()], dtype=np.int64).reshape(len(G), k_max + 1)
    g_counts = np.array(list(G.values()), dtype=np.int64)

    # final value for every (H, g0) pair: sum_t beta_t sum_i H_i g_{k_t - i}
    total = np.zeros(ctx.q, dtype=np.int64)
    useful = [i for i in range(k_max + 1) if h_states[:, i].any()]
    chunk = max(1, 2**22 // max(1, len(G)))
    for start in range(0, len(H), chunk):
        hs = h_states[start:start + chunk]
        value = np.zeros((len(hs), len(G)), dtype=np.int64)
        for k_t, beta in zip(ks, betas):
            if not beta:
                continue
            coeff = np.zeros_like(value)
            for i in useful:
                if i > k_t:
                    break
                term = ctx.mul_arr(hs[:, i][:, None], g_states[:, k_t - i][None, :])
                coeff = ctx.add_arr(coeff, term)
            value = ctx.add_arr(value, ctx.mul_arr(coeff, beta))
        mapped = L.array[value]
        weights = h_counts[start:start + chunk][:, None] * g_counts[None, :]
        for beta in range(ctx.q):
            total[beta] += int(weights[mapped == beta].sum())
    return {b: int(c) for b, c in enumerate(total)}


def hypercube_histogram(
    ctx: FieldCtx,
    k: int,
    L=None,
    budget: int | None = DEFAULT_HYPERCUBE_BUDGET,
) -> ValueHistogram:
    """Exact counts of L(Lambda_{F_q^x}(k, b)) for b in [0, D)^(q-1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    L = resolve_map(ctx, L)
    D = period_D(ctx.p, k)
    check_hypercube_budget(ctx, D, budget)
    counts = lambda_combo_counts(ctx, (k,), (1,), D, L)
    return ValueHistogram(ctx, counts, k=k, D=D, L=L)


def check_hypercube_budget(ctx: FieldCtx, D: int, budget: int | None):
    points = D ** (ctx.q - 1)
    if budget is not None and points > budget:
        raise BudgetExceeded(points, budget, "hypercube points")
    return points


def hypercube_histogram_naive(ctx: FieldCtx, k: int, L=None, D: int | None = None) -> dict[int, int]:
    """Point-by-point enumeration of the hypercube; for small cases and tests."""
    L = resolve_map(ctx, L)
    D = D or period_D(ctx.p, k)
    counts = {b: 0 for b in range(ctx.q)}
    elements = tuple(range(1, ctx.q))
    for b in itertools.product(range(D), repeat=ctx.q - 1):
        xs = MultiplicityVector(elements, b).explicit()
        counts[L(elementary_symmetric(ctx, xs, k)[k])] += 1
    return counts
