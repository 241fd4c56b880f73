"""Value-distribution probabilities of e_{n,k} and its perturbations.

Finite-n profiles come from exact composition sums; profiles "at infinity"
from the hypercube average of Lambda values.  All probabilities are exact
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPrime
from .expsum import (
    DEFAULT_SUM_BUDGET,
    PolyFunction,
    SymmetricSpec,
    brute_sum,
    perturbation_decompose,
)
from .field import FieldCtx, LinearMap, is_prime, make_field, resolve_map
from .lambdas import (
    DEFAULT_HYPERCUBE_BUDGET,
    check_hypercube_budget,
    elementary_symmetric,
    lambda_combo_counts,
    period_D,
)
from .qalgebra import GroupAlgebraElement, frac_str


@dataclass
class ProbabilityProfile:
    """A probability generating function plus where it came from.

    ``n`` is None for profiles at infinity.
    """

    pgf: GroupAlgebraElement
    k: int | tuple[int, ...]
    L: LinearMap
    n: int | None = None
    F: PolyFunction | None = None
    betas: tuple[int, ...] | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.pgf.is_pgf():
            raise ValueError("coefficients must be non-negative and sum to 1")

    @property
    def ctx(self) -> FieldCtx:
        return self.pgf.ctx

    @property
    def provenance(self) -> str:
        return "infinity" if self.n is None else f"finite_n({self.n})"

    def __getitem__(self, beta: int) -> Fraction:
        return self.pgf[beta]

    def probabilities(self) -> list[Fraction]:
        return list(self.pgf.coeffs)

    def to_json(self) -> dict:
        out = {
            "field": self.ctx.to_json(),
            "k": list(self.k) if isinstance(self.k, tuple) else self.k,
            "L": self.L.label(),
            "provenance": self.provenance,
            "coefficients": self.pgf.to_json(),
        }
        if self.betas is not None:
            out["betas"] = list(self.betas)
        if self.F is not None:
            out["F"] = self.F.format_anf()
            out["j"] = self.F.j
        return out


def finite_n_pgf(ctx: FieldCtx, n: int, k: int, L=None, *, budget=DEFAULT_SUM_BUDGET) -> ProbabilityProfile:
    """G_{n,k}: distribution of L(e_k(x)) for uniform x in F_q^n."""
    L = resolve_map(ctx, L)
    counts = brute_sum(ctx, n, SymmetricSpec.single(k), L, budget=budget)
    return ProbabilityProfile(counts.scale(Fraction(1, ctx.q**n)), k, L, n=n)


def asymptotic_pgf(ctx: FieldCtx, k: int, L=None, *, budget=DEFAULT_HYPERCUBE_BUDGET) -> ProbabilityProfile:
    """G_k: the n -> infinity limit, averaged over the Lambda hypercube."""
    return asymptotic_pgf_combo(ctx, (k,), (1,), L, budget=budget)


def asymptotic_pgf_combo(
    ctx: FieldCtx,
    ks: Sequence[int],
    betas: Sequence[int],
    L=None,
    *,
    budget=DEFAULT_HYPERCUBE_BUDGET,
) -> ProbabilityProfile:
    """Limit profile of sum_t beta_t e_{n,k_t}.

    Degrees may include 0 (a constant term), which is what the tail of a
    perturbation expansion looks like.  The period is taken from the largest
    degree.
    """
    L = resolve_map(ctx, L)
    ks = tuple(int(k) for k in ks)
    betas = tuple(int(b) for b in betas)
    if len(ks) != len(betas):
        raise ValueError("ks and betas differ in length")
    if not any(betas):
        raise ValueError("at least one coefficient must be nonzero")
    top = max(ks)
    D = period_D(ctx.p, max(top, 1))
    check_hypercube_budget(ctx, D, budget)
    counts = lambda_combo_counts(ctx, ks, betas, D, L)
    total = D ** (ctx.q - 1)
    pgf = GroupAlgebraElement(ctx, [Fraction(counts[b], total) for b in range(ctx.q)])
    if len(ks) == 1 and betas == (1,):
        return ProbabilityProfile(pgf, ks[0], L, meta={"D": D})
    return ProbabilityProfile(pgf, ks, L, betas=betas, meta={"D": D})


def perturbed_pgf(
    ctx: FieldCtx, k: int, F: PolyFunction, L=None, *, budget=DEFAULT_HYPERCUBE_BUDGET
) -> ProbabilityProfile:
    """Limit profile of e_{n,k} + F: G_k * S_L(F; X) / q^j."""
    L = resolve_map(ctx, L)
    base = asymptotic_pgf(ctx, k, L, budget=budget)
    s = brute_sum(ctx, F.j, F, L)
    pgf = base.pgf * s.scale(Fraction(1, ctx.q**F.j))
    return ProbabilityProfile(pgf, k, L, F=F)


def perturbed_pgf_expanded(
    ctx: FieldCtx, k: int, F: PolyFunction, L=None, *, budget=DEFAULT_HYPERCUBE_BUDGET
) -> ProbabilityProfile:
    """Same limit, computed prefix by prefix without the product shortcut.

    For each y in F_q^j the tail ``sum_m e_m(y) e_{n-j,k-m}`` has its own limit
    profile (a combination hypercube); these are shifted by L(F(y)) and averaged.
    """
    L = resolve_map(ctx, L)
    j = F.j
    acc = GroupAlgebraElement(ctx)
    cache = {}
    for idx, value in enumerate(F.table):
        prefix = [(idx // ctx.q**i) % ctx.q for i in range(j)]
        e = elementary_symmetric(ctx, prefix, j)
        ks = tuple(k - m for m in range(min(j, k) + 1) if e[m])
        betas = tuple(e[m] for m in range(min(j, k) + 1) if e[m])
        if (ks, betas) not in cache:
            cache[(ks, betas)] = asymptotic_pgf_combo(ctx, ks, betas, L, budget=budget).pgf
        acc = acc + cache[(ks, betas)].shift(L(value))
    return ProbabilityProfile(acc.scale(Fraction(1, ctx.q**j)), k, L, F=F)


# -- prime fields ----------------------------------------------------------------

def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smith_probability(p: int, t: int) -> Fraction:
    """p_{p+1}(t) over F_p for a prime p > 3 (closed form)."""
    if not is_prime(p) or p <= 3:
        raise BadPrime(f"need a prime p > 3, got {p}")
    t %= p
    if t == 0:
        return Fraction(1, p)
    mu = (p + 1) // 2
    return Fraction(1, p) + Fraction(legendre(2 * t, p), p**mu)


def smith_table(p: int) -> list[Fraction]:
    return [smith_probability(p, t) for t in range(p)]


def smith_cross_check(p: int, *, budget=None) -> tuple[list[Fraction], list[Fraction]]:
    """(closed form, hypercube) for G_{p+1} over F_p."""
    ctx = make_field(p)
    profile = asymptotic_pgf(ctx, p + 1, budget=budget)
    return smith_table(p), profile.probabilities()


def is_digit_power(k: int, p: int) -> bool:
    """True iff k = d * p^l with 1 <= d <= p-1."""
    if k < 1:
        return False
    while k % p == 0:
        k //= p
    return k < p


@dataclass
class FineRow:
    k: int
    probabilities: list[Fraction]
    properties: dict[str, bool]
    asserted: dict[str, bool]

    @property
    def violations(self) -> list[str]:
        return [name for name, ok in self.properties.items() if not ok and self.asserted[name]]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "probabilities": [frac_str(x) for x in self.probabilities],
            "properties": self.properties,
            "asserted": self.asserted,
            "violations": self.violations,
        }


def fine_properties(p: int, k: int, probs: Sequence[Fraction], probs_kp: Sequence[Fraction]) -> dict[str, bool]:
    """Evaluate the five classical statements about p_k(t) over F_p."""
    inv = Fraction(1, p)
    special = is_digit_power(k, p)
    p0 = probs[0]
    others = probs[1:]
    return {
        "1": p0 >= inv,
        "2": (p0 != inv) or special,
        "3": (not special) or all(x == inv for x in probs),
        "4": list(probs_kp) == list(probs),
        "5": all(p0 >= x for x in others) and (special or all(p0 != x for x in others)),
    }


def fine_property_report(p: int, k_range: Iterable[int], *, budget=DEFAULT_HYPERCUBE_BUDGET) -> list[FineRow]:
    """Check the five properties for each k.

    Properties 1, 2, 4, 5 are only asserted for p in {2, 3}; property 3 for all p.
    """
    ctx = make_field(p)
    rows = []
    cache = {}

    def probs(k):
        if k not in cache:
            cache[k] = asymptotic_pgf(ctx, k, budget=budget).probabilities()
        return cache[k]

    for k in k_range:
        props = fine_properties(p, k, probs(k), probs(k * p))
        small = p in (2, 3)
        asserted = {name: (small or name == "3") for name in props}
        rows.append(FineRow(k, probs(k), props, asserted))
    return rows


# -- convergence ------------------------------------------------------------------

@dataclass
class ConvergenceRow:
    n: int
    deviation: Fraction

    def to_json(self) -> dict:
        return {"n": self.n, "deviation": frac_str(self.deviation), "approx": float(self.deviation)}


def convergence_check(
    ctx: FieldCtx,
    k: int,
    L=None,
    n_list: Sequence[int] = (4, 8, 16, 32),
    F: PolyFunction | None = None,
    *,
    budget=DEFAULT_SUM_BUDGET,
) -> list[ConvergenceRow]:
    """max_beta |p_{n,k}(beta) - p_k(beta)| for each n (exact).

    With ``F`` the finite-n side is the perturbation e_{n,k} + F, expanded by
    prefixes; the limit side is the product formula.
    """
    L = resolve_map(ctx, L)
    if F is None:
        limit = asymptotic_pgf(ctx, k, L).pgf
    else:
        limit = perturbed_pgf(ctx, k, F, L).pgf
    rows = []
    for n in n_list:
        if F is None:
            finite = finite_n_pgf(ctx, n, k, L, budget=budget).pgf
        else:
            finite = perturbation_decompose(ctx, n, k, F, L, budget=budget).scale(Fraction(1, ctx.q**n))
        dev = max(abs(a - b) for a, b in zip(finite.coeffs, limit.coeffs))
        rows.append(ConvergenceRow(n, dev))
    return rows


def tail_is_monotone(rows: Sequence[ConvergenceRow], tail: int = 3) -> bool:
    devs = [r.deviation for r in rows[-tail:]]
    return all(a >= b for a, b in zip(devs, devs[1:]))


def geometric_decay_rate(rows: Sequence[ConvergenceRow]) -> float:
    """Per-unit-n decay factor from a least-squares fit of log(deviation) on n.

    Zero deviations are dropped.  A value below 1 means the deviations shrink
    geometrically toward the limit profile.
    """
    pts = [(r.n, math.log(r.deviation)) for r in rows if r.deviation > 0]
    if len(pts) < 2:
        raise ValueError("need at least two nonzero deviations")
    ns = np.array([n for n, _ in pts], dtype=float)
    logs = np.array([v for _, v in pts])
    slope, _ = np.polyfit(ns, logs, 1)
    return float(math.exp(slope))


def convergence_csv(rows: Sequence[ConvergenceRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "deviation"])
    for row in rows:
        writer.writerow([row.n, frac_str(row.deviation)])
    return buf.getvalue()
