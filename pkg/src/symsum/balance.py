"""Asymptotic balance and the counterexample construction over F_q.

The limit profile of a perturbation is ``G_k * b`` with ``b = S(F; X) / q^j``.
Uniformity of that product is the linear system ``A b = (1/q) 1`` where
``A[beta][gamma] = a_{beta - gamma}``.  A singular ``A`` yields a non-uniform
``b`` (hence an unbalanced F) whose perturbation is still balanced at infinity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .asymptotic import ProbabilityProfile, asymptotic_pgf, perturbed_pgf
from .errors import AlreadyBalanced, BadMultiset, NotStochastic, ZeroVector
from .expsum import PolyFunction, brute_sum
from .field import FieldCtx, make_field
from .qalgebra import CyclotomicNumber, GroupAlgebraElement, frac_str, parse_frac


def is_asymptotically_balanced(profile) -> bool:
    pgf = profile.pgf if isinstance(profile, ProbabilityProfile) else profile
    target = Fraction(1, pgf.ctx.q)
    return all(c == target for c in pgf.coeffs)


@dataclass
class ConvolutionMatrix:
    ctx: FieldCtx
    entries: list[list[Fraction]]

    def __getitem__(self, idx):
        return self.entries[idx]

    @property
    def size(self) -> int:
        return len(self.entries)

    def apply(self, v: Sequence) -> list[Fraction]:
        return [sum((a * Fraction(x) for a, x in zip(row, v)), Fraction(0)) for row in self.entries]

    def is_doubly_stochastic(self) -> bool:
        rows_ok = all(sum(row) == 1 for row in self.entries)
        cols_ok = all(sum(col) == 1 for col in zip(*self.entries))
        nonneg = all(x >= 0 for row in self.entries for x in row)
        return rows_ok and cols_ok and nonneg

    def to_json(self) -> list[list[str]]:
        return [[frac_str(x) for x in row] for row in self.entries]


def build_matrix(profile) -> ConvolutionMatrix:
    """A[beta][gamma] = a_{beta - gamma}."""
    pgf = profile.pgf if isinstance(profile, ProbabilityProfile) else profile
    ctx = pgf.ctx
    entries = [[pgf[ctx.sub(beta, gamma)] for gamma in range(ctx.q)] for beta in range(ctx.q)]
    M = ConvolutionMatrix(ctx, entries)
    if not M.is_doubly_stochastic():
        raise NotStochastic("convolution matrix of a PGF must be doubly stochastic")
    return M


def _rows(M):
    return M.entries if isinstance(M, ConvolutionMatrix) else M


def determinant(M) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in _rows(M)]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for cc in range(c, n):
                    a[r][cc] -= f * a[c][cc]
    return det


def _primitive(vec: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints] if g else ints


def rational_nullspace(M, zero_sum: bool | None = None) -> list[list[int]]:
    """Basis of the right null space as primitive integer vectors.

    Fraction-free row reduction (integer rows, cross-multiplication) to reduced
    echelon form; one basis vector per free column, with that column's entry
    positive.  Vectors come out in free-column order.

    For a :class:`ConvolutionMatrix` every null vector has entries summing to 0
    (row sums are 1); that is asserted unless ``zero_sum`` is False.
    """
    if zero_sum is None:
        zero_sum = isinstance(M, ConvolutionMatrix)
    rows = [[Fraction(x) for x in row] for row in _rows(M)]
    n_cols = len(rows[0]) if rows else 0
    # clear denominators so elimination stays in Z
    work = [_primitive(r) if any(r) else [0] * n_cols for r in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                a, b = work[r][c], work[i][c]
                work[i] = [a * x - b * y for x, y in zip(work[i], work[r])]
                g = 0
                for x in work[i]:
                    g = math.gcd(g, x)
                if g:
                    work[i] = [x // g for x in work[i]]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = Fraction(-work[row_idx][f], work[row_idx][pc])
        basis.append(_primitive(vec))
    for v in basis:
        if any(x != 0 for x in _matvec(rows, v)):
            raise ArithmeticError("null space vector failed A v = 0")
        if zero_sum and sum(v) != 0:
            raise ArithmeticError("null space vector entries do not sum to 0")
    return basis


def _matvec(rows, v):
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in rows]


def choose_perturbation_multiset(v: Sequence[int], q: int) -> tuple[int, list[int]]:
    """Smallest j >= 1 with 1/q + v_t/q^j strictly inside (0, 1) for every t.

    Returns (j, m) with m_t = q^(j-1) + v_t, so sum m_t = q^j.
    """
    v = [int(x) for x in v]
    if not any(v):
        raise ZeroVector("null vector must be nonzero")
    if sum(v) != 0:
        raise ValueError("entries must sum to 0")
    lo, hi = max(-x for x in v), max(v)
    j = 1
    while not (q ** (j - 1) > lo and q ** (j - 1) + hi < q**j):
        j += 1
    return j, [q ** (j - 1) + x for x in v]


def synthesize_function(ctx: FieldCtx, j: int, m: Sequence[int]) -> PolyFunction:
    """A function F_q^j -> F_q taking value beta exactly m[beta] times.

    Values are laid out in input order (beta = 0 first), then the ANF is
    interpolated.
    """
    m = [int(x) for x in m]
    if len(m) != ctx.q or any(x < 0 for x in m) or sum(m) != ctx.q**j:
        raise BadMultiset(f"need {ctx.q} non-negative counts summing to {ctx.q**j}")
    table = []
    for beta, count in enumerate(m):
        table.extend([beta] * count)
    return PolyFunction.from_table(ctx, j, table)


@dataclass
class NotFound:
    """The convolution matrix is non-singular: no counterexample exists."""

    ctx: FieldCtx
    k: int
    det: Fraction
    matrix: ConvolutionMatrix | None = None

    verified = False

    def to_json(self) -> dict:
        return {
            "field": self.ctx.to_json(),
            "k": self.k,
            "found": False,
            "det": frac_str(self.det),
            "nullspace": [],
        }


@dataclass
class BalanceCertificate:
    ctx: FieldCtx
    k: int
    matrix: ConvolutionMatrix
    det: Fraction
    nullspace: list[list[int]]
    chosen_v: list[int]
    j: int
    m: list[int]
    F: PolyFunction
    verified: bool = False
    limit_pgf: GroupAlgebraElement | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "field": self.ctx.to_json(),
            "k": self.k,
            "found": True,
            "det": frac_str(self.det),
            "matrix": self.matrix.to_json(),
            "nullspace": self.nullspace,
            "chosen_v": self.chosen_v,
            "j": self.j,
            "epsilon": f"1/{self.ctx.q ** self.j}",
            "m": self.m,
            "F_anf": self.F.format_anf(),
            "verified": self.verified,
        }


def verify_counterexample(ctx: FieldCtx, k: int, F: PolyFunction, m=None) -> tuple[bool, GroupAlgebraElement]:
    """Check F is unbalanced (with the given counts) and G_k * S(F)/q^j is uniform."""
    counts = brute_sum(ctx, F.j, F)
    limit = perturbed_pgf(ctx, k, F).pgf
    ok = not F.is_balanced() and limit == GroupAlgebraElement.uniform(ctx)
    if m is not None:
        ok = ok and [int(c) for c in counts.coeffs] == list(m)
    return ok, limit


def verify_certificate_json(data: dict) -> bool:
    """Re-run verification from a serialised certificate."""
    ctx = FieldCtx.from_json(data["field"])
    if not data.get("found", False):
        return False
    F = PolyFunction.parse(ctx, data["F_anf"], data["j"])
    k = int(data["k"])
    profile = asymptotic_pgf(ctx, k)
    M = build_matrix(profile)
    v = data["chosen_v"]
    if any(x != 0 for x in M.apply(v)) or sum(v) != 0:
        return False
    if parse_frac(data["det"]) != determinant(M):
        return False
    ok, _ = verify_counterexample(ctx, k, F, data["m"])
    return ok


def find_counterexample(ctx: FieldCtx, k: int, *, budget=None):
    """Run the construction for e_{n,k}; BalanceCertificate or NotFound."""
    kw = {} if budget is None else {"budget": budget}
    profile = asymptotic_pgf(ctx, k, **kw)
    if is_asymptotically_balanced(profile):
        raise AlreadyBalanced(f"e_(n,{k}) is already asymptotically balanced over F_{ctx.q}")
    M = build_matrix(profile)
    det = determinant(M)
    basis = rational_nullspace(M)
    if not basis:
        return NotFound(ctx, k, det, M)
    v = basis[0]
    j, m = choose_perturbation_multiset(v, ctx.q)
    F = synthesize_function(ctx, j, m)
    ok, limit = verify_counterexample(ctx, k, F, m)
    return BalanceCertificate(ctx, k, M, det, basis, v, j, m, F, ok, limit)


def circulant_determinant(profile) -> Fraction:
    """prod_t (a_0 + a_{p-1} w_t + ... + a_1 w_t^(p-1)) in Q(xi_p), prime fields only."""
    pgf = profile.pgf if isinstance(profile, ProbabilityProfile) else profile
    ctx = pgf.ctx
    if ctx.r != 1:
        raise ValueError("circulant form needs a prime field")
    p = ctx.p
    result = CyclotomicNumber.rational(p, 1)
    for t in range(p):
        vals = [Fraction(0)] * p
        for c in range(p):
            vals[(c * t) % p] += pgf[(-c) % p]
        result = result * CyclotomicNumber.from_cyclic(p, vals)
    return result.to_rational()


@dataclass
class EquivalenceResult:
    pert_balanced: bool
    e_balanced: bool
    F_balanced: bool

    @property
    def holds(self) -> bool:
        return self.pert_balanced == (self.e_balanced or self.F_balanced)

    def __iter__(self):
        return iter((self.pert_balanced, self.e_balanced, self.F_balanced))


def prime_field_equivalence_check(p: int, k: int, F: PolyFunction) -> EquivalenceResult:
    """Perturbation balanced at infinity <=> e_{n,k} balanced or F balanced."""
    ctx = make_field(p)
    if F.ctx != ctx:
        raise ValueError("F must be defined over the prime field F_p")
    result = EquivalenceResult(
        is_asymptotically_balanced(perturbed_pgf(ctx, k, F)),
        is_asymptotically_balanced(asymptotic_pgf(ctx, k)),
        F.is_balanced(),
    )
    if not result.holds:
        raise AssertionError(f"equivalence fails for p={p}, k={k}, F={F.format_anf()}")
    return result


def all_functions(ctx: FieldCtx, j: int):
    """Every function F_q^j -> F_q as a PolyFunction (small cases only)."""
    for table in itertools.product(range(ctx.q), repeat=ctx.q**j):
        yield PolyFunction.from_table(ctx, j, table, with_anf=False)
