"""Exact rational group algebra of (F_q, +) and cyclotomic numbers in Q(xi_D).

A :class:`GroupAlgebraElement` is a formal sum ``sum_beta a_beta X^beta`` with
exponents in F_q, so ``X^beta * X^gamma = X^(beta+gamma)`` with *field* addition.
Generating functions of value counts and probability generating functions
both live here.

:class:`CyclotomicNumber` handles D = p^m only, using
``Phi_D(x) = 1 + x^s + x^(2s) + ... + x^((p-1)s)`` with ``s = p^(m-1)``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Mapping

from .errors import FieldMismatch, MismatchedD
from .field import FieldCtx, resolve_map


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s)


class GroupAlgebraElement:
    """Element of Q[(F_q, +)], stored densely by element index."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=None):
        self.ctx = ctx
        if coeffs is None:
            dense = [Fraction(0)] * ctx.q
        elif isinstance(coeffs, Mapping):
            dense = [Fraction(0)] * ctx.q
            for beta, c in coeffs.items():
                dense[beta] += Fraction(c)
        else:
            dense = [Fraction(c) for c in coeffs]
            if len(dense) != ctx.q:
                raise ValueError(f"expected {ctx.q} coefficients")
        self.coeffs = tuple(dense)

    @classmethod
    def monomial(cls, ctx: FieldCtx, beta: int, c=1):
        return cls(ctx, {beta: c})

    @classmethod
    def uniform(cls, ctx: FieldCtx):
        return cls(ctx, [Fraction(1, ctx.q)] * ctx.q)

    def __getitem__(self, beta: int) -> Fraction:
        return self.coeffs[beta]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise FieldMismatch("group algebra elements over different fields")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return GroupAlgebraElement(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return GroupAlgebraElement(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, s) -> "GroupAlgebraElement":
        s = Fraction(s)
        return GroupAlgebraElement(self.ctx, [a * s for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        out = [Fraction(0)] * ctx.q
        for b, x in enumerate(self.coeffs):
            if not x:
                continue
            for g, y in enumerate(other.coeffs):
                if y:
                    out[ctx.add(b, g)] += x * y
        return GroupAlgebraElement(ctx, out)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"GroupAlgebraElement({self.format()})"

    def total(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def is_pgf(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and self.total() == 1

    def is_uniform(self) -> bool:
        return len(set(self.coeffs)) == 1

    def shift(self, beta: int) -> "GroupAlgebraElement":
        """Multiply by X^beta."""
        out = [Fraction(0)] * self.ctx.q
        for g, c in enumerate(self.coeffs):
            out[self.ctx.add(g, beta)] = c
        return GroupAlgebraElement(self.ctx, out)

    def format(self, var: str = "X") -> str:
        terms = []
        for beta, c in enumerate(self.coeffs):
            if not c:
                continue
            if beta == 0:
                mono = ""
            elif beta == 1:
                mono = var
            else:
                mono = f"{var}^({self.ctx.format(beta)})"
            coef = str(c)
            terms.append(coef if not mono else (mono if c == 1 else f"{coef}*{mono}"))
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list[str]:
        return [frac_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data) -> "GroupAlgebraElement":
        return cls(ctx, [parse_frac(s) for s in data])

    def eval_at_character(self, t: int, pairing=None) -> "CyclotomicNumber":
        return ga_eval_at_character(self, t, pairing)


def ga_add(e1: GroupAlgebraElement, e2: GroupAlgebraElement) -> GroupAlgebraElement:
    return e1 + e2


def ga_scale(e: GroupAlgebraElement, s) -> GroupAlgebraElement:
    return e.scale(s)


def ga_mul(e1: GroupAlgebraElement, e2: GroupAlgebraElement) -> GroupAlgebraElement:
    return e1 * e2


def ga_eval_at_character(e: GroupAlgebraElement, t: int, pairing=None) -> "CyclotomicNumber":
    """Substitute X^beta -> xi_p^(t * pairing(beta)).

    ``pairing`` maps F_q onto the prime field; it defaults to the trace, which
    turns a value-count generating function into the classical exponential sum.
    """
    ctx = e.ctx
    pair = resolve_map(ctx, "trace" if pairing is None else pairing)
    if any(pair(b) >= ctx.p for b in range(ctx.q)):
        raise ValueError("pairing must take values in the prime field")
    acc = [Fraction(0)] * ctx.p
    for beta, c in enumerate(e.coeffs):
        if c:
            acc[(t * pair(beta)) % ctx.p] += c
    return CyclotomicNumber.from_cyclic(ctx.p, acc)


# -- cyclotomic numbers ---------------------------------------------------------

def _split_prime_power(D: int) -> tuple[int, int]:
    if D < 2:
        raise ValueError("D must be a prime power >= 2")
    p = 2
    while D % p:
        p += 1
    m = 0
    x = D
    while x % p == 0:
        x //= p
        m += 1
    if x != 1:
        raise ValueError(f"{D} is not a prime power")
    return p, m


class CyclotomicNumber:
    """Element of Q(xi_D), D = p^m, in the power basis 1, x, ..., x^(phi(D)-1)."""

    __slots__ = ("D", "p", "coeffs")

    def __init__(self, D: int, coeffs):
        p, m = _split_prime_power(D)
        phi = D - D // p
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for D={D}")
        self.D = D
        self.p = p
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_cyclic(cls, D: int, values) -> "CyclotomicNumber":
        """Reduce sum_e values[e] x^e (exponents taken mod D) modulo Phi_D."""
        p, _ = _split_prime_power(D)
        vals = [Fraction(0)] * D
        for e, c in enumerate(values):
            vals[e % D] += c
        s = D // p
        phi = D - s
        # x^(phi + r) = -(x^r + x^(r+s) + ... + x^(r+(p-2)s))
        for r in range(s):
            top = vals[phi + r]
            if top:
                for i in range(p - 1):
                    vals[r + i * s] -= top
        return cls(D, vals[:phi])

    @classmethod
    def rational(cls, D: int, c) -> "CyclotomicNumber":
        p, _ = _split_prime_power(D)
        phi = D - D // p
        return cls(D, [Fraction(c)] + [Fraction(0)] * (phi - 1))

    @classmethod
    def root_power(cls, D: int, j: int) -> "CyclotomicNumber":
        """xi_D^j."""
        vals = [0] * D
        vals[j % D] = 1
        return cls.from_cyclic(D, vals)

    def _match(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.D, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        if other.D != self.D:
            raise MismatchedD(f"D={self.D} vs D={other.D}")
        return other

    def __add__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.D, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.D, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        D = self.D
        prod = [Fraction(0)] * D
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[(i + j) % D] += a * b
        return CyclotomicNumber.from_cyclic(D, prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicNumber.rational(self.D, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation, x -> x^(-1)."""
        vals = [Fraction(0)] * self.D
        for i, a in enumerate(self.coeffs):
            vals[(-i) % self.D] += a
        return CyclotomicNumber.from_cyclic(self.D, vals)

    def __eq__(self, other):
        other = self._match(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.D, self.coeffs))

    def __repr__(self):
        return f"CyclotomicNumber(D={self.D}, {[str(c) for c in self.coeffs]})"

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_complex(self) -> complex:
        xi = cmath.exp(2j * cmath.pi / self.D)
        return sum(float(c) * xi**i for i, c in enumerate(self.coeffs))


def cyclo_arith(op: str, *args):
    """Dispatch helper: op in {"add", "mul", "root_power"}."""
    if op == "add":
        a, b = args
        return a + b
    if op == "mul":
        a, b = args
        return a * b
    if op == "root_power":
        D, j = args
        return CyclotomicNumber.root_power(D, j)
    raise ValueError(f"unknown operation {op!r}")


class CycloGroupElement:
    """Formal sum sum_beta c_beta X^beta with c_beta in Q(xi_D)."""

    def __init__(self, ctx: FieldCtx, D: int, coeffs=None):
        self.ctx = ctx
        self.D = D
        zero = CyclotomicNumber.rational(D, 0)
        self.coeffs = list(coeffs) if coeffs is not None else [zero] * ctx.q

    def __add__(self, other):
        if other.D != self.D:
            raise MismatchedD(f"D={self.D} vs D={other.D}")
        return CycloGroupElement(self.ctx, self.D, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: CyclotomicNumber) -> "CycloGroupElement":
        return CycloGroupElement(self.ctx, self.D, [a * c for a in self.coeffs])

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def to_rational(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.ctx, [c.to_rational() for c in self.coeffs])
