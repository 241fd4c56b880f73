"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line when run with ``-s``;
the conftest hook repeats the verdicts in the terminal summary.  Running this
file directly (``python tests/test_acceptance.py``) executes every criterion
and prints the same lines.
"""

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

import test_properties as props
from symsum.asymptotic import (
    asymptotic_pgf,
    fine_property_report,
    perturbed_pgf,
    perturbed_pgf_expanded,
    smith_cross_check,
)
from symsum.balance import (
    BalanceCertificate,
    NotFound,
    all_functions,
    build_matrix,
    find_counterexample,
    prime_field_equivalence_check,
    rational_nullspace,
)
from symsum.expsum import PolyFunction, SymmetricSpec, brute_sum, closed_formula_sum
from symsum.field import make_field
from symsum.qalgebra import GroupAlgebraElement


def fracs(nums, den):
    return [Fraction(n, den) for n in nums]


@contextmanager
def criterion(n, text):
    try:
        yield
    except BaseException:
        print(f"criterion {n}: FAIL  {text}")
        raise
    print(f"criterion {n}: PASS  {text}")


def test_criterion_1():
    with criterion(1, "G_5 over F_4 is (11,7,7,7)/32 in under 1 s"):
        start = time.perf_counter()
        prof = asymptotic_pgf(make_field(2, 2), 5)
        elapsed = time.perf_counter() - start
        assert prof.probabilities() == fracs([11, 7, 7, 7], 32)
        assert elapsed < 1.0


def test_criterion_2():
    with criterion(2, "perturbed F_4 profile is (129,133,125,125)/512 by both routes"):
        ctx = make_field(2, 2)
        F = PolyFunction.parse(ctx, "x1*x2 + x1*x2*x3 + x2*x3 + x1*x3")
        expected = fracs([129, 133, 125, 125], 512)
        assert perturbed_pgf(ctx, 5, F).probabilities() == expected
        assert perturbed_pgf_expanded(ctx, 5, F).probabilities() == expected


def test_criterion_3():
    with criterion(3, "F_9 pair: G_4 and its perturbation, under 5 min"):
        start = time.perf_counter()
        ctx = make_field(3, 2)
        prime_sub = {0, 1, 2}  # F_3 inside F_9 is the constants
        g = asymptotic_pgf(ctx, 4, budget=None).probabilities()
        assert g == [Fraction(29, 243) if b in prime_sub else Fraction(26, 243) for b in range(9)]
        F = PolyFunction.parse(ctx, "x1*x2*x3 + x1*x2 + x3")
        pert = perturbed_pgf(ctx, 4, F, budget=None).probabilities()
        assert pert == [Fraction(2203, 19683) if b in prime_sub else Fraction(2179, 19683) for b in range(9)]
        assert time.perf_counter() - start < 300


def test_criterion_4():
    with criterion(4, "F_4, k=3: profile, matrix, null space and verified certificate"):
        ctx = make_field(2, 2)
        prof = asymptotic_pgf(ctx, 3)
        assert prof.probabilities() == fracs([5, 5, 3, 3], 16)
        a, b = Fraction(5, 16), Fraction(3, 16)
        M = build_matrix(prof)
        assert M.entries == [[a, a, b, b], [a, a, b, b], [b, b, a, a], [b, b, a, a]]
        assert rational_nullspace(M) == [[-1, 1, 0, 0], [0, 0, -1, 1]]
        cert = find_counterexample(ctx, 3)
        assert isinstance(cert, BalanceCertificate)
        assert cert.m == [3, 5, 4, 4]
        assert cert.verified
        assert cert.limit_pgf == GroupAlgebraElement.uniform(ctx)


def test_criterion_5():
    with criterion(5, "F_4, k=9: (45,29,27,27)/128 and no counterexample"):
        ctx = make_field(2, 2)
        assert asymptotic_pgf(ctx, 9).probabilities() == fracs([45, 29, 27, 27], 128)
        result = find_counterexample(ctx, 9)
        assert isinstance(result, NotFound)
        assert result.det != 0


def test_criterion_6():
    with criterion(6, "F_8 table for k = 2..7, under 2 min per k"):
        ctx = make_field(2, 3)
        eighth = [Fraction(1, 8)] * 8
        expected = {
            2: eighth,
            3: eighth,
            4: eighth,
            6: eighth,
            5: [Fraction(71, 512)] + [Fraction(63, 512)] * 7,
            7: [Fraction(67, 512)] * 2 + [Fraction(63, 512)] * 6,
        }
        for k, probs in expected.items():
            start = time.perf_counter()
            assert asymptotic_pgf(ctx, k).probabilities() == probs, k
            assert time.perf_counter() - start < 120


def test_criterion_7():
    with criterion(7, "Smith's formula matches the hypercube for p = 5, 7"):
        for p in (5, 7):
            closed, computed = smith_cross_check(p)
            assert closed == computed
            if p == 5:
                assert computed[0] == Fraction(1, 5)
                assert computed[2] == Fraction(26, 125)


@pytest.mark.slow
def test_criterion_8():
    with criterion(8, "p=5, k=30: p(0) = 15749/78125, under 15 min"):
        start = time.perf_counter()
        prof = asymptotic_pgf(make_field(5), 30, budget=None)
        assert time.perf_counter() - start < 900
        assert prof[0] == Fraction(15749, 78125)


def test_criterion_9():
    with criterion(9, "closed formula equals brute force for q in {2,3,4}, 2<=k<=6, k<=n<=k+4"):
        for p, r in [(2, 1), (3, 1), (2, 2)]:
            ctx = make_field(p, r)
            for k in range(2, 7):
                for n in range(k, k + 5):
                    assert closed_formula_sum(ctx, n, k) == brute_sum(ctx, n, SymmetricSpec.single(k)), (ctx.q, k, n)


def test_criterion_10():
    with criterion(10, "prime-field equivalence holds exhaustively over F_2 and F_3"):
        violations = []
        cases = [(2, range(1, 9), 2), (3, range(1, 5), 1)]
        for p, ks, j_max in cases:
            ctx = make_field(p)
            for j in range(j_max + 1):
                for F in all_functions(ctx, j):
                    for k in ks:
                        try:
                            prime_field_equivalence_check(p, k, F)
                        except AssertionError:
                            violations.append((p, k, F.table))
        assert violations == []


def test_criterion_11():
    with criterion(11, "Fine properties for p in {2,3}; (5) fails at (5,6); (3) at p=5"):
        for p in (2, 3):
            for row in fine_property_report(p, range(1, 10)):
                assert all(row.properties.values()), (p, row.k)
        rows = {row.k: row for row in fine_property_report(5, [1, 2, 3, 4, 5, 6, 10])}
        assert rows[6].properties["5"] is False
        assert rows[6].probabilities[2] == Fraction(26, 125) > rows[6].probabilities[0] == Fraction(1, 5)
        for k in (1, 2, 3, 4, 5, 10):
            assert rows[k].properties["3"]


def test_criterion_12():
    with criterion(12, "property suites: periodicity, convolution, closure, stochasticity, embedding"):
        props.test_lambda_periodicity()
        props.test_lambda_convolution_random()
        props.test_lambda_convolution_exhaustive_f4()
        props.test_pgf_closure()
        props.test_ga_mul_laws()
        props.test_convolution_matrices_doubly_stochastic()
        props.test_profile_matrices_doubly_stochastic()
        props.test_cyclotomic_float_embedding()


if __name__ == "__main__":
    import sys

    failed = 0
    for n in range(1, 13):
        try:
            globals()[f"test_criterion_{n}"]()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
