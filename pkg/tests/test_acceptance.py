"""Exit criteria. Each test records one PASS/FAIL line for the terminal summary."""
import io
import time
from contextlib import contextmanager
from fractions import Fraction
from math import factorial

import numpy as np

from quditinv import cli
from quditinv.dimensions import (
    asymptotic_estimate,
    dim_invariants,
    dim_sign_isotypic,
    dim_skg_invariants,
    sk_isotypic_decomposition,
)
from quditinv.polynomials import (
    CANONICAL_PAIRINGS,
    circ_product,
    delta_determinant,
    generalized_determinant,
    generalized_determinant_tensor,
)
from quditinv.symgroup import Partition, character, character_table, class_size, hook_dimension, partitions_of, rectangular
from quditinv.tensor import TensorState, basis_diagonal_state, random_rank_at_most, random_state
from quditinv.verify import check_invariance, rank_vanishing_demo

import oracles
from conftest import ACCEPTANCE_RESULTS


@contextmanager
def criterion(name, budget=None):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_RESULTS.append((name, ok, f"({elapsed:.2f}s)"))


def P(*parts):
    return Partition(parts)


def test_c01_dims_table():
    with criterion("C01 dims-table 2 4 8 = 0 1 1 3 5 11 21 43", budget=1.0):
        out = io.StringIO()
        assert cli.run(["dims-table", "2", "4", "8"], out=out) == 0
        values = [int(line.split()[1]) for line in out.getvalue().splitlines()[1:]]
        assert values == [0, 1, 1, 3, 5, 11, 21, 43]


def test_c02_static_case_parity():
    with criterion("C02 dim(n,k,n) = [k even], n<=5, k<=6", budget=5.0):
        for n in range(2, 6):
            for k in range(1, 7):
                assert dim_invariants(n, k, n) == (1 if k % 2 == 0 else 0)


def test_c03_two_factors():
    with criterion("C03 dim(n,2,rn) = 1, n<=4, r<=3"):
        for n in range(2, 5):
            for r in range(1, 4):
                assert dim_invariants(n, 2, r * n) == 1


def test_c04_skg_counts():
    with criterion("C04 dim_skg(2,k,4) = floor(k/6) + r_k, k<=24", budget=5.0):
        for k in range(1, 25):
            assert dim_skg_invariants(2, k, 4) == k // 6 + (0 if k % 6 == 1 else 1)
        assert dim_skg_invariants(2, 1, 4) == 0
        assert [dim_skg_invariants(2, k, 4) for k in range(2, 6)] == [1, 1, 1, 1]
        assert dim_skg_invariants(2, 6, 4) == 2


def test_c05_no_sign_representation():
    with criterion("C05 dim_sign_isotypic(2,k,4) = 0, 2<=k<=12"):
        for k in range(2, 13):
            assert dim_sign_isotypic(2, k, 4) == 0


def test_c06a_decompositions_k2_to_4():
    with criterion("C06a decompose(2,4,k) for k=2,3,4", budget=10.0):
        assert sk_isotypic_decomposition(2, 4, 4).nonzero() == {P(4): 1, P(2, 2): 1}
        assert sk_isotypic_decomposition(2, 4, 2).nonzero() == {P(2): 1}
        assert sk_isotypic_decomposition(2, 4, 3).nonzero() == {P(3): 1}


def test_c06b_decomposition_k5():
    # Stated target: E_[5] + E_[2,1,1,1]. The computed decomposition is
    # E_[5] + E_[4,1]; test_dimensions checks that against genuine invariant
    # polynomials of five qubits.
    with criterion("C06b decompose(2,4,5) = {[5]:1, [2,1,1,1]:1}", budget=10.0):
        assert sk_isotypic_decomposition(2, 4, 5).nonzero() == {P(5): 1, P(2, 1, 1, 1): 1}


def test_c07_asymptotic_convergence():
    with criterion("C07 |dim d!/(c p^k) - 1| <= 2^(1-k), n=2, d=4, k<=20; p values"):
        for k in range(1, 21):
            est = asymptotic_estimate(2, 4, k)
            assert (est.c, est.p) == (4, 2)
            ratio = Fraction(dim_invariants(2, k, 4) * factorial(4), est.c * est.p**k)
            assert abs(ratio - 1) <= Fraction(2, 2**k)
        for n, r in [(2, 2), (2, 3), (3, 2)]:
            assert asymptotic_estimate(n, r * n, 5).p == hook_dimension(rectangular(r, n))
        assert [asymptotic_estimate(n, r * n, 1).p for n, r in [(2, 2), (2, 3), (3, 2)]] == [2, 5, 5]


def test_c08_generalized_determinant_values():
    with criterion("C08 gdet = 2x2 det (100 matrices, rel 1e-12); gdet(diag) = 1"):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            expected = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            assert abs(generalized_determinant(TensorState(m)) - expected) <= 1e-12 * abs(expected)
        for n in (2, 3):
            for k in (2, 4):
                assert abs(generalized_determinant(basis_diagonal_state(n, k)) - 1) <= 1e-12


def test_c09_invariance_suite():
    with criterion("C09 invariance < 1e-8 over 20 trials; negative control > 0.1"):
        cases = [("gdet", n, k) for n in (2, 3) for k in (2, 4)]
        cases += [("hdet223", 2, 3), ("detpow:2", 2, 2)]
        cases += [(f"delta:{p}", 2, 4) for p in CANONICAL_PAIRINGS]
        for label, n, k in cases:
            report = check_invariance(label, n, k, trials=20, seed=0)
            assert report.max_relative_deviation < 1e-8, report.to_line()
        control = check_invariance("coord", 2, 4, trials=20, seed=0)
        assert control.max_relative_deviation > 0.1
        assert sum(d > 0.1 for d in control.deviations) >= 19


def test_c10_rank_vanishing():
    with criterion("C10 rank<n: |P| < 1e-9 scale^n; rank n: |P| > 1e-6 scale^n"):
        for n, k in [(2, 4), (3, 2), (3, 4)]:
            for seed in range(10):
                u = random_rank_at_most(n, k, n - 1, seed)
                assert abs(generalized_determinant(u)) < 1e-9 * u.scale**n
            rows = rank_vanishing_demo(n, k, seed=0)
            assert all(r.passed for r in rows)
            assert rows[-1].s == n and rows[-1].median_ratio > 1e-6


def test_c11_delta_rank_three():
    with criterion("C11 Delta vanishes on 20 rank<=3 four-qubit states"):
        for seed in range(20):
            u = random_rank_at_most(2, 4, 3, seed)
            for pairing in CANONICAL_PAIRINGS:
                assert abs(delta_determinant(pairing, u)) < 1e-9 * u.scale**4


def test_c12_circ_product():
    with criterion("C12 P22 o P22 = P24/2 (256 comps, 1e-14); triple = P26/4"):
        P2 = generalized_determinant_tensor(2, 2)
        double = circ_product(P2, P2)
        assert double.array.size == 256
        assert np.max(np.abs(double.array - generalized_determinant_tensor(2, 4).array / 2)) <= 1e-14
        triple = circ_product(double, P2)
        assert np.max(np.abs(triple.array - generalized_determinant_tensor(2, 6).array / factorial(2) ** 2)) <= 1e-14


def test_c13_oracle_suites():
    with criterion("C13 hook vs SYT d<=8; MN vs Specht d<=5; orthogonality d<=8", budget=30.0):
        for d in range(0, 9):
            for lam in partitions_of(d):
                assert hook_dimension(lam) == oracles.count_syt(lam)
        for d in range(1, 6):
            for lam in partitions_of(d):
                for mu in partitions_of(d):
                    assert character(lam, mu) == oracles.specht_character(tuple(lam), oracles.representative(tuple(mu)))
        for d in range(0, 9):
            labels, table = character_table(d)
            sizes = [class_size(mu) for mu in labels]
            for i, row_i in enumerate(table):
                for j, row_j in enumerate(table):
                    total = sum(s * a * b for s, a, b in zip(sizes, row_i, row_j))
                    assert total == (factorial(d) if i == j else 0)


def test_c14_delta_span():
    with criterion("C14 Delta evaluations rank 2 (gap > 1e6); with P24^2 rank 3"):
        states = [random_state(2, 4, 100 + s) for s in range(10)]
        A = np.array([[delta_determinant(p, u) for p in CANONICAL_PAIRINGS] for u in states])
        s = np.linalg.svd(A, compute_uv=False)
        assert s[1] / s[2] > 1e6 and s[1] > 1e-6 * s[0]
        B = np.column_stack([A, [generalized_determinant(u) ** 2 for u in states]])
        sb = np.linalg.svd(B, compute_uv=False)
        assert sb[2] / sb[3] > 1e6 and sb[2] > 1e-6 * sb[0]
